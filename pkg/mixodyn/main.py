#!/usr/bin/env python3
"""
Command-line orchestrator
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .bifurcation import CURVE_HEADER, SWEEP_HEADER, boundary_curves, classify_region, sweep
from .config.run_config import COMMANDS, RunConfig, grid_from_options, parse_triple, resolve_run_config
from .config.settings import settings
from .shared.equilibria import all_equilibria
from .shared.errors import MixodynError, UsageError
from .shared.model import SCALED_FIELDS, nondimensionalize, validate_trade_offs
from .shared.presets import preset_names
from .shared.stability import classify_equilibrium
from .shared.storage import emit
from .solver.attractor import detect_attractor
from .solver.lyapunov import largest_lyapunov_exponent
from .solver.trajectory import integrate

logger = logging.getLogger(__name__)

SYNOPSIS = "usage: mixodyn {" + ','.join(COMMANDS) + "} [--config PATH | --preset NAME] [--set key=value ...]"
EQUILIBRIUM_HEADER = ('kind', 'x', 'y', 'z', 'stability', 'planar_stability', 'transversal_eigenvalue')
TRAJECTORY_HEADER = ('tau', 'x', 'y', 'z')
ATTRACTOR_HEADER = ('kind', 'equilibrium_kind', 'x', 'y', 'z', 'period', 'amplitude', 'transient_discarded',
                    'vanishing_x', 'vanishing_y', 'vanishing_z')
LYAPUNOV_HEADER = ('exponent', 'renormalization_interval', 'transient_discarded', 'horizon', 'n_renormalizations')
VALIDATION_HEADER = ('condition_A', 'condition_B_global', 'condition_B_local', 'ok')

Records = Tuple[List[Dict[str, Any]], Optional[Sequence[str]]]


class MixodynRunner:
    """Runs one command from a validated RunConfig"""

    def __init__(self, config: RunConfig):
        self.config = config
        self.exit_code = 0

    def run(self) -> int:
        """Execute the command and emit its records; returns the exit code"""
        config = self.config
        logger.info(f"🚀 Running {config.command}")
        handler = getattr(self, f"_{config.command}")
        records, header = handler()
        if config.fmt == 'json' or header is None:
            emit(records, config.fmt, config.out, header)
        else:
            emit([{key: record.get(key) for key in header} for record in records], 'csv', config.out, header)
        logger.info(f"✅ {config.command} finished with {len(records)} record(s)")
        return self.exit_code

    def _validate(self) -> Records:
        config = self.config
        if not config.is_dimensional:
            # scaled parameters were validated on construction
            logger.info("✅ Scaled parameters are valid")
            return [{'condition_A': True, 'condition_B_global': True, 'condition_B_local': True, 'ok': True}], \
                VALIDATION_HEADER

        report = validate_trade_offs(config.params)
        for message in report.messages:
            print(message, file=sys.stderr)
        if not report.ok:
            self.exit_code = 1
        record = {
            'condition_A': report.condition_A,
            'condition_B_global': report.condition_B_global,
            'condition_B_local': report.condition_B_local,
            'ok': report.ok,
        }
        if config.fmt == 'json':
            record['messages'] = report.messages
        return [record], VALIDATION_HEADER

    def _scale(self) -> Records:
        scaled = nondimensionalize(self.config.params)
        return [scaled.to_dict()], SCALED_FIELDS

    def _equilibria(self) -> Records:
        sp = self.config.scaled()
        records = []
        for record in all_equilibria(sp):
            classification = classify_equilibrium(record, sp)
            row = classification.to_dict()
            if self.config.fmt == 'json':
                row['point'] = record.to_dict()['point']
            else:
                row.update(x=record.point.x, y=record.point.y, z=record.point.z)
            records.append(row)
        logger.info(f"📋 {len(records)} equilibria")
        return records, EQUILIBRIUM_HEADER

    def _classify(self) -> Records:
        sp = self.config.scaled()
        cell = classify_region(sp.x_star, sp.a2, sp, self.config.option('sim_budget', self.config.budget),
                               self.config.rel_tol, self.config.abs_tol)
        if cell.label is None:
            logger.warning(f"⚠️ Unresolved: {cell.note}")
        return [cell.to_dict() if self.config.fmt == 'json' else cell.to_record()], SWEEP_HEADER

    def _start(self) -> Optional[Tuple[float, ...]]:
        y0 = self.config.option('y0')
        if isinstance(y0, str):
            return parse_triple(y0, '--y0')
        return tuple(y0) if y0 is not None else None

    def _simulate(self) -> Records:
        config = self.config
        t_end = float(config.option('t_end', config.budget or 1000.0))
        start = self._start()
        kwargs = {'y0': start} if start is not None else {}
        trajectory = integrate(config.scaled(), t_end=t_end, rel_tol=config.rel_tol, abs_tol=config.abs_tol,
                               system=config.option('system', 'saturated'), **kwargs)
        return trajectory.records(), TRAJECTORY_HEADER

    def _attractor(self) -> Records:
        config = self.config
        report = detect_attractor(config.scaled(), self._start(), config.budget, config.rel_tol, config.abs_tol,
                                  float(config.option('transient_fraction', 0.5)),
                                  config.option('system', 'saturated'))
        logger.info(f"🔍 Attractor: {report.kind.value}")
        if config.fmt == 'json':
            return [report.to_dict()], None
        location = report.point if report.point is not None else report.terminal
        return [{
            'kind': report.kind.value,
            'equilibrium_kind': report.equilibrium_kind.value if report.equilibrium_kind else None,
            'x': location[0], 'y': location[1], 'z': location[2],
            'period': report.period,
            'amplitude': report.amplitude,
            'transient_discarded': report.transient_discarded,
            'vanishing_x': report.vanishing[0],
            'vanishing_y': report.vanishing[1],
            'vanishing_z': report.vanishing[2],
        }], ATTRACTOR_HEADER

    def _lyapunov(self) -> Records:
        config = self.config
        transient = config.option('transient')
        estimate = largest_lyapunov_exponent(
            config.scaled(), self._start(), config.budget, float(config.option('interval', 1.0)),
            None if transient is None else float(transient), config.rel_tol, config.abs_tol)
        logger.info(f"🔍 Largest Lyapunov exponent estimate: {estimate.exponent:.6g}")
        return [estimate.to_dict()], LYAPUNOV_HEADER

    def _sweep(self) -> Records:
        config = self.config
        grid = config.option('grid') or {}
        grid = dict(grid)
        for axis, key in (('x_star', 'x_grid'), ('a2', 'a2_grid')):
            if config.options.get(key) is not None:
                grid[axis] = grid_from_options(config.options, key)
            elif axis not in grid:
                raise UsageError(f"sweep needs --{key.replace('_', '-')} (or a 'grid' entry in the config)")
        workers = config.option('workers')
        cells = sweep(grid, config.scaled(), config.option('sim_budget', config.budget),
                      None if workers is None else int(workers), config.rel_tol, config.abs_tol)
        if config.fmt == 'json':
            return [cell.to_dict() for cell in cells], None
        return [cell.to_record() for cell in cells], SWEEP_HEADER

    def _curves(self) -> Records:
        config = self.config
        if config.options.get('x_grid') is None:
            raise UsageError("curves needs --x-grid lo,hi,n")
        rows = boundary_curves(config.scaled(), grid_from_options(config.options, 'x_grid'))
        return rows, CURVE_HEADER


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_argument_group('parameters')
    source.add_argument('--config', help='JSON parameter file')
    source.add_argument('--preset', choices=preset_names(), help='named parameter set')
    source.add_argument('--set', dest='assignments', action='append', default=[], metavar='KEY=VALUE',
                        help='override one parameter (repeatable)')
    output = common.add_argument_group('output')
    output.add_argument('--out', help='output path (default: stdout)')
    output.add_argument('--format', dest='fmt', choices=('csv', 'json'), default='csv')
    numerics = common.add_argument_group('numerics')
    numerics.add_argument('--tol-rel', dest='rel_tol', type=float)
    numerics.add_argument('--tol-abs', dest='abs_tol', type=float)
    numerics.add_argument('--budget', type=float, help='simulated time budget')

    parser = argparse.ArgumentParser(prog='mixodyn', description='Mixotroph-autotroph-herbivore chemostat dynamics')
    commands = parser.add_subparsers(dest='command', required=True, metavar='COMMAND')

    commands.add_parser('validate', parents=[common], help='check the trade-off conditions')
    commands.add_parser('scale', parents=[common], help='nondimensionalize dimensional parameters')
    commands.add_parser('equilibria', parents=[common], help='list equilibria with their stability')
    classify = commands.add_parser('classify', parents=[common], help='region label of the (x_star, a2) point')
    classify.add_argument('--sim-budget', type=float)

    simulate = commands.add_parser('simulate', parents=[common], help='integrate one trajectory')
    simulate.add_argument('--y0', help='x,y,z')
    simulate.add_argument('--t-end', type=float)
    simulate.add_argument('--system', choices=('saturated', 'isocline'))

    attractor = commands.add_parser('attractor', parents=[common], help='detect the attractor from a start')
    attractor.add_argument('--y0', help='x,y,z')
    attractor.add_argument('--transient-fraction', type=float)
    attractor.add_argument('--system', choices=('saturated', 'isocline'))

    lyapunov = commands.add_parser('lyapunov', parents=[common], help='largest Lyapunov exponent estimate')
    lyapunov.add_argument('--y0', help='x,y,z')
    lyapunov.add_argument('--interval', type=float)
    lyapunov.add_argument('--transient', type=float)

    grid = commands.add_parser('sweep', parents=[common], help='classify a grid of (x_star, a2) points')
    grid.add_argument('--x-grid', help='lo,hi,n')
    grid.add_argument('--a2-grid', help='lo,hi,n')
    grid.add_argument('--sim-budget', type=float)
    grid.add_argument('--workers', type=int, help=f'worker processes (default {settings.THREADS})')

    curves = commands.add_parser('curves', parents=[common], help='coexistence window edges over x_star')
    curves.add_argument('--x-grid', help='lo,hi,n')
    return parser


def _usage_failure(reason: str) -> int:
    print(f"mixodyn: {reason}", file=sys.stderr)
    print(SYNOPSIS, file=sys.stderr)
    return 2


def parse_and_dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run the command; 0 success, 1 validation failure, 2 usage error"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2

    option_names = ('y0', 't_end', 'system', 'transient_fraction', 'interval', 'transient',
                    'x_grid', 'a2_grid', 'sim_budget', 'workers')
    options = {name: getattr(args, name, None) for name in option_names}

    try:
        settings.validate()
    except ValueError as e:
        return _usage_failure(f"bad environment setting: {e}")

    try:
        config = resolve_run_config(args.command, args.config, args.preset, args.assignments, args.out,
                                    args.fmt, args.rel_tol, args.abs_tol, args.budget, options)
        return MixodynRunner(config).run()
    except UsageError as e:
        return _usage_failure(str(e))
    except MixodynError as e:
        logger.error(f"❌ {e}")
        print(f"mixodyn: {e}", file=sys.stderr)
        return 1
