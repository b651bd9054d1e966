#!/usr/bin/env python3
"""
Attractor detection: settle on a catalogued equilibrium, or find a limit cycle
from returns to a Poincare section
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from ..config.settings import settings
from ..shared.dynamics import State3, rhs_saturated
from ..shared.equilibria import EquilibriumKind, all_equilibria
from ..shared.errors import InvalidParams
from ..shared.model import ScaledParams
from .dormand_prince import DormandPrince54
from .trajectory import DEFAULT_START, Trajectory, integrate, make_solver

logger = logging.getLogger(__name__)

SETTLED_TOL = 1e-8
MATCH_TOL = 1e-6
RETURN_TOL = 1e-6
MIN_AMPLITUDE = 1e-6
RETURNS_COMPARED = 5
# a species is vanishing if its last-stretch maximum is below this level ...
EXTINCT_LEVEL = 1e-9
# ... or its stretch extrema fall steadily, the maxima at this log rate or faster per unit time,
# to under FADE_FRACTION of the largest value seen over the run
DECAY_SEGMENTS = 4
DECAY_RATE = 1e-4
FADE_FRACTION = 0.1
SPECIES = ('x', 'y', 'z')


class AttractorKind(Enum):
    EQUILIBRIUM = 'Equilibrium'
    LIMIT_CYCLE = 'LimitCycle'
    UNDETERMINED = 'Undetermined'


@dataclass
class AttractorReport:
    """What the trajectory settled on after the transient"""

    kind: AttractorKind
    transient_discarded: float
    terminal: State3
    point: Optional[State3] = None
    equilibrium_kind: Optional[EquilibriumKind] = None
    period: Optional[float] = None
    section_points: List[State3] = field(default_factory=list)
    amplitude: Optional[float] = None
    vanishing: Tuple[bool, bool, bool] = (False, False, False)
    diagnostics: Dict[str, float] = field(default_factory=dict)

    @property
    def persisting(self) -> Tuple[str, ...]:
        """Names of the species that do not vanish"""
        return tuple(name for name, gone in zip(SPECIES, self.vanishing) if not gone)

    def to_dict(self) -> dict:
        return {
            'kind': self.kind.value,
            'point': list(self.point) if self.point is not None else None,
            'equilibrium_kind': self.equilibrium_kind.value if self.equilibrium_kind else None,
            'period': self.period,
            'section_points': [list(p) for p in self.section_points],
            'amplitude': self.amplitude,
            'transient_discarded': self.transient_discarded,
            'terminal': list(self.terminal),
            'vanishing': dict(zip(SPECIES, self.vanishing)),
            'diagnostics': dict(self.diagnostics),
        }


def _segment_extrema(times: np.ndarray, states: np.ndarray) -> Optional[Tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """(midpoints, minima, maxima) over DECAY_SEGMENTS equal stretches of time, None if any stretch is empty"""
    if len(times) < 2:
        return None
    edges = np.linspace(times[0], times[-1], DECAY_SEGMENTS + 1)
    cuts = np.searchsorted(times, edges[1:-1])
    pieces = np.split(states, cuts)
    if any(len(piece) == 0 for piece in pieces):
        return None
    minima = np.array([np.min(piece, axis=0) for piece in pieces])
    maxima = np.array([np.max(piece, axis=0) for piece in pieces])
    return 0.5 * (edges[:-1] + edges[1:]), minima, maxima


def _vanishing(times: np.ndarray, states: np.ndarray, run_max: np.ndarray) -> Tuple[bool, bool, bool]:
    """Per-species extinction verdict on the post-transient window"""
    segments = _segment_extrema(times, states)
    if segments is None:
        late = np.max(states, axis=0)
        gone = [bool(level < EXTINCT_LEVEL) for level in late]
    else:
        mids, minima, maxima = segments
        gone = []
        for i in range(states.shape[1]):
            peaks = maxima[:, i]
            if peaks[-1] < EXTINCT_LEVEL:
                gone.append(True)
                continue
            rate = np.polyfit(mids, np.log(np.maximum(peaks, np.finfo(float).tiny)), 1)[0]
            # damping towards a positive level raises the minima
            steady = np.all(np.diff(peaks) < 0.0) and np.all(np.diff(minima[:, i]) <= 0.0)
            gone.append(bool(steady and rate < -DECAY_RATE and peaks[-1] < FADE_FRACTION * run_max[i]))
    # the herbivore cannot outlive the autotroph
    if gone[0] and not gone[1]:
        logger.debug("🔍 Autotroph decay ignored while the herbivore persists")
        gone[0] = False
    return tuple(gone)


def _match_equilibrium(state: np.ndarray, sp: ScaledParams):
    best, distance = None, np.inf
    for record in all_equilibria(sp):
        gap = float(np.max(np.abs(state - np.asarray(record.point))))
        if gap < distance:
            best, distance = record, gap
    return best, distance


def _refine_crossing(solver: DormandPrince54, t0: float, s0: np.ndarray, t1: float, s1: np.ndarray,
                     index: int, level: float) -> Tuple[float, np.ndarray]:
    """(time, state) where coordinate `index` passes `level` inside one accepted step"""
    span = t1 - t0

    def offset(h: float) -> float:
        return float(solver.advance(t0, s0, h)[index]) - level

    try:
        h = optimize.brentq(offset, 0.0, span, xtol=1e-12 * max(1.0, span))
        return t0 + h, solver.advance(t0, s0, h)
    except ValueError:
        # clamping can move the endpoint back across the level
        weight = (level - s0[index]) / (s1[index] - s0[index])
        logger.debug(f"🔍 Crossing at t={t0:.6g} refined by interpolation")
        return t0 + weight * span, s0 + weight * (s1 - s0)


def _section_returns(traj: Trajectory, solver: DormandPrince54, index: int,
                     level: float) -> Tuple[List[float], List[np.ndarray]]:
    times, states = traj.times, traj.states
    below = states[:-1, index] < level
    above = states[1:, index] >= level
    hits = np.nonzero(below & above)[0]

    crossing_times, points = [], []
    for i in hits:
        t, point = _refine_crossing(solver, times[i], states[i], times[i + 1], states[i + 1], index, level)
        crossing_times.append(float(t))
        points.append(point)
    return crossing_times, points


def _cycle_from_returns(times: List[float], points: List[np.ndarray]) -> Optional[Tuple[float, float]]:
    """(period, spread) when the last returns agree, else None"""
    if len(points) < RETURNS_COMPARED + 1:
        return None
    last = points[-1]
    spread = max(float(np.max(np.abs(p - last))) for p in points[-RETURNS_COMPARED - 1:-1])
    if spread > RETURN_TOL:
        return None
    intervals = np.diff(times[-RETURNS_COMPARED - 1:])
    return float(np.mean(intervals)), spread


def detect_attractor(sp: ScaledParams, y0: Optional[Sequence[float]] = None, budget: Optional[float] = None,
                     rel_tol: Optional[float] = None, abs_tol: Optional[float] = None,
                     transient_fraction: float = 0.5, system: str = 'saturated') -> AttractorReport:
    """Integrate for `budget` time, drop the transient and classify what is left"""
    budget = settings.BUDGET if budget is None else budget
    if budget <= 0:
        raise InvalidParams(f"budget must be positive, got {budget}")
    if not 0.0 <= transient_fraction < 1.0:
        raise InvalidParams(f"transient_fraction must lie in [0, 1), got {transient_fraction}")

    start = DEFAULT_START if y0 is None else y0
    traj = integrate(sp, start, budget, rel_tol, abs_tol, system)
    transient = budget * transient_fraction
    kept = traj.times >= transient
    window = Trajectory(traj.times[kept], traj.states[kept], traj.accepted, traj.rejected)

    terminal = traj.states[-1]
    vanishing = _vanishing(window.times, window.states, np.max(traj.states, axis=0))
    rhs_norm = float(np.max(np.abs(rhs_saturated(terminal, sp))))
    diagnostics = {'rhs_norm': rhs_norm, 'accepted_steps': float(traj.accepted)}
    base = dict(transient_discarded=transient, terminal=State3(*(float(v) for v in terminal)),
                vanishing=vanishing, diagnostics=diagnostics)

    if rhs_norm <= SETTLED_TOL:
        record, distance = _match_equilibrium(terminal, sp)
        diagnostics['match_distance'] = distance
        if distance <= MATCH_TOL:
            logger.debug(f"✅ Settled on {record.kind.value} (distance {distance:.3g})")
            return AttractorReport(AttractorKind.EQUILIBRIUM, point=record.point,
                                   equilibrium_kind=record.kind, **base)
        logger.debug(f"⚠️ Settled at {tuple(terminal)} but no catalogued equilibrium within {MATCH_TOL}")
        return AttractorReport(AttractorKind.UNDETERMINED, **base)

    spans = np.ptp(window.states, axis=0)
    amplitude = float(np.max(spans))
    diagnostics['amplitude'] = amplitude
    if amplitude <= MIN_AMPLITUDE:
        return AttractorReport(AttractorKind.UNDETERMINED, amplitude=amplitude, **base)

    solver = make_solver(sp, rel_tol, abs_tol, system)
    sections = [(0, sp.x_star)]
    if spans[2] > MIN_AMPLITUDE:
        sections.append((2, 0.5 * (window.states[:, 2].min() + window.states[:, 2].max())))

    for index, level in sections:
        times, points = _section_returns(window, solver, index, level)
        diagnostics[f'returns_{SPECIES[index]}'] = float(len(points))
        if len(points) < RETURNS_COMPARED + 1:
            continue
        cycle = _cycle_from_returns(times, points)
        if cycle is None:
            last = points[-1]
            diagnostics['return_spread'] = max(float(np.max(np.abs(p - last)))
                                               for p in points[-RETURNS_COMPARED - 1:-1])
            break
        period, spread = cycle
        diagnostics['return_spread'] = spread
        section_points = [State3(*(float(v) for v in p)) for p in points[-RETURNS_COMPARED:]]
        logger.debug(f"✅ Limit cycle with period {period:.6g} on section {SPECIES[index]}={level:.6g}")
        return AttractorReport(AttractorKind.LIMIT_CYCLE, period=period, section_points=section_points,
                               amplitude=amplitude, **base)

    return AttractorReport(AttractorKind.UNDETERMINED, amplitude=amplitude, **base)
