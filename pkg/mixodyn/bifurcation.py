#!/usr/bin/env python3
"""
Region classification of the (x_star, a2) plane, grid sweeps and boundary curves
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from .config.settings import settings
from .shared.dynamics import State3, eval_structural_functions, prey_isocline_peak
from .shared.equilibria import (EquilibriumKind, ThresholdSet, a2_thresholds, coexistence_equilibrium,
                                competition_equilibria)
from .shared.errors import IntegrationError, InvalidParams, MixodynError, OnBoundary
from .shared.model import ScaledParams
from .shared.region_table import A2Band, PPRegime, RegionAnalyzer, RegionSignature
from .shared.stability import Overall, PlanarStability, Regime, classify_equilibrium, predator_prey_regime
from .solver.attractor import detect_attractor

logger = logging.getLogger(__name__)

# Relative distance to a region-defining threshold treated as "on the boundary"
BOUNDARY_TOL = 1e-9
SWEEP_HEADER = ('x_star', 'a2', 'region', 'provenance', 'pp_regime', 'n_comp_eq',
                'comp_plus_planar_stable', 'coexist_exists', 'coexist_stable', 'mixo_cc_stable')
CURVE_HEADER = ('x_star', 'breve_a2', 'tilde_a2', 'check_a2', 'hat_a2', 'a2_star', 'hopf_comp_a2', 'x_H')
# Mixotroph inoculum of the disambiguation start
INOCULUM = 0.01


class Provenance(Enum):
    ANALYTIC = 'Analytic'
    SIMULATION_ASSISTED = 'SimulationAssisted'


@dataclass(frozen=True)
class RegionCell:
    """One classified point of the parameter plane; label None means unresolved"""

    x_star: float
    a2: float
    signature: Optional[RegionSignature]
    label: Optional[str]
    provenance: Provenance = Provenance.ANALYTIC
    uncertain: bool = False
    note: Optional[str] = None

    @property
    def region(self) -> str:
        return self.label if self.label is not None else '?'

    def to_record(self) -> Dict[str, object]:
        """Row of the sweep table"""
        sig = self.signature
        return {
            'x_star': self.x_star,
            'a2': self.a2,
            'region': self.region,
            'provenance': self.provenance.value,
            'pp_regime': sig.pp_regime.value if sig else None,
            'n_comp_eq': sig.n_comp_eq if sig else None,
            'comp_plus_planar_stable': sig.comp_plus_planar_stable if sig else None,
            'coexist_exists': sig.coexist_exists if sig else None,
            'coexist_stable': sig.coexist_stable if sig else None,
            'mixo_cc_stable': sig.mixo_cc_stable if sig else None,
        }

    def to_dict(self) -> Dict[str, object]:
        record = self.to_record()
        record['uncertain'] = self.uncertain
        record['note'] = self.note
        record['signature'] = self.signature.to_dict() if self.signature else None
        return record


def _near(value: float, threshold: Optional[float]) -> bool:
    if threshold is None or not math.isfinite(threshold):
        return False
    return abs(value - threshold) <= BOUNDARY_TOL * max(1.0, abs(threshold))


def a2_band(a2: float, thresholds: ThresholdSet) -> A2Band:
    """Band of a2 between the competition-plane thresholds"""
    hopf = thresholds.hopf_comp_a2 if thresholds.hopf_comp_a2 is not None else thresholds.hat_a2
    for name, value in (('check_a2', thresholds.check_a2), ('hopf_comp_a2', thresholds.hopf_comp_a2),
                        ('hat_a2', thresholds.hat_a2), ('a2_star', thresholds.a2_star)):
        if _near(a2, value):
            raise OnBoundary(f"a2 = {a2} lies on {name} = {value}")

    if a2 < thresholds.check_a2:
        return A2Band.BELOW_CHECK
    if a2 < hopf:
        return A2Band.CHECK_TO_HOPF_COMP
    if a2 < thresholds.hat_a2:
        return A2Band.HOPF_COMP_TO_HAT
    if thresholds.a2_star is not None and a2 < thresholds.a2_star:
        return A2Band.HAT_TO_STAR
    return A2Band.ABOVE_STAR


def region_signature(sp: ScaledParams, thresholds: Optional[ThresholdSet] = None) -> RegionSignature:
    """Analytic signature of one parameter point

    Raises OnBoundary when any defining inequality is marginal.
    """
    sp.require_saturated()
    thresholds = a2_thresholds(sp) if thresholds is None else thresholds
    x = sp.x_star

    pp = predator_prey_regime(sp)
    x_H = pp.witnesses.get('x_H')
    if _near(x, x_H):
        raise OnBoundary(f"x_star = {x} lies on the predator-prey Hopf line {x_H}")
    pp_regime = PPRegime.CYCLE if pp.regime is Regime.UNIQUE_LIMIT_CYCLE else PPRegime.STABLE_EQ

    band = a2_band(sp.a2, thresholds)

    v = eval_structural_functions(x, sp)
    invasion = v.G - v.F1
    if abs(invasion) <= BOUNDARY_TOL:
        raise OnBoundary(f"G(x_star) - F1(x_star) = {invasion:.3g}")

    records = competition_equilibria(sp)
    expected = {A2Band.BELOW_CHECK: 0, A2Band.CHECK_TO_HOPF_COMP: 1, A2Band.HOPF_COMP_TO_HAT: 1,
                A2Band.HAT_TO_STAR: 2, A2Band.ABOVE_STAR: 0}[band]
    if len(records) != expected:
        raise OnBoundary(f"{len(records)} competition equilibria in band {band.value}")
    for record in records:
        if _near(record.point.x, x):
            raise OnBoundary(f"competition equilibrium at x = {record.point.x} meets x_star")
    n_comp_invadable = sum(1 for record in records if record.point.x > x)

    comp_plus_planar_stable = None
    for record in records:
        if record.kind is EquilibriumKind.COMPETITION_PLUS:
            comp_plus_planar_stable = classify_equilibrium(record, sp).planar_stability is PlanarStability.STABLE

    coexistence = coexistence_equilibrium(sp)
    coexist_stable = None
    failing = None
    if coexistence is not None:
        if min(coexistence.point.y, coexistence.point.z) <= BOUNDARY_TOL:
            raise OnBoundary(f"coexistence equilibrium {tuple(coexistence.point)} touches a plane")
        classification = classify_equilibrium(coexistence, sp)
        if classification.overall is Overall.HOPF_BOUNDARY:
            raise OnBoundary(f"coexistence equilibrium is marginally stable at ({x}, {sp.a2})")
        coexist_stable = classification.overall is Overall.STABLE
        if not coexist_stable and classification.rh.failing:
            failing = classification.rh.failing[0]

    return RegionSignature(
        pp_regime=pp_regime,
        a2_band=band,
        coexist_exists=coexistence is not None,
        coexist_stable=coexist_stable,
        mixo_cc_stable=sp.a2 > thresholds.hat_a2,
        n_comp_eq=len(records),
        comp_plus_planar_stable=comp_plus_planar_stable,
        pp_invadable=invasion > 0,
        n_comp_invadable=n_comp_invadable,
        window_below_check=thresholds.breve_a2 < thresholds.check_a2,
        failing_criterion=failing,
    )


def invasion_start(sp: ScaledParams) -> State3:
    """Near the predator-prey attractor with a small mixotroph inoculum"""
    return State3(sp.x_star, 0.9 * eval_structural_functions(sp.x_star, sp).F1, INOCULUM)


def classify_region(x_star: float, a2: float, base: ScaledParams, sim_budget: Optional[float] = None,
                    rel_tol: Optional[float] = None, abs_tol: Optional[float] = None,
                    analyzer: Optional[RegionAnalyzer] = None) -> RegionCell:
    """Region label of (x_star, a2) on top of the base parameters"""
    sp = base.replace(x_star=x_star, a2=a2)
    analyzer = analyzer or RegionAnalyzer()
    sig = region_signature(sp)

    vanishing = None
    provenance = Provenance.ANALYTIC
    note = None
    if analyzer.needs_simulation(sig):
        provenance = Provenance.SIMULATION_ASSISTED
        budget = settings.SIM_BUDGET if sim_budget is None else sim_budget
        try:
            report = detect_attractor(sp, invasion_start(sp), budget, rel_tol, abs_tol)
            vanishing = report.vanishing
            note = f"simulated {report.kind.value}; persisting {','.join(report.persisting) or 'none'}"
        except IntegrationError as e:
            logger.warning(f"⚠️ Simulation failed at ({x_star}, {a2}): {e}")
            return RegionCell(x_star, a2, sig, None, provenance, note=f"simulation failed: {e}")

    label = analyzer.lookup(sig, vanishing)
    if label is None:
        logger.warning(f"⚠️ No region matches signature at ({x_star}, {a2}): {sig}")
        note = note or 'signature matches no region'
    return RegionCell(x_star, a2, sig, label, provenance, analyzer.is_uncertain(label), note)


def _classify_cell(x_star: float, a2: float, base: ScaledParams, sim_budget: Optional[float],
                   rel_tol: Optional[float], abs_tol: Optional[float]) -> RegionCell:
    # per-cell failures become unresolved cells
    try:
        return classify_region(x_star, a2, base, sim_budget, rel_tol, abs_tol)
    except OnBoundary as e:
        return RegionCell(x_star, a2, None, None, note=f"on boundary: {e}")
    except MixodynError as e:
        logger.warning(f"⚠️ Cell ({x_star}, {a2}) failed: {e}")
        return RegionCell(x_star, a2, None, None, note=str(e))


def _axis(grid: Mapping[str, Sequence[float]], name: str) -> np.ndarray:
    if name not in grid:
        raise InvalidParams(f"grid is missing the '{name}' axis")
    try:
        lo, hi, n = grid[name]
    except (TypeError, ValueError) as e:
        raise InvalidParams(f"grid axis '{name}' must be [lo, hi, n]") from e
    n = int(n)
    if n < 2:
        raise InvalidParams(f"grid axis '{name}' needs at least 2 points, got {n}")
    if not lo < hi:
        raise InvalidParams(f"grid axis '{name}' needs lo < hi, got [{lo}, {hi}]")
    return np.linspace(float(lo), float(hi), n)


def sweep(grid: Mapping[str, Sequence[float]], base: ScaledParams, sim_budget: Optional[float] = None,
          workers: Optional[int] = None, rel_tol: Optional[float] = None,
          abs_tol: Optional[float] = None) -> List[RegionCell]:
    """Classify every grid point, row-major with x_star outer"""
    base.require_saturated()
    xs = _axis(grid, 'x_star')
    a2s = _axis(grid, 'a2')
    workers = settings.THREADS if workers is None else workers
    if workers < 1:
        raise InvalidParams(f"workers must be at least 1, got {workers}")

    points = [(float(x), float(a2)) for x in xs for a2 in a2s]
    logger.info(f"🚀 Sweeping {len(points)} cells with {workers} worker(s)")

    cells = Parallel(n_jobs=workers)(
        delayed(_classify_cell)(x, a2, base, sim_budget, rel_tol, abs_tol) for x, a2 in points
    )

    unresolved = sum(1 for cell in cells if cell.label is None)
    logger.info(f"✅ Sweep done: {len(cells) - unresolved} labelled, {unresolved} unresolved")
    return list(cells)


def boundary_curves(base: ScaledParams, x_grid: Sequence[float]) -> List[Dict[str, Optional[float]]]:
    """Per x_star: the coexistence window edges and the x_star-independent thresholds"""
    base.require_saturated()
    try:
        lo, hi, n = x_grid
    except (TypeError, ValueError) as e:
        raise InvalidParams("x grid must be [lo, hi, n]") from e
    if int(n) < 2 or not 0.0 < lo < hi < 1.0:
        raise InvalidParams(f"x grid must satisfy 0 < lo < hi < 1 and n >= 2, got {x_grid}")

    x_H = prey_isocline_peak(base.a1, base.b1)
    rows = []
    for x in np.linspace(float(lo), float(hi), int(n)):
        thresholds = a2_thresholds(base.replace(x_star=float(x)))
        rows.append({
            'x_star': float(x),
            'breve_a2': thresholds.breve_a2,
            'tilde_a2': thresholds.tilde_a2,
            'check_a2': thresholds.check_a2,
            'hat_a2': thresholds.hat_a2,
            'a2_star': thresholds.a2_star,
            'hopf_comp_a2': thresholds.hopf_comp_a2,
            'x_H': None if math.isnan(x_H) else x_H,
        })
    return rows


def curve_maximum(rows: Sequence[Mapping[str, Optional[float]]], column: str = 'tilde_a2') -> Tuple[float, float]:
    """(x_star, value) at the largest sampled value of a curve"""
    if not rows:
        raise InvalidParams("no curve rows")
    best = max(rows, key=lambda row: row[column])
    return best['x_star'], best[column]
