#!/usr/bin/env python3
"""
Routh-Hurwitz verdicts and equilibrium classification
"""

import cmath
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np

from .dynamics import eval_structural_functions, prey_isocline_peak, structural_derivatives
from .equilibria import (EquilibriumKind, EquilibriumRecord, coexistence_equilibrium,
                         competition_equilibria)
from .errors import IllConditioned, NoCoexistence, NotAnEquilibrium
from .model import ScaledParams

logger = logging.getLogger(__name__)

# Criteria within this distance of zero (after scaling by |A|^3) are marginal
MARGINAL_TOL = 1e-9
RESIDUAL_TOL = 1e-6
_OMEGA = complex(-0.5, math.sqrt(3.0) / 2.0)


class Overall(Enum):
    STABLE = 'Stable'
    SADDLE = 'Saddle'
    UNSTABLE = 'Unstable'
    HOPF_BOUNDARY = 'HopfBoundary'


class PlanarStability(Enum):
    STABLE = 'Stable'
    UNSTABLE = 'Unstable'
    SADDLE = 'Saddle'
    MARGINAL = 'Marginal'


class Plane(Enum):
    PREDATOR_PREY = 'PredatorPrey'
    COMPETITION = 'Competition'


class Regime(Enum):
    UNIQUE_LIMIT_CYCLE = 'UniqueLimitCycle'
    GLOBALLY_STABLE_EQ = 'GloballyStableEq'
    CONVERGES_TO_EQUILIBRIUM = 'ConvergesToEquilibrium'
    CYCLES_POSSIBLE = 'CyclesPossible'


class TheoremVerdict(Enum):
    STABLE_BY_THEOREM = 'stable_by_theorem'
    INCONCLUSIVE = 'inconclusive'


@dataclass(frozen=True)
class RHVerdict:
    trace_neg: bool
    det_neg: bool
    third_neg: bool
    stable: bool
    marginal: bool
    failing: Tuple[int, ...] = ()


@dataclass(frozen=True)
class EquilibriumClassification:
    kind: EquilibriumKind
    planar_stability: Optional[PlanarStability]
    transversal_eigenvalue: Optional[float]
    overall: Overall
    rh: Optional[RHVerdict] = None

    def to_dict(self) -> dict:
        return {
            'kind': self.kind.value,
            'planar_stability': self.planar_stability.value if self.planar_stability else None,
            'transversal_eigenvalue': self.transversal_eigenvalue,
            'stability': self.overall.value,
        }


@dataclass(frozen=True)
class PlaneRegime:
    plane: Plane
    regime: Regime
    witnesses: Dict[str, float] = field(default_factory=dict)
    reason: Optional[str] = None
    comp_plus_planar_stable: Optional[bool] = None


# Routh-Hurwitz

def _invariants(A: np.ndarray) -> Tuple[float, float, float]:
    a = np.asarray(A, dtype=float)
    trace = a[0, 0] + a[1, 1] + a[2, 2]
    minors = (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1]
              + a[0, 0] * a[2, 2] - a[0, 2] * a[2, 0]
              + a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    det = (a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
           - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
           + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0]))
    return float(trace), float(minors), float(det)


def routh_hurwitz(A: np.ndarray) -> RHVerdict:
    """Matrix-form Routh-Hurwitz test for a 3x3 matrix"""
    trace, minors, det = _invariants(A)
    third = trace * minors - det

    trace_neg = trace < 0
    det_neg = det < 0
    third_neg = third < 0
    failing = tuple(i for i, ok in ((1, trace_neg), (2, det_neg), (3, third_neg)) if not ok)

    scale = max(float(np.linalg.norm(A)) ** 3, np.finfo(float).tiny)
    marginal = abs(det) / scale <= MARGINAL_TOL or abs(third) / scale <= MARGINAL_TOL

    return RHVerdict(trace_neg, det_neg, third_neg, not failing, marginal, failing)


def eigenvalue_oracle(A: np.ndarray) -> Tuple[complex, complex, complex]:
    """Eigenvalues from the closed-form cubic with one Newton polish"""
    trace, minors, det = _invariants(A)
    # lambda^3 + a lambda^2 + b lambda + c
    a, b, c = -trace, minors, -det

    def poly(lam: complex) -> complex:
        return ((lam + a) * lam + b) * lam + c

    def dpoly(lam: complex) -> complex:
        return (3.0 * lam + 2.0 * a) * lam + b

    p = b - a * a / 3.0
    q = 2.0 * a ** 3 / 27.0 - a * b / 3.0 + c
    root = cmath.sqrt((q / 2.0) ** 2 + (p / 3.0) ** 3)
    u3 = -q / 2.0 + root if abs(-q / 2.0 + root) >= abs(-q / 2.0 - root) else -q / 2.0 - root

    if u3 == 0:
        roots = [complex(-a / 3.0)] * 3
    else:
        u = u3 ** (1.0 / 3.0)
        roots = []
        for j in range(3):
            w = u * _OMEGA ** j
            roots.append(w - p / (3.0 * w) - a / 3.0)

    polished = []
    for lam in roots:
        slope = dpoly(lam)
        if abs(slope) > 1e-12:
            candidate = lam - poly(lam) / slope
            if abs(poly(candidate)) <= abs(poly(lam)):
                lam = candidate
        polished.append(lam)

    bound = 1e-8 * (1.0 + float(np.linalg.norm(A)) ** 3)
    worst = max(abs(poly(lam)) for lam in polished)
    if worst > bound:
        raise IllConditioned(f"cubic residual {worst:.3g} exceeds {bound:.3g}")
    return tuple(polished)


# Classification

def _planar(trace: float, det: float, scale: float) -> PlanarStability:
    if det < 0:
        return PlanarStability.SADDLE
    if abs(trace) <= MARGINAL_TOL * max(scale, 1.0) or abs(det) <= MARGINAL_TOL * max(scale, 1.0) ** 2:
        return PlanarStability.MARGINAL
    return PlanarStability.STABLE if trace < 0 else PlanarStability.UNSTABLE


def _combine(planar: PlanarStability, transversal: float) -> Overall:
    if planar is PlanarStability.MARGINAL:
        return Overall.HOPF_BOUNDARY
    if planar is PlanarStability.SADDLE:
        return Overall.SADDLE
    if planar is PlanarStability.STABLE:
        return Overall.STABLE if transversal < 0 else Overall.SADDLE
    return Overall.UNSTABLE if transversal > 0 else Overall.SADDLE


def _classify_interior(e: EquilibriumRecord, sp: ScaledParams) -> EquilibriumClassification:
    verdict = routh_hurwitz(e.jacobian)
    if verdict.marginal:
        overall = Overall.HOPF_BOUNDARY
    elif verdict.stable:
        overall = Overall.STABLE
    else:
        eigenvalues = eigenvalue_oracle(e.jacobian)
        overall = Overall.SADDLE if any(lam.real < 0 for lam in eigenvalues) else Overall.UNSTABLE

    theorem = coexistence_sufficient_stability(sp)
    if theorem is TheoremVerdict.STABLE_BY_THEOREM and not verdict.stable:
        logger.warning(f"⚠️ Sufficient stability conditions hold but Routh-Hurwitz fails at {e.point}")

    return EquilibriumClassification(e.kind, None, None, overall, verdict)


def classify_equilibrium(e: EquilibriumRecord, sp: ScaledParams) -> EquilibriumClassification:
    """Stability of an equilibrium from the block structure of its Jacobian"""
    residual = e.residual(sp)
    if residual > RESIDUAL_TOL:
        raise NotAnEquilibrium(f"{e.kind.value} at {tuple(e.point)} has residual {residual:.3g}")

    x = e.point.x
    v = eval_structural_functions(x, sp)
    d = structural_derivatives(x, sp)
    kind = e.kind

    if kind is EquilibriumKind.WASHOUT:
        # diagonal (1/k, psi(0), c)
        return EquilibriumClassification(kind, None, None, Overall.SADDLE)

    if kind is EquilibriumKind.CARRYING_CAPACITY:
        # upper triangular; psi(1) > 0 in the predator-prey plane
        return EquilibriumClassification(kind, PlanarStability.SADDLE, v.G, Overall.SADDLE)

    if kind is EquilibriumKind.MIXOTROPH_CC:
        growth = (1.0 - (1.0 + sp.a2) * sp.c) / sp.k
        if sp.a2 < (1.0 - sp.c) / sp.c:
            return EquilibriumClassification(kind, PlanarStability.SADDLE, v.psi, Overall.SADDLE)
        if growth < 0:
            return EquilibriumClassification(kind, PlanarStability.STABLE, v.psi, Overall.STABLE)
        # a2 = hat_a2: a competition equilibrium merges with this one
        return EquilibriumClassification(kind, PlanarStability.MARGINAL, v.psi, Overall.HOPF_BOUNDARY)

    if kind is EquilibriumKind.PREDATOR_PREY:
        trace = v.f1 * d.dF1
        det = v.f1 * v.F1 * d.dpsi
        planar = _planar(trace, det, abs(v.f1))
        transversal = v.G - v.F1
        return EquilibriumClassification(kind, planar, transversal, _combine(planar, transversal))

    if kind in (EquilibriumKind.COMPETITION_MINUS, EquilibriumKind.COMPETITION_PLUS):
        trace = v.f2 * d.dF2 - v.G
        det = v.f2 * v.G * (d.dG - d.dF2)
        planar = _planar(trace, det, abs(v.f2) + abs(v.G))
        return EquilibriumClassification(kind, planar, v.psi, _combine(planar, v.psi))

    return _classify_interior(e, sp)


def theorem_criteria(sp: ScaledParams) -> Tuple[bool, bool, bool]:
    """The three sufficient conditions for a stable coexistence equilibrium"""
    x = sp.x_star
    v = eval_structural_functions(x, sp)
    d = structural_derivatives(x, sp)
    return d.dF1 < 0, d.dG > 0, v.f1 * d.df2 - d.df1 * v.f2 > 0


def coexistence_sufficient_stability(sp: ScaledParams) -> TheoremVerdict:
    """stable_by_theorem when all sufficient conditions hold"""
    if coexistence_equilibrium(sp) is None:
        raise NoCoexistence(f"no positive coexistence equilibrium at x_star={sp.x_star}, a2={sp.a2}")
    if all(theorem_criteria(sp)):
        return TheoremVerdict.STABLE_BY_THEOREM
    return TheoremVerdict.INCONCLUSIVE


def criterion_iii_parametric(sp: ScaledParams) -> Tuple[float, Optional[float]]:
    """Parametric form of the third sufficient condition and the a2 estimate it implies

    The estimate is only defined for b1 < b2.
    """
    a1, a2, b1, b2, x = sp.a1, sp.a2, sp.b1, sp.b2, sp.x_star
    value = (a1 * b1 - a2 * b2 + a1 * a2 * (b1 - b2) + 2.0 * b1 * b2 * (a1 - a2) * x
             - b1 * b2 * (a2 * b1 - a1 * b2) * x * x)
    estimate = None
    if b1 < b2:
        estimate = a1 * (b1 / b2) * (1.0 + b2 * x) / (1.0 + (a1 / b2) * (b2 - b1) + b1 * x)
    return value, estimate


# Invariant planes

def predator_prey_regime(sp: ScaledParams) -> PlaneRegime:
    """Limit cycle or globally stable equilibrium in the plane z = 0"""
    x_H = prey_isocline_peak(sp.a1, sp.b1)
    if math.isnan(x_H):
        return PlaneRegime(Plane.PREDATOR_PREY, Regime.GLOBALLY_STABLE_EQ, reason='F1_decreasing')
    regime = Regime.UNIQUE_LIMIT_CYCLE if sp.x_star < x_H else Regime.GLOBALLY_STABLE_EQ
    return PlaneRegime(Plane.PREDATOR_PREY, regime, {'x_H': x_H})


def competition_plane_regime(sp: ScaledParams) -> PlaneRegime:
    """Sufficient conditions ruling out cycles in the plane y = 0"""
    records = competition_equilibria(sp)
    witnesses: Dict[str, float] = {}

    planar_stable = None
    for record in records:
        if record.kind is EquilibriumKind.COMPETITION_PLUS:
            x_plus = record.point.x
            v = eval_structural_functions(x_plus, sp)
            indicator = v.f2 * structural_derivatives(x_plus, sp).dF2 - v.F2
            witnesses['x_plus'] = x_plus
            witnesses['planar_indicator'] = indicator
            planar_stable = indicator < 0

    peak = prey_isocline_peak(sp.a2, sp.b2)
    if not math.isnan(peak):
        witnesses['F2_peak'] = peak

    if sp.a2 < sp.k:
        reason = 'G_decreasing'
    elif math.isnan(peak) or peak >= 1.0:
        reason = 'F2_decreasing'
    elif not records:
        reason = 'NoInteriorEquilibria'
    else:
        return PlaneRegime(Plane.COMPETITION, Regime.CYCLES_POSSIBLE, witnesses, None, planar_stable)

    return PlaneRegime(Plane.COMPETITION, Regime.CONVERGES_TO_EQUILIBRIUM, witnesses, reason, planar_stable)
