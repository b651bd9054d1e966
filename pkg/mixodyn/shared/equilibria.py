#!/usr/bin/env python3
"""
Equilibria of the saturated system and the a2 thresholds that organise them
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy import optimize

from .dynamics import State3, eval_structural_functions, jacobian_saturated, rhs_saturated, structural_derivatives
from .errors import DegenerateQuadratic, LocalConditionViolated, StarAbsent
from .model import ScaledParams

logger = logging.getLogger(__name__)

# Roots this close to 0 or 1 are treated as lying on the boundary
ROOT_EDGE = 1e-12
STAR_XTOL = 1e-10
HOPF_XTOL = 1e-8
HOPF_SCAN_POINTS = 400


class EquilibriumKind(Enum):
    WASHOUT = 'Washout'
    CARRYING_CAPACITY = 'CarryingCapacity'
    MIXOTROPH_CC = 'MixotrophCC'
    PREDATOR_PREY = 'PredatorPrey'
    COMPETITION_MINUS = 'CompetitionMinus'
    COMPETITION_PLUS = 'CompetitionPlus'
    COEXISTENCE = 'Coexistence'


@dataclass(frozen=True)
class EquilibriumRecord:
    """An equilibrium with its kind and isocline-form Jacobian"""

    point: State3
    kind: EquilibriumKind
    jacobian: np.ndarray = field(compare=False, repr=False)

    def residual(self, sp: ScaledParams) -> float:
        """Max-norm of the saturated right-hand side at the point"""
        return float(np.max(np.abs(rhs_saturated(self.point, sp))))

    def to_dict(self) -> dict:
        return {
            'kind': self.kind.value,
            'point': {'x': self.point.x, 'y': self.point.y, 'z': self.point.z},
        }


def _record(point: Tuple[float, float, float], kind: EquilibriumKind, sp: ScaledParams) -> EquilibriumRecord:
    state = State3(*point)
    return EquilibriumRecord(state, kind, jacobian_saturated(state, sp))


def boundary_equilibria(sp: ScaledParams) -> List[EquilibriumRecord]:
    """Washout, both carrying capacities and the predator-prey equilibrium"""
    sp.require_saturated()
    F1 = eval_structural_functions(sp.x_star, sp).F1
    return [
        _record((0.0, 0.0, 0.0), EquilibriumKind.WASHOUT, sp),
        _record((1.0, 0.0, 0.0), EquilibriumKind.CARRYING_CAPACITY, sp),
        _record((0.0, 0.0, sp.c), EquilibriumKind.MIXOTROPH_CC, sp),
        _record((sp.x_star, F1, 0.0), EquilibriumKind.PREDATOR_PREY, sp),
    ]


# Competition plane

def q_coefficients(sp: ScaledParams, a2: Optional[float] = None) -> Tuple[float, float, float]:
    """(q0, q1, q2) of q(x) = q0 + q1 x + q2 x^2, optionally at another a2"""
    a2 = sp.a2 if a2 is None else a2
    c, k, b2 = sp.c, sp.k, sp.b2
    q0 = k * (c * a2 - (1.0 - c))
    q1 = a2 * a2 + a2 * (1.0 - k) - b2 * k * (1.0 - c)
    q2 = a2 * b2
    return q0, q1, q2


def q_poly(x: float, sp: ScaledParams) -> float:
    """q(x); its zeros in (0, 1) are the competition equilibria"""
    q0, q1, q2 = q_coefficients(sp)
    return q0 + x * (q1 + x * q2)


def q_star(a2: float, sp: ScaledParams) -> float:
    """4 q2 q0 - q1^2 as a function of a2 (sign of q at its minimum, times 4 a2 b2)"""
    q0, q1, q2 = q_coefficients(sp, a2)
    return 4.0 * q2 * q0 - q1 * q1


def _quadratic_roots(q0: float, q1: float, q2: float) -> List[float]:
    if q2 == 0.0:
        if q1 == 0.0:
            raise DegenerateQuadratic(f"q is constant ({q0})")
        return [-q0 / q1]

    discriminant = q1 * q1 - 4.0 * q2 * q0
    if discriminant <= 0.0:
        return []
    t = -0.5 * (q1 + math.copysign(math.sqrt(discriminant), q1))
    roots = [t / q2]
    if t != 0.0:
        roots.append(q0 / t)
    return sorted(roots)


def competition_equilibria(sp: ScaledParams) -> List[EquilibriumRecord]:
    """Interior equilibria of the competition plane y = 0, ordered by x"""
    sp.require_saturated()
    q0, q1, q2 = q_coefficients(sp)

    records = []
    for root in _quadratic_roots(q0, q1, q2):
        if not ROOT_EDGE < root < 1.0 - ROOT_EDGE:
            continue
        # sign of q' is the sign of G' - F2'; positive means no saddle in the plane
        kind = EquilibriumKind.COMPETITION_PLUS if q1 + 2.0 * q2 * root > 0 else EquilibriumKind.COMPETITION_MINUS
        records.append(_record((root, 0.0, eval_structural_functions(root, sp).F2), kind, sp))
    return records


# Interior

def coexistence_point(sp: ScaledParams) -> Tuple[float, float]:
    """(y_star, z_star) from Cramer's rule; may be nonpositive"""
    v = eval_structural_functions(sp.x_star, sp)
    spread = v.f1 - v.f2
    if spread <= 0:
        raise LocalConditionViolated(f"f1(x_star) - f2(x_star) = {spread} <= 0")
    y_star = v.f2 * (v.F2 - v.G) / spread
    z_star = v.f1 * (v.G - v.F1) / spread
    return y_star, z_star


def coexistence_equilibrium(sp: ScaledParams) -> Optional[EquilibriumRecord]:
    """The interior equilibrium if it has positive coordinates"""
    sp.require_saturated()
    y_star, z_star = coexistence_point(sp)
    if y_star > 0 and z_star > 0:
        return _record((sp.x_star, y_star, z_star), EquilibriumKind.COEXISTENCE, sp)
    return None


def all_equilibria(sp: ScaledParams) -> List[EquilibriumRecord]:
    """Boundary, competition and (if present) coexistence equilibria"""
    records = boundary_equilibria(sp) + competition_equilibria(sp)
    try:
        interior = coexistence_equilibrium(sp)
    except LocalConditionViolated as e:
        logger.warning(f"⚠️ Skipping coexistence equilibrium: {e}")
        interior = None
    if interior is not None:
        records.append(interior)
    return records


# Thresholds

def _competition_hopf_indicator(a2: float, sp: ScaledParams) -> float:
    # f2 F2' - F2 at the larger competition root; negative means planar-stable
    q0, q1, q2 = q_coefficients(sp, a2)
    roots = [r for r in _quadratic_roots(q0, q1, q2) if 0.0 < r < 1.0]
    if not roots:
        return math.nan
    shifted = sp.replace(a2=a2)
    x_plus = roots[-1]
    v = eval_structural_functions(x_plus, shifted)
    return v.f2 * structural_derivatives(x_plus, shifted).dF2 - v.F2


@lru_cache(maxsize=256)
def _hopf_comp_a2(c: float, k: float, b2: float) -> Optional[float]:
    # depends on the competition plane only
    plane = ScaledParams(c=c, k=k, x_star=0.5, a1=1.0, a2=1.0, b2=b2)
    check = k * (1.0 - c)
    hat = (1.0 - c) / c
    grid = np.linspace(check, hat, HOPF_SCAN_POINTS + 2)[1:-1]
    values = [_competition_hopf_indicator(a2, plane) for a2 in grid]

    for lo, hi, v_lo, v_hi in zip(grid[:-1], grid[1:], values[:-1], values[1:]):
        if math.isfinite(v_lo) and math.isfinite(v_hi) and v_lo < 0 <= v_hi:
            return optimize.brentq(_competition_hopf_indicator, lo, hi, args=(plane,), xtol=HOPF_XTOL)

    logger.debug("🔍 No planar stability loss of the competition equilibrium below hat_a2")
    return None


def hopf_comp_a2(sp: ScaledParams) -> Optional[float]:
    """a2 in (check_a2, hat_a2) where the competition equilibrium loses planar stability"""
    return _hopf_comp_a2(sp.c, sp.k, sp.b2)


@dataclass(frozen=True)
class ThresholdSet:
    """a2 thresholds for one scaled parameter set"""

    check_a2: float
    hat_a2: float
    breve_a2: float
    tilde_a2: float
    underline_a2: float
    a2_plus: float
    a2_minus: float
    a2_star: Optional[float]
    hopf_comp_a2: Optional[float]
    base: ScaledParams = field(repr=False, compare=False)

    def star(self) -> float:
        """a2_star, raising StarAbsent when the two-equilibria band does not exist"""
        if self.a2_star is None:
            raise StarAbsent(f"a2_plus = {self.a2_plus:.6g} <= hat_a2 = {self.hat_a2:.6g}")
        return self.a2_star

    def x_check(self, a2: float) -> float:
        """Minimum point of q at a2 (nan when q is linear)"""
        _, q1, q2 = q_coefficients(self.base, a2)
        return -q1 / (2.0 * q2) if q2 else math.nan

    def q_at_check(self, a2: float) -> float:
        """q at its minimum point; negative inside the two-equilibria band"""
        if not self.base.b2:
            return math.nan
        return q_star(a2, self.base) / (4.0 * a2 * self.base.b2)

    def band_check(self) -> Callable[[float], bool]:
        """Predicate on a2: q has its minimum in (0, 1) and dips below zero there"""
        return lambda a2: 0.0 < self.x_check(a2) < 1.0 and self.q_at_check(a2) < 0.0

    def to_dict(self) -> dict:
        return {
            'check_a2': self.check_a2,
            'hat_a2': self.hat_a2,
            'breve_a2': self.breve_a2,
            'tilde_a2': self.tilde_a2,
            'underline_a2': self.underline_a2,
            'a2_plus': self.a2_plus,
            'a2_minus': self.a2_minus,
            'a2_star': self.a2_star,
            'hopf_comp_a2': self.hopf_comp_a2,
        }


def breve_a2(sp: ScaledParams) -> float:
    """a2 at which the coexistence equilibrium meets the predator-prey plane"""
    alpha = sp.a1 / (1.0 + sp.b1 * sp.x_star)
    x, k, c = sp.x_star, sp.k, sp.c
    return (k * (1.0 - x) - k * (c - x) * (1.0 + alpha)) / (x * (1.0 + alpha))


def tilde_a2(sp: ScaledParams) -> float:
    """a2 at which the coexistence equilibrium meets the competition plane"""
    x, k, c = sp.x_star, sp.k, sp.c
    beta = 1.0 + sp.b2 * x
    w = (1.0 - k / beta) * x + k * c / beta
    return 2.0 * k * (1.0 - c) / (w + math.sqrt(w * w + 4.0 * x * k * (1.0 - c) / beta))


def a2_thresholds(sp: ScaledParams) -> ThresholdSet:
    """Closed-form and numerical a2 thresholds"""
    sp.require_saturated()
    c, k, b2 = sp.c, sp.k, sp.b2

    check = k * (1.0 - c)
    hat = (1.0 - c) / c

    root = math.sqrt((1.0 - k) ** 2 + 4.0 * b2 * k * (1.0 - c))
    a2_plus = 2.0 * b2 * k * (1.0 - c) / ((1.0 - k) + root)
    a2_minus = -0.5 * ((1.0 - k) + root)

    shifted = 1.0 - k + b2
    underline = 2.0 * b2 * k * (1.0 - c) / (shifted + math.sqrt(shifted ** 2 + 4.0 * b2 * k * (1.0 - c)))

    star = None
    if a2_plus > hat:
        star = optimize.bisect(q_star, hat, a2_plus, args=(sp,), xtol=STAR_XTOL)
    else:
        logger.debug(f"🔍 a2_star absent: a2_plus = {a2_plus:.6g} <= hat_a2 = {hat:.6g}")

    return ThresholdSet(
        check_a2=check,
        hat_a2=hat,
        breve_a2=breve_a2(sp),
        tilde_a2=tilde_a2(sp),
        underline_a2=underline,
        a2_plus=a2_plus,
        a2_minus=a2_minus,
        a2_star=star,
        hopf_comp_a2=hopf_comp_a2(sp),
        base=sp,
    )


def coexistence_window_nonempty(sp: ScaledParams) -> bool:
    """True iff breve_a2 < tilde_a2"""
    sp.require_saturated()
    alpha = sp.a1 / (1.0 + sp.b1 * sp.x_star)
    x = sp.x_star
    s = ((1.0 - x) - (1.0 + alpha) * (sp.c - x)) / ((1.0 + sp.b2 * x) * (1.0 + alpha))
    return sp.k * s < x * alpha


def predicted_competition_count(sp: ScaledParams, thresholds: Optional[ThresholdSet] = None) -> int:
    """Number of competition equilibria predicted from the a2 thresholds"""
    sp.require_saturated()
    if thresholds is None:
        thresholds = a2_thresholds(sp)
    # at hat_a2 the second root sits at x = 0
    if thresholds.check_a2 < sp.a2 <= thresholds.hat_a2:
        return 1
    if thresholds.a2_star is not None and thresholds.hat_a2 < sp.a2 < thresholds.a2_star:
        return 2
    return 0
