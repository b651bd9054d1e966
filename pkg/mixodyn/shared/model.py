#!/usr/bin/env python3
"""
Parameter types, trade-off conditions and nondimensionalization

Dimensional parameters describe the nutrient/autotroph/herbivore/mixotroph
chemostat with unit conversion factors. Scaled parameters are what every
analysis module works with.
"""

import dataclasses
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

from .errors import InvalidParams, NotSaturated, ScaleDegenerate, TradeOffViolated

logger = logging.getLogger(__name__)

# Relative tolerance for identities between derived scaled parameters
IDENTITY_RTOL = 1e-9

CHEMOSTAT_FIELDS = ('C', 'D', 'A1', 'A2', 'A3', 'A4', 'B1', 'B2', 'B3', 'B4')
SCALED_FIELDS = ('c', 'k', 'x_star', 'a1', 'a2', 'b1', 'b2',
                 'gamma1', 'kappa1', 'gamma2', 'kappa2', 'm')


class ChemostatState(NamedTuple):
    """Nutrient, autotroph, herbivore and mixotroph concentrations"""
    S: float
    X: float
    Y: float
    Z: float


@dataclass(frozen=True)
class ChemostatParams:
    """Dimensional parameters of the four-compartment chemostat"""

    C: float
    D: float
    A1: float
    A2: float
    A3: float
    A4: float
    B1: float = 0.0
    B2: float = 0.0
    B3: float = 0.0
    B4: float = 0.0
    M1: float = 1.0
    M2: float = 1.0
    M3: float = 1.0
    M4: float = 1.0

    def __post_init__(self):
        problems = []
        for name in ('C', 'D', 'A1', 'A2', 'A3', 'A4'):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                problems.append(f"{name} must be positive, got {value}")
        for name in ('B1', 'B2', 'B3', 'B4'):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                problems.append(f"{name} must be nonnegative, got {value}")
            elif 1.0 - self.D * value <= 0:
                problems.append(f"1 - D*{name} must be positive, got {1.0 - self.D * value}")
        for name in ('M1', 'M2', 'M3', 'M4'):
            if getattr(self, name) != 1.0:
                problems.append(f"{name} must equal 1")
        if problems:
            raise InvalidParams('; '.join(problems))

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ChemostatParams':
        """Build from a mapping with the field names as keys"""
        unknown = set(data) - set(CHEMOSTAT_FIELDS) - {'M1', 'M2', 'M3', 'M4'}
        if unknown:
            raise InvalidParams(f"Unknown chemostat fields: {sorted(unknown)}")
        try:
            return cls(**{key: float(value) for key, value in data.items()})
        except TypeError as e:
            raise InvalidParams(str(e)) from e

    def to_dict(self) -> Dict[str, float]:
        return {name: getattr(self, name) for name in CHEMOSTAT_FIELDS}

    @property
    def autotroph_uptake(self) -> float:
        """A1(1 - D*B1)"""
        return self.A1 * (1.0 - self.D * self.B1)

    @property
    def scale_factor(self) -> float:
        """A1*C*(1 - D*B1) - D, the time scale of the nondimensionalization"""
        return self.autotroph_uptake * self.C - self.D


@dataclass(frozen=True)
class ScaledParams:
    """Dimensionless parameters; m is derived from a1, b1 and x_star"""

    c: float
    k: float
    x_star: float
    a1: float
    a2: float
    b1: float = 0.0
    b2: float = 0.0
    gamma1: float = 0.0
    kappa1: float = 0.0
    gamma2: float = 0.0
    kappa2: float = 0.0
    m: Optional[float] = field(default=None, compare=False)

    def __post_init__(self):
        problems = []
        for name in ('c', 'k', 'x_star'):
            value = getattr(self, name)
            if not (math.isfinite(value) and 0.0 < value < 1.0):
                problems.append(f"{name} must lie in (0, 1), got {value}")
        for name in ('a1', 'a2'):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                problems.append(f"{name} must be positive, got {value}")
        for name in ('b1', 'b2', 'gamma1', 'kappa1', 'gamma2', 'kappa2'):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                problems.append(f"{name} must be nonnegative, got {value}")
        if problems:
            raise InvalidParams('; '.join(problems))

        if self.kappa1 > 0 and self.kappa2 > 0:
            ratio1 = self.gamma1 / self.kappa1
            ratio2 = self.gamma2 / self.kappa2
            if not math.isclose(ratio1, ratio2, rel_tol=IDENTITY_RTOL):
                raise InvalidParams(f"gamma2/kappa2 = {ratio2} differs from gamma1/kappa1 = {ratio1}")

        derived = self.a1 / (1.0 + self.b1 * self.x_star)
        if self.m is None:
            object.__setattr__(self, 'm', derived)
        elif not math.isclose(self.m, derived, rel_tol=IDENTITY_RTOL):
            raise InvalidParams(f"m = {self.m} differs from a1/(1 + b1*x_star) = {derived}")

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ScaledParams':
        """Build from a mapping with the field names as keys"""
        unknown = set(data) - set(SCALED_FIELDS)
        if unknown:
            raise InvalidParams(f"Unknown scaled fields: {sorted(unknown)}")
        try:
            return cls(**{key: None if value is None else float(value) for key, value in data.items()})
        except TypeError as e:
            raise InvalidParams(str(e)) from e

    def to_dict(self) -> Dict[str, float]:
        return {name: getattr(self, name) for name in SCALED_FIELDS}

    def replace(self, **changes) -> 'ScaledParams':
        """Copy with changed fields; m is re-derived unless given"""
        changes.setdefault('m', None)
        return dataclasses.replace(self, **changes)

    @property
    def is_saturated(self) -> bool:
        return self.gamma1 == self.kappa1 == self.gamma2 == self.kappa2 == 0.0

    def require_saturated(self) -> 'ScaledParams':
        if not self.is_saturated:
            raise NotSaturated("analysis requires gamma1 = kappa1 = gamma2 = kappa2 = 0")
        return self


@dataclass
class ValidationReport:
    """Truth values of the trade-off conditions with readable findings"""

    condition_A: bool
    condition_B_global: bool
    condition_B_local: bool
    messages: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """Conditions required for analysis (A and local B)"""
        return self.condition_A and self.condition_B_local


def _strict(lhs: float, rhs: float, label: str, messages: List[str]) -> bool:
    if lhs > rhs:
        messages.append(f"✅ {label} holds ({lhs:.6g} > {rhs:.6g})")
        return True
    if lhs == rhs:
        messages.append(f"⚠️ {label} fails on its equality boundary ({lhs:.6g} = {rhs:.6g})")
    else:
        messages.append(f"❌ {label} fails ({lhs:.6g} <= {rhs:.6g})")
    return False


def validate_trade_offs(p: ChemostatParams) -> ValidationReport:
    """Evaluate condition (A) and both forms of condition (B)"""
    messages: List[str] = []

    condition_A = _strict(
        p.A1 - p.A2, p.D * (p.A1 * p.B1 - p.A2 * p.B2),
        "condition (A): A1 - A2 > D(A1*B1 - A2*B2)", messages)

    searches_faster = _strict(p.A3, p.A4, "condition (B) global, part 1: A3 > A4", messages)
    bounded_handling = _strict(
        p.A3 - p.A4, p.A3 * p.A4 * p.C * (p.B3 - p.B4),
        "condition (B) global, part 2: A3 - A4 > A3*A4*C(B3 - B4)", messages)
    condition_B_global = searches_faster and bounded_handling

    condition_B_local = _strict(
        p.A3 - p.A4, p.D * (p.A3 * p.B3 - p.A4 * p.B4),
        "condition (B) local: A3 - A4 > D(A3*B3 - A4*B4)", messages)

    if condition_B_global and not condition_B_local:
        herbivore_level = p.D / (p.A3 * (1.0 - p.D * p.B3))
        messages.append(
            f"⚠️ herbivore equilibrium level X* = {herbivore_level:.6g} exceeds C = {p.C:.6g}; "
            "the global condition says nothing there")

    return ValidationReport(condition_A, condition_B_global, condition_B_local, messages)


def single_species_levels(p: ChemostatParams) -> Tuple[float, float]:
    """Autotroph and mixotroph levels when each grows alone on nutrient

    Condition (A) is the statement that the first exceeds the second.
    """
    u1 = p.autotroph_uptake
    u2 = p.A2 * (1.0 - p.D * p.B2)
    return (u1 * p.C - p.D) / u1, (u2 * p.C - p.D) / u2


def nondimensionalize(p: ChemostatParams, enforce_trade_offs: bool = True) -> ScaledParams:
    """Map dimensional parameters to the dimensionless model"""
    if enforce_trade_offs:
        report = validate_trade_offs(p)
        if not report.ok:
            failed = [m for m in report.messages if not m.startswith('✅')]
            raise TradeOffViolated('; '.join(failed))

    E = p.scale_factor
    if E <= 0:
        raise ScaleDegenerate(f"A1*C*(1 - D*B1) - D = {E} <= 0: autotroph cannot persist")

    u1 = p.autotroph_uptake
    u2 = p.A2 * (1.0 - p.D * p.B2)
    u3 = p.A3 * (1.0 - p.D * p.B3)
    u4 = p.A4 * (1.0 - p.D * p.B4)

    c = (u1 / u2) * (u2 * p.C - p.D) / E
    x_star = p.A1 * p.D * (1.0 - p.D * p.B1) / (u3 * E)
    if c <= 0:
        raise ScaleDegenerate(f"c = {c} <= 0: mixotroph cannot persist on nutrient alone")
    if x_star >= 1:
        raise ScaleDegenerate(f"x_star = {x_star} >= 1: herbivore cannot persist")

    try:
        scaled = ScaledParams(
            c=c,
            k=u2 / u1,
            x_star=x_star,
            a1=p.A3 / u1,
            a2=u4 / u1,
            b1=p.A3 * p.B3 * E / u1,
            b2=p.A4 * p.B4 * E / u1,
            gamma1=p.A1 * p.B1 * p.C,
            kappa1=p.B1 * E / (1.0 - p.D * p.B1),
            gamma2=p.A2 * p.B2 * p.C,
            kappa2=p.A2 * p.B2 * E / u1,
            m=u3 / u1,
        )
    except InvalidParams as e:
        raise ScaleDegenerate(str(e)) from e

    logger.debug(f"🔍 Scaled parameters: {scaled}")
    return scaled


def mixotroph_efficiency_bound(sp: ScaledParams) -> float:
    """Upper bound on a2 implied by local condition (B)"""
    return sp.a1 * (1.0 + sp.b2 * sp.x_star) / (1.0 + sp.b1 * sp.x_star)
