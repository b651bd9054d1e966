#!/usr/bin/env python3
"""
Right-hand sides, structural functions and Jacobians

The isocline form is the saturated system with time rescaled by the
positive factor (1 + b2*x)/k. Both share orbits and equilibria, so the
stability analysis works with the isocline form throughout.
"""

import logging
import math
from typing import NamedTuple, Sequence, Tuple

import numpy as np

from .errors import DenominatorVanishes, ManifoldViolation
from .model import ChemostatParams, ChemostatState, ScaledParams

logger = logging.getLogger(__name__)


class State3(NamedTuple):
    """A point (x, y, z) of the scaled phase space"""
    x: float
    y: float
    z: float


class StructuralValues(NamedTuple):
    f1: float
    f2: float
    F1: float
    F2: float
    psi: float
    G: float


class StructuralDerivatives(NamedTuple):
    df1: float
    df2: float
    dF1: float
    dF2: float
    dpsi: float
    dG: float


# Full and reduced chemostat

def rhs_chemostat(s: Sequence[float], p: ChemostatParams) -> np.ndarray:
    """Vector field of the four-compartment chemostat"""
    S, X, Y, Z = (float(v) for v in s)
    autotroph_uptake = p.A1 * S * X / (1.0 + p.A1 * p.B1 * S)
    mixo_denominator = 1.0 + p.A2 * p.B2 * S + p.A4 * p.B4 * X
    mixo_uptake = p.A2 * S * Z / mixo_denominator
    mixo_grazing = p.A4 * X * Z / mixo_denominator
    herbivory = p.A3 * X * Y / (1.0 + p.A3 * p.B3 * X)

    return np.array([
        p.C * p.D - p.D * S - autotroph_uptake - mixo_uptake,
        autotroph_uptake - p.D * X - herbivory - mixo_grazing,
        herbivory - p.D * Y,
        mixo_uptake + mixo_grazing - p.D * Z,
    ])


def rhs_reduced(X: float, Y: float, Z: float, p: ChemostatParams) -> np.ndarray:
    """Chemostat restricted to the manifold S = C - X - Y - Z"""
    S = p.C - X - Y - Z
    if S < 0:
        raise ManifoldViolation(f"X + Y + Z = {X + Y + Z} exceeds C = {p.C}")
    return rhs_chemostat(ChemostatState(S, X, Y, Z), p)[1:]


def grazer_growth_rates(X: float, p: ChemostatParams) -> Tuple[float, float]:
    """Per-capita growth of herbivore and mixotroph on autotrophs alone"""
    psi1 = p.A3 * X / (1.0 + p.A3 * p.B3 * X) - p.D
    psi2 = p.A4 * X / (1.0 + p.A4 * p.B4 * X) - p.D
    return psi1, psi2


# Scaled systems

def herbivore_gain(sp: ScaledParams) -> float:
    """a1/(1 + b1*x_star), the herbivore growth coefficient"""
    return sp.a1 / (1.0 + sp.b1 * sp.x_star)


def rhs_scaled(s: Sequence[float], sp: ScaledParams) -> np.ndarray:
    """General scaled system with nutrient-handling terms"""
    x, y, z = (float(v) for v in s)
    n = x + y + z
    d1 = 1.0 + sp.gamma1 - sp.kappa1 * n
    d2 = 1.0 + sp.gamma2 - sp.kappa2 * n + sp.b2 * x
    if d1 <= 0 or d2 <= 0:
        raise DenominatorVanishes(f"denominators {d1:.6g}, {d2:.6g} at state ({x}, {y}, {z})")

    return np.array([
        x * (1.0 - n) / d1 - sp.a1 * x * y / (1.0 + sp.b1 * x) - sp.a2 * x * z / d2,
        herbivore_gain(sp) * (x - sp.x_star) / (1.0 + sp.b1 * x) * y,
        (sp.k * z * (sp.c - n) + sp.a2 * x * z) / d2,
    ])


def rhs_saturated(s: Sequence[float], sp: ScaledParams) -> np.ndarray:
    """Saturated almost logistic system in the original scaled time"""
    x, y, z = (float(v) for v in s)
    n = x + y + z
    sat1 = 1.0 + sp.b1 * x
    sat2 = 1.0 + sp.b2 * x

    return np.array([
        x * (1.0 - n) - sp.a1 * x * y / sat1 - sp.a2 * x * z / sat2,
        herbivore_gain(sp) * (x - sp.x_star) / sat1 * y,
        sp.k * z / sat2 * (sp.c - n + sp.a2 * x / sp.k),
    ])


def rhs_isocline(s: Sequence[float], sp: ScaledParams) -> np.ndarray:
    """Saturated system in isocline form (time rescaled by (1 + b2*x)/k)"""
    x, y, z = (float(v) for v in s)
    v = eval_structural_functions(x, sp)

    return np.array([
        x * (1.0 - x) * (1.0 + sp.b2 * x) / sp.k - y * v.f1 - z * v.f2,
        y * v.psi,
        z * (v.G - y - z),
    ])


def time_rescaling(x: float, sp: ScaledParams) -> float:
    """d(tau)/dt between the isocline form and the saturated system"""
    return (1.0 + sp.b2 * x) / sp.k


# Structural functions

def eval_structural_functions(x: float, sp: ScaledParams) -> StructuralValues:
    """f1, f2, F1, F2, psi and G at x"""
    sat1 = 1.0 + sp.b1 * x
    sat2 = 1.0 + sp.b2 * x
    return StructuralValues(
        f1=x * (1.0 + sp.a1 + sp.b1 * x) * sat2 / (sp.k * sat1),
        f2=x * (1.0 + sp.a2 + sp.b2 * x) / sp.k,
        F1=(1.0 - x) * sat1 / (1.0 + sp.a1 + sp.b1 * x),
        F2=(1.0 - x) * sat2 / (1.0 + sp.a2 + sp.b2 * x),
        psi=herbivore_gain(sp) / sp.k * (x - sp.x_star) * sat2 / sat1,
        G=sp.c - x + sp.a2 * x / sp.k,
    )


def _prey_isocline_slope(x: float, a: float, b: float) -> float:
    # d/dx of (1 - x)(1 + b x)/(1 + a + b x)
    denominator = 1.0 + a + b * x
    numerator = -(1.0 + b * x) + (1.0 - x) * b
    return (numerator * denominator - (1.0 - x) * (1.0 + b * x) * b) / denominator ** 2


def structural_derivatives(x: float, sp: ScaledParams) -> StructuralDerivatives:
    """Closed-form derivatives of the structural functions"""
    sat1 = 1.0 + sp.b1 * x
    sat2 = 1.0 + sp.b2 * x

    top = x * (1.0 + sp.a1 + sp.b1 * x) * sat2
    dtop = (1.0 + sp.a1 + sp.b1 * x) * sat2 + x * sp.b1 * sat2 + x * (1.0 + sp.a1 + sp.b1 * x) * sp.b2
    df1 = (dtop * sat1 - top * sp.b1) / (sp.k * sat1 ** 2)

    shifted = (x - sp.x_star) * sat2
    dshifted = sat2 + (x - sp.x_star) * sp.b2
    dpsi = herbivore_gain(sp) / sp.k * (dshifted * sat1 - shifted * sp.b1) / sat1 ** 2

    return StructuralDerivatives(
        df1=df1,
        df2=(1.0 + sp.a2 + 2.0 * sp.b2 * x) / sp.k,
        dF1=_prey_isocline_slope(x, sp.a1, sp.b1),
        dF2=_prey_isocline_slope(x, sp.a2, sp.b2),
        dpsi=dpsi,
        dG=-1.0 + sp.a2 / sp.k,
    )


def prey_isocline_peak(a: float, b: float) -> float:
    """Positive critical point of F = (1 - x)(1 + b x)/(1 + a + b x), or nan

    Exists iff b > 1 + 1/a.
    """
    if b <= 1.0 + 1.0 / a:
        return math.nan
    root = math.sqrt(a * a + a + a * b)
    # (-a - 1 + root)/b rewritten without cancellation
    return (a * b - a - 1.0) / ((root + a + 1.0) * b)


# Jacobians

def jacobian_saturated(s: Sequence[float], sp: ScaledParams) -> np.ndarray:
    """Jacobian of the isocline form"""
    x, y, z = (float(v) for v in s)
    v = eval_structural_functions(x, sp)
    d = structural_derivatives(x, sp)
    # derivative of x(1 - x)(1 + b2 x)/k, which equals f1*F1 and f2*F2
    dlogistic = ((1.0 - 2.0 * x) * (1.0 + sp.b2 * x) + x * (1.0 - x) * sp.b2) / sp.k

    return np.array([
        [dlogistic - y * d.df1 - z * d.df2, -v.f1, -v.f2],
        [y * d.dpsi, v.psi, 0.0],
        [z * d.dG, -z, v.G - y - 2.0 * z],
    ])


def jacobian_saturated_tau(s: Sequence[float], sp: ScaledParams) -> np.ndarray:
    """Jacobian of the saturated system in its original time"""
    x = float(s[0])
    phi = sp.k / (1.0 + sp.b2 * x)
    dphi = -sp.k * sp.b2 / (1.0 + sp.b2 * x) ** 2
    J = phi * jacobian_saturated(s, sp)
    J[:, 0] += rhs_isocline(s, sp) * dphi
    return J
