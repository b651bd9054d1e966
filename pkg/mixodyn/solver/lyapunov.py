#!/usr/bin/env python3
"""
Largest Lyapunov exponent by tangent-vector renormalization
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..config.settings import settings
from ..shared.dynamics import jacobian_saturated_tau, rhs_saturated
from ..shared.errors import InvalidParams
from ..shared.model import ScaledParams
from .dormand_prince import DormandPrince54
from .trajectory import DEFAULT_START, check_start, make_solver

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LyapunovEstimate:
    exponent: float
    renormalization_interval: float
    transient_discarded: float
    horizon: float
    n_renormalizations: int

    def to_dict(self) -> dict:
        return {
            'exponent': self.exponent,
            'renormalization_interval': self.renormalization_interval,
            'transient_discarded': self.transient_discarded,
            'horizon': self.horizon,
            'n_renormalizations': self.n_renormalizations,
        }


def _variational(sp: ScaledParams):
    def fun(t: float, u: np.ndarray) -> np.ndarray:
        state, tangent = u[:3], u[3:]
        return np.concatenate((rhs_saturated(state, sp), jacobian_saturated_tau(state, sp) @ tangent))
    return fun


def largest_lyapunov_exponent(sp: ScaledParams, y0: Optional[Sequence[float]] = None,
                              horizon: Optional[float] = None, interval: float = 1.0,
                              transient: Optional[float] = None, rel_tol: Optional[float] = None,
                              abs_tol: Optional[float] = None) -> LyapunovEstimate:
    """Mean log stretch of a tangent vector over `horizon` after `transient`

    The transient (default: half the horizon) is integrated first without the
    tangent vector; the tangent is renormalized every `interval` time units.
    """
    horizon = settings.BUDGET if horizon is None else horizon
    transient = 0.5 * horizon if transient is None else transient
    if horizon <= 0 or interval <= 0 or transient < 0:
        raise InvalidParams(f"need horizon > 0, interval > 0, transient >= 0 "
                            f"(got {horizon}, {interval}, {transient})")
    if interval > horizon:
        raise InvalidParams(f"interval {interval} exceeds horizon {horizon}")

    state = check_start(DEFAULT_START if y0 is None else y0)
    if transient > 0:
        state = make_solver(sp, rel_tol, abs_tol).solve(0.0, state, transient)

    solver = DormandPrince54(
        _variational(sp),
        rel_tol=settings.REL_TOL if rel_tol is None else rel_tol,
        abs_tol=settings.ABS_TOL if abs_tol is None else abs_tol,
        nonnegative=3,
    )

    tangent = np.ones(3) / math.sqrt(3.0)
    n = int(horizon // interval)
    total = 0.0
    t = transient
    for _ in range(n):
        u = solver.solve(t, np.concatenate((state, tangent)), t + interval)
        t += interval
        state, tangent = u[:3], u[3:]
        stretch = float(np.linalg.norm(tangent))
        if stretch == 0.0 or not math.isfinite(stretch):
            raise InvalidParams(f"tangent vector degenerated at t={t:.6g} (norm {stretch})")
        total += math.log(stretch)
        tangent = tangent / stretch

    exponent = total / (n * interval)
    logger.debug(f"✅ Lyapunov estimate {exponent:.4g} from {n} renormalizations")
    return LyapunovEstimate(exponent, interval, transient, horizon, n)
