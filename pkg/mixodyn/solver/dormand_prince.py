#!/usr/bin/env python3
"""
Dormand-Prince 5(4) integrator with PI step-size control
"""

import logging
import math
from typing import Iterator, Optional, Tuple

import numpy as np

from ..shared.errors import NegativeStateBeyondTolerance, StepLimitExceeded, StepSizeUnderflow
from .base import RHS, Integrator

logger = logging.getLogger(__name__)

# Butcher tableau
C = np.array([0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0])
A = (
    (),
    (1.0 / 5.0,),
    (3.0 / 40.0, 9.0 / 40.0),
    (44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0),
    (19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0),
    (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0),
    (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0),
)
# fifth-order weights equal the last row (first same as last)
B = np.array(A[6] + (0.0,))
# difference between fifth- and fourth-order weights
E = np.array([71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0,
              -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0])

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 5.0
# PI controller exponents for an order-4 error estimate
ALPHA = 0.7 / 5.0
BETA = 0.4 / 5.0
DEFAULT_MAX_STEPS = 5_000_000


class DormandPrince54(Integrator):
    """Embedded explicit Runge-Kutta pair of orders 5 and 4"""

    def __init__(self, fun: RHS, rel_tol: float = 1e-9, abs_tol: float = 1e-11,
                 max_steps: int = DEFAULT_MAX_STEPS, nonnegative: int = 0,
                 first_step: Optional[float] = None):
        super().__init__(fun, rel_tol, abs_tol, max_steps, nonnegative)
        self.h = first_step

    def _stages(self, t: float, y: np.ndarray, h: float, k1: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        K = np.empty((7, y.size))
        K[0] = k1
        for i in range(1, 7):
            K[i] = self.fun(t + C[i] * h, y + h * np.dot(A[i], K[:i]))
        return K, y + h * np.dot(B, K)

    def advance(self, t: float, y: np.ndarray, h: float) -> np.ndarray:
        """One step of the fifth-order solution"""
        y = np.asarray(y, dtype=float)
        _, y_new = self._stages(t, y, h, self.fun(t, y))
        return y_new

    def _initial_step(self, t: float, y: np.ndarray, f: np.ndarray, span: float) -> float:
        scale = self.abs_tol + self.rel_tol * np.abs(y)
        d0 = float(np.max(np.abs(y) / scale))
        d1 = float(np.max(np.abs(f) / scale))
        h = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
        return min(h, abs(span))

    def _error_norm(self, K: np.ndarray, h: float, y: np.ndarray, y_new: np.ndarray) -> float:
        # componentwise, so coordinates near zero are held to abs_tol
        scale = self.abs_tol + self.rel_tol * np.maximum(np.abs(y), np.abs(y_new))
        return float(np.max(np.abs(h * np.dot(E, K)) / scale))

    def _clamp(self, t: float, y_new: np.ndarray) -> np.ndarray:
        if not self.nonnegative:
            return y_new
        head = y_new[:self.nonnegative]
        if np.any(head < 0):
            worst = float(np.min(head))
            if worst < -self.abs_tol:
                raise NegativeStateBeyondTolerance(f"coordinate {worst:.3g} at t={t:.6g}")
            y_new = y_new.copy()
            y_new[:self.nonnegative] = np.maximum(head, 0.0)
        return y_new

    def steps(self, t0: float, y0: np.ndarray, t_end: float) -> Iterator[Tuple[float, np.ndarray]]:
        """Yield (t, y) after each accepted step"""
        t = float(t0)
        y = np.asarray(y0, dtype=float)
        f = self.fun(t, y)
        h = self.h if self.h else self._initial_step(t, y, f, t_end - t)
        previous_error = 1.0
        taken = 0

        while t < t_end:
            if taken >= self.max_steps:
                raise StepLimitExceeded(f"{self.max_steps} steps used before t={t_end:.6g} (at t={t:.6g})")
            if h < 1e-14 * max(1.0, abs(t)):
                raise StepSizeUnderflow(f"step {h:.3g} at t={t:.6g}")

            last = t + h >= t_end
            step = t_end - t if last else h

            K, y_new = self._stages(t, y, step, f)
            error = self._error_norm(K, step, y, y_new)

            if error <= 1.0:
                factor = MAX_FACTOR if error == 0 else SAFETY * error ** -ALPHA * previous_error ** BETA
                factor = min(MAX_FACTOR, max(MIN_FACTOR, factor))
                previous_error = max(error, 1e-4)

                t = t_end if last else t + step
                y = self._clamp(t, y_new)
                f = K[6] if y is y_new else self.fun(t, y)
                self.accepted += 1
                taken += 1
                if not last or step >= h:
                    h = step * factor
                self.h = h
                yield t, y
            else:
                factor = max(MIN_FACTOR, SAFETY * error ** -ALPHA)
                h = step * min(1.0, factor)
                self.rejected += 1
                logger.debug(f"🔍 Rejected step at t={t:.6g} (error {error:.3g}); retrying with h={h:.3g}")

        if not math.isfinite(float(np.sum(y))):
            raise StepSizeUnderflow(f"non-finite state at t={t:.6g}")
