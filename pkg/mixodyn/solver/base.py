#!/usr/bin/env python3
"""
Abstract base class for ODE integrators
"""

from abc import ABC, abstractmethod
from typing import Callable, Iterator, Tuple
import logging

import numpy as np

from ..config.settings import MAX_TOL, MIN_TOL
from ..shared.errors import InvalidParams

logger = logging.getLogger(__name__)

RHS = Callable[[float, np.ndarray], np.ndarray]


class Integrator(ABC):
    """Abstract base class for explicit one-step integrators"""

    def __init__(self, fun: RHS, rel_tol: float, abs_tol: float, max_steps: int, nonnegative: int = 0):
        for name, tol in (('rel_tol', rel_tol), ('abs_tol', abs_tol)):
            if not MIN_TOL <= tol <= MAX_TOL:
                raise InvalidParams(f"{name} must lie in [{MIN_TOL}, {MAX_TOL}], got {tol}")
        self.fun = fun
        self.rel_tol = rel_tol
        self.abs_tol = abs_tol
        self.max_steps = max_steps
        self.nonnegative = nonnegative
        self.accepted = 0
        self.rejected = 0

    @abstractmethod
    def advance(self, t: float, y: np.ndarray, h: float) -> np.ndarray:
        """Take one step of size h without error control"""
        pass

    @abstractmethod
    def steps(self, t0: float, y0: np.ndarray, t_end: float) -> Iterator[Tuple[float, np.ndarray]]:
        """Yield (t, y) after every accepted step, ending exactly at t_end"""
        pass

    def solve(self, t0: float, y0: np.ndarray, t_end: float) -> np.ndarray:
        """State at t_end"""
        y = np.asarray(y0, dtype=float)
        for _, y in self.steps(t0, y, t_end):
            pass
        return y
