#!/usr/bin/env python3
"""
Trajectory integration of the saturated system
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..config.settings import settings
from ..shared.dynamics import State3, rhs_isocline, rhs_saturated
from ..shared.errors import InvalidParams
from ..shared.model import ScaledParams
from .dormand_prince import DEFAULT_MAX_STEPS, DormandPrince54

logger = logging.getLogger(__name__)

DEFAULT_START = State3(0.5, 0.25, 0.2)
SYSTEMS = {
    'saturated': rhs_saturated,
    'isocline': rhs_isocline,
}


@dataclass
class Trajectory:
    """Accepted steps of one integration"""

    times: np.ndarray
    states: np.ndarray
    accepted: int
    rejected: int

    @property
    def final_state(self) -> State3:
        return State3(*(float(v) for v in self.states[-1]))

    def records(self) -> List[Dict[str, float]]:
        """Rows for the tau,x,y,z export"""
        return [
            {'tau': float(t), 'x': float(s[0]), 'y': float(s[1]), 'z': float(s[2])}
            for t, s in zip(self.times, self.states)
        ]


def make_solver(sp: ScaledParams, rel_tol: Optional[float] = None, abs_tol: Optional[float] = None,
                system: str = 'saturated', max_steps: int = DEFAULT_MAX_STEPS) -> DormandPrince54:
    """Integrator for one of the scaled vector fields, clamping roundoff negatives"""
    sp.require_saturated()
    if system not in SYSTEMS:
        raise InvalidParams(f"Unknown system '{system}' (expected one of {sorted(SYSTEMS)})")
    vector_field = SYSTEMS[system]
    return DormandPrince54(
        lambda t, y: vector_field(y, sp),
        rel_tol=settings.REL_TOL if rel_tol is None else rel_tol,
        abs_tol=settings.ABS_TOL if abs_tol is None else abs_tol,
        max_steps=max_steps,
        nonnegative=3,
    )


def check_start(y0: Sequence[float]) -> np.ndarray:
    start = np.asarray(y0, dtype=float)
    if start.shape != (3,) or not np.all(np.isfinite(start)):
        raise InvalidParams(f"Initial state must be three finite numbers, got {y0}")
    if np.any(start < 0):
        raise InvalidParams(f"Initial state must be nonnegative, got {tuple(start)}")
    return start


def integrate(sp: ScaledParams, y0: Sequence[float] = DEFAULT_START, t_end: float = 1000.0,
              rel_tol: Optional[float] = None, abs_tol: Optional[float] = None,
              system: str = 'saturated') -> Trajectory:
    """Integrate from y0 over [0, t_end], keeping every accepted step"""
    if t_end <= 0:
        raise InvalidParams(f"t_end must be positive, got {t_end}")
    start = check_start(y0)
    solver = make_solver(sp, rel_tol, abs_tol, system)

    times = [0.0]
    states = [start]
    for t, y in solver.steps(0.0, start, t_end):
        times.append(t)
        states.append(y)

    logger.debug(f"✅ Integrated to t={t_end:g}: {solver.accepted} accepted, {solver.rejected} rejected steps")
    return Trajectory(np.array(times), np.array(states), solver.accepted, solver.rejected)
