#!/usr/bin/env python3
"""
Runtime settings for mixodyn
"""

import os
import logging
from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)

MIN_TOL = 1e-13
MAX_TOL = 1e-3
LOG_LEVELS = ('CRITICAL', 'ERROR', 'WARNING', 'INFO', 'DEBUG')


class Settings:
    """Process-wide defaults read from the environment (and a local .env file)"""

    def __init__(self):
        # Sweep workers
        self.THREADS = int(os.getenv('MIXODYN_THREADS', os.cpu_count() or 1))

        # Integrator tolerances
        self.REL_TOL = float(os.getenv('MIXODYN_REL_TOL', 1e-9))
        self.ABS_TOL = float(os.getenv('MIXODYN_ABS_TOL', 1e-11))

        # Simulated time budgets
        self.BUDGET = float(os.getenv('MIXODYN_BUDGET', 2000.0))
        self.SIM_BUDGET = float(os.getenv('MIXODYN_SIM_BUDGET', 3000.0))

        self.LOG_LEVEL = os.getenv('MIXODYN_LOG_LEVEL', 'INFO').strip('"\'').upper()

        logger.debug(f"threads={self.THREADS} rel_tol={self.REL_TOL} abs_tol={self.ABS_TOL}")

    def validate(self):
        """Validate settings ranges"""
        if self.THREADS < 1:
            raise ValueError(f"MIXODYN_THREADS must be at least 1, got {self.THREADS}")

        for name, tol in (('MIXODYN_REL_TOL', self.REL_TOL), ('MIXODYN_ABS_TOL', self.ABS_TOL)):
            if not MIN_TOL <= tol <= MAX_TOL:
                raise ValueError(f"{name} must lie in [{MIN_TOL}, {MAX_TOL}], got {tol}")

        if self.BUDGET <= 0 or self.SIM_BUDGET <= 0:
            raise ValueError("Simulation budgets must be positive")

        if self.LOG_LEVEL not in LOG_LEVELS:
            raise ValueError(f"Unknown log level: {self.LOG_LEVEL}")


# Global settings instance
settings = Settings()
