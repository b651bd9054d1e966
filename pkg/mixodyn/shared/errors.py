#!/usr/bin/env python3
"""
Exception hierarchy for mixodyn
"""


class MixodynError(Exception):
    """Base class for all domain errors"""


# Parameter problems

class InvalidParams(MixodynError, ValueError):
    """Parameter set violates a type invariant"""


class TradeOffViolated(InvalidParams):
    """Condition (A) or local condition (B) fails"""


class ScaleDegenerate(InvalidParams):
    """Dimensionless scaling is undefined for these parameters"""


class NotSaturated(InvalidParams):
    """Analysis requires gamma1 = kappa1 = gamma2 = kappa2 = 0"""


class LocalConditionViolated(InvalidParams):
    """f1(x_star) <= f2(x_star); coexistence formulas are undefined"""


# Evaluation problems

class ManifoldViolation(MixodynError, ValueError):
    """State lies off the invariant manifold S = C - X - Y - Z >= 0"""


class DenominatorVanishes(MixodynError, ArithmeticError):
    """A right-hand-side denominator is non-positive"""


class DegenerateQuadratic(MixodynError, ArithmeticError):
    """The competition quadratic has no x-dependence"""


class IllConditioned(MixodynError, ArithmeticError):
    """Closed-form eigenvalues failed their residual check"""


# Lookups

class StarAbsent(MixodynError, LookupError):
    """a2_star is undefined because a2_plus <= hat_a2"""


class NotAnEquilibrium(MixodynError, ValueError):
    """Point does not annihilate the right-hand side"""


class NoCoexistence(MixodynError, LookupError):
    """No positive coexistence equilibrium exists"""


class OnBoundary(MixodynError, ValueError):
    """A region-defining inequality is within the marginality tolerance"""


# Integration

class IntegrationError(MixodynError, RuntimeError):
    """Base class for integrator failures"""


class StepSizeUnderflow(IntegrationError):
    """Step size fell below the representable minimum"""


class NegativeStateBeyondTolerance(IntegrationError):
    """A coordinate went negative by more than abs_tol"""


class StepLimitExceeded(IntegrationError):
    """Integration used up its step allowance before t_end"""


# Files

class StorageError(MixodynError, OSError):
    """Reading parameters or writing results failed"""


# Command line

class UsageError(MixodynError, ValueError):
    """Malformed command line or run configuration"""
