"""
Trajectory integration, attractor detection and Lyapunov estimation
"""

from .dormand_prince import DormandPrince54
from .trajectory import Trajectory, integrate
from .attractor import AttractorReport, AttractorKind, detect_attractor
from .lyapunov import LyapunovEstimate, largest_lyapunov_exponent

__all__ = [
    'DormandPrince54',
    'Trajectory',
    'integrate',
    'AttractorReport',
    'AttractorKind',
    'detect_attractor',
    'LyapunovEstimate',
    'largest_lyapunov_exponent',
]
