#!/usr/bin/env python3
"""
Named parameter sets and the marked points of the region diagram
"""

from typing import Dict, List

from .errors import InvalidParams
from .model import ScaledParams

# Base set of the (x_star, a2) diagram; x_star and a2 vary per point
DIAGRAM_BASE = {'c': 0.2, 'k': 0.95, 'a1': 8.5, 'b1': 50.0, 'b2': 55.0}

PRESETS = {
    'diagram': {
        'description': 'Region diagram base set at the two-competition-equilibria point',
        'params': dict(DIAGRAM_BASE, x_star=0.05, a2=4.5),
    },
    'multiple_attractors': {
        'description': 'Mixotroph carrying capacity and competition equilibrium both stable',
        'params': {'c': 0.8, 'k': 0.75, 'x_star': 0.4, 'a1': 8.5, 'b1': 50.0, 'a2': 0.4, 'b2': 20.0},
    },
}

# (x_star, a2) points singled out in the diagram, with the region they lie in
MARKED_POINTS = {
    'j': {'x_star': 0.26, 'a2': 3.9, 'region': 'j', 'note': 'blue circle; herbivore out-competed'},
    'd': {'x_star': 0.05, 'a2': 4.5, 'region': 'd', 'note': 'converges to mixotroph carrying capacity'},
    'h': {'x_star': 0.08, 'a2': 3.8, 'region': 'h', 'note': 'competition cycle, herbivore lost'},
    'g': {'x_star': 0.09, 'a2': 3.7, 'region': 'g', 'note': 'oscillatory coexistence'},
    'k1': {'x_star': 0.1, 'a2': 3.5, 'region': 'k', 'note': 'oscillatory coexistence'},
    'k2': {'x_star': 0.18, 'a2': 2.8, 'region': 'k', 'note': 'coexistence just lost stability'},
    'k3': {'x_star': 0.15, 'a2': 3.0, 'region': 'k', 'note': 'irregular-looking oscillations'},
    'q': {'x_star': 0.15, 'a2': 2.3, 'region': 'q', 'note': 'red star; coexistence without equilibrium'},
    'u': {'x_star': 0.02, 'a2': 0.6, 'region': 'u', 'note': 'oscillatory coexistence'},
    'w': {'x_star': 0.05, 'a2': 0.5, 'region': 'w', 'note': 'oscillatory coexistence'},
    'x': {'x_star': 0.2, 'a2': 0.5, 'region': 'x', 'note': 'predator-prey cycle, mixotroph lost'},
    'r': {'x_star': 0.255, 'a2': 0.8, 'region': 'r', 'note': 'predator-prey cycle, mixotroph lost'},
}

for _name, _point in MARKED_POINTS.items():
    PRESETS[f"region_{_name}"] = {
        'description': f"Region ({_point['region']}): {_point['note']}",
        'params': dict(DIAGRAM_BASE, x_star=_point['x_star'], a2=_point['a2']),
    }


def preset_names() -> List[str]:
    return sorted(PRESETS)


def preset_values(name: str) -> Dict[str, float]:
    """Raw parameter dictionary of a preset (a copy)"""
    if name not in PRESETS:
        raise InvalidParams(f"Unknown preset '{name}' (available: {', '.join(preset_names())})")
    return dict(PRESETS[name]['params'])


def load_preset(name: str) -> ScaledParams:
    return ScaledParams.from_dict(preset_values(name))


def diagram_base() -> ScaledParams:
    """Diagram base set; x_star and a2 are placeholders to be replaced"""
    return load_preset('diagram')
