#!/usr/bin/env python3
"""
Region table for the (x_star, a2) plane and the lookup from signatures to labels
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple

# label -> (predator-prey plane, competition plane, global dynamics)
REGION_TABLE = {
    'a': ('Unique limit cycle unstable w.r.t. mixotrophic invasion', '(0,0,c) stable',
          '(0,0,c) stable; no coexistence equilibria'),
    'b': ('Equilibrium unstable w.r.t. mixotrophic invasion', '(0,0,c) stable',
          '(0,0,c) stable; no coexistence equilibria'),
    'c': ('Unique limit cycle unstable w.r.t. mixotrophic invasion',
          'Alternative competition equilibria, all unstable w.r.t. herbivore invasion',
          '(0,0,c) stable; no coexistence equilibria'),
    'd': ('Unique limit cycle unstable w.r.t. mixotrophic invasion',
          'Alternative competition equilibria; (x+,0,F2(x+)) unstable w.r.t. herbivore invasion',
          '(0,0,c) stable; unstable coexistence equilibrium exists'),
    'e': ('Unique limit cycle unstable w.r.t. mixotrophic invasion',
          'Alternative competition equilibria, all stable w.r.t. herbivore invasion',
          '(0,0,c) stable; no coexistence equilibria'),
    'f': ('Equilibrium unstable w.r.t. mixotrophic invasion',
          'Alternative competition equilibria, all stable w.r.t. herbivore invasion',
          '(0,0,c) stable; no coexistence equilibria'),
    'g': ('Unique limit cycle unstable w.r.t. mixotrophic invasion',
          'Limit cycle unstable w.r.t. herbivore invasion',
          'Oscillatory coexistence; unstable coexistence equilibrium exists'),
    'h': ('Unique limit cycle unstable w.r.t. mixotrophic invasion', 'Stable competition limit cycle',
          'Stable competition limit cycle; unstable coexistence equilibrium exists'),
    'i': ('Unique limit cycle unstable w.r.t. mixotrophic invasion', 'Stable competition limit cycle',
          'Stable competition limit cycle; no coexistence equilibria'),
    'j': ('Equilibrium unstable w.r.t. mixotrophic invasion', 'Stable competition limit cycle',
          'Stable competition limit cycle; no coexistence equilibria'),
    'k': ('Unique limit cycle unstable w.r.t. mixotrophic invasion',
          'Equilibrium unstable w.r.t. herbivore invasion',
          'Oscillatory coexistence; unstable coexistence equilibrium exists'),
    'l': ('Unique limit cycle unstable w.r.t. mixotrophic invasion', 'Stable competition equilibrium',
          'Stable competition equilibrium; no coexistence equilibria'),
    'm': ('Unique limit cycle unstable w.r.t. mixotrophic invasion',
          'Equilibrium unstable w.r.t. herbivore invasion', 'Stable coexistence equilibrium'),
    'n': ('Equilibrium unstable w.r.t. mixotrophic invasion',
          'Equilibrium unstable w.r.t. herbivore invasion', 'Stable coexistence equilibrium'),
    'o': ('Equilibrium unstable w.r.t. mixotrophic invasion', 'Stable competition equilibrium',
          'Stable competition equilibrium; no coexistence equilibria'),
    'p': ('Stable unique limit cycle?', 'Equilibrium unstable w.r.t. herbivore invasion',
          'Predator-prey cycle stable?; unstable coexistence equilibrium exists'),
    'q': ('Unique limit cycle unstable w.r.t. mixotrophic invasion',
          'Equilibrium unstable w.r.t. herbivore invasion',
          'Oscillatory coexistence; no coexistence equilibria'),
    'r': ('Stable unique limit cycle', 'Unstable competition equilibrium, (0,0,c) unstable',
          'Predator-prey limit cycle stable; no coexistence equilibria'),
    's': ('Stable equilibrium', 'Equilibrium unstable w.r.t. herbivore invasion',
          'Predator-prey equilibrium stable; no coexistence equilibria'),
    't': ('Stable unique limit cycle?', 'No competition equilibria, (0,0,c) unstable',
          'Predator-prey cycle stable?; unstable coexistence equilibrium exists'),
    'u': ('Unique limit cycle unstable w.r.t. mixotrophic invasion',
          'No competition equilibria, (0,0,c) unstable',
          'Oscillatory coexistence; unstable coexistence equilibrium exists'),
    'v': ('Stable unique limit cycle?', 'No competition equilibria, (0,0,c) unstable',
          'Predator-prey cycle stable?; no coexistence equilibrium'),
    'w': ('Unique limit cycle unstable w.r.t. mixotrophic invasion',
          'No competition equilibria, (0,0,c) unstable',
          'Oscillatory coexistence; no coexistence equilibria'),
    'x': ('Stable unique limit cycle', 'No competition equilibria, (0,0,c) unstable',
          'Predator-prey limit cycle stable; no coexistence equilibria'),
    'y': ('Stable equilibrium', 'No competition equilibria, (0,0,c) unstable',
          'Predator-prey equilibrium stable; no coexistence equilibria'),
}

# Rows whose global dynamics rest on numerical observation only
UNCERTAIN_REGIONS = frozenset('ptv')


class PPRegime(Enum):
    CYCLE = 'Cycle'
    STABLE_EQ = 'StableEq'


class A2Band(Enum):
    BELOW_CHECK = 'BelowCheck'
    CHECK_TO_HOPF_COMP = 'CheckToHopfComp'
    HOPF_COMP_TO_HAT = 'HopfCompToHat'
    HAT_TO_STAR = 'HatToStar'
    ABOVE_STAR = 'AboveStar'


@dataclass(frozen=True)
class RegionSignature:
    """Analytic facts about one (x_star, a2) point"""

    pp_regime: PPRegime
    a2_band: A2Band
    coexist_exists: bool
    coexist_stable: Optional[bool]
    mixo_cc_stable: bool
    n_comp_eq: int
    comp_plus_planar_stable: Optional[bool]
    # G(x_star) > F1(x_star): the predator-prey equilibrium can be invaded by the mixotroph
    pp_invadable: bool = False
    # competition equilibria with psi > 0, i.e. open to herbivore invasion
    n_comp_invadable: int = 0
    # the coexistence window reaches below check_a2 at this x_star
    window_below_check: bool = False
    failing_criterion: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            'pp_regime': self.pp_regime.value,
            'a2_band': self.a2_band.value,
            'coexist_exists': self.coexist_exists,
            'coexist_stable': self.coexist_stable,
            'mixo_cc_stable': self.mixo_cc_stable,
            'n_comp_eq': self.n_comp_eq,
            'comp_plus_planar_stable': self.comp_plus_planar_stable,
            'pp_invadable': self.pp_invadable,
            'n_comp_invadable': self.n_comp_invadable,
            'window_below_check': self.window_below_check,
            'failing_criterion': self.failing_criterion,
        }


Vanishing = Tuple[bool, bool, bool]


class RegionAnalyzer:
    """Maps signatures (plus a simulated outcome where needed) to region labels"""

    def needs_simulation(self, sig: RegionSignature) -> bool:
        """True when the label depends on invasion of a cycle"""
        if sig.pp_regime is not PPRegime.CYCLE:
            return False
        band = sig.a2_band
        if band is A2Band.HOPF_COMP_TO_HAT:
            return sig.coexist_exists
        if band is A2Band.CHECK_TO_HOPF_COMP:
            if sig.coexist_exists:
                return not sig.coexist_stable
            return sig.n_comp_invadable > 0
        if band is A2Band.BELOW_CHECK:
            return not sig.coexist_exists or not sig.coexist_stable
        return False

    def lookup(self, sig: RegionSignature, vanishing: Optional[Vanishing] = None) -> Optional[str]:
        """Region label, or None when the signature matches no row"""
        if sig.pp_regime is PPRegime.STABLE_EQ:
            return self._right_of_hopf(sig)
        return self._left_of_hopf(sig, vanishing)

    def describe(self, label: str) -> Dict[str, str]:
        plane_pp, plane_comp, overall = REGION_TABLE[label]
        return {'region': label, 'predator_prey_plane': plane_pp, 'competition_plane': plane_comp,
                'global_dynamics': overall, 'uncertain': label in UNCERTAIN_REGIONS}

    def is_uncertain(self, label: Optional[str]) -> bool:
        return label in UNCERTAIN_REGIONS

    def _right_of_hopf(self, sig: RegionSignature) -> Optional[str]:
        band = sig.a2_band
        if band is A2Band.CHECK_TO_HOPF_COMP:
            if sig.coexist_exists:
                return 'n' if sig.coexist_stable else None
            if sig.pp_invadable:
                return 'o' if sig.n_comp_invadable == 0 else None
            return 's'
        if sig.coexist_exists:
            return None
        return {
            A2Band.ABOVE_STAR: 'b',
            A2Band.HAT_TO_STAR: 'f',
            A2Band.HOPF_COMP_TO_HAT: 'j',
            A2Band.BELOW_CHECK: 'y',
        }[band]

    def _left_of_hopf(self, sig: RegionSignature, vanishing: Optional[Vanishing]) -> Optional[str]:
        band = sig.a2_band

        if band is A2Band.ABOVE_STAR:
            return None if sig.coexist_exists else 'a'

        if band is A2Band.HAT_TO_STAR:
            if sig.coexist_exists:
                return 'd'
            return {2: 'c', 0: 'e'}.get(sig.n_comp_invadable)

        outcome = self._outcome(vanishing) if self.needs_simulation(sig) else None
        if self.needs_simulation(sig) and outcome is None:
            return None

        if band is A2Band.HOPF_COMP_TO_HAT:
            if not sig.coexist_exists:
                return 'i'
            return {'all': 'g', 'herbivore_lost': 'h'}.get(outcome)

        if band is A2Band.CHECK_TO_HOPF_COMP:
            if sig.coexist_exists:
                if sig.coexist_stable:
                    return 'm'
                return {'all': 'k', 'mixotroph_lost': 'p'}.get(outcome)
            if sig.n_comp_invadable == 0:
                return 'l'
            return {'all': 'q', 'mixotroph_lost': 'r'}.get(outcome)

        # below check_a2
        if sig.coexist_exists:
            if sig.coexist_stable:
                return None
            return {'all': 'u', 'mixotroph_lost': 't'}.get(outcome)
        if outcome == 'all':
            return 'w'
        if outcome == 'mixotroph_lost':
            return 'v' if sig.window_below_check else 'x'
        return None

    @staticmethod
    def _outcome(vanishing: Optional[Vanishing]) -> Optional[str]:
        if vanishing is None:
            return None
        return {
            (False, False, False): 'all',
            (False, True, False): 'herbivore_lost',
            (False, False, True): 'mixotroph_lost',
        }.get(tuple(vanishing))
