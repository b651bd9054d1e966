#!/usr/bin/env python3
"""
Unit tests for Routh-Hurwitz verdicts, classification and plane regimes
"""

import math
import unittest

import numpy as np

from mixodyn.shared.dynamics import State3, jacobian_saturated
from mixodyn.shared.equilibria import (EquilibriumKind, EquilibriumRecord, all_equilibria, boundary_equilibria,
                                       coexistence_equilibrium, competition_equilibria)
from mixodyn.shared.errors import IllConditioned, NoCoexistence, NotAnEquilibrium
from mixodyn.shared.model import ScaledParams
from mixodyn.shared.stability import (Overall, PlanarStability, Regime, TheoremVerdict, classify_equilibrium,
                                      coexistence_sufficient_stability, competition_plane_regime,
                                      criterion_iii_parametric, eigenvalue_oracle, predator_prey_regime,
                                      routh_hurwitz, theorem_criteria)

DIAGRAM = ScaledParams(c=0.2, k=0.95, x_star=0.05, a1=8.5, a2=4.5, b1=50.0, b2=55.0)
MULTIPLE_ATTRACTORS = ScaledParams(c=0.8, k=0.75, x_star=0.4, a1=8.5, a2=0.4, b1=50.0, b2=20.0)


def by_kind(sp: ScaledParams):
    return {record.kind: record for record in all_equilibria(sp)}


class TestRouthHurwitz(unittest.TestCase):

    def test_stable_diagonal(self):
        """Test a diagonal matrix with negative entries"""
        verdict = routh_hurwitz(np.diag([-1.0, -2.0, -3.0]))
        self.assertTrue(verdict.stable)
        self.assertEqual(verdict.failing, ())
        self.assertFalse(verdict.marginal)

    def test_unstable_despite_det_and_third(self):
        """Test that criteria on det and the third expression alone do not imply stability"""
        verdict = routh_hurwitz(np.diag([-1.0, 0.5, 1.5]))
        self.assertFalse(verdict.stable)
        self.assertFalse(verdict.trace_neg)
        self.assertTrue(verdict.det_neg)
        self.assertTrue(verdict.third_neg)
        self.assertEqual(verdict.failing, (1,))

    def test_marginal_on_zero_determinant(self):
        """Test the marginal flag for a singular matrix"""
        self.assertTrue(routh_hurwitz(np.diag([-1.0, 0.0, -2.0])).marginal)

    def test_agrees_with_eigenvalues(self):
        """Test the verdict against the eigenvalue oracle on random matrices"""
        rng = np.random.default_rng(2024)
        excluded = 0
        for _ in range(100_000):
            A = rng.uniform(-10.0, 10.0, size=(3, 3))
            norm = float(np.linalg.norm(A))
            trace = float(np.trace(A))
            det = float(np.linalg.det(A))
            minors = 0.5 * (trace ** 2 - float(np.trace(A @ A)))
            third = trace * minors - det
            if (abs(trace) <= 1e-7 * norm or abs(det) <= 1e-7 * norm ** 3
                    or abs(third) <= 1e-7 * norm ** 3):
                excluded += 1
                continue
            try:
                eigenvalues = eigenvalue_oracle(A)
            except IllConditioned:
                excluded += 1
                continue
            stable = max(lam.real for lam in eigenvalues) < 0
            if routh_hurwitz(A).stable != stable:
                self.fail(f"Routh-Hurwitz disagrees with the eigenvalues of\n{A}")
        self.assertLess(excluded, 1000)

    def test_no_stability_loss_through_zero_trace(self):
        """Test that a zero trace with negative det makes the third criterion fail"""
        rng = np.random.default_rng(99)
        for _ in range(1000):
            A = rng.uniform(-5.0, 5.0, size=(3, 3))
            A -= np.eye(3) * np.trace(A) / 3.0
            if np.linalg.det(A) >= 0:
                A = -A
            det = float(np.linalg.det(A))
            if abs(det) < 1e-6:
                continue
            verdict = routh_hurwitz(A)
            self.assertFalse(verdict.third_neg)
            self.assertFalse(verdict.stable)


class TestEigenvalueOracle(unittest.TestCase):

    def test_diagonal(self):
        """Test eigenvalues of diag(1, 2, 3)"""
        eigenvalues = sorted(eigenvalue_oracle(np.diag([1.0, 2.0, 3.0])), key=lambda lam: lam.real)
        for lam, expected in zip(eigenvalues, (1.0, 2.0, 3.0)):
            self.assertAlmostEqual(lam.real, expected, delta=1e-9)
            self.assertAlmostEqual(lam.imag, 0.0, delta=1e-9)

    def test_cube_roots_of_unity(self):
        """Test the companion matrix of lambda^3 - 1"""
        companion = np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
        eigenvalues = eigenvalue_oracle(companion)
        for lam in eigenvalues:
            self.assertAlmostEqual(abs(lam ** 3 - 1.0), 0.0, delta=1e-9)
        self.assertEqual(sum(1 for lam in eigenvalues if abs(lam.imag) > 0.5), 2)

    def test_symmetric_matrices(self):
        """Test real spectra and the trace/determinant identities on symmetric matrices"""
        rng = np.random.default_rng(41)
        for _ in range(500):
            M = rng.uniform(-3.0, 3.0, size=(3, 3))
            A = 0.5 * (M + M.T)
            eigenvalues = eigenvalue_oracle(A)
            scale = 1.0 + float(np.linalg.norm(A))
            for lam in eigenvalues:
                self.assertLess(abs(lam.imag), 1e-6 * scale)
            self.assertAlmostEqual(sum(eigenvalues).real, float(np.trace(A)), delta=1e-8 * scale)
            product = eigenvalues[0] * eigenvalues[1] * eigenvalues[2]
            self.assertAlmostEqual(product.real, float(np.linalg.det(A)), delta=1e-8 * scale ** 3)


class TestClassification(unittest.TestCase):

    def test_washout_is_saddle(self):
        """Test that washout is always a saddle"""
        for a2 in (0.5, 2.0, 4.5):
            record = boundary_equilibria(DIAGRAM.replace(a2=a2))[0]
            self.assertEqual(classify_equilibrium(record, DIAGRAM.replace(a2=a2)).overall, Overall.SADDLE)

    def test_carrying_capacity_transversal_sign(self):
        """Test the transcritical point of (1, 0, 0) at a2 = k(1 - c)"""
        for a2, positive in ((0.5, False), (2.0, True)):
            sp = DIAGRAM.replace(a2=a2)
            result = classify_equilibrium(boundary_equilibria(sp)[1], sp)
            with self.subTest(a2=a2):
                self.assertEqual(result.overall, Overall.SADDLE)
                self.assertEqual(result.transversal_eigenvalue > 0, positive)

    def test_mixotroph_carrying_capacity(self):
        """Test (0, 0, c) saddle below hat_a2 and stable above"""
        sp = DIAGRAM.replace(a2=2.0)
        self.assertEqual(classify_equilibrium(boundary_equilibria(sp)[2], sp).overall, Overall.SADDLE)
        result = classify_equilibrium(boundary_equilibria(DIAGRAM)[2], DIAGRAM)
        self.assertEqual(result.overall, Overall.STABLE)
        self.assertEqual(result.planar_stability, PlanarStability.STABLE)

    def test_mixotroph_carrying_capacity_at_hat_a2(self):
        """Test (0, 0, c) is reported marginal, not stable, at a2 = hat_a2"""
        sp = DIAGRAM.replace(a2=(1.0 - DIAGRAM.c) / DIAGRAM.c)
        result = classify_equilibrium(by_kind(sp)[EquilibriumKind.MIXOTROPH_CC], sp)
        self.assertEqual(result.planar_stability, PlanarStability.MARGINAL)
        self.assertEqual(result.overall, Overall.HOPF_BOUNDARY)

    def test_predator_prey_left_of_hopf_line(self):
        """Test the planar-unstable predator-prey equilibrium for x_star = .05"""
        result = classify_equilibrium(by_kind(DIAGRAM)[EquilibriumKind.PREDATOR_PREY], DIAGRAM)
        self.assertEqual(result.planar_stability, PlanarStability.UNSTABLE)
        self.assertGreater(result.transversal_eigenvalue, 0.0)
        self.assertEqual(result.overall, Overall.UNSTABLE)

    def test_predator_prey_right_of_hopf_line(self):
        """Test the planar-stable predator-prey equilibrium for x_star = .26"""
        sp = DIAGRAM.replace(x_star=0.26, a2=0.5)
        result = classify_equilibrium(by_kind(sp)[EquilibriumKind.PREDATOR_PREY], sp)
        self.assertEqual(result.planar_stability, PlanarStability.STABLE)
        self.assertLess(result.transversal_eigenvalue, 0.0)
        self.assertEqual(result.overall, Overall.STABLE)

    def test_competition_equilibria_invaded_by_herbivores(self):
        """Test psi(x-) < 0 < psi(x+) when x- < x_star < x+"""
        minus, plus = competition_equilibria(DIAGRAM)
        self.assertLess(classify_equilibrium(minus, DIAGRAM).transversal_eigenvalue, 0.0)
        self.assertGreater(classify_equilibrium(plus, DIAGRAM).transversal_eigenvalue, 0.0)
        self.assertNotEqual(classify_equilibrium(plus, DIAGRAM).overall, Overall.STABLE)

    def test_multiple_attractors(self):
        """Test that (0, 0, c) and (x+, 0, F2(x+)) are both stable"""
        catalogue = by_kind(MULTIPLE_ATTRACTORS)
        mixotroph = classify_equilibrium(catalogue[EquilibriumKind.MIXOTROPH_CC], MULTIPLE_ATTRACTORS)
        self.assertEqual(mixotroph.overall, Overall.STABLE)
        plus = catalogue[EquilibriumKind.COMPETITION_PLUS]
        self.assertAlmostEqual(plus.point.x, 0.3057, delta=1e-3)
        self.assertEqual(classify_equilibrium(plus, MULTIPLE_ATTRACTORS).overall, Overall.STABLE)

    def test_coexistence_after_hopf(self):
        """Test the unstable coexistence equilibrium at x_star = .18, a2 = 2.8"""
        sp = DIAGRAM.replace(x_star=0.18, a2=2.8)
        record = coexistence_equilibrium(sp)
        self.assertIsNotNone(record)
        result = classify_equilibrium(record, sp)
        self.assertFalse(result.rh.stable)
        self.assertIn(result.overall, (Overall.UNSTABLE, Overall.SADDLE))

    def test_not_an_equilibrium(self):
        """Test NotAnEquilibrium for a point that is not at rest"""
        state = State3(0.3, 0.3, 0.3)
        record = EquilibriumRecord(state, EquilibriumKind.COEXISTENCE, jacobian_saturated(state, DIAGRAM))
        with self.assertRaises(NotAnEquilibrium):
            classify_equilibrium(record, DIAGRAM)

    def test_to_dict_keys(self):
        """Test the export layout of a classification"""
        result = classify_equilibrium(boundary_equilibria(DIAGRAM)[0], DIAGRAM)
        self.assertEqual(result.to_dict(), {'kind': 'Washout', 'planar_stability': None,
                                            'transversal_eigenvalue': None, 'stability': 'Saddle'})


class TestSufficientConditions(unittest.TestCase):

    def test_mixotroph_growth_criterion(self):
        """Test that a2 > k gives the second condition"""
        for a2 in (1.0, 2.0, 4.5):
            self.assertTrue(theorem_criteria(DIAGRAM.replace(a2=a2))[1])

    def test_handling_order_criterion(self):
        """Test the third condition when b1 > b2 under local condition (B)"""
        sp = ScaledParams(c=0.2, k=0.95, x_star=0.1, a1=8.5, a2=3.0, b1=55.0, b2=50.0)
        self.assertTrue(theorem_criteria(sp)[2])
        value, estimate = criterion_iii_parametric(sp)
        self.assertGreater(value, 0.0)
        self.assertIsNone(estimate)

    def test_parametric_form_has_same_sign(self):
        """Test the parametric third condition against f1 f2' - f1' f2"""
        for x_star in np.linspace(0.02, 0.9, 12):
            for a2 in (0.5, 2.0, 4.0, 7.0):
                sp = DIAGRAM.replace(x_star=float(x_star), a2=a2)
                value, _ = criterion_iii_parametric(sp)
                if abs(value) < 1e-6:
                    continue
                with self.subTest(x_star=x_star, a2=a2):
                    self.assertEqual(theorem_criteria(sp)[2], value > 0)

    def test_decreasing_prey_isocline_right_of_hopf(self):
        """Test the first condition for x_star > x_H"""
        self.assertTrue(theorem_criteria(DIAGRAM.replace(x_star=0.3))[0])
        self.assertFalse(theorem_criteria(DIAGRAM.replace(x_star=0.1))[0])

    def test_requires_coexistence(self):
        """Test NoCoexistence outside the coexistence window"""
        with self.assertRaises(NoCoexistence):
            coexistence_sufficient_stability(DIAGRAM.replace(a2=7.0))

    def test_verdicts(self):
        """Test an inconclusive verdict left of x_H and a positive one right of it"""
        self.assertEqual(coexistence_sufficient_stability(DIAGRAM), TheoremVerdict.INCONCLUSIVE)
        sp = DIAGRAM.replace(x_star=0.3, a2=2.0)
        self.assertEqual(coexistence_sufficient_stability(sp), TheoremVerdict.STABLE_BY_THEOREM)
        self.assertTrue(classify_equilibrium(coexistence_equilibrium(sp), sp).rh.stable)


class TestPlaneRegimes(unittest.TestCase):

    def test_hopf_line(self):
        """Test x_H for a1 = 8.5, b1 = 50"""
        regime = predator_prey_regime(DIAGRAM)
        self.assertAlmostEqual(regime.witnesses['x_H'], 0.2598, delta=5e-4)
        self.assertEqual(regime.regime, Regime.UNIQUE_LIMIT_CYCLE)

    def test_right_of_hopf_line(self):
        """Test the globally stable predator-prey equilibrium at x_star = .26"""
        self.assertEqual(predator_prey_regime(DIAGRAM.replace(x_star=0.26)).regime, Regime.GLOBALLY_STABLE_EQ)

    def test_unsaturated_herbivore(self):
        """Test b1 = 0 for all x_star"""
        for x_star in (0.01, 0.1, 0.5):
            regime = predator_prey_regime(DIAGRAM.replace(x_star=x_star, b1=0.0))
            self.assertEqual(regime.regime, Regime.GLOBALLY_STABLE_EQ)
            self.assertEqual(regime.reason, 'F1_decreasing')

    def test_competition_plane_without_cycles(self):
        """Test the sufficient conditions excluding competition cycles"""
        regime = competition_plane_regime(DIAGRAM.replace(a2=0.5))
        self.assertEqual(regime.regime, Regime.CONVERGES_TO_EQUILIBRIUM)
        self.assertEqual(regime.reason, 'G_decreasing')
        regime = competition_plane_regime(DIAGRAM.replace(a2=2.0, b2=0.0))
        self.assertEqual(regime.regime, Regime.CONVERGES_TO_EQUILIBRIUM)
        self.assertEqual(regime.reason, 'F2_decreasing')

    def test_competition_plane_after_planar_hopf(self):
        """Test a2 = 3.8, where no competition-plane equilibrium is stable"""
        regime = competition_plane_regime(DIAGRAM.replace(a2=3.8))
        self.assertEqual(regime.regime, Regime.CYCLES_POSSIBLE)
        self.assertFalse(regime.comp_plus_planar_stable)
        self.assertTrue(math.isfinite(regime.witnesses['x_plus']))

    def test_competition_plane_before_planar_hopf(self):
        """Test a2 = 3.0, where the competition equilibrium is planar-stable"""
        regime = competition_plane_regime(DIAGRAM.replace(a2=3.0))
        self.assertTrue(regime.comp_plus_planar_stable)
        self.assertLess(regime.witnesses['planar_indicator'], 0.0)


if __name__ == '__main__':
    unittest.main(verbosity=2)
