#!/usr/bin/env python3
"""
Unit tests for region signatures, the region table and parameter-plane sweeps
"""

import unittest

from mixodyn.bifurcation import (CURVE_HEADER, SWEEP_HEADER, Provenance, a2_band, boundary_curves,
                                 classify_region, curve_maximum, invasion_start, region_signature, sweep)
from mixodyn.shared.dynamics import prey_isocline_peak
from mixodyn.shared.equilibria import a2_thresholds
from mixodyn.shared.errors import InvalidParams, OnBoundary
from mixodyn.shared.presets import MARKED_POINTS, diagram_base, load_preset, preset_names, preset_values
from mixodyn.shared.region_table import (REGION_TABLE, UNCERTAIN_REGIONS, A2Band, PPRegime, RegionAnalyzer,
                                         RegionSignature)

BASE = diagram_base()


def signature(**changes) -> RegionSignature:
    values = dict(pp_regime=PPRegime.CYCLE, a2_band=A2Band.CHECK_TO_HOPF_COMP, coexist_exists=False,
                  coexist_stable=None, mixo_cc_stable=False, n_comp_eq=1, comp_plus_planar_stable=True,
                  pp_invadable=True, n_comp_invadable=1)
    values.update(changes)
    return RegionSignature(**values)


class TestRegionAnalyzer(unittest.TestCase):

    def setUp(self):
        self.analyzer = RegionAnalyzer()

    def test_table_has_every_label(self):
        """Test that the table covers regions a through y"""
        self.assertEqual(sorted(REGION_TABLE), [chr(c) for c in range(ord('a'), ord('y') + 1)])
        self.assertTrue(UNCERTAIN_REGIONS <= set(REGION_TABLE))

    def test_right_of_hopf_line(self):
        """Test analytic labels where the predator-prey equilibrium is stable"""
        stable = dict(pp_regime=PPRegime.STABLE_EQ)
        cases = [
            (signature(a2_band=A2Band.ABOVE_STAR, n_comp_eq=0, mixo_cc_stable=True, **stable), 'b'),
            (signature(a2_band=A2Band.HAT_TO_STAR, n_comp_eq=2, mixo_cc_stable=True, **stable), 'f'),
            (signature(a2_band=A2Band.HOPF_COMP_TO_HAT, **stable), 'j'),
            (signature(a2_band=A2Band.BELOW_CHECK, n_comp_eq=0, pp_invadable=False, **stable), 'y'),
            (signature(coexist_exists=True, coexist_stable=True, **stable), 'n'),
            (signature(n_comp_invadable=0, **stable), 'o'),
            (signature(pp_invadable=False, **stable), 's'),
        ]
        for sig, label in cases:
            with self.subTest(label=label):
                self.assertFalse(self.analyzer.needs_simulation(sig))
                self.assertEqual(self.analyzer.lookup(sig), label)

    def test_left_of_hopf_line_analytic(self):
        """Test labels left of x_H that need no simulation"""
        cases = [
            (signature(a2_band=A2Band.ABOVE_STAR, n_comp_eq=0, mixo_cc_stable=True), 'a'),
            (signature(a2_band=A2Band.HAT_TO_STAR, n_comp_eq=2, n_comp_invadable=2), 'c'),
            (signature(a2_band=A2Band.HAT_TO_STAR, n_comp_eq=2, coexist_exists=True, coexist_stable=False), 'd'),
            (signature(a2_band=A2Band.HAT_TO_STAR, n_comp_eq=2, n_comp_invadable=0), 'e'),
            (signature(a2_band=A2Band.HOPF_COMP_TO_HAT), 'i'),
            (signature(n_comp_invadable=0), 'l'),
            (signature(coexist_exists=True, coexist_stable=True), 'm'),
        ]
        for sig, label in cases:
            with self.subTest(label=label):
                self.assertFalse(self.analyzer.needs_simulation(sig))
                self.assertEqual(self.analyzer.lookup(sig), label)

    def test_left_of_hopf_line_simulated(self):
        """Test labels that depend on which species persist"""
        everyone = (False, False, False)
        no_herbivore = (False, True, False)
        no_mixotroph = (False, False, True)
        unstable = dict(coexist_exists=True, coexist_stable=False)
        below = dict(a2_band=A2Band.BELOW_CHECK, n_comp_eq=0, n_comp_invadable=0)
        cases = [
            (signature(a2_band=A2Band.HOPF_COMP_TO_HAT, **unstable), everyone, 'g'),
            (signature(a2_band=A2Band.HOPF_COMP_TO_HAT, **unstable), no_herbivore, 'h'),
            (signature(**unstable), everyone, 'k'),
            (signature(**unstable), no_mixotroph, 'p'),
            (signature(), everyone, 'q'),
            (signature(), no_mixotroph, 'r'),
            (signature(**below, **unstable), everyone, 'u'),
            (signature(**below, **unstable), no_mixotroph, 't'),
            (signature(**below), everyone, 'w'),
            (signature(**below, window_below_check=True), no_mixotroph, 'v'),
            (signature(**below), no_mixotroph, 'x'),
        ]
        for sig, vanishing, label in cases:
            with self.subTest(label=label):
                self.assertTrue(self.analyzer.needs_simulation(sig))
                self.assertEqual(self.analyzer.lookup(sig, vanishing), label)

    def test_unmatched_outcomes(self):
        """Test None for missing or unexpected simulation outcomes"""
        sig = signature()
        self.assertIsNone(self.analyzer.lookup(sig))
        self.assertIsNone(self.analyzer.lookup(sig, (True, True, True)))

    def test_describe_and_uncertainty(self):
        """Test the table row of a label"""
        row = self.analyzer.describe('t')
        self.assertEqual(row['region'], 't')
        self.assertTrue(row['uncertain'])
        self.assertFalse(self.analyzer.is_uncertain('k'))
        self.assertFalse(self.analyzer.is_uncertain(None))


class TestSignature(unittest.TestCase):

    def test_diagram_point(self):
        """Test the analytic facts at x_star = .05, a2 = 4.5"""
        sig = region_signature(BASE)
        self.assertEqual(sig.pp_regime, PPRegime.CYCLE)
        self.assertEqual(sig.a2_band, A2Band.HAT_TO_STAR)
        self.assertEqual(sig.n_comp_eq, 2)
        self.assertEqual(sig.n_comp_invadable, 1)
        self.assertTrue(sig.coexist_exists)
        self.assertTrue(sig.mixo_cc_stable)
        self.assertTrue(sig.pp_invadable)

    def test_bands_are_monotone_in_a2(self):
        """Test that increasing a2 never moves back to an earlier band"""
        order = list(A2Band)
        thresholds = a2_thresholds(BASE)
        previous = 0
        for step in range(1, 300):
            band = order.index(a2_band(0.021 * step, thresholds))
            self.assertGreaterEqual(band, previous)
            previous = band
        self.assertEqual(previous, len(order) - 1)

    def test_on_boundary(self):
        """Test OnBoundary on threshold lines"""
        x_H = prey_isocline_peak(BASE.a1, BASE.b1)
        for x_star, a2 in ((0.1, 4.0), (0.1, 0.76), (x_H, 2.0)):
            with self.subTest(x_star=x_star, a2=a2):
                with self.assertRaises(OnBoundary):
                    region_signature(BASE.replace(x_star=x_star, a2=a2))

    def test_invasion_start(self):
        """Test the start next to the predator-prey equilibrium"""
        start = invasion_start(BASE)
        self.assertEqual(start.x, 0.05)
        self.assertAlmostEqual(start.y, 0.9 * 0.95 * 3.5 / 12.0, places=12)
        self.assertEqual(start.z, 0.01)


class TestClassifyRegion(unittest.TestCase):

    def test_analytic_points(self):
        """Test the marked points that need no simulation"""
        for x_star, a2, label in ((0.26, 3.9, 'j'), (0.05, 4.5, 'd')):
            with self.subTest(label=label):
                cell = classify_region(x_star, a2, BASE)
                self.assertEqual(cell.label, label)
                self.assertEqual(cell.provenance, Provenance.ANALYTIC)

    def test_marked_points(self):
        """Test all twelve marked points of the diagram"""
        for name, point in MARKED_POINTS.items():
            with self.subTest(point=name):
                cell = classify_region(point['x_star'], point['a2'], BASE)
                self.assertEqual(cell.label, point['region'], msg=cell.note)

    def test_record_layout(self):
        """Test the sweep row of a cell"""
        record = classify_region(0.05, 4.5, BASE).to_record()
        self.assertEqual(tuple(record), SWEEP_HEADER)
        self.assertEqual(record['region'], 'd')
        self.assertEqual(record['provenance'], 'Analytic')


class TestSweep(unittest.TestCase):

    def setUp(self):
        # right of x_H between hat_a2 and a2_star: region (f) throughout
        self.grid = {'x_star': [0.27, 0.35, 2], 'a2': [4.2, 4.8, 3]}

    def test_row_major_order(self):
        """Test x_star outer, a2 inner ordering"""
        cells = sweep(self.grid, BASE, workers=1)
        coordinates = [(round(cell.x_star, 12), round(cell.a2, 12)) for cell in cells]
        self.assertEqual(coordinates, [(0.27, 4.2), (0.27, 4.5), (0.27, 4.8),
                                       (0.35, 4.2), (0.35, 4.5), (0.35, 4.8)])
        self.assertEqual({cell.region for cell in cells}, {'f'})

    def test_worker_count_does_not_change_results(self):
        """Test that one and two workers give the same table"""
        serial = [cell.to_record() for cell in sweep(self.grid, BASE, workers=1)]
        parallel = [cell.to_record() for cell in sweep(self.grid, BASE, workers=2)]
        self.assertEqual(serial, parallel)

    def test_boundary_cells_unresolved(self):
        """Test that a cell on hat_a2 is reported as unresolved"""
        cells = sweep({'x_star': [0.27, 0.35, 2], 'a2': [3.0, 4.0, 2]}, BASE, workers=1)
        on_hat = [cell for cell in cells if cell.a2 == 4.0]
        self.assertEqual(len(on_hat), 2)
        for cell in on_hat:
            self.assertIsNone(cell.label)
            self.assertEqual(cell.region, '?')
            self.assertIn('boundary', cell.note)

    def test_bad_grids(self):
        """Test rejected grid specifications"""
        for grid in ({'x_star': [0.1, 0.2, 2]}, {'x_star': [0.1, 0.2, 1], 'a2': [1, 2, 2]},
                     {'x_star': [0.2, 0.1, 2], 'a2': [1, 2, 2]}):
            with self.subTest(grid=grid):
                with self.assertRaises(InvalidParams):
                    sweep(grid, BASE, workers=1)


class TestBoundaryCurves(unittest.TestCase):

    def test_columns_and_constants(self):
        """Test the curve rows and the x_star-independent columns"""
        rows = boundary_curves(BASE, [0.05, 0.5, 4])
        self.assertEqual(len(rows), 4)
        for row in rows:
            self.assertEqual(tuple(row), CURVE_HEADER)
            self.assertAlmostEqual(row['check_a2'], 0.76, places=12)
            self.assertAlmostEqual(row['hat_a2'], 4.0, places=12)
            self.assertAlmostEqual(row['x_H'], 0.2598, delta=5e-4)
            self.assertLess(row['breve_a2'], row['tilde_a2'])

    def test_limit_at_saturating_x_star(self):
        """Test both window edges approaching k(1 - c)"""
        last = boundary_curves(BASE, [0.5, 1.0 - 1e-6, 3])[-1]
        self.assertAlmostEqual(last['breve_a2'], 0.76, delta=1e-4)
        self.assertAlmostEqual(last['tilde_a2'], 0.76, delta=1e-4)

    def test_upper_edge_peaks_at_a2_star(self):
        """Test that the maximum of tilde_a2 over x_star is a2_star"""
        rows = boundary_curves(BASE, [0.005, 0.1, 400])
        _, peak = curve_maximum(rows)
        self.assertAlmostEqual(peak, a2_thresholds(BASE).star(), delta=0.01)

    def test_bad_grid(self):
        """Test that the x grid must lie inside (0, 1)"""
        with self.assertRaises(InvalidParams):
            boundary_curves(BASE, [0.0, 0.5, 3])
        with self.assertRaises(InvalidParams):
            curve_maximum([])


class TestPresets(unittest.TestCase):

    def test_marked_point_presets(self):
        """Test that every marked point has a loadable preset"""
        for name, point in MARKED_POINTS.items():
            with self.subTest(point=name):
                sp = load_preset(f"region_{name}")
                self.assertEqual(sp.x_star, point['x_star'])
                self.assertEqual(sp.a2, point['a2'])
        self.assertIn('diagram', preset_names())

    def test_unknown_preset(self):
        """Test InvalidParams for an unknown preset"""
        with self.assertRaises(InvalidParams):
            preset_values('region_zz')


if __name__ == '__main__':
    unittest.main(verbosity=2)
