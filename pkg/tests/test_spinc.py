"""Spin-c bookkeeping: dimensions, admissibility regimes, gradings."""

import random
import unittest
from fractions import Fraction

from lagmatch.spinc import (
    DescriptorError,
    FiberComponent,
    FibrationDescriptor,
    H2Model,
    InadmissibleError,
    Region,
    SpinC,
    admissibility,
    c1_squared,
    common_fiber_pairing,
    divisibility_check,
    euler_characteristic,
    fiber_pairings,
    formal_dimension,
    formal_dimension_core,
    grading_modulus,
    is_characteristic,
    lefschetz_index,
    maslov_vanishing_disc,
    matched_index,
    monotonicity_flags,
    nu_function,
    pairing,
    taubes_convert,
    taubes_invert,
    w_lambda,
)


def torus_descriptor():
    """Genus-1 fibration over the sphere with a section: E(0)-like data.

    H^2 model in (fiber, section) coordinates: Q = [[0,1],[1,0]],
    canonical dual coordinates (2, 0) pair to -chi on each class.
    """
    h2 = H2Model(form=((0, 1), (1, 0)), canonical=(0, 2))
    fiber = FiberComponent(genus=1, h2_class=(1, 0))
    regions = [Region(chi_base=2, fibers=(fiber,))]
    return FibrationDescriptor(
        regions=regions, round_circles=(), lefschetz_points=0, signature=0, h2=h2
    )


def s2xs2_descriptor():
    h2 = H2Model(form=((0, 1), (1, 0)), canonical=(2, 2))
    fiber = FiberComponent(genus=0, h2_class=(1, 0))
    regions = [Region(chi_base=2, fibers=(fiber,))]
    return FibrationDescriptor(
        regions=regions, round_circles=(), lefschetz_points=0, signature=0, h2=h2
    )


class PairingAndDimensionTest(unittest.TestCase):
    def test_pairing_is_dot_in_dual_coordinates(self):
        self.assertEqual(pairing((2, 3), (1, 0)), 2)
        self.assertEqual(pairing((2, 3), (0, 1)), 3)
        self.assertEqual(pairing((2, 3), (2, -1)), 1)

    def test_characteristic_diagonal_parity(self):
        # c is characteristic iff c_j = Q_jj mod 2 against each basis class
        h2 = H2Model(form=((2, 1), (1, 0)), canonical=(2, 0))
        self.assertTrue(is_characteristic(SpinC((2, 0)), h2))
        self.assertTrue(is_characteristic(SpinC((4, 2)), h2))
        self.assertFalse(is_characteristic(SpinC((1, 0)), h2))
        self.assertFalse(is_characteristic(SpinC((2, 1)), h2))

    def test_c1_squared_exact(self):
        # Q = [[0,1],[1,0]]: Q^{-1} = Q, so c^2 = 2 c_0 c_1
        h2 = H2Model(form=((0, 1), (1, 0)), canonical=(2, 2))
        self.assertEqual(c1_squared(SpinC((2, 2)), h2), 8)
        self.assertEqual(c1_squared(SpinC((4, 4)), h2), 32)
        self.assertEqual(c1_squared(SpinC((10, 2)), h2), 40)

    def test_formal_dimension_core(self):
        self.assertEqual(formal_dimension_core(8, 2, 0), 1)
        self.assertEqual(formal_dimension_core(32, 4, 0), 6)
        with self.assertRaises(DescriptorError):
            formal_dimension_core(9, 2, 0)

    def test_torus_fixture_dimension(self):
        desc = torus_descriptor()
        self.assertEqual(euler_characteristic(desc), 0)
        spinc = SpinC((2, 2))
        # chi = 0 here; the embedded fixture uses chi = 2 with extras, so
        # this is an independent sanity point: (8 - 0 - 0)/4 = 2
        self.assertEqual(formal_dimension(spinc, desc), 2)

    def test_s2xs2_dimension_grid(self):
        desc = s2xs2_descriptor()
        for m in range(-2, 5):
            for n in range(-2, 5):
                spinc = taubes_convert((m, n), desc)
                self.assertEqual(
                    formal_dimension(spinc, desc), 2 * (m * n + m + n), (m, n)
                )

    def test_non_characteristic_rejected(self):
        desc = s2xs2_descriptor()
        with self.assertRaises(DescriptorError):
            formal_dimension(SpinC((1, 2)), desc)

    def test_euler_characteristic_with_decorations(self):
        h2 = H2Model(form=((0, 1), (1, 0)), canonical=(2, 2))
        fiber = FiberComponent(genus=0, h2_class=(1, 0))
        desc = FibrationDescriptor(
            regions=[Region(chi_base=2, fibers=(fiber,))],
            round_circles=(True, False),
            lefschetz_points=3,
            signature=-1,
            h2=h2,
        )
        base = euler_characteristic(s2xs2_descriptor())
        self.assertEqual(euler_characteristic(desc), base + 3)


class TaubesMapTest(unittest.TestCase):
    def test_convert_golden(self):
        desc = s2xs2_descriptor()
        self.assertEqual(taubes_convert((1, 1), desc).c1, (4, 4))
        self.assertEqual(taubes_convert((0, 0), desc).c1, (2, 2))

    def test_roundtrip_random(self):
        rng = random.Random(40)
        desc = torus_descriptor()
        for _ in range(100):
            beta = (rng.randint(-9, 9), rng.randint(-9, 9))
            self.assertEqual(taubes_invert(taubes_convert(beta, desc), desc), beta)

    def test_invert_rejects_odd_difference(self):
        desc = s2xs2_descriptor()
        with self.assertRaises(ValueError):
            taubes_invert(SpinC((3, 2)), desc)

    def test_length_check(self):
        desc = s2xs2_descriptor()
        with self.assertRaises(ValueError):
            taubes_convert((1,), desc)


class FiberPairingTest(unittest.TestCase):
    def test_constant_across_regions(self):
        h2 = H2Model(form=((0, 1), (1, 0)), canonical=(0, 2))
        fiber = FiberComponent(genus=1, h2_class=(1, 0))
        desc = FibrationDescriptor(
            regions=[
                Region(chi_base=2, fibers=(fiber,)),
                Region(chi_base=0, fibers=(fiber,)),
            ],
            round_circles=(True,),
            lefschetz_points=0,
            signature=0,
            h2=h2,
        )
        spinc = SpinC((2, 2))
        self.assertEqual(fiber_pairings(spinc, desc), [2, 2])
        self.assertEqual(common_fiber_pairing(spinc, desc), 2)

    def test_disagreement_raises(self):
        h2 = H2Model(form=((0, 1), (1, 0)), canonical=(0, 2))
        desc = FibrationDescriptor(
            regions=[
                Region(chi_base=2, fibers=(FiberComponent(1, (1, 0)),)),
                Region(chi_base=2, fibers=(FiberComponent(1, (3, 0)),)),
            ],
            round_circles=(),
            lefschetz_points=0,
            signature=0,
            h2=h2,
        )
        with self.assertRaises(DescriptorError):
            common_fiber_pairing(SpinC((2, 2)), desc)

    def test_missing_classes_raise(self):
        h2 = H2Model(form=((0, 1), (1, 0)), canonical=(0, 2))
        desc = FibrationDescriptor(
            regions=[Region(chi_base=2, fibers=(FiberComponent(1, None),))],
            round_circles=(),
            lefschetz_points=0,
            signature=0,
            h2=h2,
        )
        with self.assertRaises(DescriptorError):
            fiber_pairings(SpinC((2, 2)), desc)


class NuFunctionTest(unittest.TestCase):
    def test_values(self):
        self.assertEqual(nu_function([0, -2], 2), [1, 2])
        self.assertEqual(nu_function([2], 2), [0])

    def test_parity_mismatch(self):
        with self.assertRaises(InadmissibleError):
            nu_function([1], 2)

    def test_negative_degree(self):
        with self.assertRaises(InadmissibleError):
            nu_function([2], 0)


class AdmissibilityTest(unittest.TestCase):
    def _single_region(self, genus, c1_pair):
        """One region, one connected fiber of the given genus; c_1 pairs as asked."""
        h2 = H2Model(form=((0, 1), (1, 0)), canonical=(2 * genus - 2, 0))
        desc = FibrationDescriptor(
            regions=[Region(chi_base=2, fibers=(FiberComponent(genus, (1, 0)),))],
            round_circles=(),
            lefschetz_points=0,
            signature=0,
            h2=h2,
        )
        # dual coordinates pair by plain dot, so the class (1,0) reads the
        # first coordinate of c_1
        return SpinC((c1_pair, 0)), desc

    def test_monotone_region(self):
        spinc, desc = self._single_region(1, 2)
        report = admissibility(spinc, desc)
        self.assertEqual(report.regime, "monotone")

    def test_negative_region(self):
        # genus 2 fiber, chi = -2; pairing -2 satisfies both negative clauses
        spinc, desc = self._single_region(2, -2)
        report = admissibility(spinc, desc)
        self.assertEqual(report.regime, "negative")

    def test_excluded_band(self):
        # genus 2, pairing 0: floor holds (0 >= -2) but 2p = 0 > chi = -2 and p <= 0
        spinc, desc = self._single_region(2, 0)
        report = admissibility(spinc, desc)
        self.assertEqual(report.regime, "inadmissible")
        self.assertIn("excluded band", report.regions[0].detail)

    def test_floor_violation(self):
        spinc, desc = self._single_region(0, 1)  # chi = 2, pairing 1 < 2
        report = admissibility(spinc, desc)
        self.assertEqual(report.regime, "inadmissible")

    def test_two_component_clause(self):
        h2 = H2Model(form=((0, 1, 1), (1, 0, 1), (1, 1, 0)), canonical=(2, 2, 0))
        comp1 = FiberComponent(2, (1, 0, 0))
        comp2 = FiberComponent(2, (0, 1, 0))
        desc = FibrationDescriptor(
            regions=[Region(chi_base=2, fibers=(comp1, comp2))],
            round_circles=(),
            lefschetz_points=0,
            signature=0,
            h2=h2,
        )
        ok = admissibility(SpinC((-2, -2, 0)), desc)
        self.assertEqual(ok.regime, "negative")
        self.assertIn("two-component", ok.regions[0].detail)
        bad = admissibility(SpinC((2, -2, 0)), desc)
        self.assertEqual(bad.regime, "inadmissible")


class RegimeFlagTest(unittest.TestCase):
    def test_flags(self):
        f = monotonicity_flags(3, 2)
        self.assertTrue(f.monotone)
        self.assertFalse(f.two_negative)
        self.assertIsNone(f.separating_ok)
        self.assertEqual(f.c_min, 2)

    def test_two_negative(self):
        self.assertTrue(monotonicity_flags(1, 3).two_negative)
        self.assertFalse(monotonicity_flags(2, 3).two_negative)

    def test_separating_bound(self):
        f = monotonicity_flags(1, 5, g1=2, g2=3)
        self.assertTrue(f.separating_ok)
        self.assertFalse(monotonicity_flags(2, 5, g1=2, g2=3).separating_ok)
        with self.assertRaises(ValueError):
            monotonicity_flags(1, 5, g1=2, g2=2)
        with self.assertRaises(ValueError):
            monotonicity_flags(1, 5, g1=2)


class PerturbedClassTest(unittest.TestCase):
    def test_exact_presentation(self):
        out = w_lambda(Fraction(1, 3), (1, 0), (2, 2), 2, 2)
        self.assertEqual(out.prefactor, Fraction(5, 3))
        self.assertEqual(out.theta_coefficient, Fraction(-1, 6))
        # (1 + lambda n) w = lambda gamma + c1/(chi + 2n) componentwise
        self.assertEqual(out.w[0], (Fraction(1, 3) + Fraction(2, 6)) / Fraction(5, 3))

    def test_zero_lambda_is_unperturbed(self):
        out = w_lambda(0, (5, 7), (2, 4), 3, 0)
        self.assertEqual(out.w, (Fraction(2, 6), Fraction(4, 6)))
        self.assertEqual(out.theta_coefficient, 0)

    def test_guards(self):
        with self.assertRaises(ValueError):
            w_lambda(Fraction(-1, 2), (0,), (2,), 2, 2)  # prefactor 0
        with self.assertRaises(ValueError):
            w_lambda(1, (0,), (2,), 1, -2)  # chi + 2n = 0
        with self.assertRaises(ValueError):
            w_lambda(1, (0, 0), (2,), 1, 2)


class GradingTest(unittest.TestCase):
    def test_modulus(self):
        self.assertEqual(grading_modulus((2, 2)), 2)
        self.assertEqual(grading_modulus((4, 6)), 2)
        self.assertEqual(grading_modulus((0, 0)), 0)
        self.assertEqual(grading_modulus((3, 5)), 1)

    def test_divisibility_table(self):
        # modulus 2 | 2*2 and 2 | 3 + 1 - 2
        self.assertTrue(divisibility_check((4, 6), 2, 3, 2))
        # n_gamma does not divide n + 1 - g
        self.assertFalse(divisibility_check((4, 6), 2, 3, 1))
        # modulus does not divide 2 n_gamma
        self.assertFalse(divisibility_check((6, 0), 1, 2, 1))
        # torsion class with no sections passes outright
        self.assertTrue(divisibility_check((0, 0), 0, 4, 1))
        # torsion class with sections: 0 | 2n_gamma fails unless n_gamma = 0
        self.assertFalse(divisibility_check((0, 0), 2, 4, 1))


class IndexFormulaTest(unittest.TestCase):
    def test_lefschetz_index(self):
        self.assertEqual(lefschetz_index(-1, 3), 2)
        self.assertEqual(lefschetz_index(0, 0), 0)

    def test_matched_index(self):
        self.assertEqual(matched_index(3, [2, 1], [0, -2]), 1)
        with self.assertRaises(ValueError):
            matched_index(0, [1, 2], [0])

    def test_maslov_disc_recount(self):
        rng = random.Random(41)
        for _ in range(100):
            k = rng.randint(0, 12)
            g1 = rng.randint(0, 6)
            out = maslov_vanishing_disc(k, g1)
            self.assertEqual(out.value, k + 1 - 2 * g1)
            self.assertEqual(out.value, out.recount)


if __name__ == "__main__":
    unittest.main()
