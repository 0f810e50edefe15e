import unittest
from unittest import mock

import sympy

from lie_stability.lattice import TorusPolynomial
from lie_stability.algebra import root_system
from lie_stability.algebra.root_system import (
    Weight,
    act,
    apply,
    build_a1,
    build_a2,
    build_g2,
    dominant_weights_below,
    get_root_system,
    is_weyl_invariant,
    rho,
    weyl_group,
)
from lie_stability.algebra.utils import UnknownGroupError, WeylGroupOverflowError


class TestWeight(unittest.TestCase):
    def test_arithmetic(self):
        v = Weight((1, 2))
        w = Weight((sympy.Rational(1, 2), 0))
        self.assertEqual(v + w, Weight((sympy.Rational(3, 2), 2)))
        self.assertEqual(v - v, Weight.zero(2))
        self.assertEqual(2 * w, Weight((1, 0)))
        self.assertEqual(-v, Weight((-1, -2)))

    def test_str(self):
        self.assertEqual(str(Weight((5, 3))), "(5, 3)")


class TestG2RootSystem(unittest.TestCase):
    def setUp(self):
        self.rs = build_g2()

    def test_rho(self):
        self.assertEqual(rho(self.rs), Weight((5, 3)))
        self.assertEqual(self.rs.norm2(rho(self.rs)), 7)

    def test_rho_is_sum_of_fundamental_weights(self):
        omega_1, omega_2 = self.rs.fundamental_weights
        self.assertEqual(omega_1 + omega_2, rho(self.rs))

    def test_fundamental_weights(self):
        self.assertEqual(self.rs.fundamental_weights, (Weight((2, 1)), Weight((3, 2))))
        for i, omega in enumerate(self.rs.fundamental_weights):
            self.assertEqual(self.rs.fundamental_coords(omega), tuple(int(i == j) for j in range(2)))

    def test_root_lengths(self):
        lengths = sorted(self.rs.norm2(root) for root in self.rs.positive_roots)
        self.assertEqual(lengths, [1, 1, 1, 3, 3, 3])

    def test_highest_root(self):
        self.assertEqual(self.rs.highest_root(), Weight((3, 2)))

    def test_killing_factor(self):
        self.assertEqual(self.rs.killing_factor, 12)

    def test_weyl_group_order(self):
        group = weyl_group(self.rs)
        self.assertEqual(len(group), 12)
        self.assertEqual(self.rs.weyl_order, 12)
        self.assertEqual(sorted(group.signs), [-1] * 6 + [1] * 6)

    def test_weyl_group_preserves_gram(self):
        for element, _ in weyl_group(self.rs):
            self.assertEqual(element.T * self.rs.gram * element, self.rs.gram)

    def test_weyl_group_permutes_roots(self):
        roots = set(self.rs.roots)
        for element, _ in weyl_group(self.rs):
            self.assertEqual({apply(element, root) for root in roots}, roots)

    def test_exponent_dictionary(self):
        self.assertEqual(self.rs.exponent(Weight((1, 0))), (0, 2))
        self.assertEqual(self.rs.exponent(Weight((1, 1))), (2, 0))
        self.assertEqual(self.rs.exponent(Weight((2, 1))), (2, 2))
        self.assertEqual(self.rs.exponent(rho(self.rs)), (6, 4))

    def test_exponent_outside_half_lattice(self):
        with self.assertRaises(ValueError):
            self.rs.exponent(Weight((sympy.Rational(1, 4), 0)))

    def test_is_dominant(self):
        self.assertTrue(self.rs.is_dominant(Weight((2, 1))))
        self.assertFalse(self.rs.is_dominant(Weight((1, 0))))

    def test_act_on_polynomial(self):
        for element, _ in weyl_group(self.rs):
            image = act(self.rs, element, TorusPolynomial.monomial(self.rs.exponent(Weight((2, 1)))))
            (exponent, coeff), = image.items()
            self.assertEqual(coeff, 1)
            self.assertIn(exponent, {self.rs.exponent(root) for root in self.rs.roots})

    def test_is_weyl_invariant(self):
        self.assertTrue(is_weyl_invariant(self.rs, TorusPolynomial.one(2)))
        self.assertFalse(is_weyl_invariant(self.rs, TorusPolynomial.monomial((2, 0))))


class TestDominantWeights(unittest.TestCase):
    def test_bound_just_above_rho(self):
        rs = build_g2()
        self.assertEqual(dominant_weights_below(rs, sympy.Rational(15, 2)), [Weight.zero(2)])

    def test_bound_13(self):
        rs = build_g2()
        weights = dominant_weights_below(rs, 13)
        self.assertEqual(weights, [Weight.zero(2), rs.fundamental_weights[0]])

    def test_sorted_by_norm(self):
        rs = build_g2()
        shift = rho(rs)
        values = [rs.norm2(w + shift) for w in dominant_weights_below(rs, 40)]
        self.assertEqual(values, sorted(values))
        self.assertTrue(all(value <= 40 for value in values))

    def test_invalid_bound(self):
        with self.assertRaises(ValueError):
            dominant_weights_below(build_a1(), 0)


class TestPresets(unittest.TestCase):
    def test_a1(self):
        rs = build_a1()
        self.assertEqual(len(weyl_group(rs)), 2)
        self.assertEqual(rs.fundamental_weights, (Weight((sympy.Rational(1, 2),)),))
        self.assertEqual(rs.killing_factor, 2)
        self.assertEqual(rs.exponent(rs.fundamental_weights[0]), (2,))

    def test_a2(self):
        rs = build_a2()
        self.assertEqual(len(weyl_group(rs)), 6)
        self.assertEqual(rs.killing_factor, 3)
        self.assertEqual(rs.exponent(rs.fundamental_weights[0]), (2, 0))

    def test_get_root_system(self):
        self.assertIs(get_root_system("g2"), build_g2())
        self.assertIs(get_root_system(" A1 "), build_a1())

    def test_unknown_group(self):
        with self.assertRaises(UnknownGroupError) as ctx:
            get_root_system("E8")
        self.assertEqual(ctx.exception.available, ["A1", "A2", "G2"])

    def test_weyl_group_cap(self):
        rs = build_a2()
        weyl_group.cache_clear()
        try:
            with mock.patch.object(root_system, "WEYL_GROUP_CAP", 4):
                with self.assertRaises(WeylGroupOverflowError):
                    weyl_group(rs)
        finally:
            weyl_group.cache_clear()

    def test_invalid_gram(self):
        with self.assertRaises(ValueError):
            root_system._build_root_system("bad", [[1, 2], [2, 1]], [(1, 0)], [[1, 0], [0, 1]], 2)


if __name__ == "__main__":
    unittest.main()
