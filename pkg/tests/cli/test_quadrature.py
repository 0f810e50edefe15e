import random
import unittest
from unittest import mock

import numpy as np

from lie_stability.lattice import TorusPolynomial
from lie_stability.algebra.characters import character_from_fundamental
from lie_stability.algebra.root_system import build_a1, build_g2
from lie_stability.cli import quadrature
from lie_stability.cli.quadrature import (
    GridTooSmallError,
    QuadratureResult,
    torus_average,
    verify_quadrature,
)


class TestTorusAverage(unittest.TestCase):
    def test_constant_term(self):
        p = TorusPolynomial({(0, 0): 3, (2, 0): 1, (-4, 2): 5}, 2)
        np.testing.assert_allclose(torus_average(p, 16), 3, atol=1e-12)

    def test_band_limited_random_polynomials(self):
        rng = random.Random(64)
        for _ in range(5):
            terms = {
                (2 * rng.randint(-20, 20), 2 * rng.randint(-20, 20)): rng.randint(-9, 9)
                for _ in range(12)
            }
            p = TorusPolynomial(terms, 2)
            np.testing.assert_allclose(torus_average(p, 64), float(p.constant_term()), atol=1e-9)

    def test_partial_chunks(self):
        p = TorusPolynomial({(0, 0): 2, (2, -2): 1, (-6, 4): 3}, 2)
        with mock.patch.object(quadrature, "_POINT_CHUNK", 7):
            np.testing.assert_allclose(torus_average(p, 16), 2, atol=1e-12)

    def test_large_rank_one_grid(self):
        p = TorusPolynomial({(0,): 1, (2,): 4, (-2,): 4}, 1)
        np.testing.assert_allclose(torus_average(p, 300001), 1, atol=1e-9)

    def test_invalid_grid(self):
        with self.assertRaises(ValueError):
            torus_average(TorusPolynomial.one(1), 0)


class TestVerifyQuadrature(unittest.TestCase):
    def setUp(self):
        self.rs = build_g2()
        self.chi = character_from_fundamental(self.rs, (1, 0)).poly

    def test_measure_and_orthogonality(self):
        for f, exact in [
            (TorusPolynomial.one(2), 1),
            (self.chi, 0),
            (self.chi * self.chi.conj(), 1),
            (self.chi ** 3, 1),
        ]:
            result = verify_quadrature(self.rs, f, grid=128)
            self.assertEqual(result.exact, exact)
            self.assertTrue(result.passed, f"quadrature error {result.error} for exact value {exact}")
            self.assertEqual(result.verdict, "PASS")

    def test_orthonormality(self):
        characters = [character_from_fundamental(self.rs, w).poly for w in [(0, 0), (1, 0), (0, 1), (2, 0)]]
        for i, f in enumerate(characters):
            for j, g in enumerate(characters):
                result = verify_quadrature(self.rs, f * g.conj())
                self.assertEqual(result.exact, int(i == j))
                self.assertLess(result.error, 1e-9)

    def test_rank_one(self):
        rs = build_a1()
        chi = character_from_fundamental(rs, (2,)).poly
        self.assertTrue(verify_quadrature(rs, chi * chi, grid=32).passed)

    def test_grid_too_small(self):
        with self.assertRaises(GridTooSmallError) as ctx:
            verify_quadrature(self.rs, self.chi ** 3, grid=8)
        self.assertEqual(ctx.exception.required, 20)

    def test_failed_result(self):
        result = QuadratureResult(value=complex(1.1, 0), exact=1, grid=128, tolerance=1e-9)
        self.assertFalse(result.passed)
        self.assertEqual(result.verdict, "FAIL")


if __name__ == "__main__":
    unittest.main()
