import unittest

import sympy

from lie_stability.lattice import TorusPolynomial
from lie_stability.utils import (
    decode_polynomial,
    decode_rational,
    encode_polynomial,
    encode_rational,
    format_pi_multiple,
    format_rational,
    parse_rational,
)


class TestUtils(unittest.TestCase):
    def test_format_rational_integer(self):
        self.assertEqual(format_rational(sympy.Integer(-6)), "-6")

    def test_format_rational_fraction(self):
        self.assertEqual(format_rational(sympy.Rational(-1, 2)), "-1/2")

    def test_parse_rational(self):
        self.assertEqual(parse_rational("1/4"), sympy.Rational(1, 4))
        self.assertEqual(parse_rational(" -3 "), sympy.Integer(-3))

    def test_parse_rational_invalid(self):
        for text in ("", "a", "1/2/3", "0.5", "1/0"):
            with self.assertRaises(ValueError):
                parse_rational(text)

    def test_format_pi_multiple(self):
        self.assertEqual(format_pi_multiple(48, 2), "48*pi^2")
        self.assertEqual(format_pi_multiple(sympy.Rational(3, 2), 1), "3/2*pi")
        self.assertEqual(format_pi_multiple(0, 2), "0")

    def test_encode_rational(self):
        self.assertEqual(encode_rational(sympy.Rational(-1, 2)), {"num": -1, "den": 2})

    def test_decode_rational_none(self):
        self.assertIsNone(decode_rational(None))

    def test_decode_rational(self):
        self.assertEqual(decode_rational({"num": 3, "den": 6}), sympy.Rational(1, 2))

    def test_encode_polynomial_none(self):
        self.assertIsNone(encode_polynomial(None))

    def test_encode_polynomial(self):
        p = TorusPolynomial({(2, 0): sympy.Rational(1, 3), (0, 0): 1}, 2)
        self.assertEqual(
            encode_polynomial(p),
            {"rank": 2, "exponent_unit": "1/2", "terms": [[[0, 0], 1, 1], [[2, 0], 1, 3]]},
        )

    def test_decode_polynomial(self):
        data = {"rank": 1, "exponent_unit": "1/2", "terms": [[[-2], 1, 1], [[2], -1, 2]]}
        self.assertEqual(decode_polynomial(data), TorusPolynomial({(-2,): 1, (2,): sympy.Rational(-1, 2)}, 1))

    def test_decode_polynomial_invalid_rank(self):
        with self.assertRaises(ValueError):
            decode_polynomial({"rank": 2, "terms": [[[2], 1, 1]]})

    def test_decode_polynomial_invalid_unit(self):
        with self.assertRaises(ValueError):
            decode_polynomial({"rank": 1, "exponent_unit": "1", "terms": []})
