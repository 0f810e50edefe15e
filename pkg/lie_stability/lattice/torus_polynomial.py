import logging
import re
import types
from typing import Dict, Iterator, Mapping, Sequence, Tuple, Union

import numpy as np
import sympy

logger = logging.getLogger(__name__)

# Stored coordinates are in units of half a lattice basis vector: the stored
# value 2m represents the lattice coordinate m.
ExponentVector = Tuple[int, ...]
RationalLike = Union[int, str, sympy.Rational]

_EVALUATION_CHUNK = 4096
_TERM_RE = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?(?:cos\(([^()]*)\))?\s*")
_ANGLE_RE = re.compile(r"([+-])?(\d+(?:/\d+)?)?θ(\d*)")


class RankMismatchError(ValueError):
    """
    Exception raised when two torus polynomials of different rank are combined.

    Attributes:
        left_rank (int): The rank of the left operand.
        right_rank (int): The rank of the right operand.
    """

    def __init__(self, left_rank, right_rank):
        self.left_rank = left_rank
        self.right_rank = right_rank
        super().__init__(
            f"Torus polynomials of rank {left_rank} and rank {right_rank} cannot be combined."
        )


class NonRealPolynomialError(ValueError):
    """Exception raised when a cosine rendering is requested for a polynomial that is not conj-invariant."""

    def __init__(self, polynomial):
        self.polynomial = polynomial
        super().__init__(
            f"The polynomial {polynomial!r} is not invariant under conjugation and has no cosine form."
        )


class CosineParseError(ValueError):
    def __init__(self, text, reason):
        self.text = text
        self.reason = reason
        super().__init__(f"Cannot parse cosine expression {text!r}: {reason}.")


class PolynomialDivisionError(ArithmeticError):
    """
    Exception raised when a torus polynomial is not an exact multiple of the divisor.

    Attributes:
        dividend (TorusPolynomial): The polynomial being divided.
        divisor (TorusPolynomial): The polynomial divided by.
        reason (str): Where the descent failed.
    """

    def __init__(self, dividend, divisor, reason):
        self.dividend = dividend
        self.divisor = divisor
        self.reason = reason
        super().__init__(f"Exact division failed: {reason}.")


def graded_key(exponent: ExponentVector) -> Tuple[int, ExponentVector]:
    """Graded lexicographic sort key: total degree first, then lexicographic."""
    return sum(exponent), exponent


def _shift(left: ExponentVector, right: ExponentVector, sign: int = 1) -> ExponentVector:
    return tuple(a + sign * b for a, b in zip(left, right))


class TorusPolynomial:
    """
    A finite Fourier (Laurent) polynomial on a rank-r torus with exact rational coefficients.

    A term ``c * exp(i<e, θ>)`` is stored as ``{e: c}`` with ``e`` in half-lattice
    units, so ``(2, -1)`` stands for ``exp(i(θ1 - θ2/2))``. Instances are immutable
    and canonical: zero coefficients are never stored and terms are kept in
    graded lexicographic order.
    """

    __slots__ = ("_rank", "_terms")

    def __init__(self, terms: Mapping[Sequence[int], RationalLike], rank: int):
        if not isinstance(rank, int) or rank < 1:
            raise ValueError("expected rank to be a positive integer")

        canonical: Dict[ExponentVector, sympy.Rational] = {}
        for exponent, coeff in terms.items():
            if len(exponent) != rank:
                raise ValueError(f"expected {rank} exponent coordinates, but got {len(exponent)}")
            key = tuple(int(x) for x in exponent)
            if any(k != x for k, x in zip(key, exponent)):
                raise ValueError(f"expected integer exponent coordinates, but got {exponent}")
            canonical[key] = canonical.get(key, sympy.Integer(0)) + sympy.Rational(coeff)
        self._rank = rank
        self._terms = self._canonicalize(canonical)

    @staticmethod
    def _canonicalize(terms: Dict[ExponentVector, sympy.Rational]) -> Dict[ExponentVector, sympy.Rational]:
        return dict(sorted(((e, c) for e, c in terms.items() if c != 0), key=lambda item: graded_key(item[0])))

    @classmethod
    def _build(cls, terms: Dict[ExponentVector, sympy.Rational], rank: int) -> "TorusPolynomial":
        polynomial = cls.__new__(cls)
        polynomial._rank = rank
        polynomial._terms = cls._canonicalize(terms)
        return polynomial

    @classmethod
    def zero(cls, rank: int) -> "TorusPolynomial":
        return cls({}, rank)

    @classmethod
    def one(cls, rank: int) -> "TorusPolynomial":
        return cls.constant(1, rank)

    @classmethod
    def constant(cls, value: RationalLike, rank: int) -> "TorusPolynomial":
        return cls({(0,) * rank: value}, rank)

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff: RationalLike = 1, rank: int = None) -> "TorusPolynomial":
        return cls({tuple(exponent): coeff}, len(exponent) if rank is None else rank)

    @property
    def rank(self) -> int:
        return self._rank

    @property
    def terms(self) -> Mapping[ExponentVector, sympy.Rational]:
        """Read-only view of the terms in graded lexicographic order."""
        return types.MappingProxyType(self._terms)

    def items(self) -> Iterator[Tuple[ExponentVector, sympy.Rational]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorusPolynomial):
            return NotImplemented
        return self._rank == other._rank and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._rank, tuple(self._terms.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{e}: {c}" for e, c in self._terms.items())
        return f"TorusPolynomial(rank={self._rank}, terms={{{body}}})"

    def _coerce(self, other) -> "TorusPolynomial":
        if isinstance(other, TorusPolynomial):
            if other._rank != self._rank:
                raise RankMismatchError(self._rank, other._rank)
            return other
        if isinstance(other, (int, sympy.Rational)):
            return TorusPolynomial.constant(other, self._rank)
        return NotImplemented

    def __add__(self, other) -> "TorusPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for exponent, coeff in other._terms.items():
            terms[exponent] = terms.get(exponent, 0) + coeff
        return TorusPolynomial._build(terms, self._rank)

    __radd__ = __add__

    def __neg__(self) -> "TorusPolynomial":
        return TorusPolynomial._build({e: -c for e, c in self._terms.items()}, self._rank)

    def __sub__(self, other) -> "TorusPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "TorusPolynomial":
        return (-self) + other

    def __mul__(self, other) -> "TorusPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: Dict[ExponentVector, sympy.Rational] = {}
        for left_exp, left_coeff in self._terms.items():
            for right_exp, right_coeff in other._terms.items():
                exponent = _shift(left_exp, right_exp)
                terms[exponent] = terms.get(exponent, 0) + left_coeff * right_coeff
        return TorusPolynomial._build(terms, self._rank)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "TorusPolynomial":
        if not isinstance(power, int) or power < 0:
            raise ValueError("expected a non-negative integer power")
        result = TorusPolynomial.one(self._rank)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def conj(self) -> "TorusPolynomial":
        """Complex conjugate: exponents negated, (real) coefficients unchanged."""
        return TorusPolynomial._build({tuple(-x for x in e): c for e, c in self._terms.items()}, self._rank)

    def constant_term(self) -> sympy.Rational:
        """
        Returns the coefficient of the zero exponent.

        This is the mean value of the polynomial over the torus, since every
        non-constant character integrates to zero.
        """
        return self._terms.get((0,) * self._rank, sympy.Integer(0))

    def coefficient_sum(self) -> sympy.Rational:
        return sum(self._terms.values(), sympy.Integer(0))

    def is_integral(self) -> bool:
        """True when every exponent is a lattice vector (all stored coordinates even)."""
        return all(x % 2 == 0 for e in self._terms for x in e)

    def is_real(self) -> bool:
        return self == self.conj()

    def max_abs_exponent(self) -> sympy.Rational:
        """Largest absolute exponent coordinate in true (halved) units."""
        stored = max((abs(x) for e in self._terms for x in e), default=0)
        return sympy.Rational(stored, 2)

    def leading_term(self) -> Tuple[ExponentVector, sympy.Rational]:
        if not self._terms:
            raise ValueError("the zero polynomial has no leading term")
        return next(reversed(self._terms.items()))

    def trailing_term(self) -> Tuple[ExponentVector, sympy.Rational]:
        if not self._terms:
            raise ValueError("the zero polynomial has no trailing term")
        return next(iter(self._terms.items()))

    def transform(self, matrix: Sequence[Sequence[int]]) -> "TorusPolynomial":
        """Applies an integer r x r matrix to every exponent vector."""
        rows = [tuple(int(x) for x in row) for row in matrix]
        if len(rows) != self._rank or any(len(row) != self._rank for row in rows):
            raise ValueError(f"expected a {self._rank}x{self._rank} matrix")
        terms: Dict[ExponentVector, sympy.Rational] = {}
        for exponent, coeff in self._terms.items():
            image = tuple(sum(m * x for m, x in zip(row, exponent)) for row in rows)
            terms[image] = terms.get(image, 0) + coeff
        return TorusPolynomial._build(terms, self._rank)

    def divide_exact(self, divisor: "TorusPolynomial") -> "TorusPolynomial":
        """
        Divides by ``divisor`` assuming the quotient is a torus polynomial.

        The quotient is found term by term from the graded-lex leading term down.
        For an exact quotient q with self = q * divisor, every exponent of q lies
        in the box min(self) - min(divisor) <= e <= max(self) - max(divisor)
        (coordinate-wise), and no exponent of q lies below trailing(self) - trailing(divisor)
        in graded-lex order, so leaving either bound proves the division inexact.

        Raises:
            PolynomialDivisionError: If the divisor is zero or does not divide exactly.
        """
        divisor = self._coerce(divisor)
        if not divisor:
            raise PolynomialDivisionError(self, divisor, "division by the zero polynomial")
        if not self:
            return TorusPolynomial.zero(self._rank)

        lower = tuple(
            min(e[i] for e in self._terms) - min(e[i] for e in divisor._terms) for i in range(self._rank)
        )
        upper = tuple(
            max(e[i] for e in self._terms) - max(e[i] for e in divisor._terms) for i in range(self._rank)
        )
        lead_exponent, lead_coeff = divisor.leading_term()
        floor = graded_key(_shift(self.trailing_term()[0], divisor.trailing_term()[0], -1))
        remainder = dict(self._terms)
        quotient: Dict[ExponentVector, sympy.Rational] = {}
        while remainder:
            top = max(remainder, key=graded_key)
            step = _shift(top, lead_exponent, -1)
            if graded_key(step) < floor or any(s < lo or s > hi for s, lo, hi in zip(step, lower, upper)):
                raise PolynomialDivisionError(self, divisor, f"remainder term at exponent {top} cannot be cleared")
            factor = remainder[top] / lead_coeff
            quotient[step] = factor
            for exponent, coeff in divisor._terms.items():
                target = _shift(step, exponent)
                value = remainder.get(target, 0) - factor * coeff
                if value == 0:
                    remainder.pop(target, None)
                else:
                    remainder[target] = value

        logger.debug(f"divided {len(self)} terms by {len(divisor)} terms into {len(quotient)} terms")
        return TorusPolynomial._build(quotient, self._rank)

    def evaluate(self, points) -> np.ndarray:
        """
        Evaluates the polynomial at an array of angles.

        Args:
            points: Array of shape (N, rank) of torus angles.

        Returns:
            np.ndarray: Complex array of shape (N,).
        """
        angles = np.asarray(points, dtype=np.float64)
        if angles.ndim != 2 or angles.shape[1] != self._rank:
            raise ValueError(f"expected points of shape (N, {self._rank})")

        values = np.zeros(angles.shape[0], dtype=np.complex128)
        if not self._terms:
            return values
        exponents = np.array(list(self._terms), dtype=np.float64) / 2.0
        coeffs = np.array([float(c) for c in self._terms.values()], dtype=np.float64)
        for start in range(0, angles.shape[0], _EVALUATION_CHUNK):
            chunk = angles[start:start + _EVALUATION_CHUNK]
            values[start:start + _EVALUATION_CHUNK] = np.exp(1j * (chunk @ exponents.T)) @ coeffs
        return values

    def eval_float(self, theta: Sequence[float]) -> complex:
        """Evaluates sum(c * exp(i<e, theta>)) at one point, exponents in true units."""
        point = np.asarray(theta, dtype=np.float64)
        if point.shape != (self._rank,):
            raise ValueError(f"expected {self._rank} angles, but got shape {point.shape}")
        return complex(self.evaluate(point[np.newaxis, :])[0])

    def _angle_names(self):
        if self._rank == 1:
            return ["θ"]
        return [f"θ{i + 1}" for i in range(self._rank)]

    def _format_angle(self, exponent: ExponentVector) -> str:
        text = ""
        for name, stored in zip(self._angle_names(), exponent):
            if stored == 0:
                continue
            value = sympy.Rational(stored, 2)
            magnitude = "" if abs(value) == 1 else str(abs(value))
            if value < 0:
                text += "-"
            elif text:
                text += "+"
            text += f"{magnitude}{name}"
        return text

    def render_cosine(self) -> str:
        """
        Renders a real polynomial as a sum of cosines.

        Each pair c*e^{ix} + c*e^{-ix} becomes 2c*cos(x), represented by the
        exponent whose first non-zero coordinate is positive. Cosines are ordered
        by total absolute degree, then lexicographically descending; the constant
        comes last.

        Raises:
            NonRealPolynomialError: If the polynomial is not conj-invariant.
        """
        if not self.is_real():
            raise NonRealPolynomialError(self)
        if not self._terms:
            return "0"

        cosines = [
            (exponent, 2 * coeff)
            for exponent, coeff in self._terms.items()
            if any(exponent) and next(x for x in exponent if x != 0) > 0
        ]
        cosines.sort(key=lambda item: (sum(abs(x) for x in item[0]), tuple(-x for x in item[0])))

        parts = [(coeff, f"cos({self._format_angle(exponent)})") for exponent, coeff in cosines]
        constant = self.constant_term()
        if constant != 0:
            parts.append((constant, ""))

        text = ""
        for coeff, body in parts:
            magnitude = abs(coeff)
            shown = "" if body and magnitude == 1 else str(magnitude)
            if not text:
                text = ("-" if coeff < 0 else "") + shown + body
            else:
                text += (" - " if coeff < 0 else " + ") + shown + body
        return text


def _parse_rational(fragment: str, text: str) -> sympy.Rational:
    _, _, denominator = fragment.partition("/")
    if denominator and int(denominator) == 0:
        raise CosineParseError(text, f"zero denominator in {fragment}")
    return sympy.Rational(fragment)


def _parse_angle(angle: str, rank: int, text: str) -> ExponentVector:
    compact = "".join(angle.split())
    coords = [sympy.Integer(0)] * rank
    position = 0
    while position < len(compact):
        match = _ANGLE_RE.match(compact, position)
        if match is None:
            raise CosineParseError(text, f"unexpected character in angle {angle!r}")
        if position > 0 and match.group(1) is None:
            raise CosineParseError(text, f"missing + or - between angles in {angle!r}")
        if not match.group(3) and rank > 1:
            raise CosineParseError(text, f"bare θ is ambiguous for rank {rank}")
        index = int(match.group(3)) if match.group(3) else 1
        if not 1 <= index <= rank:
            raise CosineParseError(text, f"angle index {index} outside rank {rank}")
        value = _parse_rational(match.group(2), text) if match.group(2) else sympy.Integer(1)
        coords[index - 1] += -value if match.group(1) == "-" else value
        position = match.end()

    stored = [2 * c for c in coords]
    if any(not s.is_integer for s in stored):
        raise CosineParseError(text, "exponents must be multiples of 1/2")
    return tuple(int(s) for s in stored)


def parse_cosine(text: str, rank: int) -> TorusPolynomial:
    """
    Parses the output of ``TorusPolynomial.render_cosine`` back into a polynomial.

    Every term after the first must be preceded by ``+`` or ``-``. Angles are
    written ``θ1``, ``θ2``, ...; a bare ``θ`` is accepted only for rank 1.

    Raises:
        CosineParseError: If the text is not a sum of rational multiples of cosines and a constant.
    """
    if not text.strip():
        raise CosineParseError(text, "empty expression")

    terms: Dict[ExponentVector, sympy.Rational] = {}
    position = 0
    while position < len(text):
        match = _TERM_RE.match(text, position)
        if match.group(2) is None and match.group(3) is None:
            raise CosineParseError(text, f"expected a term at position {position}")
        if position > 0 and match.group(1) is None:
            raise CosineParseError(text, f"missing + or - before the term at position {position}")
        coeff = _parse_rational(match.group(2), text) if match.group(2) else sympy.Integer(1)
        if match.group(1) == "-":
            coeff = -coeff

        if match.group(3) is None:
            zero = (0,) * rank
            terms[zero] = terms.get(zero, 0) + coeff
        else:
            exponent = _parse_angle(match.group(3), rank, text)
            if not any(exponent):
                raise CosineParseError(text, "cos(0) is not a valid term")
            for image in (exponent, tuple(-x for x in exponent)):
                terms[image] = terms.get(image, 0) + coeff / 2
        position = match.end()

    return TorusPolynomial(terms, rank)
