import functools
import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

import sympy
from sympy.polys.polyerrors import ExactQuotientFailed

from lie_stability.lattice import PolynomialDivisionError, TorusPolynomial
from lie_stability.algebra.root_system import (
    RootSystem,
    Weight,
    apply,
    build_g2,
    rho,
    weyl_group,
)
from lie_stability.algebra.utils import (
    InternalConsistencyError,
    NonDominantWeightError,
    WallWeightError,
)

logger = logging.getLogger(__name__)

_SCHUR_VARIABLES = sympy.symbols("x1 x2 x3")


@dataclass(frozen=True)
class Character:
    """
    An irreducible character restricted to the maximal torus.

    Attributes:
        poly (TorusPolynomial): The character as a Fourier polynomial in the torus angles.
        highest_weight (Weight): Highest weight of the representation.
        dimension (int): Value at the identity.
    """

    poly: TorusPolynomial
    highest_weight: Weight
    dimension: int


def alternating_sum(rs: RootSystem, mu: Weight) -> TorusPolynomial:
    """
    A_mu = sum over w in W of sgn(w) e^{w(mu)}.

    Raises:
        WallWeightError: If mu is fixed by a reflection (the sum would be 0).
        NonDominantWeightError: If mu is outside the closed dominant chamber.
    """
    pairings = rs.fundamental_coords(mu)
    if any(not c.is_integer or c < 0 for c in pairings):
        raise NonDominantWeightError(mu, pairings)
    if any(c == 0 for c in pairings):
        raise WallWeightError(mu)

    terms = {}
    for element, sign in weyl_group(rs):
        exponent = rs.exponent(apply(element, mu))
        if exponent in terms:
            raise InternalConsistencyError(f"the Weyl orbit of {mu} is not free")
        terms[exponent] = sign
    return TorusPolynomial(terms, rs.rank)


def _certified_quotient(numerator: TorusPolynomial, denominator: TorusPolynomial) -> TorusPolynomial:
    try:
        quotient = numerator.divide_exact(denominator)
    except PolynomialDivisionError as e:
        raise InternalConsistencyError(f"character division failed: {e.reason}") from e
    if quotient * denominator != numerator:
        raise InternalConsistencyError("character quotient does not reproduce the numerator")
    return quotient


def _polynomial_dimension(poly: TorusPolynomial) -> int:
    total = poly.coefficient_sum()
    if not total.is_integer or total <= 0:
        raise InternalConsistencyError(f"character value at the identity is {total}, not a positive integer")
    return int(total)


def dimension(character: Character) -> int:
    """The sum of all coefficients, i.e. the value at theta = 0."""
    return _polynomial_dimension(character.poly)


def weyl_dimension(rs: RootSystem, weight: Weight) -> int:
    """prod over positive roots of <lambda + rho, alpha> / <rho, alpha>."""
    shift = rho(rs)
    value = sympy.Integer(1)
    for alpha in rs.positive_roots:
        value *= rs.inner(weight + shift, alpha) / rs.inner(shift, alpha)
    return int(value)


def _character(rs: RootSystem, poly: TorusPolynomial, weight: Weight) -> Character:
    size = _polynomial_dimension(poly)
    expected = weyl_dimension(rs, weight)
    if size != expected:
        raise InternalConsistencyError(
            f"character of {weight} has dimension {size}, the Weyl dimension formula gives {expected}"
        )
    return Character(poly=poly, highest_weight=weight, dimension=size)


def weyl_character(rs: RootSystem, weight: Weight) -> Character:
    """
    chi_lambda = A_{lambda + rho} / A_rho, certified by multiplying back.

    Raises:
        NonDominantWeightError: If lambda is not dominant.
        InternalConsistencyError: If the exact division fails.
    """
    if not rs.is_dominant(weight):
        raise NonDominantWeightError(weight, rs.fundamental_coords(weight))
    shift = rho(rs)
    poly = _certified_quotient(alternating_sum(rs, weight + shift), alternating_sum(rs, shift))
    logger.debug(f"{rs.name} character of {weight}: {len(poly)} terms")
    return _character(rs, poly, weight)


@functools.lru_cache(maxsize=None)
def schur_polynomial(partition: Tuple[int, ...]) -> TorusPolynomial:
    """
    The Schur polynomial S_partition(x1, x2, x3) on the torus x1 x2 x3 = 1.

    Computed as the bialternant det(x_i^(mu_j + 3 - j)) / det(x_i^(3 - j)) and then
    restricted with x1 = e^{i theta_1}, x2 = e^{i theta_2}, x3 = (x1 x2)^-1.
    """
    parts = tuple(int(p) for p in partition) + (0,) * (3 - len(partition))
    if len(parts) != 3 or any(p < 0 for p in parts) or list(parts) != sorted(parts, reverse=True):
        raise ValueError(f"expected a partition with at most 3 parts, but got {partition}")

    n = len(_SCHUR_VARIABLES)
    alternant = sympy.Matrix(n, n, lambda i, j: _SCHUR_VARIABLES[i] ** (parts[j] + n - 1 - j)).det()
    vandermonde = sympy.Matrix(n, n, lambda i, j: _SCHUR_VARIABLES[i] ** (n - 1 - j)).det()
    try:
        quotient = sympy.Poly(alternant, *_SCHUR_VARIABLES).exquo(sympy.Poly(vandermonde, *_SCHUR_VARIABLES))
    except ExactQuotientFailed as e:
        raise InternalConsistencyError(f"bialternant of {parts} is not divisible by the Vandermonde") from e

    terms = {}
    for (i, j, k), coeff in quotient.terms():
        exponent = (2 * (i - k), 2 * (j - k))
        terms[exponent] = terms.get(exponent, 0) + sympy.Rational(coeff)
    return TorusPolynomial(terms, 2)


def schur_character_g2(a: int, b: int) -> Character:
    """
    The G2 character chi_{a,b} from Schur polynomials of SU(3):

        chi_{a,b} = (S_(a+2b+1, a+b+1) - S_(a+2b+1, b)) / (S_(1,1) - S_(1)).
    """
    rs = build_g2()
    if any(not isinstance(c, int) or c < 0 for c in (a, b)):
        raise NonDominantWeightError((a, b), (a, b))

    numerator = schur_polynomial((a + 2 * b + 1, a + b + 1)) - schur_polynomial((a + 2 * b + 1, b))
    denominator = schur_polynomial((1, 1)) - schur_polynomial((1,))
    poly = _certified_quotient(numerator, denominator)
    return _character(rs, poly, rs.from_fundamental((a, b)))


def character_from_fundamental(rs: RootSystem, coords: Sequence[int]) -> Character:
    return weyl_character(rs, rs.from_fundamental(coords))
