import functools
import logging
from dataclasses import dataclass

import sympy

from lie_stability.lattice import RankMismatchError, TorusPolynomial
from lie_stability.utils import format_pi_multiple
from lie_stability.algebra.characters import alternating_sum
from lie_stability.algebra.root_system import RootSystem, act, is_weyl_invariant, rho, weyl_group
from lie_stability.algebra.utils import InternalConsistencyError, NotClassFunctionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HaarIntegral:
    """
    The integral of a class function over G, reported two ways.

    Attributes:
        unit_haar_value (sympy.Rational): The integral for the Haar measure of total mass 1.
        raw_torus_coefficient (sympy.Rational): c with
            integral over [0, 2pi]^r of f * delta * conj(delta) dtheta = c * pi^r.
        rank (int): r.
        weyl_order (int): |W|.
    """

    unit_haar_value: sympy.Rational
    raw_torus_coefficient: sympy.Rational
    rank: int
    weyl_order: int

    def __post_init__(self):
        object.__setattr__(self, "unit_haar_value", sympy.Rational(self.unit_haar_value))
        object.__setattr__(self, "raw_torus_coefficient", sympy.Rational(self.raw_torus_coefficient))
        # (2 pi)^r * constant term = c * pi^r, and the unit measure divides by |W|.
        if self.raw_torus_coefficient != 2 ** self.rank * self.weyl_order * self.unit_haar_value:
            raise ValueError("raw torus value and unit Haar value are inconsistent")

    @property
    def raw_torus_value_over_pi2(self) -> sympy.Rational:
        if self.rank != 2:
            raise ValueError(f"the raw torus value of a rank {self.rank} group is a multiple of pi^{self.rank}")
        return self.raw_torus_coefficient

    def is_zero(self) -> bool:
        return self.unit_haar_value == 0

    def format_raw(self) -> str:
        return format_pi_multiple(self.raw_torus_coefficient, self.rank)


@functools.lru_cache(maxsize=None)
def weyl_denominator(rs: RootSystem) -> TorusPolynomial:
    """
    delta = prod over positive roots of (e^{alpha/2} - e^{-alpha/2}), expanded.

    Raises:
        InternalConsistencyError: If delta is not integral, is not W-anti-invariant
            or differs from +-A_rho.
    """
    delta = TorusPolynomial.one(rs.rank)
    for alpha in rs.positive_roots:
        half = rs.exponent(alpha * sympy.Rational(1, 2))
        factor = TorusPolynomial.monomial(half) - TorusPolynomial.monomial(tuple(-x for x in half))
        delta = delta * factor

    if not delta.is_integral():
        raise InternalConsistencyError(f"the Weyl denominator of {rs.name} has half-lattice exponents")
    for element, sign in weyl_group(rs):
        if act(rs, element, delta) != sign * delta:
            raise InternalConsistencyError(f"the Weyl denominator of {rs.name} is not W-anti-invariant")
    a_rho = alternating_sum(rs, rho(rs))
    if delta != a_rho and delta != -a_rho:
        raise InternalConsistencyError(f"the Weyl denominator of {rs.name} is not +-A_rho")
    return delta


@functools.lru_cache(maxsize=None)
def jacobian(rs: RootSystem) -> TorusPolynomial:
    """delta * conj(delta), the density of the Weyl integration formula on the torus."""
    delta = weyl_denominator(rs)
    return delta * delta.conj()


def integrate_class_function(rs: RootSystem, f: TorusPolynomial) -> HaarIntegral:
    """
    Integrates a class function over G by the Weyl integration formula.

    Args:
        rs (RootSystem): The group.
        f (TorusPolynomial): Restriction of the class function to the maximal torus.

    Returns:
        HaarIntegral: constant_term(f * delta * conj(delta)) / |W| and the raw torus value.

    Raises:
        NotClassFunctionError: If f has non-lattice exponents or is not Weyl invariant.
    """
    if f.rank != rs.rank:
        raise RankMismatchError(rs.rank, f.rank)
    if not f.is_integral():
        raise NotClassFunctionError("its exponents are not lattice vectors")
    if not is_weyl_invariant(rs, f):
        raise NotClassFunctionError("it is not invariant under the Weyl group")

    constant = (f * jacobian(rs)).constant_term()
    order = len(weyl_group(rs))
    logger.debug(f"{rs.name}: constant term of f * |delta|^2 is {constant}")
    return HaarIntegral(
        unit_haar_value=constant / order,
        raw_torus_coefficient=2 ** rs.rank * constant,
        rank=rs.rank,
        weyl_order=order,
    )


def inner_product(rs: RootSystem, f: TorusPolynomial, g: TorusPolynomial) -> sympy.Rational:
    """The L2 pairing of class functions for the unit Haar measure."""
    return integrate_class_function(rs, f * g.conj()).unit_haar_value
