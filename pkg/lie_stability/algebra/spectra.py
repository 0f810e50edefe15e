import dataclasses
import logging
from dataclasses import dataclass
from typing import List, Tuple, TypeVar, Union

import sympy

from lie_stability.constants import EINSTEIN_CONSTANT_KILLING, ScaleConvention
from lie_stability.algebra.root_system import RootSystem, Weight, dominant_weights_below, rho
from lie_stability.algebra.utils import (
    EmptySearchSpaceError,
    InternalConsistencyError,
    InvalidScaleError,
    NonDominantWeightError,
)

logger = logging.getLogger(__name__)


def _convention(metric_scale: sympy.Rational, killing_factor: sympy.Rational) -> ScaleConvention:
    if metric_scale == 1:
        return ScaleConvention.FH
    elif metric_scale == killing_factor:
        return ScaleConvention.KILLING
    return ScaleConvention.CUSTOM


@dataclass(frozen=True)
class Eigenvalue:
    """
    An exact Laplacian eigenvalue of a bi-invariant metric.

    The Laplacian is negative semidefinite, so values are <= 0 and vanish only
    for the trivial representation.

    Attributes:
        value (sympy.Rational): The eigenvalue for the metric s * g_FH.
        highest_weight (Weight): Highest weight of the representation it belongs to.
        killing_factor (sympy.Rational): k with g_Killing = k * g_FH for the group.
        metric_scale (sympy.Rational): s; 1 for the preset normalization.
    """

    value: sympy.Rational
    highest_weight: Weight
    killing_factor: sympy.Rational
    metric_scale: sympy.Rational = sympy.Integer(1)

    def __post_init__(self):
        for name in ("value", "killing_factor", "metric_scale"):
            object.__setattr__(self, name, sympy.Rational(getattr(self, name)))
        if self.value > 0:
            raise ValueError(f"Laplacian eigenvalues are non-positive, but got {self.value}")
        if (self.value == 0) != self.highest_weight.is_zero():
            raise ValueError("only the trivial representation has eigenvalue 0")

    @property
    def scale_convention(self) -> ScaleConvention:
        return _convention(self.metric_scale, self.killing_factor)


@dataclass(frozen=True)
class EinsteinConstant:
    """Λ in Ric(g) = Λ g, with the same metric-scale bookkeeping as Eigenvalue."""

    value: sympy.Rational
    killing_factor: sympy.Rational
    metric_scale: sympy.Rational

    def __post_init__(self):
        for name in ("value", "killing_factor", "metric_scale"):
            object.__setattr__(self, name, sympy.Rational(getattr(self, name)))
        if self.value <= 0:
            raise ValueError(f"expected a positive Einstein constant, but got {self.value}")

    @classmethod
    def killing(cls, rs: RootSystem, value=EINSTEIN_CONSTANT_KILLING) -> "EinsteinConstant":
        """Λ for the metric induced by minus the Killing form (1/4 for every compact simple group)."""
        return cls(value=value, killing_factor=rs.killing_factor, metric_scale=rs.killing_factor)

    @property
    def scale_convention(self) -> ScaleConvention:
        return _convention(self.metric_scale, self.killing_factor)


Scaled = TypeVar("Scaled", Eigenvalue, EinsteinConstant)


def rescale(quantity: Scaled, k) -> Scaled:
    """
    Rescales the metric g -> k g; eigenvalues and the Einstein constant scale by 1/k.

    Raises:
        InvalidScaleError: If k <= 0.
    """
    k = sympy.Rational(k)
    if k <= 0:
        raise InvalidScaleError(k)
    return dataclasses.replace(quantity, value=quantity.value / k, metric_scale=quantity.metric_scale * k)


def in_scale(quantity: Scaled, convention: Union[ScaleConvention, str]) -> Scaled:
    """Expresses an eigenvalue or Einstein constant in the FH or Killing normalization."""
    convention = ScaleConvention(convention)
    if convention == ScaleConvention.FH:
        target = sympy.Integer(1)
    elif convention == ScaleConvention.KILLING:
        target = quantity.killing_factor
    else:
        raise ValueError("a custom scale has no fixed metric to convert to")
    return rescale(quantity, target / quantity.metric_scale)


def casimir(rs: RootSystem, weight: Weight) -> sympy.Rational:
    """<lambda, lambda + 2 rho> = |lambda + rho|^2 - |rho|^2."""
    return rs.inner(weight, weight + 2 * rho(rs))


def freudenthal_eigenvalue(rs: RootSystem, weight: Weight) -> Eigenvalue:
    """
    mu_lambda = |rho|^2 - |lambda + rho|^2 in the preset (FH) normalization.

    Raises:
        NonDominantWeightError: If lambda is not dominant.
        InternalConsistencyError: If the value disagrees with minus the Casimir value.
    """
    if not rs.is_dominant(weight):
        raise NonDominantWeightError(weight, rs.fundamental_coords(weight))
    shift = rho(rs)
    value = rs.norm2(shift) - rs.norm2(weight + shift)
    if value != -casimir(rs, weight):
        raise InternalConsistencyError(f"eigenvalue {value} of {weight} disagrees with the Casimir value")
    return Eigenvalue(value=value, highest_weight=weight, killing_factor=rs.killing_factor)


def smallest_nonzero_eigenvalue(rs: RootSystem, search_bound) -> List[Tuple[Weight, Eigenvalue]]:
    """
    Finds the non-zero eigenvalue closest to zero in the scan |lambda + rho|^2 <= search_bound.

    Returns:
        list: (weight, eigenvalue) pairs; several when |lambda + rho|^2 ties.

    Raises:
        EmptySearchSpaceError: If the bound admits no non-trivial dominant weight.
    """
    candidates = [w for w in dominant_weights_below(rs, search_bound) if not w.is_zero()]
    if not candidates:
        raise EmptySearchSpaceError(search_bound)

    shift = rho(rs)
    best = min(rs.norm2(w + shift) for w in candidates)
    winners = [w for w in candidates if rs.norm2(w + shift) == best]
    logger.debug(f"{rs.name}: {len(candidates)} candidates, minimal |λ+ρ|^2 = {best}")
    return [(w, freudenthal_eigenvalue(rs, w)) for w in winners]
