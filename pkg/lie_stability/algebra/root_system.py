import functools
import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Sequence, Tuple

import sympy

from lie_stability.constants import WEYL_GROUP_CAP
from lie_stability.lattice import ExponentVector, RankMismatchError, TorusPolynomial
from lie_stability.algebra.utils import (
    InternalConsistencyError,
    UnknownGroupError,
    WeylGroupOverflowError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Weight:
    """
    A weight v = sum(c_i * alpha_i), stored by its exact coordinates in the simple-root basis.
    """

    coords: Tuple[sympy.Rational, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(sympy.Rational(c) for c in self.coords))

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls((0,) * rank)

    @property
    def rank(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def __mul__(self, scalar) -> "Weight":
        scalar = sympy.Rational(scalar)
        return Weight(tuple(scalar * a for a in self.coords))

    __rmul__ = __mul__

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class RootSystem:
    """
    Root data of a compact simple Lie group in the simple-root basis.

    Attributes:
        name (str): Preset name, e.g. "G2".
        gram (sympy.ImmutableMatrix): <alpha_i, alpha_j>, with |short root|^2 = 1.
        simple_roots (tuple): The standard basis vectors.
        positive_roots (tuple): R+, as non-negative integer combinations of simple roots.
        fundamental_weights (tuple): omega_i with <omega_i, alpha_j^vee> = delta_ij.
        weyl_order (int): |W|.
        torus_basis (sympy.ImmutableMatrix): Maps simple-root coordinates to the
            torus angle coordinates theta_1, ..., theta_r.
        killing_factor (sympy.Rational): k with g_Killing = k * g for the preset metric g.
    """

    name: str
    gram: sympy.ImmutableMatrix
    simple_roots: Tuple[Weight, ...]
    positive_roots: Tuple[Weight, ...]
    fundamental_weights: Tuple[Weight, ...]
    weyl_order: int
    torus_basis: sympy.ImmutableMatrix
    killing_factor: sympy.Rational

    @property
    def rank(self) -> int:
        return self.gram.shape[0]

    @property
    def roots(self) -> Tuple[Weight, ...]:
        return self.positive_roots + tuple(-root for root in self.positive_roots)

    def inner(self, v: Weight, w: Weight) -> sympy.Rational:
        return sum(
            (v.coords[i] * self.gram[i, j] * w.coords[j] for i in range(self.rank) for j in range(self.rank)),
            sympy.Integer(0),
        )

    def norm2(self, v: Weight) -> sympy.Rational:
        return self.inner(v, v)

    def coroot_pairing(self, v: Weight, index: int) -> sympy.Rational:
        """<v, alpha_index^vee> = 2<v, alpha_index> / <alpha_index, alpha_index>."""
        alpha = self.simple_roots[index]
        return 2 * self.inner(v, alpha) / self.norm2(alpha)

    def fundamental_coords(self, v: Weight) -> Tuple[sympy.Rational, ...]:
        return tuple(self.coroot_pairing(v, i) for i in range(self.rank))

    def from_fundamental(self, coords: Sequence[int]) -> Weight:
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} fundamental coordinates, but got {len(coords)}")
        weight = Weight.zero(self.rank)
        for a, omega in zip(coords, self.fundamental_weights):
            weight = weight + a * omega
        return weight

    def is_dominant(self, v: Weight) -> bool:
        return all(c.is_integer and c >= 0 for c in self.fundamental_coords(v))

    def highest_root(self) -> Weight:
        return max(self.positive_roots, key=lambda root: sum(root.coords))

    def exponent(self, v: Weight) -> ExponentVector:
        """
        Torus exponent of e^{v} in stored (doubled) units.

        Raises:
            ValueError: If v is not in the half weight lattice of the torus.
        """
        theta = self.torus_basis * sympy.Matrix(v.coords)
        stored = [2 * x for x in theta]
        if any(not x.is_integer for x in stored):
            raise ValueError(f"the weight {v} has no exponent on the half lattice of the torus")
        return tuple(int(x) for x in stored)


@dataclass(frozen=True)
class WeylGroup:
    """
    The Weyl group as integer matrices acting on simple-root coordinates.

    Attributes:
        elements (tuple): The group elements, identity first.
        signs (tuple): det of each element (+1 or -1).
    """

    elements: Tuple[sympy.ImmutableMatrix, ...]
    signs: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Tuple[sympy.ImmutableMatrix, int]]:
        return iter(zip(self.elements, self.signs))


def simple_reflection(rs: RootSystem, index: int) -> sympy.ImmutableMatrix:
    """Matrix of s_i: v -> v - <v, alpha_i^vee> alpha_i in simple-root coordinates."""
    columns = []
    for alpha in rs.simple_roots:
        image = alpha - rs.simple_roots[index] * rs.coroot_pairing(alpha, index)
        columns.append(list(image.coords))
    reflection = sympy.ImmutableMatrix(columns).T
    if any(not entry.is_integer for entry in reflection):
        raise InternalConsistencyError(f"simple reflection {index} of {rs.name} is not integral")
    return reflection


@functools.lru_cache(maxsize=None)
def weyl_group(rs: RootSystem) -> WeylGroup:
    """
    Generates W by closing the simple reflections under composition.

    Raises:
        WeylGroupOverflowError: If more than WEYL_GROUP_CAP elements are produced.
    """
    generators = [simple_reflection(rs, i) for i in range(rs.rank)]
    identity = sympy.ImmutableMatrix(sympy.eye(rs.rank))
    elements = [identity]
    seen = {identity}
    frontier = [identity]
    while frontier:
        next_frontier = []
        for element in frontier:
            for generator in generators:
                product = sympy.ImmutableMatrix(generator * element)
                if product in seen:
                    continue
                if len(elements) >= WEYL_GROUP_CAP:
                    raise WeylGroupOverflowError(WEYL_GROUP_CAP)
                seen.add(product)
                elements.append(product)
                next_frontier.append(product)
        frontier = next_frontier

    signs = tuple(int(element.det()) for element in elements)
    logger.debug(f"Weyl group of {rs.name} has {len(elements)} elements")
    return WeylGroup(tuple(elements), signs)


def apply(element: sympy.ImmutableMatrix, v: Weight) -> Weight:
    return Weight(tuple(element * sympy.Matrix(v.coords)))


@functools.lru_cache(maxsize=None)
def torus_matrix(rs: RootSystem, element: sympy.ImmutableMatrix) -> Tuple[Tuple[int, ...], ...]:
    """The Weyl element conjugated into torus angle coordinates."""
    conjugated = rs.torus_basis * element * rs.torus_basis.inv()
    if any(not entry.is_integer for entry in conjugated):
        raise InternalConsistencyError(f"Weyl element {element.tolist()} does not preserve the torus lattice")
    return tuple(tuple(int(conjugated[i, j]) for j in range(rs.rank)) for i in range(rs.rank))


def act(rs: RootSystem, element: sympy.ImmutableMatrix, polynomial: TorusPolynomial) -> TorusPolynomial:
    """Applies a Weyl element to the exponents of a torus polynomial."""
    if polynomial.rank != rs.rank:
        raise RankMismatchError(rs.rank, polynomial.rank)
    return polynomial.transform(torus_matrix(rs, element))


def is_weyl_invariant(rs: RootSystem, polynomial: TorusPolynomial) -> bool:
    return all(act(rs, element, polynomial) == polynomial for element in weyl_group(rs).elements)


def rho(rs: RootSystem) -> Weight:
    """Half the sum of the positive roots."""
    total = Weight.zero(rs.rank)
    for root in rs.positive_roots:
        total = total + root
    return total * sympy.Rational(1, 2)


def dominant_weights_below(rs: RootSystem, bound) -> List[Weight]:
    """
    Enumerates the dominant weights lambda with |lambda + rho|^2 <= bound.

    |lambda + rho|^2 strictly increases in every fundamental coordinate (the
    fundamental weights have non-negative mutual inner products), so the scan
    over a_1 + ... + a_r = n stops at the first level entirely above the bound.

    Args:
        rs (RootSystem): The root system.
        bound: Positive rational bound on |lambda + rho|^2.

    Returns:
        list: Weights sorted by |lambda + rho|^2, ties by fundamental coordinates.
    """
    bound = sympy.Rational(bound)
    if bound <= 0:
        raise ValueError(f"expected a positive bound, but got {bound}")

    shift = rho(rs)
    found = []
    level = 0
    while True:
        candidates = []
        for coords in itertools.product(range(level + 1), repeat=rs.rank):
            if sum(coords) != level:
                continue
            weight = rs.from_fundamental(coords)
            candidates.append((rs.norm2(weight + shift), coords, weight))
        if all(value > bound for value, _, _ in candidates):
            break
        found.extend(item for item in candidates if item[0] <= bound)
        level += 1

    found.sort(key=lambda item: (item[0], item[1]))
    return [weight for _, _, weight in found]


def _build_root_system(
    name: str,
    gram: Sequence[Sequence],
    positive_roots: Sequence[Sequence[int]],
    torus_basis: Sequence[Sequence[int]],
    weyl_order: int,
) -> RootSystem:
    gram = sympy.ImmutableMatrix([[sympy.Rational(x) for x in row] for row in gram])
    if not gram.is_symmetric() or not gram.is_positive_definite:
        raise ValueError(f"the Gram matrix of {name} must be symmetric positive definite")

    rank = gram.shape[0]
    simple_roots = tuple(Weight(tuple(int(i == j) for j in range(rank))) for i in range(rank))
    positives = tuple(Weight(root) for root in positive_roots)
    if any(not (c.is_integer and c >= 0) for root in positives for c in root.coords):
        raise ValueError(f"the positive roots of {name} must be non-negative integer combinations")

    # Column i of (D G)^-1 is omega_i, where D = diag(2 / <alpha_j, alpha_j>).
    cartan = sympy.ImmutableMatrix(rank, rank, lambda i, j: 2 * gram[i, j] / gram[i, i])
    inverse = cartan.inv()
    fundamental = tuple(Weight(tuple(inverse[:, i])) for i in range(rank))

    partial = RootSystem(
        name=name,
        gram=gram,
        simple_roots=simple_roots,
        positive_roots=positives,
        fundamental_weights=fundamental,
        weyl_order=weyl_order,
        torus_basis=sympy.ImmutableMatrix(torus_basis),
        killing_factor=sympy.Integer(1),
    )
    # The adjoint Casimir equals 1 for the Killing metric, so its value in the
    # preset metric is the factor relating the two.
    psi = partial.highest_root()
    killing_factor = partial.inner(psi, psi + 2 * rho(partial))
    return RootSystem(
        name=name,
        gram=gram,
        simple_roots=simple_roots,
        positive_roots=positives,
        fundamental_weights=fundamental,
        weyl_order=weyl_order,
        torus_basis=partial.torus_basis,
        killing_factor=killing_factor,
    )


@functools.lru_cache(maxsize=None)
def build_g2() -> RootSystem:
    """
    G2 with the short simple root alpha_1 = (1, 0) and the long root alpha_2 = (-3/2, sqrt(3)/2).

    Torus angles: theta_1 is the exponent of alpha_1 + alpha_2 and theta_2 that of
    alpha_1, so the short roots sit at theta_1, theta_2, theta_1 + theta_2.
    """
    return _build_root_system(
        name="G2",
        gram=[[1, sympy.Rational(-3, 2)], [sympy.Rational(-3, 2), 3]],
        positive_roots=[(1, 0), (3, 1), (2, 1), (3, 2), (1, 1), (0, 1)],
        torus_basis=[[0, 1], [1, -1]],
        weyl_order=12,
    )


@functools.lru_cache(maxsize=None)
def build_a1() -> RootSystem:
    """SU(2); the torus angle is the exponent of the fundamental weight, so alpha = 2 theta."""
    return _build_root_system(
        name="A1",
        gram=[[1]],
        positive_roots=[(1,)],
        torus_basis=[[2]],
        weyl_order=2,
    )


@functools.lru_cache(maxsize=None)
def build_a2() -> RootSystem:
    """SU(3) with torus angles in fundamental-weight coordinates."""
    return _build_root_system(
        name="A2",
        gram=[[1, sympy.Rational(-1, 2)], [sympy.Rational(-1, 2), 1]],
        positive_roots=[(1, 0), (0, 1), (1, 1)],
        torus_basis=[[2, -1], [-1, 2]],
        weyl_order=6,
    )


PRESETS: Dict[str, Callable[[], RootSystem]] = {
    "G2": build_g2,
    "A1": build_a1,
    "A2": build_a2,
}


def get_root_system(name: str) -> RootSystem:
    """
    Resolves a preset by name ("G2", "A1", "A2"; case-insensitive).

    Raises:
        UnknownGroupError: If no preset has that name.
    """
    builder = PRESETS.get(name.strip().upper())
    if builder is None:
        raise UnknownGroupError(name, PRESETS)
    return builder()
