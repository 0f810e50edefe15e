import logging
from dataclasses import dataclass

import numpy as np
import sympy

from lie_stability.constants import DEFAULT_GRID, QUADRATURE_TOLERANCE
from lie_stability.lattice import TorusPolynomial
from lie_stability.algebra.integration import integrate_class_function, jacobian
from lie_stability.algebra.root_system import RootSystem, weyl_group
from lie_stability.algebra.utils import ComputationPreconditionError

logger = logging.getLogger(__name__)

_POINT_CHUNK = 65536


class GridTooSmallError(ComputationPreconditionError):
    """
    Exception raised when the quadrature grid cannot resolve the integrand's band limit.

    Attributes:
        grid (int): The requested points per axis.
        required (int): The smallest admissible grid.
    """

    def __init__(self, grid, required):
        self.grid = grid
        self.required = required
        super().__init__(
            f"A grid of {grid} points per axis aliases this integrand; at least {required} are required."
        )


@dataclass
class QuadratureResult:
    value: complex
    exact: sympy.Rational
    grid: int
    tolerance: float

    @property
    def error(self) -> float:
        return abs(self.value - float(self.exact))

    @property
    def passed(self) -> bool:
        return self.error <= self.tolerance

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"


def torus_average(polynomial: TorusPolynomial, grid: int) -> complex:
    """
    Mean of the polynomial over a uniform grid of grid^r points on [0, 2pi)^r.

    For integral exponents with max |exponent| < grid / 2 this is exactly the
    constant term, up to float rounding.
    """
    if grid < 1:
        raise ValueError("expected a positive grid size")
    shape = (grid,) * polynomial.rank
    size = grid ** polynomial.rank
    total = 0j
    for start in range(0, size, _POINT_CHUNK):
        indices = np.unravel_index(np.arange(start, min(start + _POINT_CHUNK, size)), shape)
        points = 2.0 * np.pi * np.stack(indices, axis=-1) / grid
        total += complex(np.sum(polynomial.evaluate(points)))
    return total / size


def verify_quadrature(
    rs: RootSystem,
    f: TorusPolynomial,
    grid: int = DEFAULT_GRID,
    tolerance: float = QUADRATURE_TOLERANCE,
) -> QuadratureResult:
    """
    Cross-checks the exact unit-Haar integral of f with a rectangle rule on the torus.

    Raises:
        GridTooSmallError: If grid < 2 * max|exponent| + 2 for f * delta * conj(delta).
    """
    integrand = f * jacobian(rs)
    required = int(2 * integrand.max_abs_exponent()) + 2
    if grid < required:
        raise GridTooSmallError(grid, required)

    exact = integrate_class_function(rs, f).unit_haar_value
    value = torus_average(integrand, grid) / len(weyl_group(rs))
    result = QuadratureResult(value=value, exact=exact, grid=grid, tolerance=tolerance)
    logger.info(f"{rs.name}: quadrature {value.real:.12f} vs exact {exact} on a {grid}-point grid")
    return result
