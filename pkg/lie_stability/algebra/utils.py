from typing import Iterable


class ComputationPreconditionError(ValueError):
    """Base class for inputs that violate the precondition of a computation."""


class InternalConsistencyError(ArithmeticError):
    """Raised when an exact identity that must hold fails; this indicates a bug, not bad input."""


class UnknownGroupError(ComputationPreconditionError):
    """
    Exception raised when a group name does not resolve to a root-system preset.

    Attributes:
        name (str): The requested group name.
        available (list): The preset names that exist.
    """

    def __init__(self, name: str, available: Iterable[str]):
        self.name = name
        self.available = sorted(available)
        super().__init__(
            f"Got unexpected group name: {name}. Should be one of {', '.join(self.available)}."
        )


class NonDominantWeightError(ComputationPreconditionError):
    def __init__(self, weight, fundamental_coords):
        self.weight = weight
        self.fundamental_coords = fundamental_coords
        super().__init__(
            f"The weight {weight} is not dominant (fundamental coordinates {fundamental_coords})."
        )


class WallWeightError(ComputationPreconditionError):
    """Exception raised when an alternating sum is requested for a weight fixed by a reflection; the sum would be 0."""

    def __init__(self, weight):
        self.weight = weight
        super().__init__(
            f"The weight {weight} lies on a wall of the Weyl chamber; its alternating sum vanishes."
        )


class EmptySearchSpaceError(ComputationPreconditionError):
    def __init__(self, bound):
        self.bound = bound
        super().__init__(f"No non-trivial dominant weight satisfies |λ+ρ|^2 <= {bound}.")


class WeylGroupOverflowError(ComputationPreconditionError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(
            f"The reflection closure exceeded {cap} elements; the root data is malformed."
        )


class NotClassFunctionError(ComputationPreconditionError):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"The integrand is not the restriction of a class function: {reason}.")


class NonNeutralWeightError(ComputationPreconditionError):
    """
    Exception raised when the instability test is run on a weight whose eigenvalue is not -2Λ.

    Attributes:
        weight: The highest weight tested.
        eigenvalue: Its Laplacian eigenvalue in the scale of the Einstein constant.
        expected: The required value -2Λ.
    """

    def __init__(self, weight, eigenvalue, expected):
        self.weight = weight
        self.eigenvalue = eigenvalue
        self.expected = expected
        super().__init__(
            f"The weight {weight} has eigenvalue {eigenvalue}, not -2Λ = {expected}."
        )


class NonRealCharacterError(ComputationPreconditionError):
    def __init__(self, weight):
        self.weight = weight
        super().__init__(
            f"The character of highest weight {weight} is not real, so it is not a real eigenfunction."
        )


class InvalidScaleError(ComputationPreconditionError):
    def __init__(self, factor):
        self.factor = factor
        super().__init__(f"expected a positive metric scale factor, but got {factor}")
