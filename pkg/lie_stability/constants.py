import enum

import sympy


DEFAULT_SEARCH_BOUND = 40
DEFAULT_GRID = 128
QUADRATURE_TOLERANCE = 1e-9
WEYL_GROUP_CAP = 10000

# Ric(g) = g/4 for the metric induced by minus the Killing form.
EINSTEIN_CONSTANT_KILLING = sympy.Rational(1, 4)


class ScaleConvention(enum.Enum):
    """
    An enumeration of the metric normalizations an eigenvalue can be expressed in.

    - `ScaleConvention.FH`: the preset normalization, |short root|^2 = 1.
    - `ScaleConvention.KILLING`: the metric induced by minus the Killing form.
    - `ScaleConvention.CUSTOM`: any other multiple of the FH metric.
    """

    FH = "fh"
    KILLING = "killing"
    CUSTOM = "custom"

    @classmethod
    def from_flag(cls, flag: str) -> "ScaleConvention":
        """
        Converts a command-line flag value to a ScaleConvention.

        Raises:
            ValueError: If the flag does not name a selectable convention.
        """
        normalized = flag.strip().lower()
        if normalized == cls.FH.value:
            return cls.FH
        elif normalized == cls.KILLING.value:
            return cls.KILLING
        else:
            raise ValueError(f"unsupported scale convention: {flag}")


class Verdict(enum.Enum):
    """Outcome of the cubic-integral instability test."""

    DYNAMICALLY_UNSTABLE = "DYNAMICALLY UNSTABLE"
    INCONCLUSIVE_INTEGRAL_VANISHES = "INCONCLUSIVE (INTEGRAL VANISHES)"
    NO_NEUTRAL_DIRECTION = "NO NEUTRAL DIRECTION"


class OutputFormat(enum.Enum):
    TEXT = "text"
    JSON = "json"


class Subcommand(enum.Enum):
    EIGENVALUE = "eigenvalue"
    CHARACTER = "character"
    INTEGRATE = "integrate"
    STABILITY = "stability"
    VERIFY = "verify"
