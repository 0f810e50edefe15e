import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from lie_stability.constants import (
    DEFAULT_SEARCH_BOUND,
    EINSTEIN_CONSTANT_KILLING,
    ScaleConvention,
    Verdict,
)
from lie_stability.utils import decode_rational, encode_rational
from lie_stability.algebra.characters import weyl_character
from lie_stability.algebra.integration import HaarIntegral, integrate_class_function
from lie_stability.algebra.root_system import RootSystem, Weight, dominant_weights_below
from lie_stability.algebra.spectra import (
    EinsteinConstant,
    Eigenvalue,
    freudenthal_eigenvalue,
    in_scale,
)
from lie_stability.algebra.utils import (
    EmptySearchSpaceError,
    NonNeutralWeightError,
    NonRealCharacterError,
)

logger = logging.getLogger(__name__)


def _decide(neutral_weights: Sequence, cube_integrals: Sequence) -> Verdict:
    # A vanishing integral proves nothing, so there is no "stable" outcome.
    if not neutral_weights:
        return Verdict.NO_NEUTRAL_DIRECTION
    if any(not integral.is_zero() for _, integral in cube_integrals):
        return Verdict.DYNAMICALLY_UNSTABLE
    return Verdict.INCONCLUSIVE_INTEGRAL_VANISHES


@dataclass(frozen=True)
class StabilityReport:
    """
    Outcome of the cubic-integral instability test for one group.

    Attributes:
        group (str): Preset name.
        einstein_constant (EinsteinConstant): Λ, Killing scale.
        neutral_weights (tuple): (weight, eigenvalue) pairs with eigenvalue = -2Λ.
        cube_integrals (tuple): (weight, integral of chi^3) pairs.
        verdict (Verdict): DYNAMICALLY_UNSTABLE iff some cube integral is non-zero.
        inapplicable_weights (tuple): Neutral weights skipped because their character is not real.
    """

    group: str
    einstein_constant: EinsteinConstant
    neutral_weights: Tuple[Tuple[Weight, Eigenvalue], ...]
    cube_integrals: Tuple[Tuple[Weight, HaarIntegral], ...]
    verdict: Verdict
    inapplicable_weights: Tuple[Weight, ...] = ()

    def __post_init__(self):
        if self.verdict != _decide(self.neutral_weights, self.cube_integrals):
            raise ValueError(f"verdict {self.verdict.value} does not follow from the integrals")
        target = -2 * self.einstein_constant.value
        for weight, eigenvalue in self.neutral_weights:
            if eigenvalue.scale_convention != self.einstein_constant.scale_convention or eigenvalue.value != target:
                raise ValueError(f"the weight {weight} is not a neutral direction")

    @property
    def non_integrable_deformation(self) -> bool:
        """True when a solitonic deformation fails the necessary condition for integrability."""
        return self.verdict == Verdict.DYNAMICALLY_UNSTABLE

    def to_dict(self) -> dict:
        einstein = self.einstein_constant
        return {
            "group": self.group,
            "einstein_constant": {
                "value": encode_rational(einstein.value),
                "metric_scale": encode_rational(einstein.metric_scale),
                "killing_factor": encode_rational(einstein.killing_factor),
                "scale": einstein.scale_convention.value,
            },
            "neutral_weights": [
                {
                    "weight": [encode_rational(c) for c in weight.coords],
                    "eigenvalue": encode_rational(eigenvalue.value),
                    "metric_scale": encode_rational(eigenvalue.metric_scale),
                }
                for weight, eigenvalue in self.neutral_weights
            ],
            "cube_integrals": [
                {
                    "weight": [encode_rational(c) for c in weight.coords],
                    "unit_haar_value": encode_rational(integral.unit_haar_value),
                    "raw_torus_value": {
                        "coefficient": encode_rational(integral.raw_torus_coefficient),
                        "pi_power": integral.rank,
                    },
                    "weyl_order": integral.weyl_order,
                }
                for weight, integral in self.cube_integrals
            ],
            "inapplicable_weights": [[encode_rational(c) for c in w.coords] for w in self.inapplicable_weights],
            "verdict": self.verdict.value,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "StabilityReport":
        einstein_data = data["einstein_constant"]
        einstein = EinsteinConstant(
            value=decode_rational(einstein_data["value"]),
            killing_factor=decode_rational(einstein_data["killing_factor"]),
            metric_scale=decode_rational(einstein_data["metric_scale"]),
        )

        def weight_of(entry) -> Weight:
            return Weight(tuple(decode_rational(c) for c in entry))

        neutral = []
        for item in data["neutral_weights"]:
            weight = weight_of(item["weight"])
            neutral.append(
                (
                    weight,
                    Eigenvalue(
                        value=decode_rational(item["eigenvalue"]),
                        highest_weight=weight,
                        killing_factor=einstein.killing_factor,
                        metric_scale=decode_rational(item["metric_scale"]),
                    ),
                )
            )

        integrals = []
        for item in data["cube_integrals"]:
            raw = item["raw_torus_value"]
            integrals.append(
                (
                    weight_of(item["weight"]),
                    HaarIntegral(
                        unit_haar_value=decode_rational(item["unit_haar_value"]),
                        raw_torus_coefficient=decode_rational(raw["coefficient"]),
                        rank=raw["pi_power"],
                        weyl_order=item["weyl_order"],
                    ),
                )
            )

        return cls(
            group=data["group"],
            einstein_constant=einstein,
            neutral_weights=tuple(neutral),
            cube_integrals=tuple(integrals),
            verdict=Verdict(data["verdict"]),
            inapplicable_weights=tuple(weight_of(w) for w in data.get("inapplicable_weights", [])),
        )


def find_neutral_directions(
    rs: RootSystem,
    lambda_einstein=EINSTEIN_CONSTANT_KILLING,
    search_bound=DEFAULT_SEARCH_BOUND,
    scale: ScaleConvention = ScaleConvention.KILLING,
) -> List[Tuple[Weight, Eigenvalue]]:
    """
    Finds the dominant weights whose Laplacian eigenvalue equals -2Λ.

    Args:
        rs (RootSystem): The group.
        lambda_einstein: Λ for the Killing metric; 1/4 for every compact simple group.
        search_bound: Bound on |lambda + rho|^2 in the preset normalization.
        scale (ScaleConvention): Normalization in which eigenvalue and -2Λ are compared.
            The neutral set does not depend on it.

    Returns:
        list: (weight, eigenvalue) pairs, eigenvalues expressed in ``scale``.

    Raises:
        EmptySearchSpaceError: If the bound admits no non-trivial dominant weight.
    """
    einstein = in_scale(EinsteinConstant.killing(rs, lambda_einstein), scale)
    candidates = [w for w in dominant_weights_below(rs, search_bound) if not w.is_zero()]
    if not candidates:
        raise EmptySearchSpaceError(search_bound)

    neutral = []
    for weight in candidates:
        eigenvalue = in_scale(freudenthal_eigenvalue(rs, weight), scale)
        if eigenvalue.value == -2 * einstein.value:
            neutral.append((weight, eigenvalue))
    logger.info(f"{rs.name}: {len(neutral)} neutral direction(s) among {len(candidates)} weights")
    return neutral


def kroencke_test(rs: RootSystem, weight: Weight, lambda_einstein=EINSTEIN_CONSTANT_KILLING) -> StabilityReport:
    """
    Integrates the cube of the character of a neutral weight.

    A non-zero integral makes the Einstein metric dynamically unstable; a
    vanishing one leaves the question open.

    Raises:
        NonNeutralWeightError: If the eigenvalue of ``weight`` is not -2Λ.
        NonRealCharacterError: If the character is not real, so not a real eigenfunction.
    """
    einstein = EinsteinConstant.killing(rs, lambda_einstein)
    eigenvalue = in_scale(freudenthal_eigenvalue(rs, weight), ScaleConvention.KILLING)
    if eigenvalue.value != -2 * einstein.value:
        raise NonNeutralWeightError(weight, eigenvalue.value, -2 * einstein.value)

    character = weyl_character(rs, weight)
    if not character.poly.is_real():
        raise NonRealCharacterError(weight)

    integral = integrate_class_function(rs, character.poly ** 3)
    neutral = ((weight, eigenvalue),)
    cubes = ((weight, integral),)
    return StabilityReport(
        group=rs.name,
        einstein_constant=einstein,
        neutral_weights=neutral,
        cube_integrals=cubes,
        verdict=_decide(neutral, cubes),
    )


def analyze_stability(
    rs: RootSystem,
    lambda_einstein=EINSTEIN_CONSTANT_KILLING,
    search_bound=DEFAULT_SEARCH_BOUND,
) -> StabilityReport:
    """Scans for neutral directions and runs the cubic-integral test on each of them."""
    einstein = EinsteinConstant.killing(rs, lambda_einstein)
    neutral = find_neutral_directions(rs, lambda_einstein, search_bound)

    cubes = []
    inapplicable = []
    for weight, _ in neutral:
        try:
            report = kroencke_test(rs, weight, lambda_einstein)
        except NonRealCharacterError as e:
            logger.warning(f"{rs.name}: skipping neutral weight {weight}: {e}")
            inapplicable.append(weight)
            continue
        cubes.extend(report.cube_integrals)

    return StabilityReport(
        group=rs.name,
        einstein_constant=einstein,
        neutral_weights=tuple(neutral),
        cube_integrals=tuple(cubes),
        verdict=_decide(neutral, cubes),
        inapplicable_weights=tuple(inapplicable),
    )
