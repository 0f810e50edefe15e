from lie_stability.algebra.root_system import (
    RootSystem,
    Weight,
    WeylGroup,
    build_a1,
    build_a2,
    build_g2,
    dominant_weights_below,
    get_root_system,
    rho,
    weyl_group,
)
from lie_stability.algebra.spectra import (
    EinsteinConstant,
    Eigenvalue,
    freudenthal_eigenvalue,
    rescale,
    smallest_nonzero_eigenvalue,
)
from lie_stability.algebra.characters import (
    Character,
    alternating_sum,
    dimension,
    schur_character_g2,
    weyl_character,
)
from lie_stability.algebra.integration import (
    HaarIntegral,
    integrate_class_function,
    jacobian,
    weyl_denominator,
)
from lie_stability.algebra.stability import (
    StabilityReport,
    analyze_stability,
    find_neutral_directions,
    kroencke_test,
)
from lie_stability.algebra.utils import (
    ComputationPreconditionError,
    InternalConsistencyError,
    UnknownGroupError,
)

__all__ = [
    "RootSystem",
    "Weight",
    "WeylGroup",
    "build_a1",
    "build_a2",
    "build_g2",
    "dominant_weights_below",
    "get_root_system",
    "rho",
    "weyl_group",
    "EinsteinConstant",
    "Eigenvalue",
    "freudenthal_eigenvalue",
    "rescale",
    "smallest_nonzero_eigenvalue",
    "Character",
    "alternating_sum",
    "dimension",
    "schur_character_g2",
    "weyl_character",
    "HaarIntegral",
    "integrate_class_function",
    "jacobian",
    "weyl_denominator",
    "StabilityReport",
    "analyze_stability",
    "find_neutral_directions",
    "kroencke_test",
    "ComputationPreconditionError",
    "InternalConsistencyError",
    "UnknownGroupError",
]
