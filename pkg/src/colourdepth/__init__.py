"""Colourful simplicial depth and octahedral systems, in exact arithmetic."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ColourDepthError,
    GenerationError,
    InconsistencyError,
    InputError,
    PreconditionError,
    ResourceError,
)
from .geometry import (  # noqa: E402
    ColourfulConfiguration,
    ContainmentResult,
    DepthReport,
    Status,
    colourful_depth,
    contains_origin,
    generate_configuration,
    induced_octahedral_system,
    minimize_depth_search,
)
from .gf2 import (  # noqa: E402
    EdgeSpaceVector,
    MinimumReport,
    UmbrellaBasis,
    build_umbrella_basis,
    enumerate_minimums,
    in_span,
)
from .octahedral import (  # noqa: E402
    CoverageReport,
    OctahedralSystem,
    SuitableDecomposition,
    Umbrella,
    VertexId,
    cardinality_lower_bound,
    coverage,
    expand_umbrella,
    is_octahedral,
    suitable_decomposition,
    symmetric_difference,
    umbrella_decomposition,
    verify_bound,
)
