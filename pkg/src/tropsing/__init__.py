"""tropsing: exact tools for singular tropical plane curves.

Regular marked subdivisions of lattice polygons, their dual tropical curves,
the Bergman fan of the ideal of curves singular at a fixed point, and the
classification of singular tropical curves of maximal-dimensional type.
All arithmetic is exact rational.
"""

from .errors import (
    ConfigurationError,
    DegenerateConfigurationError,
    DependentPivotsError,
    InsufficientBoundaryPointsError,
    LatticeSaturationError,
    MalformedFlagError,
    NotInUnionError,
    NotRealizableError,
    ParseError,
    RetryExhaustedError,
    SubdivisionError,
    TooLargeError,
    TropsingError,
    WrongCodimensionError,
    ZeroCoefficientError,
    ZeroTorusCoordinateError,
)
from .lattice import (
    Circuit,
    PointConfiguration,
    affine_relation_space,
    circuit_of,
    circuits,
)
from .subdivisions import (
    ConeInfo,
    MarkedCell,
    MarkedSubdivision,
    SubdivisionType,
    cone_info,
    decompose_weightclass_lineality,
    is_discriminant_cone,
    lineality_basis,
    regular_subdivision,
)
from .curves import (
    CurveEdge,
    CurveRay,
    CurveType,
    TropicalCurve,
    curve_type,
    dual_curve,
    type_dimension,
    vertex_multiplicity,
)
from .bergman import (
    CoefficientMatrix,
    FlagClass,
    FlagOfFlats,
    GaleDual,
    WeightClass,
    bergman_member_circuit_oracle,
    bergman_member_loopfree,
    classify_flag,
    coefficient_matrix,
    enumerate_flags,
    flag_from_weight,
    gale_dual,
    is_flat,
    weight_class_sample,
)
from .singular import (
    SingularityReport,
    classify_non_torus,
    classify_singularity,
    coefficient_matrix_non_torus,
)
from .series import (
    PuiseuxPolynomial,
    PuiseuxScalar,
    neg_val_vector,
    refine_substitution,
    sample_singular_lift,
    verify_singular_at_one_one,
)
from .svg import render_svg

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
