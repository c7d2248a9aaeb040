"""excesskit: excess bounds and Q-polynomial certificates.

Two parallel analyses built on one orthogonal-polynomial engine:

* point sets on the sphere of squared radius m: 2-design verification,
  harmonic decomposition, the mean excess bound, and certification of
  Q-polynomial association scheme structure;
* graphs: spectra, predistance polynomials, and the spectral excess
  characterization of distance-regularity.

The functional core lives in the submodules; ``excesskit.estimators``
wraps it in scikit-learn style classes, and the ``excesskit`` command
exposes everything on files.
"""

from .excess import (
    ExcessReport,
    HoffmanSumReport,
    QPolynomialCertificate,
    design_measure,
    excess_analysis,
    excess_from_decomposition,
    hoffman_sum_check,
    predegree_system,
    project_onto_algebra,
    projected_top_component,
    qpoly_certificate,
    support_inner_product,
)
from .exceptions import (
    AmbiguousClusteringError,
    DegenerateMeasureError,
    DisconnectedGraphError,
    DuplicatePointError,
    EigenspaceAmbiguityError,
    ExcessKitError,
    HypothesisViolatedError,
    InconsistentInputsError,
    NonRectangularError,
    NotAPartitionError,
    NotATwoDesignError,
    NotRegularError,
    RadiusViolationError,
    RankAmbiguityError,
    RankDeficientError,
    UnknownValueError,
    ZeroRowError,
)
from .fixtures import (
    connected_cubic_graphs,
    cross_polytope,
    cube,
    cycle,
    fixture_array,
    fixture_document,
    fixture_kind,
    fixture_names,
    icosahedron,
    octahedron,
    petersen,
    simplex,
    triangular_prism,
)
from .graphdual import (
    GraphExcessReport,
    GraphSpectrum,
    as_adjacency,
    distance_matrices,
    graph_excess_analysis,
    graph_spectrum,
    is_connected,
    load_graph,
    predistance_system,
    require_connected_regular,
    vertex_degrees,
)
from .harmonic import (
    HarmonicDecomposition,
    ProjectionIdentityReport,
    harmonic_decomposition,
    verify_projection_identities,
    zonal_basis,
)
from .orthopoly import (
    DiscreteMeasure,
    OrthogonalSystem,
    entrywise_poly,
    evaluate_table,
    matrix_eval,
    matrix_value_sequence,
    orthogonal_sequence,
    peak_interpolator,
    poly_string,
)
from .pointset import (
    InnerProductProfile,
    TwoDesignReport,
    check_two_design,
    inner_product_profile,
    load_pointset,
    normalized_gram,
    relation_matrix,
)
from .scheme import (
    QPolyOrderingResult,
    SchemeEigenstructure,
    SchemeReport,
    as_class_matrix,
    bose_mesner_eigenstructure,
    krein_parameters,
    load_scheme,
    qpoly_ordering,
    relation_matrices,
    relations_from_profile,
    spherical_embedding,
    verify_scheme,
)
from .tolerances import DEFAULT_TOLERANCES, ToleranceConfig
from .estimators import (
    GraphExcess,
    SchemeAnalysis,
    SphericalEmbedding,
    SphericalExcess,
    TwoDesignCheck,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousClusteringError",
    "DEFAULT_TOLERANCES",
    "DegenerateMeasureError",
    "DisconnectedGraphError",
    "DiscreteMeasure",
    "DuplicatePointError",
    "EigenspaceAmbiguityError",
    "ExcessKitError",
    "ExcessReport",
    "GraphExcess",
    "GraphExcessReport",
    "GraphSpectrum",
    "HarmonicDecomposition",
    "HoffmanSumReport",
    "HypothesisViolatedError",
    "InconsistentInputsError",
    "InnerProductProfile",
    "NonRectangularError",
    "NotAPartitionError",
    "NotATwoDesignError",
    "NotRegularError",
    "OrthogonalSystem",
    "ProjectionIdentityReport",
    "QPolyOrderingResult",
    "QPolynomialCertificate",
    "RadiusViolationError",
    "RankAmbiguityError",
    "RankDeficientError",
    "SchemeAnalysis",
    "SchemeEigenstructure",
    "SchemeReport",
    "SphericalEmbedding",
    "SphericalExcess",
    "ToleranceConfig",
    "TwoDesignCheck",
    "TwoDesignReport",
    "UnknownValueError",
    "ZeroRowError",
    "as_adjacency",
    "as_class_matrix",
    "bose_mesner_eigenstructure",
    "check_two_design",
    "connected_cubic_graphs",
    "cross_polytope",
    "cube",
    "cycle",
    "design_measure",
    "distance_matrices",
    "entrywise_poly",
    "evaluate_table",
    "excess_analysis",
    "excess_from_decomposition",
    "fixture_array",
    "fixture_document",
    "fixture_kind",
    "fixture_names",
    "graph_excess_analysis",
    "graph_spectrum",
    "harmonic_decomposition",
    "hoffman_sum_check",
    "icosahedron",
    "inner_product_profile",
    "is_connected",
    "krein_parameters",
    "load_graph",
    "load_pointset",
    "load_scheme",
    "matrix_eval",
    "matrix_value_sequence",
    "normalized_gram",
    "octahedron",
    "orthogonal_sequence",
    "peak_interpolator",
    "petersen",
    "poly_string",
    "predegree_system",
    "predistance_system",
    "project_onto_algebra",
    "projected_top_component",
    "qpoly_certificate",
    "qpoly_ordering",
    "relation_matrices",
    "relation_matrix",
    "relations_from_profile",
    "require_connected_regular",
    "simplex",
    "spherical_embedding",
    "support_inner_product",
    "triangular_prism",
    "verify_projection_identities",
    "verify_scheme",
    "vertex_degrees",
    "zonal_basis",
]
