"""Exact dilatation computations for Dehn-twist products and mixed-sign
Coxeter graphs, with a certified minimal-dilatation search per genus."""

from .coxeter import (
    LIMIT_DILATATION,
    MixedSignCoxeterGraph,
    action_spectral_radius,
    affine_alternating_dilatation,
    alexander_route_dilatation,
    alexander_torus_2_odd,
    bilinear_form,
    bipartite_order,
    classical_to_alternating,
    coxeter_transformation,
    dynkin_graph,
    homological_action,
    lambda_closed_form,
    reflection,
)
from .errors import PennerError
from .fileformat import (
    GraphDocument,
    PatternDocument,
    format_document,
    load_document,
    parse_document,
)
from .exact import (
    DEFAULT_TOL,
    ExactMatrix,
    IntPolynomial,
    RootApproximation,
    char_poly,
    largest_real_root,
    solve_reciprocal_sum,
    spectral_radius,
)
from .search import (
    AdmissibilityReport,
    classify,
    connected_bipartite_graphs,
    contains_subgraph,
    exclusion_certificate,
    minimal_dilatation,
    table1,
)
from .surfaces import (
    CellCounts,
    FramedPattern,
    all_framings,
    cycle_fill_genus_bound,
    default_framing,
    face_parity,
    genus_distribution,
    trace_faces,
    tree_fill_genus,
)
from .twists import (
    IntersectionPattern,
    TwistLetter,
    TwistWord,
    bipartite_word,
    dilatation,
    double_intersection_certificate,
    geometric_intersection_matrix,
    mapping_class_dilatation,
    minimize_over_words,
    penner_product,
    twist_matrix,
    validate_word,
    word_from_order,
)

__version__ = "0.1.0"
