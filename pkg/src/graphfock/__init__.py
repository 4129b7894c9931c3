"""graphfock: truncated creation-operator models of graph and k-graph
algebras, with exact relation checking, norm estimation and gauge actions."""

from .graphs import (
    DirectedGraph,
    Edge,
    Path,
    add_tails,
    compose_paths,
    load_graph,
    parse_graph_text,
    validate_graph,
    vertex_profiles,
)
from .kgraphs import (
    KGraph,
    Morphism,
    all_morphisms,
    compose,
    enumerate_morphisms,
    factor,
    kgraph_from_graph,
    load_kgraph,
    parse_kgraph_text,
    validate_kgraph,
)
from .paths import (
    FockBasis,
    GammaBasis,
    GammaClass,
    TailFamily,
    choose_tails,
    enumerate_paths,
    fock_basis,
    gamma_basis,
    kgraph_fock_basis,
    reduce_class,
)
from .operators import (
    GaugeUnitary,
    NcPolynomial,
    SparseOperator,
    ampliate,
    creation_op,
    eval_poly,
    gauge_expectation,
    gauge_unitary,
    identity_operator,
    right_creation_op,
)
from .toeplitz import (
    QC,
    ToeplitzElement,
    te,
    te_adjoint,
    te_generator,
    te_mul,
    te_to_matrix,
    te_vertex,
    te_zero,
)
from .norms import (
    NormEstimate,
    dense_spectral_norm,
    isometry_gap,
    numeric_rank,
    op_norm,
    truncated_norm_profile,
)
from .checks import (
    CheckReport,
    check_ck_defects,
    check_commutant_shift,
    check_gauge,
    check_hrlemma,
    check_identify,
    check_tck,
    generator_sum_poly,
    random_nc_polynomial,
    run_suite,
)
from . import errors, fixtures

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
