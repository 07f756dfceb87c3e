"""Bigraded chromatic graph cohomology with exact integer linear algebra.

Computes the cohomology of the state-sum complex of a graph for the
differentials ``d``, ``Phi`` and ``Phi + d``, the chromatic and Poincaré
polynomials, and machine checks of the structural identities they satisfy.
"""
from .algebra import AlgebraKind, AlgElem, mult
from .cohomology import (
    BigradedDims,
    FilteredDims,
    GraphCohomology,
    basic_cocycles,
    betti_table,
    filtered_dims,
    induced_phi_rank,
    phi_d_cohomology,
)
from .complex import (
    DifferentialKind,
    EnhancedState,
    StateSumComplex,
    apply_differential,
    apply_edge,
    differential_matrix,
    enhanced_basis,
)
from .graph import (
    Graph,
    GraphError,
    complete_graph,
    cycle_graph,
    empty_graph,
    enumerate_connected_graphs,
    is_bipartite,
    is_bridge,
    path_graph,
    sample_connected_graphs,
)
from .io import GraphFormatError, parse_graph, read_graph, to_json, to_text
from .linalg import SparseIntMatrix, bareiss_rank, kernel_basis, rank
from .polynomials import (
    BiPoly,
    PolynomialError,
    UniPoly,
    chromatic_polynomial,
    deletion_contraction_R,
    dim_relation_check,
    euler_identity_check,
    knight_relation_check,
    poincare_closed_form,
    poincare_from_betti,
    poincare_polynomial,
)
from .verifier import CHECKS, CheckResult, CorpusReport, run_checks, run_corpus

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
