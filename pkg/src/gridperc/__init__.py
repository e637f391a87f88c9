"""Bootstrap percolation on grid hypergraphs with exact algebraic certificates.

Library layout:

* ``grid`` -- grid specs, the row-major vertex codec, edge enumeration for the
  "K"/"P" families, and the extremal set with its closed-form size,
* ``percolation`` -- generic hypergraph bootstrap closure with traces, plus
  hypergraph builders and the text format,
* ``exact`` -- exact rational linear algebra (general-position matrices,
  dependency coefficients, fraction-free rank, incremental elimination),
* ``certificate`` -- construction, verification and auditing of the exact
  lower-bound certificate,
* ``search`` -- independent brute-force oracles and the r-neighbour process,
* ``cli`` -- the ``gridperc`` command-line driver.
"""

from .certificate import (
    AuditReport,
    Certificate,
    CertificateContext,
    CertificateError,
    audit_percolating_set,
    build_context,
    certificate_to_dict,
    certificate_vector,
    certified_lower_bound,
    edge_coefficient,
    project,
    projection_component,
)
from .exact import (
    EliminationBasis,
    GeneralPositionError,
    build_general_position_matrix,
    dependency_coeffs,
    det,
    matrix_rank,
    verify_general_position,
)
from .grid import (
    FAMILIES,
    GridEdge,
    GridSpec,
    count_edges,
    decode_vertex,
    encode_vertex,
    enumerate_edges,
    extremal_set,
    extremal_size,
    vertices,
)
from .percolation import (
    ClosureResult,
    Hypergraph,
    closure,
    format_hypergraph,
    grid_hypergraph,
    parse_hypergraph,
    percolates,
    read_hypergraph,
    weak_saturation_hypergraph,
    write_hypergraph,
)
from .search import (
    DEFAULT_BUDGET,
    Graph,
    SearchBudgetExceeded,
    SearchResult,
    greedy_r_neighbour_upper_bound,
    greedy_upper_bound,
    grid_graph,
    hypercube_graph,
    min_percolating_exact,
    min_r_neighbour_percolating,
    r_neighbour_closure,
)

__version__ = "0.1.0"

__all__ = [
    "AuditReport",
    "Certificate",
    "CertificateContext",
    "CertificateError",
    "ClosureResult",
    "DEFAULT_BUDGET",
    "EliminationBasis",
    "FAMILIES",
    "GeneralPositionError",
    "Graph",
    "GridEdge",
    "GridSpec",
    "Hypergraph",
    "SearchBudgetExceeded",
    "SearchResult",
    "audit_percolating_set",
    "build_context",
    "build_general_position_matrix",
    "certificate_to_dict",
    "certificate_vector",
    "certified_lower_bound",
    "closure",
    "count_edges",
    "decode_vertex",
    "dependency_coeffs",
    "det",
    "edge_coefficient",
    "encode_vertex",
    "enumerate_edges",
    "extremal_set",
    "extremal_size",
    "format_hypergraph",
    "greedy_r_neighbour_upper_bound",
    "greedy_upper_bound",
    "grid_graph",
    "grid_hypergraph",
    "hypercube_graph",
    "matrix_rank",
    "min_percolating_exact",
    "min_r_neighbour_percolating",
    "parse_hypergraph",
    "percolates",
    "project",
    "projection_component",
    "r_neighbour_closure",
    "read_hypergraph",
    "verify_general_position",
    "vertices",
    "weak_saturation_hypergraph",
    "write_hypergraph",
]
