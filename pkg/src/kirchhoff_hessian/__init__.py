"""Exact Kirchhoff polynomials, graph Hessians and strong Lefschetz checks."""

from .block_spectra import (
    CyclicBlockSpec,
    MixedBlockSpec,
    StructuredMSpec,
    closed_form_Kmn,
    closed_form_Kn,
    orbit_blocks_complete,
    structured_m_assemble,
    structured_m_spectrum,
)
from .exact_linalg import (
    ExactMatrix,
    IntPolynomial,
    Spectrum,
    char_poly,
    determinant,
    rank,
    verify_spectrum,
)
from .graphs import (
    Forest,
    GraphError,
    MultiGraph,
    build_graph,
    complete,
    complete_bipartite,
    contract,
    enumerate_spanning_trees,
    from_edge_list,
    laplacian,
    moon_count,
    tree_count_cofactor,
    trees_containing,
)
from .kirchhoff import (
    DiffOperator,
    MultilinearPoly,
    apply_operator,
    hessian_at,
    hessian_at_ones,
    kirchhoff_polynomial,
)
from .lefschetz import catalecticant, hilbert_and_bases, kth_hessian_at, slp_check

__version__ = "0.1.0"

__all__ = [
    "CyclicBlockSpec",
    "MixedBlockSpec",
    "StructuredMSpec",
    "closed_form_Kmn",
    "closed_form_Kn",
    "orbit_blocks_complete",
    "structured_m_assemble",
    "structured_m_spectrum",
    "ExactMatrix",
    "IntPolynomial",
    "Spectrum",
    "char_poly",
    "determinant",
    "rank",
    "verify_spectrum",
    "Forest",
    "GraphError",
    "MultiGraph",
    "build_graph",
    "complete",
    "complete_bipartite",
    "contract",
    "enumerate_spanning_trees",
    "from_edge_list",
    "laplacian",
    "moon_count",
    "tree_count_cofactor",
    "trees_containing",
    "DiffOperator",
    "MultilinearPoly",
    "apply_operator",
    "hessian_at",
    "hessian_at_ones",
    "kirchhoff_polynomial",
    "catalecticant",
    "hilbert_and_bases",
    "kth_hessian_at",
    "slp_check",
]
