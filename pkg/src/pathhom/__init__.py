"""Path homology of finite digraphs."""

from .chains import Chain, Form, boundary, pair
from .digraph import Digraph, VertexMap, cartesian_product, strong_product, validate_digraph
from .estimator import PathHomology
from .homology import HomologyResult, betti_numbers, cohomology, homology
from .minimal import enumerate_minimal, is_minimal, structure_decompose, supp
from .omega import build_complex, membership, omega_basis
from .products import build_chain_homotopy, cross_product, cup, skew_check, star_product

__version__ = "0.1.0"

__all__ = [
    "Chain", "Form", "boundary", "pair",
    "Digraph", "VertexMap", "cartesian_product", "strong_product", "validate_digraph",
    "PathHomology",
    "HomologyResult", "betti_numbers", "cohomology", "homology",
    "enumerate_minimal", "is_minimal", "structure_decompose", "supp",
    "build_complex", "membership", "omega_basis",
    "build_chain_homotopy", "cross_product", "cup", "skew_check", "star_product",
]
