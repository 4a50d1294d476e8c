"""Self-dual codes over F2 and F2+uF2 from block quadratic-residue
circulant generator matrices, with extensions, neighbour chains and
exact low-weight enumeration."""

from .circulant import (
    Circulant,
    QRSpec,
    circ_mul,
    circ_transpose,
    expand,
    qr_product,
    quadratic_residues,
)
from .codes import (
    Code,
    CodeFormatError,
    WeightReport,
    classified_report,
    classify_enumerator,
    extremal_bound,
    gray_image,
    is_doubly_even,
    is_self_dual,
    partial_weights,
    rank_and_pivots,
    read_code,
    write_code,
)
from .construction import (
    ConstructionSpec,
    build,
    gram_blocks,
    qr_sum_invertible,
    self_orthogonality_conditions,
)
from .ring import F2, F2U, add, gray, is_unit, mul
from .search import Discovery, SearchConfig, reproduce_tables, run_search
from .transforms import extend, neighbour, neighbour_chain, place_high_bits

__version__ = "0.1.0"

__all__ = [
    "Circulant",
    "Code",
    "CodeFormatError",
    "ConstructionSpec",
    "Discovery",
    "F2",
    "F2U",
    "QRSpec",
    "SearchConfig",
    "WeightReport",
    "add",
    "build",
    "circ_mul",
    "circ_transpose",
    "classified_report",
    "classify_enumerator",
    "expand",
    "extend",
    "extremal_bound",
    "gram_blocks",
    "gray",
    "gray_image",
    "is_doubly_even",
    "is_self_dual",
    "is_unit",
    "mul",
    "neighbour",
    "neighbour_chain",
    "partial_weights",
    "place_high_bits",
    "qr_product",
    "qr_sum_invertible",
    "quadratic_residues",
    "rank_and_pivots",
    "read_code",
    "reproduce_tables",
    "run_search",
    "self_orthogonality_conditions",
    "write_code",
]
