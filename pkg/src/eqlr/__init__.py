"""Exact equivariant quantum Schubert calculus on Grassmannians.

Computes the polynomial structure constants of the equivariant quantum
cohomology ring of Gr(p, m) in the Schubert basis, entirely over the
integers, and ships the independent reference implementations used to
validate them.
"""

from .engine import (
    Calculator,
    CoeffKey,
    InternalInconsistency,
    LinearExpr,
    ProductExpansion,
    multiply_expansion,
)
from .oracle import (
    EquivariantRef,
    SkewShape,
    classical_lr,
    classical_nonvanishing,
    quantum_pieri_ref,
)
from .partition import (
    Partition,
    Rect,
    all_partitions,
    diag_closed_form,
    f_form,
    format_partition,
    parse_partition,
    pieri_diag_coeff,
)
from .poly import (
    DenominatorNotCleared,
    LinearForm,
    NotTranslationInvariant,
    Polynomial,
    RationalElt,
    difference_basis,
)

__version__ = "0.1.0"

__all__ = [
    "Calculator",
    "CoeffKey",
    "DenominatorNotCleared",
    "EquivariantRef",
    "InternalInconsistency",
    "LinearExpr",
    "LinearForm",
    "NotTranslationInvariant",
    "Partition",
    "Polynomial",
    "ProductExpansion",
    "RationalElt",
    "Rect",
    "SkewShape",
    "all_partitions",
    "classical_lr",
    "classical_nonvanishing",
    "diag_closed_form",
    "difference_basis",
    "f_form",
    "format_partition",
    "multiply_expansion",
    "parse_partition",
    "pieri_diag_coeff",
    "quantum_pieri_ref",
]
