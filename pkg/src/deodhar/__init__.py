"""Deodhar decomposition of double Schubert cells for finite Weyl groups,
with twisted-Frobenius cell invariants and exhaustive finite-geometry oracles.

Every value type in this package is immutable after construction and safe to
share between workers; all operations are deterministic pure functions.
"""

from .cells import (
    CellShape,
    FiltrationOrder,
    ReducedWord,
    Subexpression,
    cell_shape,
    enumerate_distinguished,
    filtration,
    index_sets,
    is_distinguished,
    phi_gamma,
    preceq,
    subexpression,
    subexpressions,
    unique_IJ_equal,
)
from .counting import (
    IntPolynomial,
    cell_count_poly,
    deodhar_poly,
    r_polynomial,
    schubert_cell_poly,
)
from .errors import (
    BudgetError,
    ConfigError,
    DeodharError,
    EmptyCellError,
    NotComparableError,
    PreconditionError,
)
from .frobenius import (
    CellInvariants,
    IsotypicPrediction,
    OrbitData,
    QuotientModel,
    RegularCharacter,
    TwistData,
    cell_invariants,
    diagram_automorphisms,
    is_regular,
    isotypic_prediction,
    orbit_data,
    quotient_model,
    theorem_table,
    vanishing_witness,
    xq_point_count,
    yqs_point_count,
)
from .rootdata import (
    RootSystem,
    WeylElement,
    bruhat_leq,
    build_root_system,
    inverse,
    left_descents,
    length,
    longest_element,
    multiply,
    reduced_words,
    right_descents,
    simple_reflection,
    word_str,
)

__version__ = "0.1.0"
