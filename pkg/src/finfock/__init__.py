"""Exact-arithmetic combinatorics of labeled structures.

Counting sequences of species with their generating-function algebra,
groupoid and homotopy cardinality, normal-ordered Weyl operators on the
Fock inner-product space, and Feynman diagram counting checked against a
brute-force matching enumerator.
"""

from .errors import (
    BadCycle,
    DomainError,
    GroupTooLarge,
    MismatchReport,
    NegativeCoefficient,
    NonzeroConstantTerm,
    NotEnumerable,
    NotGuarded,
    TooLarge,
    UndeterminedTerm,
    ZeroArgument,
)
from .series import (
    CONVERGED,
    DIVERGED,
    UNDECIDED,
    CountSeq,
    EvalPoint,
    EvalResult,
    catalan_closed_form,
    seq_add,
    seq_compose,
    seq_derive,
    seq_eval,
    seq_fixpoint,
    seq_mul,
    seq_point,
)
from .species import (
    B,
    E,
    E_PLUS,
    L,
    ONE,
    PAR,
    X,
    ZERO,
    Compose,
    Derivative,
    Fix,
    LabeledStructure,
    Power,
    Product,
    SpeciesExpr,
    Sum,
    Var,
    compile,
    count_structures,
    enumerate_structures,
    oracle_check,
)
from .groupoid import (
    ExplicitGroupoid,
    HomotopyOrders,
    PermAction,
    WeakQuotientResult,
    bg_cardinality,
    group_closure,
    groupoid_cardinality,
    homotopy_cardinality,
    parse_cycles,
    weak_quotient,
)
from .fock import (
    A,
    ASTAR,
    IDENTITY,
    PHI,
    KernelMatrix,
    MatchingProblem,
    WeylOp,
    apply_weyl,
    apply_weyl_signed,
    feynman_algebraic,
    feynman_oracle,
    inner_product,
    kernel_matrix,
    matrix_element,
    weyl_add,
    weyl_adjoint,
    weyl_basic,
    weyl_from_expr,
    weyl_mul,
    wick_power,
)
from .exprlang import (
    ParseError,
    SourceSpan,
    format_operator,
    format_species,
    parse_operator,
    parse_species,
)

__version__ = "0.1.0"
