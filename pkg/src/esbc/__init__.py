"""Realizability of AGM revision and contraction on finite epistemic spaces."""
from .logic import (
    LinearOrder,
    Signature,
    TotalPreorder,
    canonical_text,
    format_formula,
    min_of,
    models_of,
    parse_formula,
)
from .operators import (
    FaithfulAssignment,
    KindMismatch,
    MissingState,
    OperatorTable,
    apply,
    build,
    check_contraction_compatible,
    check_faithful,
    classify_operator,
    induce_assignment_linear,
    load_table,
)
from .search import BudgetExhausted, SearchConfig, count_operators, exists_operator
from .space import EpistemicSpace, load_space, realizability_report
from .verify import verify, verify_contraction, verify_revision

__all__ = [
    "BudgetExhausted", "EpistemicSpace", "FaithfulAssignment", "KindMismatch", "LinearOrder",
    "MissingState", "OperatorTable", "SearchConfig", "Signature", "TotalPreorder", "apply", "build",
    "canonical_text", "check_contraction_compatible", "check_faithful", "classify_operator",
    "count_operators", "exists_operator", "format_formula", "induce_assignment_linear", "load_space",
    "load_table", "min_of", "models_of", "parse_formula", "realizability_report", "verify",
    "verify_contraction", "verify_revision",
]
