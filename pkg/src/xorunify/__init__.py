"""Unification for free symbols with an involutive inverse combined with XOR."""

from .engine import (
    Partition,
    PartitionStream,
    PurifiedProblem,
    SolveOptions,
    SolveResult,
    apply_partition,
    combine_unifiers,
    derive_indices,
    derive_order,
    enumerate_partitions,
    purify,
    unify,
)
from .parsing import (
    ParseError,
    UnificationProblem,
    parse_problem,
    parse_term,
    render_substitution,
    render_term,
)
from .syntactic import unify_syntactic
from .terms import (
    INV,
    XOR,
    ZERO,
    App,
    ArityError,
    CompositionCycleError,
    Substitution,
    Symbol,
    Term,
    TermError,
    Theory,
    Var,
    app,
    const,
    eq_modulo,
    free_symbol,
    inv_term,
    normalize,
    subst_term,
    var,
    vars_of,
    xor_term,
)
from .xor_solver import Gf2System, solve_acun_lcr, solve_unrestricted, to_gf2_system, xor_atoms

__all__ = [
    "App",
    "ArityError",
    "CompositionCycleError",
    "Gf2System",
    "INV",
    "ParseError",
    "Partition",
    "PartitionStream",
    "PurifiedProblem",
    "SolveOptions",
    "SolveResult",
    "Substitution",
    "Symbol",
    "Term",
    "TermError",
    "Theory",
    "UnificationProblem",
    "Var",
    "XOR",
    "ZERO",
    "app",
    "apply_partition",
    "combine_unifiers",
    "const",
    "derive_indices",
    "derive_order",
    "enumerate_partitions",
    "eq_modulo",
    "free_symbol",
    "inv_term",
    "normalize",
    "parse_problem",
    "parse_term",
    "purify",
    "render_substitution",
    "render_term",
    "solve_acun_lcr",
    "solve_unrestricted",
    "subst_term",
    "to_gf2_system",
    "unify",
    "unify_syntactic",
    "var",
    "vars_of",
    "xor_term",
]
