"""Brute-force ground truth on bounded term universes.

Everything here is independent of the solvers: equality is re-decided through
a separate parity-set canonicalisation, solutions are found by exhaustive
enumeration, and instance checks are bounded searches.  This module must only
ever import from :mod:`xorunify.terms`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from typing import Iterable, Sequence

from .terms import (
    App,
    Substitution,
    Symbol,
    Term,
    Theory,
    Var,
    app,
    subst_term,
    term_key,
    vars_of,
    xor_term,
)


class UniverseTooLargeError(Exception):
    """The requested universe exceeds the configured cap."""


class EnumerationCapError(Exception):
    """A brute-force enumeration would exceed the configured cap."""


def canon(t: Term):
    """Independent canonical value for equality modulo the axioms.

    Variables become ("v", name), free applications ("f", name, children),
    inverses collapse pairwise, and XOR turns into a parity set, so two term
    trees are equal modulo the axioms iff their canonical values are equal.
    """
    if type(t) is Var:
        return ("v", t.name)
    th = t.sym.theory
    if th is Theory.FREE:
        return ("f", t.sym.name, tuple(canon(a) for a in t.args))
    if th is Theory.INV:
        inner = canon(t.args[0])
        if isinstance(inner, tuple) and inner[0] == "i":
            return inner[1]
        return ("i", inner)
    parity: set = set()
    for a in t.args:
        ca = canon(a)
        if isinstance(ca, tuple) and ca[0] == "x":
            parity ^= ca[1]
        elif ca in parity:
            parity.discard(ca)
        else:
            parity.add(ca)
    if len(parity) == 1:
        return next(iter(parity))
    return ("x", frozenset(parity))


def canon_eq(s: Term, t: Term) -> bool:
    return canon(s) == canon(t)


@dataclass(frozen=True)
class UniverseBounds:
    max_depth: int = 1
    max_xor_width: int = 2
    constants: tuple[str, ...] = ()
    variables: tuple[str, ...] = ()
    symbols: tuple[Symbol, ...] = ()
    cap: int = 100_000


@dataclass
class TermUniverse:
    terms: list[Term]
    bounds: UniverseBounds

    def __len__(self) -> int:
        return len(self.terms)


def enum_universe(bounds: UniverseBounds) -> TermUniverse:
    """All canonical terms over the bounds, built level by level.

    0 is not seeded explicitly; it enters through cancelling sums (a + a),
    matching the width limit.
    """
    from .terms import const, var

    current: set[Term] = {const(c) for c in bounds.constants}
    current |= {var(v) for v in bounds.variables}

    def grown(pool: set[Term]) -> set[Term]:
        out = set(pool)
        ordered = sorted(pool, key=term_key)
        for sym in bounds.symbols:
            arity = sym.arity or 0
            for combo in product(ordered, repeat=arity):
                out.add(app(sym, combo))
                if len(out) > bounds.cap:
                    raise UniverseTooLargeError(f"universe exceeds cap {bounds.cap}")
        for width in range(2, bounds.max_xor_width + 1):
            for combo in combinations_with_replacement(ordered, width):
                out.add(xor_term(combo))
                if len(out) > bounds.cap:
                    raise UniverseTooLargeError(f"universe exceeds cap {bounds.cap}")
        return out

    for _ in range(bounds.max_depth):
        current = grown(current)
    return TermUniverse(sorted(current, key=term_key), bounds)


def _equations(problem) -> Sequence[tuple[Term, Term]]:
    return getattr(problem, "equations", problem)


def is_unifier(sigma: Substitution, problem) -> bool:
    """True iff sigma makes both sides of every equation equal modulo axioms."""
    return all(sigma.apply(lhs) == sigma.apply(rhs) for lhs, rhs in _equations(problem))


@dataclass
class CompletenessReport:
    covered: bool
    counterexample: Substitution | None = None
    solutions: int = 0
    checked: int = 0


def covers(
    sigma: Substitution, rho: dict[str, Term], pvars: Sequence[str], universe: TermUniverse
) -> bool:
    """Is the assignment rho an instance of sigma, witnessed inside universe?

    Searches for tau on sigma's range variables with x.sigma.tau equal to
    x.rho for every problem variable x.  Variable bindings force their tau
    values directly; the rest is brute force.
    """
    forced: dict[str, Term] = {}
    residual: list[tuple[Term, Term]] = []
    for x in pvars:
        t = sigma.apply(Var(x))
        target = rho[x]
        if type(t) is Var:
            known = forced.get(t.name)
            if known is not None and known != target:
                return False
            forced[t.name] = target
        else:
            residual.append((t, target))
    if not residual:
        return True
    free: set[str] = set()
    for t, _ in residual:
        free |= vars_of(t)
    free -= forced.keys()
    free_list = sorted(free)
    size = len(universe.terms) ** len(free_list)
    if size > universe.bounds.cap:
        raise EnumerationCapError(f"instance search of size {size} exceeds cap")
    for values in product(universe.terms, repeat=len(free_list)):
        tau = dict(forced)
        tau.update(zip(free_list, values))
        if all(subst_term(tau, t) == target for t, target in residual):
            return True
    return False


def check_complete(
    found: Iterable[Substitution], problem, universe: TermUniverse
) -> CompletenessReport:
    """Audit a unifier set: every universe solution must be an instance of a member."""
    eqs = list(_equations(problem))
    pvars: set[str] = set()
    for lhs, rhs in eqs:
        pvars |= vars_of(lhs) | vars_of(rhs)
    pvar_list = sorted(pvars)
    members = list(found)
    total = len(universe.terms) ** len(pvar_list)
    if total > universe.bounds.cap:
        raise EnumerationCapError(f"solution search of size {total} exceeds cap")
    solutions = 0
    checked = 0
    for values in product(universe.terms, repeat=len(pvar_list)):
        checked += 1
        rho = dict(zip(pvar_list, values))
        if not all(subst_term(rho, lhs) == subst_term(rho, rhs) for lhs, rhs in eqs):
            continue
        solutions += 1
        if not any(covers(sigma, rho, pvar_list, universe) for sigma in members):
            return CompletenessReport(False, Substitution(rho), solutions, checked)
    return CompletenessReport(True, None, solutions, checked)
