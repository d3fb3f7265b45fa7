"""Unification over free symbols plus the involutive inverse.

Works on canonical terms that contain no XOR nodes (0 may appear as an inert
constant).  The theory is unitary: a solvable system has a single most
general unifier, computed by Robinson-style decomposition extended with two
inverse rules: inv(s) = inv(t) decomposes to s = t, and inv(s) = t for a
non-variable, non-inverse t decomposes to s = inv(t).
"""

from __future__ import annotations

from typing import Iterable

from .terms import App, Substitution, Term, TermError, Theory, Var, inv_term, subst_term, vars_of


def unify_syntactic(equations: Iterable[tuple[Term, Term]]) -> Substitution | None:
    """Most general unifier of the system, or None when unsolvable."""
    bindings: dict[str, Term] = {}
    work = [(lhs, rhs) for lhs, rhs in equations]
    while work:
        s, t = work.pop()
        if bindings:
            s = subst_term(bindings, s)
            t = subst_term(bindings, t)
        if s == t:
            continue
        if type(s) is not Var and type(t) is Var:
            s, t = t, s
        if type(s) is Var:
            if type(t) is Var:
                # deterministic orientation: larger name bound to smaller
                if s.name < t.name:
                    s, t = t, s
            elif s.name in vars_of(t):
                return None  # occurs check, covers x = inv(x)
            one = {s.name: t}
            for x in bindings:
                bindings[x] = subst_term(one, bindings[x])
            bindings[s.name] = t
            continue
        if s.sym.theory is Theory.XOR or t.sym.theory is Theory.XOR:
            raise TermError("XOR term reached the syntactic unifier")
        if s.sym == t.sym:
            work.extend(zip(s.args, t.args))
            continue
        if t.sym.theory is Theory.INV:
            s, t = t, s
        if s.sym.theory is Theory.INV:
            # inv(s') = t with t an application that is not inv-headed:
            # equivalent to s' = inv(t), solvable only when s' is a variable
            inner = s.args[0]
            if type(inner) is Var:
                work.append((inner, inv_term(t)))
                continue
            return None
        return None
    return Substitution(bindings)
