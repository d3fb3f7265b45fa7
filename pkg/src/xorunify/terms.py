"""Canonical term algebra for free symbols, an involutive inverse, and XOR.

Terms are kept in a canonical form in which double inverses are collapsed,
XOR nodes are flat, sorted, free of 0 and of cancelling duplicate children,
and XOR sums that shrink to one or zero summands become that summand or 0.
Equality of canonical forms decides equality modulo the axioms.

All values are immutable after construction and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Mapping, Sequence


class Theory(Enum):
    """Sub-signature a symbol belongs to."""

    FREE = "free"
    INV = "inv"
    XOR = "xor"
    ZERO = "zero"


class TermError(Exception):
    """Base class for term-level errors."""


class ArityError(TermError):
    """A symbol was applied to the wrong number of arguments."""


class CompositionCycleError(TermError):
    """Substitution composition produced a cyclic binding graph."""


@dataclass(frozen=True)
class Symbol:
    name: str
    arity: int | None  # None means variadic (xor only)
    theory: Theory


XOR = Symbol("xor", None, Theory.XOR)
INV = Symbol("inv", 1, Theory.INV)
ZERO_SYM = Symbol("0", 0, Theory.ZERO)

_free_symbols: dict[tuple[str, int], Symbol] = {}


def free_symbol(name: str, arity: int) -> Symbol:
    """Interned free symbol of a fixed arity (arity 0 is a constant)."""
    sym = _free_symbols.get((name, arity))
    if sym is None:
        sym = Symbol(name, arity, Theory.FREE)
        _free_symbols[name, arity] = sym
    return sym


class Term:
    __slots__ = ()


class Var(Term):
    __slots__ = ("name", "_hash")

    def __init__(self, name: str):
        self.name = name
        self._hash = hash(("var", name))

    def __eq__(self, other):
        return self is other or (type(other) is Var and other.name == self.name)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Var({self.name!r})"


class App(Term):
    __slots__ = ("sym", "args", "_hash", "_vars")

    def __init__(self, sym: Symbol, args: tuple[Term, ...]):
        self.sym = sym
        self.args = args
        self._hash = hash((sym.name, sym.arity, args))
        self._vars: frozenset[str] | None = None

    def __eq__(self, other):
        if self is other:
            return True
        return (
            type(other) is App
            and other._hash == self._hash
            and other.sym == self.sym
            and other.args == self.args
        )

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if not self.args:
            return f"App({self.sym.name!r})"
        return f"App({self.sym.name!r}, {list(self.args)!r})"


ZERO: Term = App(ZERO_SYM, ())

_EMPTY: frozenset[str] = frozenset()


def var(name: str) -> Var:
    return Var(name)


def const(name: str) -> Term:
    return App(free_symbol(name, 0), ())


def term_key(t: Term):
    """Total order key: variables first, then by symbol name, arity, children."""
    if type(t) is Var:
        return (0, t.name)
    return (1, t.sym.name, len(t.args), tuple(term_key(a) for a in t.args))


def xor_term(args: Iterable[Term]) -> Term:
    """Canonical XOR of canonical terms: flatten, drop 0, cancel pairs, sort."""
    items: list[Term] = []
    for a in args:
        if type(a) is App:
            if a.sym.theory is Theory.XOR:
                items.extend(a.args)
                continue
            if a.sym.theory is Theory.ZERO:
                continue
        items.append(a)
    counts: dict[Term, int] = {}
    for a in items:
        counts[a] = counts.get(a, 0) + 1
    odd = [a for a, c in counts.items() if c % 2]
    if not odd:
        return ZERO
    if len(odd) == 1:
        return odd[0]
    odd.sort(key=term_key)
    return App(XOR, tuple(odd))


def inv_term(arg: Term) -> Term:
    if type(arg) is App and arg.sym.theory is Theory.INV:
        return arg.args[0]
    return App(INV, (arg,))


def app(sym: Symbol, args: Sequence[Term]) -> Term:
    """Canonical application; raises ArityError on malformed arities."""
    args = tuple(args)
    th = sym.theory
    if th is Theory.FREE:
        if sym.arity != len(args):
            raise ArityError(f"{sym.name}/{sym.arity} applied to {len(args)} arguments")
        return App(sym, args)
    if th is Theory.XOR:
        return xor_term(args)
    if th is Theory.INV:
        if len(args) != 1:
            raise ArityError(f"inv applied to {len(args)} arguments")
        return inv_term(args[0])
    if args:
        raise ArityError(f"0 applied to {len(args)} arguments")
    return ZERO


def normalize(t: Term) -> Term:
    """Rewrite an arbitrary well-arity-formed term tree to canonical form."""
    if type(t) is Var:
        return t
    if not t.args:
        if t.sym.theory is Theory.FREE and t.sym.arity != 0:
            raise ArityError(f"{t.sym.name}/{t.sym.arity} applied to 0 arguments")
        return t
    return app(t.sym, tuple(normalize(a) for a in t.args))


def vars_of(t: Term) -> frozenset[str]:
    if type(t) is Var:
        return frozenset((t.name,))
    v = t._vars
    if v is None:
        if not t.args:
            v = _EMPTY
        else:
            v = frozenset().union(*(vars_of(a) for a in t.args))
        t._vars = v
    return v


def subst_term(mapping: Mapping[str, Term], t: Term) -> Term:
    """Simultaneous replacement of variables, result canonical.

    Returns the original object when nothing in it is touched.
    """
    if type(t) is Var:
        return mapping.get(t.name, t)
    if not t.args or vars_of(t).isdisjoint(mapping):
        return t
    return app(t.sym, tuple(subst_term(mapping, a) for a in t.args))


def eq_modulo(s: Term, t: Term) -> bool:
    """Equality modulo the involution and XOR axioms."""
    return normalize(s) == normalize(t)


class Substitution:
    """Finite map from variable names to canonical terms.

    Identity bindings are dropped on construction.  Treat instances as
    immutable; share them freely.
    """

    __slots__ = ("mapping", "_key")

    def __init__(self, mapping: Mapping[str, Term] | Iterable[tuple[str, Term]] = ()):
        m = dict(mapping)
        drop = [k for k, v in m.items() if type(v) is Var and v.name == k]
        for k in drop:
            del m[k]
        self.mapping: dict[str, Term] = m
        self._key: tuple | None = None

    @property
    def domain(self) -> frozenset[str]:
        return frozenset(self.mapping)

    def get(self, name: str) -> Term | None:
        return self.mapping.get(name)

    def items(self) -> list[tuple[str, Term]]:
        return sorted(self.mapping.items())

    def is_identity(self) -> bool:
        return not self.mapping

    def apply(self, t: Term) -> Term:
        return subst_term(self.mapping, t)

    def restrict(self, names: Iterable[str]) -> "Substitution":
        keep = set(names)
        return Substitution({k: v for k, v in self.mapping.items() if k in keep})

    def compose(self, other: "Substitution") -> "Substitution":
        """Substitution equivalent to applying self first, then other."""
        m = {x: other.apply(t) for x, t in self.mapping.items()}
        for y, t in other.mapping.items():
            if y not in m:
                m[y] = t
        result = Substitution(m)
        result._check_acyclic()
        return result

    def _check_acyclic(self) -> None:
        dom = self.mapping.keys()
        graph = {x: vars_of(t) & dom for x, t in self.mapping.items()}
        state: dict[str, int] = {}  # 1 = on stack, 2 = done
        for root in graph:
            if state.get(root):
                continue
            stack: list[tuple[str, Iterator[str]]] = [(root, iter(graph[root]))]
            state[root] = 1
            while stack:
                node, it = stack[-1]
                advanced = False
                for nxt in it:
                    st = state.get(nxt)
                    if st == 1:
                        raise CompositionCycleError(f"cyclic binding through {nxt}")
                    if st is None:
                        state[nxt] = 1
                        stack.append((nxt, iter(graph[nxt])))
                        advanced = True
                        break
                if not advanced:
                    state[node] = 2
                    stack.pop()

    def _sort_key(self) -> tuple:
        if self._key is None:
            self._key = tuple(sorted((k, term_key(v)) for k, v in self.mapping.items()))
        return self._key

    def __eq__(self, other):
        return isinstance(other, Substitution) and other.mapping == self.mapping

    def __hash__(self):
        return hash(self._sort_key())

    def __len__(self):
        return len(self.mapping)

    def __repr__(self):
        inner = ", ".join(f"{k}: {v!r}" for k, v in self.items())
        return f"Substitution({{{inner}}})"


IDENTITY = Substitution()


class FreshNames:
    """Per-problem fresh variable source using the reserved V_<n> namespace."""

    def __init__(self, taken: Iterable[str] = ()):
        self._taken = set(taken)
        self._next = 1

    def fresh(self) -> str:
        while True:
            name = f"V_{self._next}"
            self._next += 1
            if name not in self._taken:
                self._taken.add(name)
                return name


def is_fresh_name(name: str) -> bool:
    return name.startswith("V_") and name[2:].isdigit()
