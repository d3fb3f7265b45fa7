"""Combination engine for unification modulo free symbols + inverse + XOR.

Pipeline, per variable identification (coarsest last, breadth first):
purify and split, solve the syntactic side unconstrained, propagate variable
and zero bindings into the XOR side, deduce theory indices (branching only on
unresolved inverse pairs), derive a linear order compatible with the deduced
constraints, solve the XOR side under the resulting constant restriction, and
assemble the combined unifier.  A success prunes every strictly coarser
identification from the search when the optimization is enabled.
"""

from __future__ import annotations

from dataclasses import dataclass
from time import monotonic
from typing import Iterable, Iterator, Mapping, Sequence

from .syntactic import unify_syntactic
from .terms import (
    ZERO,
    App,
    FreshNames,
    Substitution,
    Term,
    TermError,
    Theory,
    Var,
    app,
    inv_term,
    normalize,
    subst_term,
    vars_of,
)
from .xor_solver import solve_acun_lcr, to_gf2_system, xor_atoms

STD = "std"
ACUN = "acun"


class ContractError(TermError):
    """An internal invariant of the combination pipeline was violated."""


def _equations(problem) -> Sequence[tuple[Term, Term]]:
    return getattr(problem, "equations", problem)


def _vars_of_eqs(eqs: Iterable[tuple[Term, Term]]) -> set[str]:
    out: set[str] = set()
    for lhs, rhs in eqs:
        out |= vars_of(lhs)
        out |= vars_of(rhs)
    return out


# ---------------------------------------------------------------------------
# purification


@dataclass
class PurifiedProblem:
    std_eqs: list[tuple[Term, Term]]
    acun_eqs: list[tuple[Term, Term]]
    abstraction: dict[str, Term]
    problem_vars: frozenset[str]

    @property
    def shared_vars(self) -> set[str]:
        return _vars_of_eqs(self.std_eqs) & _vars_of_eqs(self.acun_eqs)


def _root_side(t: Term) -> str | None:
    if type(t) is Var:
        return None
    if t.sym.theory in (Theory.FREE, Theory.INV):
        return STD
    return ACUN


def purify(problem) -> PurifiedProblem:
    """Split into pure sub-problems, abstracting maximal alien subterms.

    Equal alien subterms share one abstraction variable.  Free constants and
    0 are left in place on either side; only proper alien applications are
    abstracted.
    """
    eqs = [(normalize(l), normalize(r)) for l, r in _equations(problem)]
    problem_vars = frozenset(_vars_of_eqs(eqs))
    fresh = FreshNames(problem_vars)
    std_eqs: list[tuple[Term, Term]] = []
    acun_eqs: list[tuple[Term, Term]] = []
    abstraction: dict[str, Term] = {}
    memo: dict[Term, Var] = {}

    def abstract(t: Term, side: str) -> Term:
        if type(t) is Var:
            return t
        th = t.sym.theory
        if side is STD:
            if th is Theory.XOR:
                return alien(t, ACUN)
            if not t.args:
                return t
            return app(t.sym, tuple(abstract(a, STD) for a in t.args))
        if th is Theory.XOR:
            return app(t.sym, tuple(abstract(a, ACUN) for a in t.args))
        if th is Theory.ZERO or not t.args:
            return t
        return alien(t, STD)

    def alien(t: Term, home: str) -> Var:
        w = memo.get(t)
        if w is None:
            pure = abstract(t, home)
            w = Var(fresh.fresh())
            memo[t] = w
            abstraction[w.name] = t
            (std_eqs if home is STD else acun_eqs).append((w, pure))
        return w

    for lhs, rhs in eqs:
        if lhs == rhs:
            continue
        ls, rs = _root_side(lhs), _root_side(rhs)
        if ls is None and rs is None:
            std_eqs.append((lhs, rhs))
            continue
        if ls is not None and rs is not None and ls != rs:
            lp = abstract(lhs, ls)
            rp = abstract(rhs, rs)
            z = Var(fresh.fresh())
            abstraction[z.name] = lhs
            (std_eqs if ls is STD else acun_eqs).append((lp, z))
            (std_eqs if rs is STD else acun_eqs).append((rp, z))
            continue
        side = ls if ls is not None else rs
        lp = abstract(lhs, side)
        rp = abstract(rhs, side)
        if lp != rp:
            (std_eqs if side is STD else acun_eqs).append((lp, rp))

    return PurifiedProblem(std_eqs, acun_eqs, abstraction, problem_vars)


# ---------------------------------------------------------------------------
# variable identifications


class Partition:
    """Set partition over a fixed sorted variable tuple."""

    __slots__ = ("names", "labels", "blocks", "pair_mask", "level")

    def __init__(self, names: tuple[str, ...], labels: tuple[int, ...]):
        self.names = names
        self.labels = labels
        nblocks = max(labels) + 1 if labels else 0
        groups: list[list[str]] = [[] for _ in range(nblocks)]
        for name, lab in zip(names, labels):
            groups[lab].append(name)
        self.blocks = tuple(tuple(g) for g in groups)
        self.level = len(names) - nblocks
        mask = 0
        bit = 1
        n = len(labels)
        for i in range(n):
            li = labels[i]
            for j in range(i + 1, n):
                if li == labels[j]:
                    mask |= bit
                bit <<= 1
        self.pair_mask = mask

    def mapping(self) -> dict[str, Term]:
        """Replace every variable by its block representative (least name)."""
        out: dict[str, Term] = {}
        for block in self.blocks:
            rep = Var(block[0])
            for name in block[1:]:
                out[name] = rep
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Partition)
            and other.names == self.names
            and other.labels == self.labels
        )

    def __hash__(self):
        return hash((self.names, self.labels))

    def __repr__(self):
        inner = " | ".join(",".join(b) for b in self.blocks)
        return f"Partition({inner})"


def _rgs_with_blocks(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length n with exactly k blocks, lexicographic."""
    labels = [0] * n

    def rec(i: int, maxlab: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            if maxlab + 1 == k:
                yield tuple(labels)
            return
        if maxlab + 1 > k or maxlab + 1 + (n - i) < k:
            return
        for lab in range(min(maxlab + 1, k - 1) + 1):
            labels[i] = lab
            yield from rec(i + 1, maxlab if lab <= maxlab else lab)

    yield from rec(0, -1)


class PartitionStream:
    """Breadth-first stream of identifications, most general first.

    ``prune(p)`` suppresses every strictly coarser partition from the rest of
    the stream; within a level the enumeration is canonical restricted-growth
    order.
    """

    def __init__(self, names: Iterable[str]):
        self.names = tuple(sorted(names))
        self._pruned: list[int] = []

    def prune(self, partition: Partition) -> None:
        self._pruned.append(partition.pair_mask)

    def __iter__(self) -> Iterator[Partition]:
        n = len(self.names)
        if n == 0:
            yield Partition((), ())
            return
        for level in range(n):
            for labels in _rgs_with_blocks(n, n - level):
                part = Partition(self.names, labels)
                mask = part.pair_mask
                if any(m & mask == m for m in self._pruned):
                    continue
                yield part


def enumerate_partitions(names: Iterable[str]) -> PartitionStream:
    return PartitionStream(names)


def apply_partition(pp: PurifiedProblem, partition: Partition) -> PurifiedProblem:
    mapping = partition.mapping()
    if not mapping:
        return pp

    def conv(eqs: list[tuple[Term, Term]]) -> list[tuple[Term, Term]]:
        out = []
        for lhs, rhs in eqs:
            l2 = subst_term(mapping, lhs)
            r2 = subst_term(mapping, rhs)
            if l2 != r2:
                out.append((l2, r2))
        return out

    return PurifiedProblem(
        conv(pp.std_eqs), conv(pp.acun_eqs), pp.abstraction, pp.problem_vars
    )


# ---------------------------------------------------------------------------
# index deduction


def derive_indices(
    sigma: Mapping[str, Term], shared: Iterable[str]
) -> tuple[dict[str, str], list[tuple[str, str]]]:
    """Theory indices deducible from the syntactic mgu, plus inverse pairs.

    A shared variable bound to a term with a stable head must stay on the
    syntactic side; an unbound one with no inverse partner can always live on
    the XOR side.  Only pairs x = inv(y) with y unbound and shared need both
    choices.  Assumes variable-to-variable bindings were propagated away and
    inverse bindings with a non-shared partner reoriented beforehand.
    """
    shared = set(shared)
    indices: dict[str, str] = {}
    branch_pairs: list[tuple[str, str]] = []
    for v in sorted(shared):
        t = sigma.get(v)
        if t is None:
            indices[v] = ACUN
            continue
        if (
            type(t) is App
            and t.sym.theory is Theory.INV
            and type(t.args[0]) is Var
            and t.args[0].name in shared
        ):
            branch_pairs.append((v, t.args[0].name))
        indices[v] = STD
    for _, y in branch_pairs:
        indices.pop(y, None)
    return indices, branch_pairs


def _reorient(sigma: dict[str, Term], w: str, pivot: str) -> dict[str, Term]:
    """Flip the binding pivot = inv(w) into w = inv(pivot) across the mgu."""
    repl = {w: inv_term(Var(pivot))}
    out: dict[str, Term] = {}
    for x, t in sigma.items():
        if x != pivot:
            out[x] = subst_term(repl, t)
    out[w] = repl[w]
    return out


def _inv_partners(sigma: Mapping[str, Term], w: str) -> list[str]:
    target = inv_term(Var(w))
    return sorted(x for x, t in sigma.items() if t == target)


def _stabilize(
    sigma: dict[str, Term], acun_eqs: list[tuple[Term, Term]], std_vars: set[str]
) -> tuple[dict[str, Term], list[tuple[Term, Term]], set[str]]:
    """Propagate variable/zero bindings into the XOR side and reorient
    inverse bindings whose partner never reaches the XOR side."""
    while True:
        acun_vars = _vars_of_eqs(acun_eqs)
        prop = {
            x: t
            for x, t in sigma.items()
            if x in acun_vars and (type(t) is Var or t == ZERO)
        }
        if prop:
            new_eqs = []
            for lhs, rhs in acun_eqs:
                l2 = subst_term(prop, lhs)
                r2 = subst_term(prop, rhs)
                if l2 != r2:
                    new_eqs.append((l2, r2))
            acun_eqs = new_eqs
            continue
        shared = std_vars & acun_vars
        hit = None
        for v in sorted(shared):
            t = sigma.get(v)
            if (
                t is not None
                and type(t) is App
                and t.sym.theory is Theory.INV
                and type(t.args[0]) is Var
                and t.args[0].name not in shared
            ):
                hit = t.args[0].name
                break
        if hit is None:
            return sigma, acun_eqs, shared
        sigma = _reorient(sigma, hit, _inv_partners(sigma, hit)[0])


def _expand_branches(
    sigma: dict[str, Term],
    acun_eqs: list[tuple[Term, Term]],
    std_vars: set[str],
    decided: frozenset[str] = frozenset(),
) -> Iterator[tuple[dict[str, Term], list[tuple[Term, Term]], set[str], dict[str, str]]]:
    sigma, acun_eqs, shared = _stabilize(sigma, acun_eqs, std_vars)
    indices, pairs = derive_indices(sigma, shared)
    pending = [p for p in pairs if p[1] not in decided]
    if not pending:
        for x, y in pairs:
            indices[x] = STD
            indices[y] = ACUN
        yield sigma, acun_eqs, shared, indices
        return
    w = pending[0][1]
    # keep the orientation: w stays an XOR-side unknown
    yield from _expand_branches(sigma, acun_eqs, std_vars, decided | {w})
    # reorient: w moves to the syntactic side, its partner goes free
    flipped = _reorient(sigma, w, _inv_partners(sigma, w)[0])
    yield from _expand_branches(flipped, acun_eqs, std_vars, decided | {w})


# ---------------------------------------------------------------------------
# linear order


def derive_order(
    sigma: Mapping[str, Term],
    indices: Mapping[str, str],
    shared: Iterable[str],
    rows: Sequence[frozenset[Term]] = (),
) -> list[str] | None:
    """Ascending linear order on the shared variables, or None if no order
    extending the deduced constraints admits an XOR-side solution.

    Variables are placed from the top.  An atom (syntactic-side variable) may
    be placed only once no pending row-space vector still contains it, since
    such a vector must be discharged by an unknown above the atom; an unknown
    may be placed once every atom occurring in its syntactic binding sits
    above it.  Placements only ever enable more placements, so this greedy
    search is complete: if it sticks, no linear extension works.
    """
    shared_sorted = sorted(shared)
    atoms = [v for v in shared_sorted if indices.get(v) == STD]
    unknowns = [v for v in shared_sorted if indices.get(v) != STD]
    above: dict[str, set[str]] = {u: set() for u in unknowns}
    for v in atoms:
        t = sigma.get(v)
        if t is None:
            continue
        for u in vars_of(t):
            if u in above:
                above[u].add(v)

    shared_set = set(shared_sorted)
    basis: list[frozenset] = []
    unrestricted_keys: set = set()
    for atom_set in rows:
        keys = set()
        for a in atom_set:
            if type(a) is Var:
                if a.name in shared_set:
                    keys.add(("s", a.name))
                else:
                    keys.add(("u", a.name))
                    unrestricted_keys.add(("u", a.name))
            else:
                keys.add(("k", a.sym.name))
        if keys:
            basis.append(frozenset(keys))
    # vectors touched by an unrestricted unknown are dischargeable by it;
    # keep only the row-space slice free of those coordinates
    for key in sorted(unrestricted_keys):
        eliminator = None
        nxt = []
        for vec in basis:
            if key in vec:
                if eliminator is None:
                    eliminator = vec
                else:
                    reduced = vec ^ eliminator
                    if reduced:
                        nxt.append(reduced)
            else:
                nxt.append(vec)
        basis = nxt

    placed_top_down: list[str] = []
    unplaced_atoms = set(atoms)
    unplaced_unknowns = set(unknowns)
    while unplaced_atoms or unplaced_unknowns:
        support = set().union(*basis) if basis else set()
        ready = [a for a in unplaced_atoms if ("s", a) not in support]
        if ready:
            for a in sorted(ready, reverse=True):
                placed_top_down.append(a)
            unplaced_atoms -= set(ready)
            continue
        candidates = [u for u in unplaced_unknowns if not (above[u] & unplaced_atoms)]
        if not candidates:
            return None
        u = max(candidates)
        placed_top_down.append(u)
        unplaced_unknowns.discard(u)
        key = ("s", u)
        eliminator = None
        nxt = []
        for vec in basis:
            if key in vec:
                if eliminator is None:
                    eliminator = vec
                else:
                    reduced = vec ^ eliminator
                    if reduced:
                        nxt.append(reduced)
            else:
                nxt.append(vec)
        basis = nxt
    if basis:
        return None  # leftover constant-only relations are unsatisfiable
    placed_top_down.reverse()
    return placed_top_down


# ---------------------------------------------------------------------------
# combination


def combine_unifiers(
    sigma_std: Mapping[str, Term],
    sigma_acun: Mapping[str, Term],
    indices: Mapping[str, str],
    order: Sequence[str],
) -> dict[str, Term]:
    """Merge the component solutions along the ascending order."""
    both = set(sigma_std) & set(sigma_acun)
    if both:
        raise ContractError(f"variables bound by both components: {sorted(both)}")
    combined: dict[str, Term] = {}
    for v in order:
        side = sigma_std if indices.get(v) == STD else sigma_acun
        t = side.get(v)
        if t is not None:
            combined[v] = subst_term(combined, t)
    in_order = set(order)
    for x, t in sorted(sigma_std.items()):
        if x not in in_order:
            combined[x] = subst_term(combined, t)
    for x, t in sorted(sigma_acun.items()):
        if x not in in_order:
            combined[x] = subst_term(combined, t)
    return combined


def _finalize(combined: Mapping[str, Term], problem_vars: frozenset[str]) -> Substitution:
    """Restrict to the problem variables and rename leftover helper variables
    to V_1, V_2, ... in first-occurrence order."""
    restricted = {x: combined[x] for x in sorted(problem_vars) if x in combined}
    rename: dict[str, Term] = {}
    next_idx = 1

    def assign() -> str:
        nonlocal next_idx
        while True:
            cand = f"V_{next_idx}"
            next_idx += 1
            if cand not in problem_vars:
                return cand

    def walk(t: Term) -> None:
        if type(t) is Var:
            if t.name not in problem_vars and t.name not in rename:
                rename[t.name] = Var(assign())
        else:
            for a in t.args:
                walk(a)

    for x in sorted(restricted):
        walk(restricted[x])
    if rename:
        restricted = {x: subst_term(rename, t) for x, t in restricted.items()}
    return Substitution(restricted)


# ---------------------------------------------------------------------------
# the full search


@dataclass(frozen=True)
class SolveOptions:
    vi_opt: bool = True
    timeout: float | None = 300.0
    max_solutions: int | None = None
    collect_partitions: bool = False


@dataclass
class SolveResult:
    unifiers: list[Substitution]
    timed_out: bool = False
    capped: bool = False
    visited: int = 0
    partitions: list[Partition] | None = None

    @property
    def complete(self) -> bool:
        return not (self.timed_out or self.capped)


def unify(problem, options: SolveOptions | None = None) -> SolveResult:
    """Complete set of unifiers for the problem, deduped and deterministic."""
    opts = options or SolveOptions()
    pp = purify(problem)
    deadline = None if opts.timeout is None else monotonic() + opts.timeout
    stream = PartitionStream(pp.shared_vars)
    seen: set = set()
    out: list[Substitution] = []
    visited = 0
    trace: list[Partition] | None = [] if opts.collect_partitions else None
    timed_out = False
    capped = False
    for part in stream:
        if deadline is not None and monotonic() > deadline:
            timed_out = True
            break
        visited += 1
        if trace is not None:
            trace.append(part)
        sub = apply_partition(pp, part)
        sigma0 = unify_syntactic(sub.std_eqs)
        if sigma0 is None:
            continue
        std_vars = _vars_of_eqs(sub.std_eqs)
        success = False
        for sigma, acun_eqs, shared, indices in _expand_branches(
            dict(sigma0.mapping), list(sub.acun_eqs), std_vars
        ):
            rows = [r for r in (xor_atoms(l, rr) for l, rr in acun_eqs) if r]
            order = derive_order(sigma, indices, shared, rows)
            if order is None:
                continue
            restricted_atoms = [v for v in shared if indices.get(v) == STD]
            system = to_gf2_system(acun_eqs, restricted_atoms, order)
            sigma_acun = solve_acun_lcr(system)
            if sigma_acun is None:
                continue
            combined = combine_unifiers(sigma, sigma_acun.mapping, indices, order)
            # the identification itself is part of the unifier
            for name, rep in part.mapping().items():
                combined[name] = subst_term(combined, rep)
            final = _finalize(combined, pp.problem_vars)
            success = True
            key = final._sort_key()
            if key not in seen:
                seen.add(key)
                out.append(final)
                if opts.max_solutions is not None and len(out) >= opts.max_solutions:
                    capped = True
                    break
        if success and opts.vi_opt:
            stream.prune(part)
        if capped:
            break
    return SolveResult(out, timed_out, capped, visited, trace)
