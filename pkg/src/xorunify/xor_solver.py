"""GF(2) encoding and solving of pure XOR systems under a linear constant restriction.

Each equation s = t becomes the parity vector of the sum s + t.  Columns are
ordered with unrestricted unknowns first, then the shared variables strictly
descending in the given order, then free constants; bit j of a row stands
for column j, so the leading (lowest) set bit is the leftmost column.

Solvability with the restriction reduces to reduced row echelon form that
pivots only on unknown columns: a reduced row led by a restricted atom would
force that atom into the image of a smaller unknown, and a row without
unknowns but with atom or constant bits is plainly inconsistent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .terms import App, Substitution, Term, TermError, Theory, Var, const, vars_of, xor_term

UNKNOWN = "unknown"
ATOM = "atom"  # shared variable owned by the other solver
CONST = "const"


class ImpureTermError(TermError):
    """A term outside the XOR fragment reached the GF(2) encoder."""


def xor_atoms(lhs: Term, rhs: Term) -> frozenset[Term]:
    """Atoms occurring an odd number of times in lhs + rhs."""
    s = xor_term((lhs, rhs))
    if type(s) is App:
        if s.sym.theory is Theory.ZERO:
            return frozenset()
        if s.sym.theory is Theory.XOR:
            atoms = s.args
        else:
            atoms = (s,)
    else:
        atoms = (s,)
    for a in atoms:
        if type(a) is Var:
            continue
        if a.sym.theory is not Theory.FREE or a.args:
            raise ImpureTermError(f"non-pure atom {a!r} in an XOR equation")
    return frozenset(atoms)


@dataclass
class Gf2System:
    columns: list[tuple[str, str]]  # (kind, name), leftmost first
    rows: list[int]

    def column_term(self, j: int) -> Term:
        kind, name = self.columns[j]
        return const(name) if kind == CONST else Var(name)


def to_gf2_system(
    equations: Iterable[tuple[Term, Term]],
    restricted: Iterable[str],
    order: Sequence[str],
) -> Gf2System:
    """Encode equations; ``restricted`` names the shared variables treated as
    constants, ``order`` lists the shared variables in ascending order."""
    restricted = set(restricted)
    row_atoms = [xor_atoms(lhs, rhs) for lhs, rhs in equations]
    ordered = set(order)
    extra_unknowns: set[str] = set()
    consts: set[str] = set()
    for atoms in row_atoms:
        for a in atoms:
            if type(a) is Var:
                if a.name not in ordered:
                    extra_unknowns.add(a.name)
            else:
                consts.add(a.sym.name)
    columns: list[tuple[str, str]] = [(UNKNOWN, n) for n in sorted(extra_unknowns)]
    for name in reversed(order):
        kind = ATOM if name in restricted else UNKNOWN
        columns.append((kind, name))
    columns.extend((CONST, n) for n in sorted(consts))
    index = {}
    for j, (kind, name) in enumerate(columns):
        index[(kind == CONST, name)] = j
    rows = []
    for atoms in row_atoms:
        bits = 0
        for a in atoms:
            if type(a) is Var:
                bits |= 1 << index[(False, a.name)]
            else:
                bits |= 1 << index[(True, a.sym.name)]
        if bits:
            rows.append(bits)
    return Gf2System(columns, rows)


def solve_acun_lcr(system: Gf2System) -> Substitution | None:
    """Reduced row echelon form over GF(2), pivoting on unknown columns only.

    Returns the most general unifier respecting the column order, or None.
    Pivot unknowns are bound to the sum of the remaining bits of their row;
    everything there lies strictly to the right, hence is smaller.
    """
    rows = list(system.rows)
    pivoted = [False] * len(rows)
    for j, (kind, _name) in enumerate(system.columns):
        if kind != UNKNOWN:
            continue
        bit = 1 << j
        pivot = None
        for idx, r in enumerate(rows):
            if not pivoted[idx] and r & bit:
                pivot = idx
                break
        if pivot is None:
            continue
        pivoted[pivot] = True
        pr = rows[pivot]
        for idx, r in enumerate(rows):
            if idx != pivot and r & bit:
                rows[idx] = r ^ pr
    bindings: dict[str, Term] = {}
    for r in rows:
        if not r:
            continue
        lead = (r & -r).bit_length() - 1
        kind, name = system.columns[lead]
        if kind != UNKNOWN:
            # led by a restricted atom (any absorber would be smaller) or by
            # constants only: no unifier respects the order
            return None
        rest = r ^ (1 << lead)
        parts = []
        while rest:
            j = (rest & -rest).bit_length() - 1
            parts.append(system.column_term(j))
            rest ^= 1 << j
        bindings[name] = xor_term(parts)
    return Substitution(bindings)


def solve_unrestricted(
    equations: Iterable[tuple[Term, Term]], restricted: Iterable[str]
) -> Substitution | None:
    """Most general unifier ignoring the order restriction (atoms stay atomic)."""
    restricted = set(restricted)
    row_atoms = [xor_atoms(lhs, rhs) for lhs, rhs in equations]
    names: set[str] = set()
    for atoms in row_atoms:
        for a in atoms:
            if type(a) is Var:
                names.add(a.name)
    # atoms below all unknowns: every absorption is permitted
    order = sorted(names & restricted) + sorted(names - restricted)
    system = to_gf2_system(equations, restricted, order)
    return solve_acun_lcr(system)
