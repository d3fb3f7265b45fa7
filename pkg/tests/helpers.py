"""Shared generators for the test suite."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from xorunify.parsing import UnificationProblem
from xorunify.terms import INV, ZERO, Var, app, const, free_symbol, inv_term, xor_term

PAIR = free_symbol("pair", 2)
ENC = free_symbol("enc", 2)


def random_term(rng: random.Random, variables, constants, depth: int):
    kinds = ["var"] * 3 + ["const"] * 2 + ["zero"]
    if depth > 0:
        kinds += ["xor"] * 3 + ["pair"] * 2 + ["inv"] * 2 + ["enc"]
    kind = rng.choice(kinds)
    if kind == "var":
        return Var(rng.choice(variables))
    if kind == "const":
        return const(rng.choice(constants))
    if kind == "zero":
        return ZERO
    if kind == "xor":
        width = rng.randint(2, 3)
        return xor_term(
            random_term(rng, variables, constants, depth - 1) for _ in range(width)
        )
    if kind == "inv":
        return inv_term(random_term(rng, variables, constants, depth - 1))
    sym = PAIR if kind == "pair" else ENC
    return app(
        sym,
        (
            random_term(rng, variables, constants, depth - 1),
            random_term(rng, variables, constants, depth - 1),
        ),
    )


def random_problem(rng: random.Random) -> UnificationProblem:
    variables = ["x", "y", "z"][: rng.randint(1, 3)]
    constants = ["a", "b"]
    eqs = [
        (
            random_term(rng, variables, constants, 2),
            random_term(rng, variables, constants, 2),
        )
        for _ in range(rng.randint(1, 2))
    ]
    return UnificationProblem(eqs)


def random_syntactic_term(rng: random.Random, variables, constants, depth: int):
    kinds = ["var"] * 3 + ["const"] * 2
    if depth > 0:
        kinds += ["pair"] * 2 + ["inv"] * 2 + ["enc"]
    kind = rng.choice(kinds)
    if kind == "var":
        return Var(rng.choice(variables))
    if kind == "const":
        return const(rng.choice(constants))
    if kind == "inv":
        return inv_term(random_syntactic_term(rng, variables, constants, depth - 1))
    sym = PAIR if kind == "pair" else ENC
    return app(
        sym,
        (
            random_syntactic_term(rng, variables, constants, depth - 1),
            random_syntactic_term(rng, variables, constants, depth - 1),
        ),
    )


# hypothesis strategies for canonical terms

_var_names = st.sampled_from(["x", "y", "z", "u"])
_const_names = st.sampled_from(["a", "b", "k"])


def terms(max_leaves: int = 12) -> st.SearchStrategy:
    leaf = st.one_of(
        _var_names.map(Var),
        _const_names.map(const),
        st.just(ZERO),
    )

    def extend(children):
        return st.one_of(
            st.tuples(children).map(lambda t: inv_term(t[0])),
            st.tuples(children, children).map(lambda ts: app(PAIR, ts)),
            st.tuples(children, children).map(lambda ts: app(ENC, ts)),
            st.lists(children, min_size=2, max_size=4).map(xor_term),
        )

    return st.recursive(leaf, extend, max_leaves=max_leaves)


def substitutions() -> st.SearchStrategy:
    return st.dictionaries(_var_names, terms(max_leaves=6), max_size=3).map(
        lambda m: {k: v for k, v in m.items()}
    )
