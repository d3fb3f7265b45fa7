"""Canonical forms, equality modulo the axioms, substitutions."""

import pytest
from hypothesis import given

from helpers import ENC, PAIR, substitutions, terms
from xorunify.oracle import canon
from xorunify.terms import (
    INV,
    XOR,
    ZERO,
    App,
    ArityError,
    CompositionCycleError,
    Substitution,
    Theory,
    Var,
    app,
    const,
    eq_modulo,
    free_symbol,
    inv_term,
    normalize,
    subst_term,
    vars_of,
    xor_term,
)

a, b, c, k = const("a"), const("b"), const("c"), const("k")
x, y, z = Var("x"), Var("y"), Var("z")


def raw(sym, *args):
    return App(sym, tuple(args))


def test_double_inverse_collapses():
    assert normalize(raw(INV, raw(INV, a))) == a


def test_unit_and_nilpotence():
    t = raw(XOR, b, c, c, ZERO)
    assert normalize(t) == b


def test_self_cancellation_gives_zero():
    assert normalize(raw(XOR, x, x)) == ZERO


def test_normalize_under_free_symbol():
    t = raw(ENC, raw(XOR, a, raw(XOR, b, a)), k)
    expected = app(ENC, (b, k))
    assert normalize(t) == expected
    assert canon(t) == canon(expected)


def test_xor_children_sorted_and_flat():
    t = xor_term([z, a, x, app(PAIR, (a, b))])
    assert t.sym is XOR
    assert list(t.args) == [x, z, a, app(PAIR, (a, b))]
    nested = xor_term([t, y])
    assert all(arg.sym is not XOR for arg in nested.args if type(arg) is App)


def test_xor_collapse_to_single_child():
    assert xor_term([a, b, b]) == a


def test_arity_mismatch_rejected():
    with pytest.raises(ArityError):
        app(ENC, (a,))
    with pytest.raises(ArityError):
        normalize(raw(free_symbol("enc", 2), a))


def test_eq_modulo_examples():
    assert eq_modulo(xor_term([a, b]), xor_term([b, a]))
    assert eq_modulo(raw(INV, raw(INV, x)), x)
    assert not eq_modulo(a, b)


def test_subst_cancels():
    sigma = {"x": xor_term([a, b])}
    assert subst_term(sigma, xor_term([x, b])) == a


def test_subst_collapses_inverse():
    sigma = {"x": inv_term(y)}
    assert subst_term(sigma, inv_term(x)) == y


def test_identity_subst():
    t = app(ENC, (x, k))
    assert Substitution().apply(t) is t


def test_compose_examples():
    sigma = Substitution({"x": app(PAIR, (y, a))})
    tau = Substitution({"y": b})
    rho = sigma.compose(tau)
    assert rho.mapping == {"x": app(PAIR, (b, a)), "y": b}

    sigma = Substitution({"x": xor_term([y, z])})
    tau = Substitution({"z": y})
    rho = sigma.compose(tau)
    assert rho.mapping == {"x": ZERO, "z": y}

    assert Substitution().compose(Substitution()).is_identity()


def test_compose_cycle_detected():
    sigma = Substitution({"x": app(PAIR, (y, y))})
    tau = Substitution({"y": app(PAIR, (x, x))})
    with pytest.raises(CompositionCycleError):
        sigma.compose(tau)


def test_substitution_drops_identity_bindings():
    s = Substitution({"x": Var("x"), "y": a})
    assert s.mapping == {"y": a}


def test_vars_of():
    t = app(ENC, (xor_term([x, y]), inv_term(z)))
    assert vars_of(t) == {"x", "y", "z"}


@given(terms())
def test_normalize_idempotent(t):
    assert normalize(t) == t  # strategy builds canonical terms
    assert normalize(normalize(t)) == normalize(t)


@given(terms())
def test_normalize_agrees_with_parity_oracle(t):
    assert canon(t) == canon(normalize(t))


@given(terms(), terms())
def test_eq_modulo_is_congruence(s, t):
    if eq_modulo(s, t):
        assert eq_modulo(inv_term(s), inv_term(t))
        assert eq_modulo(app(PAIR, (s, a)), app(PAIR, (t, a)))
        assert eq_modulo(xor_term([s, b]), xor_term([t, b]))


@given(substitutions(), terms())
def test_subst_commutes_with_normalize(m, t):
    def subst_raw(mapping, term):
        if type(term) is Var:
            return mapping.get(term.name, term)
        return App(term.sym, tuple(subst_raw(mapping, arg) for arg in term.args))

    assert subst_term(m, t) == normalize(subst_raw(m, t))


@given(terms())
def test_canonical_invariants(t):
    def check(u):
        if type(u) is Var:
            return
        if u.sym.theory is Theory.INV:
            inner = u.args[0]
            assert not (type(inner) is App and inner.sym.theory is Theory.INV)
        if u.sym.theory is Theory.XOR:
            assert len(u.args) >= 2
            for arg in u.args:
                assert not (
                    type(arg) is App and arg.sym.theory in (Theory.XOR, Theory.ZERO)
                )
            keys = [repr(arg) for arg in u.args]
            assert len(set(u.args)) == len(u.args)
        for arg in u.args:
            check(arg)

    check(t)
