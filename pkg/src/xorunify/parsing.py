"""Textual problem format: parsing and rendering.

Grammar (whitespace-insensitive, ``#`` starts a line comment)::

    problem := eq (";" eq)*
    eq      := term "=?" term
    term    := atom ("+" atom)*
    atom    := ident | ident "(" term ("," term)* ")" | "0" | "(" term ")"

Identifiers matching ``[xyzuvw][0-9]*`` or prefixed ``V_`` are variables;
``V_<digits>`` is reserved for generated variables and rejected.  ``inv``,
``pair`` and ``enc`` are builtin symbols, ``xor`` (with two or more
arguments) is an alias for ``+``, and every other lowercase identifier is a
free constant or function whose arity must be consistent across the problem.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .terms import (
    INV,
    ZERO,
    Symbol,
    Term,
    Theory,
    Var,
    app,
    free_symbol,
    is_fresh_name,
    xor_term,
)


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


BUILTINS = {"inv": 1, "pair": 2, "enc": 2}

_VAR_LETTERS = set("xyzuvw")


def is_variable_name(name: str) -> bool:
    if name.startswith("V_"):
        return True
    return name[0] in _VAR_LETTERS and (len(name) == 1 or name[1:].isdigit())


@dataclass
class UnificationProblem:
    equations: list[tuple[Term, Term]]
    signature: set[Symbol] = field(default_factory=set)
    problem_vars: set[str] = field(default_factory=set)


_PUNCT = {"(", ")", ",", "+", ";"}


def _tokenize(text: str):
    tokens: list[tuple[str, str, int, int]] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in _PUNCT:
            tokens.append((ch, ch, line, col))
            i += 1
            col += 1
            continue
        if ch == "=":
            if i + 1 < n and text[i + 1] == "?":
                tokens.append(("=?", "=?", line, col))
                i += 2
                col += 2
                continue
            raise ParseError("expected '=?'", line, col)
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            word = text[i:j]
            if word != "0":
                raise ParseError(f"unexpected number {word!r} (only 0 is a term)", line, col)
            tokens.append(("zero", word, line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.arities: dict[str, int] = {}
        self.signature: set[Symbol] = set()
        self.variables: set[str] = set()

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2], tok[3])
        return tok

    def parse_problem(self) -> UnificationProblem:
        equations = [self.parse_equation()]
        while self.peek()[0] == ";":
            self.next()
            if self.peek()[0] == "eof":
                break
            equations.append(self.parse_equation())
        tok = self.peek()
        if tok[0] != "eof":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2], tok[3])
        return UnificationProblem(equations, self.signature, self.variables)

    def parse_equation(self) -> tuple[Term, Term]:
        lhs = self.parse_term()
        self.expect("=?")
        rhs = self.parse_term()
        return lhs, rhs

    def parse_term(self) -> Term:
        parts = [self.parse_atom()]
        while self.peek()[0] == "+":
            self.next()
            parts.append(self.parse_atom())
        if len(parts) == 1:
            return parts[0]
        return xor_term(parts)

    def parse_atom(self) -> Term:
        tok = self.next()
        kind, word, line, col = tok
        if kind == "zero":
            return ZERO
        if kind == "(":
            inner = self.parse_term()
            self.expect(")")
            return inner
        if kind != "ident":
            raise ParseError(f"expected a term, found {word!r}", line, col)
        if self.peek()[0] == "(":
            return self.parse_application(word, line, col)
        return self.leaf(word, line, col)

    def parse_application(self, name: str, line: int, col: int) -> Term:
        if is_variable_name(name):
            raise ParseError(f"variable {name!r} cannot be applied", line, col)
        self.expect("(")
        args = [self.parse_term()]
        while self.peek()[0] == ",":
            self.next()
            args.append(self.parse_term())
        self.expect(")")
        if name == "xor":
            if len(args) < 2:
                raise ParseError("xor needs at least two arguments", line, col)
            return xor_term(args)
        if name == "inv":
            if len(args) != 1:
                raise ParseError(f"inv/1 applied to {len(args)} arguments", line, col)
            return app(INV, tuple(args))
        arity = BUILTINS.get(name, None)
        if arity is not None and arity != len(args):
            raise ParseError(f"{name}/{arity} applied to {len(args)} arguments", line, col)
        return self.free_app(name, tuple(args), line, col)

    def leaf(self, name: str, line: int, col: int) -> Term:
        if is_variable_name(name):
            if is_fresh_name(name):
                raise ParseError(f"{name!r} collides with the reserved V_<n> namespace", line, col)
            self.variables.add(name)
            return Var(name)
        if name in BUILTINS or name == "xor":
            raise ParseError(f"builtin {name!r} used without arguments", line, col)
        if not name[0].islower():
            raise ParseError(f"identifier {name!r} is neither a variable nor lowercase", line, col)
        return self.free_app(name, (), line, col)

    def free_app(self, name: str, args: tuple[Term, ...], line: int, col: int) -> Term:
        known = self.arities.get(name)
        if known is None:
            self.arities[name] = len(args)
        elif known != len(args):
            raise ParseError(
                f"{name!r} used with {len(args)} arguments but earlier with {known}", line, col
            )
        sym = free_symbol(name, len(args))
        self.signature.add(sym)
        return app(sym, args)


def parse_problem(text: str) -> UnificationProblem:
    """Parse a unification problem; terms come back in canonical form."""
    return _Parser(text).parse_problem()


def parse_term(text: str) -> Term:
    """Parse a single term (convenience for tests and the REPL)."""
    parser = _Parser(text)
    t = parser.parse_term()
    tok = parser.peek()
    if tok[0] != "eof":
        raise ParseError(f"unexpected {tok[1]!r}", tok[2], tok[3])
    return t


def render_term(t: Term) -> str:
    """Canonical text for a term; parse(render(t)) gives back t."""
    if type(t) is Var:
        return t.name
    th = t.sym.theory
    if th is Theory.ZERO:
        return "0"
    if th is Theory.XOR:
        return " + ".join(render_term(a) for a in t.args)
    if not t.args:
        return t.sym.name
    return f"{t.sym.name}({', '.join(render_term(a) for a in t.args)})"


def render_equation(eq: tuple[Term, Term]) -> str:
    return f"{render_term(eq[0])} =? {render_term(eq[1])}"


def render_substitution(sigma) -> str:
    items = sigma.items()
    if not items:
        return "{}"
    return "; ".join(f"{name} := {render_term(t)}" for name, t in items)
