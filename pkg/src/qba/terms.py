r"""Term language and equational decision procedures.

Concrete syntax: `\/` join, `/\` meet, postfix `'` star, constants `0` and
`1`, identifiers `[a-z][a-zA-Z0-9_]*`, `=` between the two sides. Star
binds tightest, then meet, then join; both binaries are left associative.

    eq     := term "=" term
    term   := factor { "\/" factor }
    factor := atom { "/\" atom }
    atom   := base { "'" }
    base   := "0" | "1" | ident | "(" term ")"

An equation holds in an algebra when both sides evaluate equally under
every assignment; it holds in a whole variety exactly when it holds in the
variety's small generating algebra (4, F3 and 2 respectively), which is
what `decide` exploits.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from itertools import product
from typing import Mapping, Union

from .algebra import FiniteAlgebra
from .errors import EquationParseError, UnboundVariable
from .fixtures import fixture


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: int  # 0 or 1


@dataclass(frozen=True)
class Join:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Meet:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Star:
    inner: "Term"


Term = Union[Var, Const, Join, Meet, Star]


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Witness:
    """A falsifying assignment, in element names."""

    assignment: tuple[tuple[str, str], ...]
    lhs_value: str
    rhs_value: str
    algebra: str

    @property
    def as_dict(self) -> dict[str, str]:
        return dict(self.assignment)


@dataclass(frozen=True)
class Verdict:
    valid: bool
    witness: Witness | None = None

    def __post_init__(self):
        assert self.valid == (self.witness is None)


_TOKEN = re.compile(r"\\/|/\\|[()'=]|[01]|[a-z][a-zA-Z0-9_]*")


def _tokenize(text: str) -> list[tuple[str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise EquationParseError(f"unexpected character {text[pos]!r}", pos)
        out.append((m.group(), pos))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def pos(self) -> int:
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)

    def advance(self) -> str:
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def fail(self, message: str):
        raise EquationParseError(message, self.pos())

    def term(self) -> Term:
        node = self.factor()
        while self.peek() == "\\/":
            self.advance()
            node = Join(node, self.factor())
        return node

    def factor(self) -> Term:
        node = self.atom()
        while self.peek() == "/\\":
            self.advance()
            node = Meet(node, self.atom())
        return node

    def atom(self) -> Term:
        node = self.base()
        while self.peek() == "'":
            self.advance()
            node = Star(node)
        return node

    def base(self) -> Term:
        tok = self.peek()
        if tok is None:
            self.fail("unexpected end of input")
        if tok == "(":
            self.advance()
            node = self.term()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.advance()
            return node
        if tok in ("0", "1"):
            self.advance()
            return Const(int(tok))
        if tok[0].isalpha():
            self.advance()
            return Var(tok)
        self.fail(f"unexpected token {tok!r}")


def parse_term(text: str) -> Term:
    p = _Parser(text)
    node = p.term()
    if p.peek() is not None:
        p.fail(f"unexpected token {p.peek()!r}")
    return node


def parse_equation(text: str) -> Equation:
    p = _Parser(text)
    lhs = p.term()
    if p.peek() != "=":
        p.fail("expected '='")
    p.advance()
    rhs = p.term()
    if p.peek() is not None:
        p.fail(f"unexpected token {p.peek()!r}")
    return Equation(lhs, rhs)


def format_term(t: Term) -> str:
    """Render with minimal parentheses; parse_term inverts it."""

    def prec(node: Term) -> int:
        if isinstance(node, Join):
            return 1
        if isinstance(node, Meet):
            return 2
        if isinstance(node, Star):
            return 3
        return 4

    def walk(node: Term) -> str:
        if isinstance(node, Var):
            return node.name
        if isinstance(node, Const):
            return str(node.value)
        if isinstance(node, Star):
            inner = walk(node.inner)
            if prec(node.inner) < 3:
                inner = f"({inner})"
            return inner + "'"
        op = "\\/" if isinstance(node, Join) else "/\\"
        p = prec(node)
        left = walk(node.left)
        if prec(node.left) < p:
            left = f"({left})"
        right = walk(node.right)
        if prec(node.right) <= p:
            right = f"({right})"
        return f"{left} {op} {right}"

    return walk(t)


def format_equation(eq: Equation) -> str:
    return f"{format_term(eq.lhs)} = {format_term(eq.rhs)}"


def variables(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Const):
        return frozenset()
    if isinstance(t, Star):
        return variables(t.inner)
    return variables(t.left) | variables(t.right)


def eval_term(a: FiniteAlgebra, t: Term, env: Mapping[str, int]) -> int:
    """Evaluate by table lookup. env maps variable names to element indices."""
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise UnboundVariable(f"variable {t.name!r} is not assigned") from None
    if isinstance(t, Const):
        return a.zero if t.value == 0 else a.one
    if isinstance(t, Star):
        return a.star[eval_term(a, t.inner, env)]
    left = eval_term(a, t.left, env)
    right = eval_term(a, t.right, env)
    table = a.join if isinstance(t, Join) else a.meet
    return table[left][right]


def holds_in(a: FiniteAlgebra, eq: Equation) -> Verdict:
    """Exhaustive check over all assignments; the first counterexample in
    lexicographic order (variables sorted by name) becomes the witness."""
    names = sorted(variables(eq.lhs) | variables(eq.rhs))
    for values in product(range(a.size), repeat=len(names)):
        env = dict(zip(names, values))
        lv = eval_term(a, eq.lhs, env)
        rv = eval_term(a, eq.rhs, env)
        if lv != rv:
            return Verdict(valid=False, witness=Witness(
                assignment=tuple((nm, a.names[v]) for nm, v in zip(names, values)),
                lhs_value=a.names[lv],
                rhs_value=a.names[rv],
                algebra=a.label or f"{a.size}-element algebra",
            ))
    return Verdict(valid=True)


VARIETIES = ("qb", "fqb", "b")

_GENERATORS = {"qb": "4", "fqb": "F3", "b": "2"}


def decide(variety: str, eq: Equation) -> Verdict:
    """Validity in a whole variety via its generating algebra: 4 for all
    QB-algebras, F3 for the flat ones, 2 for Boolean algebras."""
    key = variety.lower()
    if key not in _GENERATORS:
        raise ValueError(f"unknown variety {variety!r}; expected one of {VARIETIES}")
    return holds_in(fixture(_GENERATORS[key]), eq)


# Fixed-seed equation sampler for reproducible spot checks. Node weights:
# variable .35, join .2, meet .2, star .2, constant .05.

def _sample_term(rng: random.Random, depth: int, names: tuple[str, ...]) -> Term:
    r = rng.random()
    if depth == 0 or r < 0.35:
        if depth == 0 and r >= 0.35:
            # Leaf forced by the depth cap: keep the var/const ratio.
            return Var(rng.choice(names)) if rng.random() < 0.875 else Const(rng.randrange(2))
        return Var(rng.choice(names))
    if r < 0.55:
        return Join(_sample_term(rng, depth - 1, names),
                    _sample_term(rng, depth - 1, names))
    if r < 0.75:
        return Meet(_sample_term(rng, depth - 1, names),
                    _sample_term(rng, depth - 1, names))
    if r < 0.95:
        return Star(_sample_term(rng, depth - 1, names))
    return Const(rng.randrange(2))


def equation_corpus(count: int = 200, seed: int = 1729, max_depth: int = 4,
                    names: tuple[str, ...] = ("x", "y", "z")) -> list[Equation]:
    """Deterministic pseudo-random equations with at most len(names)
    distinct variables and the given term depth."""
    rng = random.Random(seed)
    return [Equation(_sample_term(rng, max_depth, names),
                     _sample_term(rng, max_depth, names))
            for _ in range(count)]
