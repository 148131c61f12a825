"""Finite quasi-Boolean algebras as explicit operation tables.

A QB-algebra is an algebra <Q; v, ^, *, 0, 1> of type <2,2,1,0,0>: a
distributive q-lattice with bounds and an involutive complement. Unlike a
lattice, idempotence is not assumed, so x v x may differ from x. Elements
with x v x = x are called regular; the x v x = y v y classes are called
clouds. Flat algebras are those satisfying 1 = 0.

Elements are dense indices 0..n-1; names are display metadata only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterator

from .errors import AlgebraParseError, AlgebraSemanticError


@dataclass(frozen=True)
class FiniteAlgebra:
    """Immutable operation tables over the carrier {0, ..., n-1}.

    Construction checks well-formedness (entry ranges, distinct names) but
    not the axioms; run :func:`validate` for those.
    """

    names: tuple[str, ...]
    join: tuple[tuple[int, ...], ...]
    meet: tuple[tuple[int, ...], ...]
    star: tuple[int, ...]
    zero: int
    one: int
    label: str = field(default="", compare=False)

    def __post_init__(self):
        n = len(self.names)
        if n == 0:
            raise AlgebraSemanticError("empty carrier")
        if len(set(self.names)) != n:
            raise AlgebraSemanticError("duplicate names")
        if any(not nm or any(c.isspace() for c in nm) for nm in self.names):
            raise AlgebraSemanticError("names must be non-empty and free of whitespace")
        for table, what in ((self.join, "join"), (self.meet, "meet")):
            if len(table) != n or any(len(row) != n for row in table):
                raise AlgebraSemanticError(f"wrong table dimensions for {what}")
            if any(not (0 <= v < n) for row in table for v in row):
                raise AlgebraSemanticError(f"{what} entry out of range")
        if len(self.star) != n:
            raise AlgebraSemanticError("wrong table dimensions for star")
        if any(not (0 <= v < n) for v in self.star):
            raise AlgebraSemanticError("star entry out of range")
        for c, what in ((self.zero, "zero"), (self.one, "one")):
            if not (0 <= c < n):
                raise AlgebraSemanticError(f"{what} out of range")

    @property
    def size(self) -> int:
        return len(self.names)

    def elements(self) -> range:
        return range(len(self.names))

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise AlgebraSemanticError(f"unknown element name {name!r}") from None

    def relabel(self, label: str) -> "FiniteAlgebra":
        return FiniteAlgebra(self.names, self.join, self.meet, self.star,
                             self.zero, self.one, label)

    def __repr__(self) -> str:
        tag = self.label or f"{self.size} elements"
        return f"FiniteAlgebra({tag})"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the exhaustive axiom check.

    ``violations`` holds one (axiom label, witness tuple) entry per failed
    axiom, the witness being the first failing element tuple in scan order.
    """

    passed: bool
    violations: tuple[tuple[str, tuple[int, ...]], ...]


# Axiom predicates. Each takes the algebra and a tuple of element indices
# and reports whether the instance of the law holds there.

def _ql1(a: FiniteAlgebra, t) -> bool:
    x, y = t
    return a.join[x][y] == a.join[y][x] and a.meet[x][y] == a.meet[y][x]


def _ql2(a: FiniteAlgebra, t) -> bool:
    x, y, z = t
    return (a.join[x][a.join[y][z]] == a.join[a.join[x][y]][z]
            and a.meet[x][a.meet[y][z]] == a.meet[a.meet[x][y]][z])


def _ql3(a: FiniteAlgebra, t) -> bool:
    x, y = t
    return (a.join[x][a.meet[x][y]] == a.join[x][x]
            and a.meet[x][a.join[x][y]] == a.meet[x][x])


def _ql4(a: FiniteAlgebra, t) -> bool:
    x, y = t
    return (a.join[x][a.join[y][y]] == a.join[x][y]
            and a.meet[x][a.meet[y][y]] == a.meet[x][y])


def _ql5(a: FiniteAlgebra, t) -> bool:
    (x,) = t
    return a.join[x][x] == a.meet[x][x]


def _qb2(a: FiniteAlgebra, t) -> bool:
    (x,) = t
    return a.join[x][a.one] == a.one and a.meet[x][a.zero] == a.zero


def _qb3(a: FiniteAlgebra, t) -> bool:
    (x,) = t
    return a.join[x][a.star[x]] == a.one and a.meet[x][a.star[x]] == a.zero


def _qb4(a: FiniteAlgebra, t) -> bool:
    (x,) = t
    return a.star[a.meet[x][x]] == a.join[a.star[x]][a.star[x]]


def _qb5(a: FiniteAlgebra, t) -> bool:
    (x,) = t
    return a.star[a.star[x]] == x


def _dist(a: FiniteAlgebra, t) -> bool:
    x, y, z = t
    return (a.join[x][a.meet[y][z]] == a.meet[a.join[x][y]][a.join[x][z]]
            and a.meet[x][a.join[y][z]] == a.join[a.meet[x][y]][a.meet[x][z]])


# Check order is fixed so reports are deterministic: q-lattice laws, then
# the bound/complement laws, then distributivity.
AXIOMS: tuple[tuple[str, int, Callable[[FiniteAlgebra, tuple], bool]], ...] = (
    ("QL1", 2, _ql1),
    ("QL2", 3, _ql2),
    ("QL3", 2, _ql3),
    ("QL4", 2, _ql4),
    ("QL5", 1, _ql5),
    ("QB2", 1, _qb2),
    ("QB3", 1, _qb3),
    ("QB4", 1, _qb4),
    ("QB5", 1, _qb5),
    ("DIST", 3, _dist),
)

AXIOM_LABELS = tuple(label for label, _, _ in AXIOMS)


def axiom_holds_at(a: FiniteAlgebra, label: str, witness: tuple[int, ...]) -> bool:
    """Re-evaluate one axiom instance, e.g. to confirm a reported witness."""
    for lab, arity, pred in AXIOMS:
        if lab == label:
            if len(witness) != arity:
                raise ValueError(f"{label} takes {arity} elements")
            return pred(a, tuple(witness))
    raise ValueError(f"unknown axiom label {label!r}")


def validate(a: FiniteAlgebra) -> ValidationReport:
    """Check every axiom by exhaustive iteration over element tuples.

    Collects one witness per failed axiom (the first failing tuple) instead
    of failing fast, which makes mutation diagnostics readable.
    """
    violations = []
    n = a.size
    for label, arity, pred in AXIOMS:
        for t in product(range(n), repeat=arity):
            if not pred(a, t):
                violations.append((label, t))
                break
    return ValidationReport(passed=not violations, violations=tuple(violations))


def is_flat(a: FiniteAlgebra) -> bool:
    """True iff the algebra satisfies 1 = 0."""
    return a.zero == a.one


def regular_elements(a: FiniteAlgebra) -> frozenset[int]:
    """Elements with x v x = x. Always contains 0 and 1 in a valid algebra."""
    return frozenset(x for x in a.elements() if a.join[x][x] == x)


def quasi_leq(a: FiniteAlgebra, x: int, y: int) -> bool:
    """The quasi-order: x <= y iff x v y = y v y (iff x ^ y = x ^ x).

    Reflexive and transitive but not antisymmetric.
    """
    by_join = a.join[x][y] == a.join[y][y]
    by_meet = a.meet[x][y] == a.meet[x][x]
    assert by_join == by_meet, "quasi-order characterizations disagree"
    return by_join


def cloud_of(a: FiniteAlgebra, x: int) -> frozenset[int]:
    """The cloud of x: all y with y v y = x v x.

    In a valid algebra this class contains exactly one regular element,
    namely x v x.
    """
    r = a.join[x][x]
    return frozenset(y for y in a.elements() if a.join[y][y] == r)


# ---------------------------------------------------------------------------
# Text format.
#
#   size N
#   names n0 n1 ... n(N-1)
#   zero NAME
#   one NAME
#   join        (N rows of N names)
#   meet        (N rows of N names)
#   star        (one row of N names)
#
# '#' starts a comment, blank lines are ignored, sections appear in exactly
# this order. Entries are element names, never indices.
# ---------------------------------------------------------------------------

def _logical_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def load_algebra(text: str, label: str = "") -> FiniteAlgebra:
    """Parse the text format. Resolves names to indices; does not validate
    the axioms."""
    lines = list(_logical_lines(text))
    pos = 0

    def take(what: str) -> tuple[int, list[str]]:
        nonlocal pos
        if pos >= len(lines):
            raise AlgebraParseError(f"unexpected end of file, expected {what}")
        entry = lines[pos]
        pos += 1
        return entry

    lineno, toks = take("'size N'")
    if len(toks) != 2 or toks[0] != "size":
        raise AlgebraParseError(f"line {lineno}: expected 'size N'")
    try:
        n = int(toks[1])
    except ValueError:
        raise AlgebraParseError(f"line {lineno}: size is not an integer") from None
    if n < 1:
        raise AlgebraSemanticError("size must be positive")

    lineno, toks = take("'names ...'")
    if not toks or toks[0] != "names":
        raise AlgebraParseError(f"line {lineno}: expected 'names ...'")
    names = tuple(toks[1:])
    if len(names) != n:
        raise AlgebraSemanticError(
            f"line {lineno}: expected {n} names, got {len(names)}")
    if len(set(names)) != n:
        raise AlgebraSemanticError(f"line {lineno}: duplicate names")
    index = {nm: i for i, nm in enumerate(names)}

    def resolve(lineno: int, nm: str) -> int:
        if nm not in index:
            raise AlgebraSemanticError(f"line {lineno}: unknown name {nm!r}")
        return index[nm]

    consts = {}
    for key in ("zero", "one"):
        lineno, toks = take(f"'{key} NAME'")
        if len(toks) != 2 or toks[0] != key:
            raise AlgebraParseError(f"line {lineno}: expected '{key} NAME'")
        consts[key] = resolve(lineno, toks[1])

    def read_table(key: str, rows: int) -> list[tuple[int, ...]]:
        lineno, toks = take(f"'{key}'")
        if toks != [key]:
            raise AlgebraParseError(f"line {lineno}: expected '{key}'")
        table = []
        for _ in range(rows):
            lineno, toks = take(f"a {key} row")
            if len(toks) != n:
                raise AlgebraSemanticError(
                    f"line {lineno}: wrong table dimensions for {key}: "
                    f"expected {n} entries, got {len(toks)}")
            table.append(tuple(resolve(lineno, t) for t in toks))
        return table

    join = tuple(read_table("join", n))
    meet = tuple(read_table("meet", n))
    star = read_table("star", 1)[0]
    if pos != len(lines):
        lineno, _ = lines[pos]
        raise AlgebraParseError(f"line {lineno}: trailing content")

    return FiniteAlgebra(names=names, join=join, meet=meet, star=star,
                         zero=consts["zero"], one=consts["one"], label=label)


def dump_algebra(a: FiniteAlgebra) -> str:
    """Serialize back to the text format. load_algebra(dump_algebra(a)) == a."""
    width = max(len(nm) for nm in a.names)

    def row(entries) -> str:
        return " ".join(a.names[v].ljust(width) for v in entries).rstrip()

    out = [
        f"size {a.size}",
        "names " + " ".join(a.names),
        f"zero {a.names[a.zero]}",
        f"one {a.names[a.one]}",
        "join",
    ]
    out.extend(row(r) for r in a.join)
    out.append("meet")
    out.extend(row(r) for r in a.meet)
    out.append("star")
    out.append(row(a.star))
    return "\n".join(out) + "\n"


def algebra_to_dict(a: FiniteAlgebra) -> dict:
    """JSON-friendly form using names, mirroring the text format."""
    return {
        "size": a.size,
        "names": list(a.names),
        "zero": a.names[a.zero],
        "one": a.names[a.one],
        "join": [[a.names[v] for v in row] for row in a.join],
        "meet": [[a.names[v] for v in row] for row in a.meet],
        "star": [a.names[v] for v in a.star],
        "label": a.label,
    }


def algebra_from_dict(d: dict) -> FiniteAlgebra:
    names = tuple(d["names"])
    index = {nm: i for i, nm in enumerate(names)}
    try:
        return FiniteAlgebra(
            names=names,
            join=tuple(tuple(index[v] for v in row) for row in d["join"]),
            meet=tuple(tuple(index[v] for v in row) for row in d["meet"]),
            star=tuple(index[v] for v in d["star"]),
            zero=index[d["zero"]],
            one=index[d["one"]],
            label=d.get("label", ""),
        )
    except KeyError as exc:
        raise AlgebraSemanticError(f"unknown name {exc.args[0]!r}") from None
