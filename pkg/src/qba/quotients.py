"""Canonical congruences, quotients, products and isomorphism machinery.

Every QB-algebra carries two canonical congruences: chi (same cloud, i.e.
x v x = y v y) whose quotient is a Boolean algebra, and tau (equal, or both
regular) whose quotient is flat. The algebra embeds into the direct product
of the two quotients via x -> (x/chi, x/tau).
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import (FiniteAlgebra, cloud_of, is_flat, regular_elements,
                      validate)
from .errors import (EmbeddingFailure, FlatInput, IllDefinedQuotient,
                     InvalidShape, NotACongruence)
from .partitions import Partition, is_congruence


@dataclass(frozen=True)
class ElementMap:
    """A total map between the carriers of two algebras."""

    source_size: int
    target_size: int
    mapping: tuple[int, ...]

    def __post_init__(self):
        if len(self.mapping) != self.source_size:
            raise ValueError("mapping length differs from source size")
        if any(not (0 <= v < self.target_size) for v in self.mapping):
            raise ValueError("mapping value out of range")

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    @property
    def is_injective(self) -> bool:
        return len(set(self.mapping)) == self.source_size

    @property
    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == self.target_size

    @property
    def is_bijective(self) -> bool:
        return self.source_size == self.target_size and self.is_injective


def chi(a: FiniteAlgebra) -> Partition:
    """Congruence grouping elements by their regular representative x v x.

    Blocks are exactly the clouds; the quotient is Boolean.
    """
    groups: dict[int, list[int]] = {}
    for x in a.elements():
        groups.setdefault(a.join[x][x], []).append(x)
    return Partition.from_blocks(a.size, groups.values())


def tau(a: FiniteAlgebra) -> Partition:
    """Congruence with one block of all regular elements and singleton
    irregulars. The quotient is flat."""
    regs = regular_elements(a)
    blocks = [sorted(regs)] + [[x] for x in a.elements() if x not in regs]
    return Partition.from_blocks(a.size, blocks)


def quotient(a: FiniteAlgebra, theta: Partition) -> tuple[FiniteAlgebra, ElementMap]:
    """Quotient algebra by a congruence, plus the canonical projection.

    Carrier = blocks in canonical order; a block is displayed as the name
    of its least element in brackets. Well-definedness is re-checked over
    all representatives so a broken compatibility check cannot slip through.
    """
    if not is_congruence(a, theta):
        raise NotACongruence("quotient requires a congruence")
    nb = len(theta.blocks)

    def induced(table) -> tuple[tuple[int, ...], ...]:
        out = []
        for bi in theta.blocks:
            row = []
            for bj in theta.blocks:
                results = {theta.block_index(table[x][y]) for x in bi for y in bj}
                if len(results) != 1:
                    raise IllDefinedQuotient(
                        f"blocks {bi} and {bj} give representative-dependent results")
                row.append(results.pop())
            out.append(tuple(row))
        return tuple(out)

    star_out = []
    for bi in theta.blocks:
        results = {theta.block_index(a.star[x]) for x in bi}
        if len(results) != 1:
            raise IllDefinedQuotient(f"star on block {bi} is representative-dependent")
        star_out.append(results.pop())

    names = tuple(f"[{a.names[block[0]]}]" for block in theta.blocks)
    q = FiniteAlgebra(
        names=names,
        join=induced(a.join),
        meet=induced(a.meet),
        star=tuple(star_out),
        zero=theta.block_index(a.zero),
        one=theta.block_index(a.one),
        label=f"{a.label}/~" if a.label else "",
    )
    proj = ElementMap(a.size, nb, tuple(theta.block_index(x) for x in a.elements()))
    return q, proj


def direct_product(a: FiniteAlgebra, b: FiniteAlgebra) -> FiniteAlgebra:
    """Component-wise product; element (i, j) lives at index i*|B| + j."""
    nb = b.size

    def idx(i: int, j: int) -> int:
        return i * nb + j

    pairs = [(i, j) for i in a.elements() for j in b.elements()]
    names = tuple(f"({a.names[i]},{b.names[j]})" for i, j in pairs)
    join = tuple(
        tuple(idx(a.join[i][k], b.join[j][l]) for k, l in pairs)
        for i, j in pairs)
    meet = tuple(
        tuple(idx(a.meet[i][k], b.meet[j][l]) for k, l in pairs)
        for i, j in pairs)
    star = tuple(idx(a.star[i], b.star[j]) for i, j in pairs)
    label = f"{a.label}x{b.label}" if a.label and b.label else ""
    return FiniteAlgebra(names=names, join=join, meet=meet, star=star,
                         zero=idx(a.zero, b.zero), one=idx(a.one, b.one),
                         label=label)


def is_homomorphism(a: FiniteAlgebra, b: FiniteAlgebra, f: ElementMap) -> bool:
    """Exhaustive check that f preserves join, meet, star and 0."""
    if f.source_size != a.size or f.target_size != b.size:
        raise ValueError("map does not match the carriers")
    m = f.mapping
    if m[a.zero] != b.zero:
        return False
    for x in a.elements():
        if m[a.star[x]] != b.star[m[x]]:
            return False
        for y in a.elements():
            if m[a.join[x][y]] != b.join[m[x]][m[y]]:
                return False
            if m[a.meet[x][y]] != b.meet[m[x]][m[y]]:
                return False
    # Preservation of 1 follows: f(1) = f(0*) = f(0)* = 0* = 1.
    assert m[a.one] == b.one
    return True


def embed_into_product(a: FiniteAlgebra) -> ElementMap:
    """The canonical embedding x -> (x/chi, x/tau) into
    direct_product(a/chi, a/tau)."""
    qchi, pchi = quotient(a, chi(a))
    qtau, ptau = quotient(a, tau(a))
    mapping = tuple(pchi(x) * qtau.size + ptau(x) for x in a.elements())
    emb = ElementMap(a.size, qchi.size * qtau.size, mapping)
    if not emb.is_injective or not is_homomorphism(a, direct_product(qchi, qtau), emb):
        raise EmbeddingFailure("canonical map is not an embedding")
    return emb


def _signature(a: FiniteAlgebra, regs: frozenset[int], x: int) -> tuple:
    return (
        x == a.zero,
        x == a.one,
        x in regs,
        a.star[x] == x,
        len(cloud_of(a, x)),
    )


def find_isomorphism(a: FiniteAlgebra, b: FiniteAlgebra) -> ElementMap | None:
    """Search for a bijective homomorphism by backtracking.

    Candidates are pruned by per-element invariants (constants, regularity,
    star fixed points, cloud size) before the exhaustive consistency check;
    enough to keep the search trivial at the sizes handled here.
    """
    n = a.size
    if n != b.size:
        return None
    regs_a, regs_b = regular_elements(a), regular_elements(b)
    sig_a = [_signature(a, regs_a, x) for x in a.elements()]
    sig_b = [_signature(b, regs_b, x) for x in b.elements()]
    if sorted(sig_a) != sorted(sig_b):
        return None

    image = [-1] * n
    used = [False] * n

    def consistent(x: int, y: int) -> bool:
        if image[a.star[x]] != -1 and image[a.star[x]] != b.star[y]:
            return False
        for u in range(n):
            v = image[u]
            if v == -1:
                continue
            for (p, q), (pm, qm) in (((x, u), (y, v)), ((u, x), (v, y))):
                if image[a.join[p][q]] not in (-1, b.join[pm][qm]):
                    return False
                if image[a.meet[p][q]] not in (-1, b.meet[pm][qm]):
                    return False
        return True

    def extend(x: int) -> bool:
        if x == n:
            # Partial checks skip operation results that were still
            # unassigned, so the complete candidate is verified in full.
            return is_homomorphism(a, b, ElementMap(n, n, tuple(image)))
        for y in range(n):
            if used[y] or sig_a[x] != sig_b[y]:
                continue
            if not consistent(x, y):
                continue
            image[x] = y
            used[y] = True
            if extend(x + 1):
                return True
            image[x] = -1
            used[y] = False
        return False

    if not extend(0):
        return None
    f = ElementMap(n, n, tuple(image))
    assert f.is_bijective
    return f


def is_irreducible(a: FiniteAlgebra) -> bool:
    """True iff the regular elements are exactly {0, 1}. Defined only for
    non-flat algebras."""
    if is_flat(a):
        raise FlatInput("irreducibility is defined only for non-flat algebras")
    return regular_elements(a) == frozenset((a.zero, a.one))


def make_flat(n: int, k: int) -> FiniteAlgebra:
    """Flat algebra of size n whose star fixes exactly k elements.

    All joins and meets are 0 and 1 = 0. Fixed points occupy indices
    0..k-1, the rest are paired consecutively; any involution with the same
    fixed-point count gives an isomorphic algebra.
    """
    if not (1 <= k <= n) or (n - k) % 2 != 0:
        raise InvalidShape(f"no flat algebra of size {n} with {k} star fixed points")
    star = list(range(k))
    for i in range(k, n, 2):
        star.extend((i + 1, i))
    names = ("0",) + tuple(f"x{i}" for i in range(1, n))
    zeros = ((0,) * n,) * n
    return FiniteAlgebra(names=names, join=zeros, meet=zeros, star=tuple(star),
                         zero=0, one=0, label=f"F{n}k{k}")


def make_irreducible(k: int) -> FiniteAlgebra:
    """The product of the Boolean algebra 2 with the flat algebra of odd
    size 2k+1; size 4k+2, regular elements exactly {0, 1}."""
    if k < 0:
        raise ValueError("k must be a natural number")
    two = FiniteAlgebra(names=("0", "1"), join=((0, 1), (1, 1)),
                        meet=((0, 0), (0, 1)), star=(1, 0), zero=0, one=1,
                        label="2")
    return direct_product(two, make_flat(2 * k + 1, 1)).relabel(f"2xF{2 * k + 1}")


def boolean_algebra(num_atoms: int) -> FiniteAlgebra:
    """The Boolean algebra of subsets of num_atoms points (size 2^n)."""
    n = 1 << num_atoms
    names = tuple(format(s, f"0{max(num_atoms, 1)}b") for s in range(n))
    join = tuple(tuple(i | j for j in range(n)) for i in range(n))
    meet = tuple(tuple(i & j for j in range(n)) for i in range(n))
    star = tuple(i ^ (n - 1) for i in range(n))
    a = FiniteAlgebra(names=names, join=join, meet=meet, star=star,
                      zero=0, one=n - 1, label=f"B{n}")
    assert validate(a).passed
    return a
