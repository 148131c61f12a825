"""Partitions of a finite carrier, used to represent congruences.

Blocks are stored canonically: each block sorted ascending, blocks sorted
by least element, so a given equivalence relation has exactly one
representation and partitions compare with ==.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .algebra import FiniteAlgebra
from .errors import AlgebraSemanticError


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def blocks(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            groups.setdefault(self.find(x), []).append(x)
        return [groups[r] for r in sorted(groups)]


@dataclass(frozen=True)
class Partition:
    """An equivalence relation on {0, ..., size-1} as canonical blocks."""

    size: int
    blocks: tuple[tuple[int, ...], ...]
    _member: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        seen = [-1] * self.size
        for bi, block in enumerate(self.blocks):
            if not block:
                raise ValueError("empty block")
            if tuple(sorted(block)) != tuple(block):
                raise ValueError("block not sorted")
            for x in block:
                if not (0 <= x < self.size):
                    raise ValueError(f"element {x} out of range")
                if seen[x] != -1:
                    raise ValueError(f"element {x} in two blocks")
                seen[x] = bi
        if -1 in seen:
            raise ValueError("blocks do not cover the carrier")
        if list(self.blocks) != sorted(self.blocks, key=lambda b: b[0]):
            raise ValueError("blocks not sorted by least element")
        object.__setattr__(self, "_member", tuple(seen))

    @classmethod
    def from_blocks(cls, size: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        canon = sorted((tuple(sorted(set(b))) for b in blocks), key=lambda b: b[0] if b else -1)
        return cls(size, tuple(b for b in canon if b))

    @classmethod
    def singletons(cls, size: int) -> "Partition":
        return cls(size, tuple((x,) for x in range(size)))

    @classmethod
    def whole(cls, size: int) -> "Partition":
        return cls(size, (tuple(range(size)),))

    @classmethod
    def from_pairs(cls, size: int, pairs: Iterable[tuple[int, int]]) -> "Partition":
        """Least equivalence relation containing the given pairs."""
        uf = UnionFind(size)
        for a, b in pairs:
            uf.union(a, b)
        return cls(size, tuple(tuple(b) for b in uf.blocks()))

    def block_of(self, x: int) -> tuple[int, ...]:
        return self.blocks[self._member[x]]

    def block_index(self, x: int) -> int:
        return self._member[x]

    def relates(self, x: int, y: int) -> bool:
        return self._member[x] == self._member[y]

    def as_pairs(self) -> frozenset[tuple[int, int]]:
        """All related ordered pairs, diagonal included."""
        return frozenset((a, b) for block in self.blocks for a in block for b in block)

    def refines(self, other: "Partition") -> bool:
        """True iff every block of self lies inside a block of other."""
        if self.size != other.size:
            return False
        return all(other.relates(b[0], x) for b in self.blocks for x in b[1:])

    def restrict(self, elements: Iterable[int]) -> "Partition":
        """Restriction to a subset, re-indexed by the subset's sorted order."""
        subset = sorted(set(elements))
        local = {g: i for i, g in enumerate(subset)}
        groups: dict[int, list[int]] = {}
        for g in subset:
            groups.setdefault(self._member[g], []).append(local[g])
        return Partition.from_blocks(len(subset), groups.values())

    def sort_key(self) -> tuple:
        return self.blocks


def format_partition(a: FiniteAlgebra, p: Partition) -> str:
    """Canonical text form: blocks joined by ';', members by ','."""
    if p.size != a.size:
        raise ValueError("partition size does not match the algebra")
    return ";".join(",".join(a.names[x] for x in block) for block in p.blocks)


def parse_partition(a: FiniteAlgebra, text: str) -> Partition:
    """Parse 'x,y;z;...' using element names. Elements not mentioned become
    singleton blocks."""
    blocks: list[list[int]] = []
    seen: set[int] = set()
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        block = [a.index_of(nm.strip()) for nm in chunk.split(",") if nm.strip()]
        for x in block:
            if x in seen:
                raise AlgebraSemanticError(
                    f"element {a.names[x]!r} appears in two blocks")
            seen.add(x)
        blocks.append(block)
    blocks.extend([x] for x in a.elements() if x not in seen)
    return Partition.from_blocks(a.size, blocks)


def pair_closure_gaps(size: int, pairs: Iterable[tuple[int, int]]
                      ) -> list[tuple[int, int]]:
    """Pairs forced by reflexive-symmetric-transitive closure but absent
    from the input.

    Lets a caller hand over a pair set that claims to be an equivalence
    relation and learn exactly which pairs its closure had to add. Returns
    off-diagonal ordered pairs, sorted.
    """
    given = set()
    for a, b in pairs:
        given.add((a, b))
        given.add((b, a))
    closure = Partition.from_pairs(size, given)
    return sorted((a, b) for (a, b) in closure.as_pairs()
                  if a != b and (a, b) not in given)


def is_congruence(a: FiniteAlgebra, p: Partition) -> bool:
    """Compatibility of an equivalence relation with join, meet and star."""
    if p.size != a.size:
        raise ValueError("partition size does not match the algebra")
    member = p._member
    join, meet, star = a.join, a.meet, a.star
    for block in p.blocks:
        for x, y in combinations(block, 2):
            if member[star[x]] != member[star[y]]:
                return False
            jx, jy, mx, my = join[x], join[y], meet[x], meet[y]
            for c in range(a.size):
                if member[jx[c]] != member[jy[c]] or member[mx[c]] != member[my[c]]:
                    return False
    return True
