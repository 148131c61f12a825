"""Congruence checking, enumeration, generation, extension and the
regular/irregular decomposition of congruences.

A congruence on a non-flat algebra splits into three parts: its restriction
to the regular elements (a congruence on the Boolean subalgebra), its
restriction to the irregular elements (a star-closed equivalence confined
to clouds of related regulars), and a cross part described by an injective
block map; conditions (C1)-(C3) below characterize exactly when three such
parts reassemble into a congruence.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

from .algebra import FiniteAlgebra, cloud_of, is_flat, regular_elements
from .errors import (ConditionC1Violated, ConditionC2Violated,
                     ConditionC3Violated, FlatInput, LemmaViolation,
                     NoExtensionFound, NotACongruence, NotASubalgebra,
                     NotFlat, PreconditionViolated, NotStarClosed, TooLarge)
from .partitions import (Partition, UnionFind, is_congruence,
                         pair_closure_gaps)
from .quotients import chi, quotient, tau

MAX_EXHAUSTIVE = 10  # Bell-number blowup guard for carrier-wide searches


def generated_congruence(a: FiniteAlgebra, seed) -> Partition:
    """Least congruence containing the seed pairs.

    Union-find closure: repeatedly merge (x v c, y v c), (x ^ c, y ^ c) and
    (x*, y*) for related x, y until stable.
    """
    n = a.size
    uf = UnionFind(n)
    for x, y in seed:
        uf.union(x, y)
    changed = True
    while changed:
        changed = False
        for block in uf.blocks():
            x = block[0]
            for y in block[1:]:
                if uf.union(a.star[x], a.star[y]):
                    changed = True
                for c in range(n):
                    if uf.union(a.join[x][c], a.join[y][c]):
                        changed = True
                    if uf.union(a.meet[x][c], a.meet[y][c]):
                        changed = True
    return Partition.from_blocks(n, uf.blocks())


def all_congruences(a: FiniteAlgebra) -> list[Partition]:
    """Every congruence, in canonical order.

    Partitions are generated as restricted-growth assignments with early
    compatibility pruning on the assigned prefix; each survivor still gets
    the full check, so pruning can only cut the search, never change it.
    """
    n = a.size
    if n > MAX_EXHAUSTIVE:
        raise TooLarge(f"carrier of {n} exceeds the guard of {MAX_EXHAUSTIVE}")
    join, meet, star = a.join, a.meet, a.star
    assign = [0] * n
    found: list[Partition] = []

    def prefix_ok(m: int) -> bool:
        # Constraints decidable from elements 0..m that involve m.
        g = assign[m]
        for x in range(m):
            if assign[x] == g:
                sx, sm = star[x], star[m]
                if sx <= m and sm <= m and assign[sx] != assign[sm]:
                    return False
                for c in range(m + 1):
                    u, v = join[x][c], join[m][c]
                    if u <= m and v <= m and assign[u] != assign[v]:
                        return False
                    u, v = meet[x][c], meet[m][c]
                    if u <= m and v <= m and assign[u] != assign[v]:
                        return False
            else:
                for y in range(x + 1, m):
                    if assign[y] != assign[x]:
                        continue
                    u, v = join[x][m], join[y][m]
                    if u <= m and v <= m and assign[u] != assign[v]:
                        return False
                    u, v = meet[x][m], meet[y][m]
                    if u <= m and v <= m and assign[u] != assign[v]:
                        return False
        return True

    def rec(m: int, nblocks: int):
        if m == n:
            groups: dict[int, list[int]] = {}
            for x, g in enumerate(assign):
                groups.setdefault(g, []).append(x)
            p = Partition.from_blocks(n, groups.values())
            if is_congruence(a, p):
                found.append(p)
            return
        for g in range(nblocks + 1):
            assign[m] = g
            if prefix_ok(m):
                rec(m + 1, nblocks + (1 if g == nblocks else 0))
        assign[m] = 0

    rec(0, 0)
    found.sort(key=Partition.sort_key)
    return found


def subalgebras(a: FiniteAlgebra) -> list[tuple[int, ...]]:
    """All index sets containing 0 and 1 and closed under the operations,
    sorted by size then content."""
    n = a.size
    if n > MAX_EXHAUSTIVE:
        raise TooLarge(f"carrier of {n} exceeds the guard of {MAX_EXHAUSTIVE}")
    base = {a.zero, a.one}
    rest = [x for x in a.elements() if x not in base]
    out = []
    for mask in range(1 << len(rest)):
        subset = set(base)
        subset.update(x for i, x in enumerate(rest) if mask >> i & 1)
        if _is_closed(a, subset):
            out.append(tuple(sorted(subset)))
    out.sort(key=lambda s: (len(s), s))
    return out


def _is_closed(a: FiniteAlgebra, subset: set[int]) -> bool:
    for x in subset:
        if a.star[x] not in subset:
            return False
        for y in subset:
            if a.join[x][y] not in subset or a.meet[x][y] not in subset:
                return False
    return True


def subalgebra(a: FiniteAlgebra, indices) -> FiniteAlgebra:
    """The algebra induced on a closed index set, re-indexed by sorted order.
    Names are inherited."""
    subset = sorted(set(indices))
    sset = set(subset)
    if a.zero not in sset or a.one not in sset:
        raise NotASubalgebra("subalgebra must contain 0 and 1")
    if not _is_closed(a, sset):
        raise NotASubalgebra("index set is not closed under the operations")
    local = {g: i for i, g in enumerate(subset)}
    return FiniteAlgebra(
        names=tuple(a.names[g] for g in subset),
        join=tuple(tuple(local[a.join[x][y]] for y in subset) for x in subset),
        meet=tuple(tuple(local[a.meet[x][y]] for y in subset) for x in subset),
        star=tuple(local[a.star[x]] for x in subset),
        zero=local[a.zero],
        one=local[a.one],
        label=f"{a.label}|{len(subset)}" if a.label else "",
    )


def extend_from_subalgebra(a: FiniteAlgebra, q0, theta0: Partition) -> Partition:
    """Extend a congruence on a subalgebra to the whole algebra.

    Returns the minimal extension (the generated closure of the pairs) and
    checks that its restriction to the subalgebra gives back theta0. If the
    minimal closure ever failed to restrict correctly, the congruence list
    would be searched for an extension; finding none would refute the
    congruence extension property.
    """
    subset = sorted(set(q0))
    sub = subalgebra(a, subset)
    if theta0.size != sub.size:
        raise ValueError("partition size does not match the subalgebra")
    if not is_congruence(sub, theta0):
        raise NotACongruence("theta0 is not a congruence on the subalgebra")
    seed = [(subset[x], subset[y]) for x, y in theta0.as_pairs() if x < y]
    ext = generated_congruence(a, seed)
    if ext.restrict(subset) == theta0:
        return ext
    warnings.warn("minimal closure failed to restrict; searching all congruences")
    for cand in all_congruences(a):
        if cand.restrict(subset) == theta0:
            return cand
    raise NoExtensionFound("no congruence restricts to the given one")


def split_congruence(a: FiniteAlgebra, theta: Partition
                     ) -> tuple[Partition, Partition]:
    """Project a congruence through the two canonical quotients.

    Returns congruences theta1 on a/chi and theta2 on a/tau such that
    theta relates x, y exactly when theta1 relates the chi-classes and
    theta2 relates the tau-classes. Raw projections need not be transitive,
    so each is closed; the biconditional is then checked exhaustively and a
    failure raises LemmaViolation with the witness pair.
    """
    if not is_congruence(a, theta):
        raise NotACongruence("split requires a congruence")
    qchi, pchi = quotient(a, chi(a))
    qtau, ptau = quotient(a, tau(a))
    pairs = [(x, y) for x, y in theta.as_pairs() if x < y]
    theta1 = Partition.from_pairs(qchi.size, [(pchi(x), pchi(y)) for x, y in pairs])
    theta2 = Partition.from_pairs(qtau.size, [(ptau(x), ptau(y)) for x, y in pairs])
    assert is_congruence(qchi, theta1) and is_congruence(qtau, theta2)
    for x in a.elements():
        for y in a.elements():
            both = (theta1.relates(pchi(x), pchi(y))
                    and theta2.relates(ptau(x), ptau(y)))
            if both != theta.relates(x, y):
                raise LemmaViolation(
                    f"split biconditional fails at ({a.names[x]}, {a.names[y]})",
                    witness=(x, y))
    return theta1, theta2


def _regular_split(a: FiniteAlgebra) -> tuple[list[int], list[int]]:
    regs = regular_elements(a)
    return (sorted(regs), [x for x in a.elements() if x not in regs])


def principal_congruence_nonflat(a: FiniteAlgebra, theta_r: Partition,
                                 x: int, y: int) -> Partition:
    """theta union the diagonal union {(x,y), (y,x), (x*,y*), (y*,x*)}, for
    irregular x and irregular y in the cloud of x v x.

    This is the least congruence containing theta_r and (x, y); both the
    compatibility and the minimality are re-checked.
    """
    if is_flat(a):
        raise FlatInput("the construction needs a non-flat algebra")
    regs, _ = _regular_split(a)
    rset = set(regs)
    if theta_r.size != len(regs):
        raise ValueError("partition size does not match the regular part")
    if not is_congruence(subalgebra(a, regs), theta_r):
        raise NotACongruence("theta_r is not a congruence on the regular part")
    if x in rset or y in rset:
        raise PreconditionViolated("x and y must be irregular")
    if y not in cloud_of(a, a.join[x][x]):
        raise PreconditionViolated("y must lie in the cloud of x v x")

    diag = {(e, e) for e in a.elements()}
    reg_pairs = {(regs[p], regs[q]) for p, q in theta_r.as_pairs()}
    extra = {(x, y), (y, x), (a.star[x], a.star[y]), (a.star[y], a.star[x])}
    union = diag | reg_pairs | extra
    result = Partition.from_pairs(a.size, union)
    assert result.as_pairs() == frozenset(union), "stated union is not transitive"
    assert is_congruence(a, result)
    assert result == generated_congruence(a, list(reg_pairs) + [(x, y)])
    return result


def principal_congruence_flat(a: FiniteAlgebra, x: int, y: int) -> Partition:
    """Congruence of a flat algebra merging two distinct irregular elements,
    built by the four-case union over which of x, y are star fixed.

    In three of the four cases this is the least congruence containing
    (x, y). When x, y, x*, y* are four distinct elements the union puts all
    four in one block, which is strictly coarser than the least congruence
    (the two-block relation {x,y}, {x*,y*} is already compatible); the
    generated closure is the minimal one in that case.
    """
    if not is_flat(a):
        raise NotFlat("the construction needs a flat algebra")
    if x == a.zero or y == a.zero:
        raise PreconditionViolated("x and y must be irregular")
    if x == y:
        raise PreconditionViolated("x and y must differ")
    sx, sy = a.star[x], a.star[y]
    if x == sx and y == sy:
        extra = {(x, y)}
    elif x == sx:
        extra = {(x, y), (sx, sy), (y, sy)}
    elif y == sy:
        extra = {(x, y), (sx, sy), (x, sx)}
    else:
        extra = {(x, y), (sx, sy), (x, sx), (y, sy), (x, sy), (sx, y)}
    union = {(e, e) for e in a.elements()}
    union.update(extra)
    union.update((q, p) for p, q in extra)
    result = Partition.from_pairs(a.size, union)
    assert result.as_pairs() == frozenset(union), "stated union is not transitive"
    assert is_congruence(a, result)
    gen = generated_congruence(a, [(x, y)])
    assert gen.refines(result)
    if len({x, y, sx, sy}) < 4:
        assert result == gen
    return result


def compose_flat(a: FiniteAlgebra, theta_ir: Partition) -> Partition:
    """Congruence of a flat algebra from a star-closed equivalence on the
    irregular elements: singleton {0} plus the given blocks."""
    if not is_flat(a):
        raise NotFlat("composition over irregulars needs a flat algebra")
    _, irs = _regular_split(a)
    if theta_ir.size != len(irs):
        raise ValueError("partition size does not match the irregular part")
    local = {g: i for i, g in enumerate(irs)}
    block_set = set(theta_ir.blocks)
    for block in theta_ir.blocks:
        image = tuple(sorted(local[a.star[irs[i]]] for i in block))
        if image not in block_set:
            raise NotStarClosed(f"star image of block {block} is not a block")
    blocks = [[a.zero]] + [[irs[i] for i in block] for block in theta_ir.blocks]
    result = Partition.from_blocks(a.size, blocks)
    assert is_congruence(a, result)
    return result


@dataclass(frozen=True)
class CongruenceDecomposition:
    """The three-part form of a congruence on a non-flat algebra.

    theta_r is a congruence on the regular subalgebra and theta_ir a
    star-closed equivalence on the irregular part, both over the local
    indices of their sorted carriers. linked (the set X) names the theta_r
    blocks tied to an irregular block by the injective map f, given as
    (regular block index, irregular block index) pairs. cross holds the
    mixed global pairs, both orientations.
    """

    theta_r: Partition
    theta_ir: Partition
    linked: frozenset[int]
    f: tuple[tuple[int, int], ...]
    cross: frozenset[tuple[int, int]]

    @property
    def f_map(self) -> dict[int, int]:
        return dict(self.f)


def compose_nonflat(a: FiniteAlgebra, d: CongruenceDecomposition) -> Partition:
    """Reassemble a congruence from its three parts, checking (C1)-(C3).

    (C1) theta_ir is star-closed and each block stays inside the cloud of a
         single theta_r class;
    (C2) the linked set is star-closed and f is injective, star-preserving,
         and sends a class to an irregular block meeting its clouds;
    (C3) the cross pairs are exactly (class x image) both ways.
    """
    if is_flat(a):
        raise FlatInput("composition with a cross part needs a non-flat algebra")
    regs, irs = _regular_split(a)
    if d.theta_r.size != len(regs) or d.theta_ir.size != len(irs):
        raise ValueError("partition sizes do not match the regular/irregular split")
    if not is_congruence(subalgebra(a, regs), d.theta_r):
        raise NotACongruence("theta_r is not a congruence on the regular part")
    local_r = {g: i for i, g in enumerate(regs)}
    local_ir = {g: i for i, g in enumerate(irs)}

    # (C1) star closure of theta_ir.
    ir_star_block: dict[int, int] = {}
    ir_blocks = set(d.theta_ir.blocks)
    for bi, block in enumerate(d.theta_ir.blocks):
        image = tuple(sorted(local_ir[a.star[irs[i]]] for i in block))
        if image not in ir_blocks:
            raise ConditionC1Violated(
                f"star image of irregular block {block} is not a block",
                witness=block)
        ir_star_block[bi] = d.theta_ir.block_index(image[0])
    # (C1) confinement to the clouds of one regular class.
    for block in d.theta_ir.blocks:
        classes = {d.theta_r.block_index(local_r[a.join[irs[i]][irs[i]]])
                   for i in block}
        if len(classes) > 1:
            raise ConditionC1Violated(
                "irregular block spans clouds of unrelated regular classes",
                witness=tuple(irs[i] for i in block))

    # (C2) linked set and block map.
    nblocks_r = len(d.theta_r.blocks)
    if any(not (0 <= b < nblocks_r) for b in d.linked):
        raise ConditionC2Violated("linked set names a nonexistent block")
    fmap = d.f_map
    if set(fmap) != set(d.linked):
        raise ConditionC2Violated("f must be defined exactly on the linked set")
    if len(set(fmap.values())) != len(fmap):
        raise ConditionC2Violated("f is not injective")
    reg_star_block = {
        bi: d.theta_r.block_index(local_r[a.star[regs[block[0]]]])
        for bi, block in enumerate(d.theta_r.blocks)}
    for bi in d.linked:
        if reg_star_block[bi] not in d.linked:
            raise ConditionC2Violated("linked set is not star-closed",
                                      witness=bi)
        if fmap[reg_star_block[bi]] != ir_star_block[fmap[bi]]:
            raise ConditionC2Violated(
                "f does not preserve star", witness=bi)
        class_clouds = set()
        for i in d.theta_r.blocks[bi]:
            class_clouds |= cloud_of(a, regs[i])
        image_glob = {irs[i] for i in d.theta_ir.blocks[fmap[bi]]}
        if not (image_glob & class_clouds):
            raise ConditionC2Violated(
                "image block misses the clouds of its class", witness=bi)

    # (C3) the cross part must match the display exactly.
    expected: set[tuple[int, int]] = set()
    for bi in d.linked:
        class_glob = [regs[i] for i in d.theta_r.blocks[bi]]
        image_glob = [irs[i] for i in d.theta_ir.blocks[fmap[bi]]]
        for r in class_glob:
            for w in image_glob:
                expected.add((r, w))
                expected.add((w, r))
    if d.cross != frozenset(expected):
        diff = sorted(d.cross.symmetric_difference(expected))
        raise ConditionC3Violated("cross part differs from the (C3) display",
                                  witness=diff[0] if diff else None)

    union = {(e, e) for e in a.elements()}
    union.update((regs[p], regs[q]) for p, q in d.theta_r.as_pairs())
    union.update((irs[p], irs[q]) for p, q in d.theta_ir.as_pairs())
    union.update(expected)
    assert not pair_closure_gaps(a.size, union), "assembled union not transitive"
    result = Partition.from_pairs(a.size, union)
    assert is_congruence(a, result)
    return result


def decompose(a: FiniteAlgebra, theta: Partition) -> CongruenceDecomposition:
    """Split a congruence of a non-flat algebra into its three parts.

    When several irregular witnesses qualify for a linked class the least
    index is chosen; the image block does not depend on the choice. The
    round trip through compose_nonflat is checked before returning.
    """
    if is_flat(a):
        raise FlatInput("decomposition is defined for non-flat algebras")
    if not is_congruence(a, theta):
        raise NotACongruence("decompose requires a congruence")
    regs, irs = _regular_split(a)
    rset = set(regs)
    theta_r = theta.restrict(regs)
    theta_ir = theta.restrict(irs)
    local_ir = {g: i for i, g in enumerate(irs)}

    linked = set()
    fmap = {}
    for bi, block in enumerate(theta_r.blocks):
        witnesses = [w for w in irs
                     if a.join[w][w] in {regs[i] for i in block}
                     and theta.relates(a.join[w][w], w)]
        if witnesses:
            linked.add(bi)
            fmap[bi] = theta_ir.block_index(local_ir[min(witnesses)])
    cross = frozenset(
        (p, q) for p, q in theta.as_pairs()
        if (p in rset) != (q in rset))

    d = CongruenceDecomposition(
        theta_r=theta_r,
        theta_ir=theta_ir,
        linked=frozenset(linked),
        f=tuple(sorted(fmap.items())),
        cross=cross,
    )
    assert compose_nonflat(a, d) == theta, "decomposition failed to round-trip"
    return d


__all__ = [
    "CongruenceDecomposition",
    "all_congruences",
    "compose_flat",
    "compose_nonflat",
    "decompose",
    "extend_from_subalgebra",
    "generated_congruence",
    "is_congruence",
    "principal_congruence_flat",
    "principal_congruence_nonflat",
    "split_congruence",
    "subalgebra",
    "subalgebras",
]
