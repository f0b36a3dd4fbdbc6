"""Partitions, congruence generation and factor congruences.

Congruences are generated by closing a union-find structure under unary
polynomial translations: whenever ``a`` and ``b`` are merged, so are
``F(.., a, ..)`` and ``F(.., b, ..)`` for every operation, position and
choice of the remaining arguments.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .algebra import (
    FiniteAlgebra,
    Homomorphism,
    direct_product,
    encode,
    is_homomorphism,
    quotient,
)
from .config import check_size
from .errors import NotAHomomorphism, VerificationFailed


def _normalize(labels) -> tuple[int, ...]:
    first: dict = {}
    return tuple(first.setdefault(l, i) for i, l in enumerate(labels))


@dataclass(frozen=True)
class Partition:
    """Equivalence relation on ``0..n-1`` stored as block-minimum labels."""

    labels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", _normalize(self.labels))

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    @classmethod
    def total(cls, n):
        return cls((0,) * n)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n=None):
        blocks = [sorted(b) for b in blocks]
        n = n if n is not None else sum(len(b) for b in blocks)
        labels = list(range(n))
        for b in blocks:
            for x in b:
                labels[x] = b[0]
        return cls(tuple(labels))

    @property
    def size(self):
        return len(self.labels)

    @property
    def blocks(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x, l in enumerate(self.labels):
            out.setdefault(l, []).append(x)
        return list(out.values())

    @property
    def representatives(self) -> list[int]:
        return [x for x, l in enumerate(self.labels) if l == x]

    @property
    def num_blocks(self):
        return len(self.representatives)

    def related(self, a, b) -> bool:
        return self.labels[a] == self.labels[b]

    def block_of(self, a) -> list[int]:
        return [x for x, l in enumerate(self.labels) if l == self.labels[a]]

    def matrix(self) -> np.ndarray:
        lab = np.asarray(self.labels)
        return lab[:, None] == lab[None, :]

    def pairs(self):
        return [(a, b) for blk in self.blocks for a in blk for b in blk]

    def __le__(self, other):
        """Refinement order (inclusion of relations)."""
        return all(other.labels[x] == other.labels[l] for x, l in enumerate(self.labels))

    def __lt__(self, other):
        return self != other and self <= other

    @property
    def is_identity(self):
        return self.num_blocks == self.size

    @property
    def is_total(self):
        return self.num_blocks <= 1

    def to_json(self):
        return {"blocks": self.blocks}

    @classmethod
    def from_json(cls, data, n=None):
        return cls.from_blocks(data["blocks"], n)

    def __str__(self):
        return "|".join(",".join(map(str, b)) for b in self.blocks)


@dataclass(frozen=True)
class FactorPair:
    theta: Partition
    theta_star: Partition


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def partition(self):
        return Partition(tuple(self.find(x) for x in range(len(self.parent))))


def is_congruence(alg: FiniteAlgebra, p: Partition) -> bool:
    if p.size != alg.size:
        return False
    lab = np.asarray(p.labels)
    for symbol, arity in alg.signature:
        if arity == 0:
            continue
        t = alg.tables[symbol]
        # compatibility in each argument separately suffices
        for pos in range(arity):
            moved = np.take(t, lab, axis=pos)
            if not np.array_equal(lab[moved], lab[t]):
                return False
    return True


def cg(alg: FiniteAlgebra, pairs: Iterable[tuple[int, int]]) -> Partition:
    """Least congruence containing ``pairs``."""
    uf = _UnionFind(alg.size)
    work = []
    for a, b in pairs:
        if uf.union(int(a), int(b)):
            work.append((int(a), int(b)))
    ops = [(alg.tables[s], ar) for s, ar in alg.signature if ar > 0]
    while work:
        a, b = work.pop()
        for t, arity in ops:
            for pos in range(arity):
                left = np.take(t, a, axis=pos).ravel()
                right = np.take(t, b, axis=pos).ravel()
                for x, y in zip(left.tolist(), right.tolist()):
                    if x != y and uf.union(x, y):
                        work.append((x, y))
    return uf.partition()


def _equivalence_join(p: Partition, q: Partition) -> Partition:
    uf = _UnionFind(p.size)
    for x in range(p.size):
        uf.union(x, p.labels[x])
        uf.union(x, q.labels[x])
    return uf.partition()


def meet(p: Partition, q: Partition) -> Partition:
    return Partition(tuple(zip(p.labels, q.labels)))


def join(alg: FiniteAlgebra, p: Partition, q: Partition) -> Partition:
    gens = [(x, p.labels[x]) for x in range(p.size)] + [(x, q.labels[x]) for x in range(q.size)]
    return cg(alg, gens)


def compose(p: Partition, q: Partition) -> np.ndarray:
    """Relational composite ``p o q`` = {(a, c) : a p b and b q c for some b}, as a boolean matrix."""
    return (p.matrix().astype(np.int64) @ q.matrix().astype(np.int64)) > 0


def permute(p: Partition, q: Partition) -> bool:
    return bool(np.array_equal(compose(p, q), compose(q, p)))


def kernel(h: Homomorphism) -> Partition:
    if not is_homomorphism(h):
        raise NotAHomomorphism(f"map {h.source.name} -> {h.target.name} is not a homomorphism")
    return Partition(h.map)


@functools.lru_cache(maxsize=512)
def _congruence_lattice(alg: FiniteAlgebra) -> tuple[Partition, ...]:
    n = alg.size
    principal = {cg(alg, [(a, b)]) for a in range(n) for b in range(a + 1, n)}
    found = {Partition.identity(n)} | principal
    frontier = set(found)
    while frontier:
        new = set()
        for p in frontier:
            for q in principal:
                r = _equivalence_join(p, q)
                if r not in found:
                    new.add(r)
        found |= new
        frontier = new
    return tuple(sorted(found, key=lambda p: (-p.num_blocks, p.labels)))


def all_congruences(alg: FiniteAlgebra, max_size=None) -> list[Partition]:
    """Con(alg): every join of principal congruences, finest first."""
    check_size(alg, max_size)
    return list(_congruence_lattice(alg))


def _is_factor_pair(n, p, q) -> bool:
    if p.num_blocks * q.num_blocks != n:
        return False
    if not meet(p, q).is_identity:
        return False
    return bool(compose(p, q).all() and compose(q, p).all())


@functools.lru_cache(maxsize=512)
def _factor_pairs(alg: FiniteAlgebra) -> tuple[FactorPair, ...]:
    cons = _congruence_lattice(alg)
    return tuple(
        FactorPair(p, q) for p in cons for q in cons if _is_factor_pair(alg.size, p, q)
    )


def factor_pairs(alg: FiniteAlgebra, max_size=None) -> list[FactorPair]:
    """All ordered complementary pairs of permuting factor congruences."""
    check_size(alg, max_size)
    return list(_factor_pairs(alg))


def is_factor_pair(alg: FiniteAlgebra, p: Partition, q: Partition) -> bool:
    return is_congruence(alg, p) and is_congruence(alg, q) and _is_factor_pair(alg.size, p, q)


def natural_map(alg: FiniteAlgebra, thetas: Sequence[Partition]):
    """``a -> (a/theta_1, ..., a/theta_k)`` into the product of the quotients."""
    quotients = [quotient(alg, t) for t in thetas]
    product, _ = direct_product([q for q, _ in quotients])
    sizes = [q.size for q, _ in quotients]
    m = tuple(encode([nu(a) for _, nu in quotients], sizes) for a in range(alg.size))
    return Homomorphism(alg, product, m)


def check_fhp_pair(a: FiniteAlgebra, b: FiniteAlgebra, max_size=None):
    """First congruence of ``a x b`` that is not a product congruence, or None.

    Joins of product congruences are product congruences (alternating
    composites of products are products), so only the principal
    congruences ``Cg(p, q)`` need inspecting, in lexicographic order of
    ``(p, q)``.
    """
    P, _ = direct_product([a, b])
    check_size(P, max_size, "the product congruence lattice")
    na, nb = a.size, b.size
    seen = set()
    for p in range(P.size):
        for q in range(p + 1, P.size):
            theta = cg(P, [(p, q)])
            if theta in seen:
                continue
            seen.add(theta)
            R = theta.matrix().reshape(na, nb, na, nb)
            R1 = R.any(axis=(1, 3))
            R2 = R.any(axis=(0, 2))
            if not np.array_equal(R, R1[:, None, :, None] & R2[None, :, None, :]):
                return theta
    return None


def pushout_quotient(f: Homomorphism, pairs: Sequence[tuple[int, int]]):
    """``B/Cg(f(pairs))`` and the induced map ``A/Cg(pairs) -> B/Cg(f(pairs))``.

    The mediating map is checked to be a well defined homomorphism making
    the square with the canonical maps commute.
    """
    if not is_homomorphism(f):
        raise NotAHomomorphism(f"map {f.source.name} -> {f.target.name} is not a homomorphism")
    A, B = f.source, f.target
    QA, nu = quotient(A, cg(A, pairs))
    QB, mu = quotient(B, cg(B, [(f(a), f(b)) for a, b in pairs]))
    psi = [-1] * QA.size
    for a in range(A.size):
        image = mu(f(a))
        if psi[nu(a)] not in (-1, image):
            raise VerificationFailed("induced map on the quotient is not well defined")
        psi[nu(a)] = image
    mediating = Homomorphism(QA, QB, tuple(psi))
    if not is_homomorphism(mediating):
        raise VerificationFailed("induced map on the quotient is not a homomorphism")
    return QB, mediating


def codisjointness_check(a: FiniteAlgebra, b: FiniteAlgebra, ctx=None) -> bool:
    """Whether ``a x b`` collapses when both projections are identified.

    With a context, additionally check that identifying the zero and one
    witnesses collapses each factor, which is what makes the pushout of the
    two projections trivial.
    """
    P, (p0, p1) = direct_product([a, b])
    glued = join(P, kernel(p0), kernel(p1))
    if quotient(P, glued)[0].size != 1:
        return False
    if ctx is None:
        return True
    for alg in (a, b):
        zs, os_ = ctx.zero_values(alg), ctx.one_values(alg)
        if not cg(alg, list(zip(zs, os_))).is_total:
            return False
    return True
