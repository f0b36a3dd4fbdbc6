"""Builders for the small algebras, maps and contexts used throughout.

Keys returned by :func:`keys` name every algebra and homomorphism that
:func:`build` can produce; algebra names equal their keys, so homomorphism
JSON can refer to them.
"""
from __future__ import annotations

import itertools
import re

import numpy as np

from .algebra import FiniteAlgebra, Homomorphism, Signature, direct_product, make_algebra
from .errors import InvalidTable
from .pierce import CentralContext, PierceContext

LATTICE_U = "(meet (join x z1) (join y w1))"
RING_U = "(add x (mul z1 (add y (neg x))))"
IMPLICATION_U = "(join (meet x (imp z1 (zero))) (meet y z1))"

MAX_TABLE_ENTRIES = 2_000_000


def chain_lattice(k: int, name=None) -> FiniteAlgebra:
    """Bounded chain ``0 < 1 < ... < k-1`` with join, meet, zero, one."""
    if k < 1:
        raise ValueError("k must be positive")
    return make_algebra(
        name or f"chain-{k}",
        k,
        {
            "join": (2, max),
            "meet": (2, min),
            "zero": (0, [0]),
            "one": (0, [k - 1]),
        },
    )


def c_k_implication(k: int, name=None) -> FiniteAlgebra:
    """The k-chain expanded with ``x => y`` (top when ``x <= y``, bottom otherwise)."""
    if k < 2:
        raise ValueError("k must be at least 2")
    top = k - 1
    return make_algebra(
        name or f"implication-{k}",
        k,
        {
            "join": (2, max),
            "meet": (2, min),
            "imp": (2, lambda x, y: top if x <= y else 0),
            "zero": (0, [0]),
            "one": (0, [top]),
        },
    )


def g_k(k: int, max_arity=None, name=None) -> FiniteAlgebra:
    """``C_k x C_k`` (with implication) plus ``f_2 .. f_max_arity``.

    ``f_k`` is bottom on tuples of pairwise distinct arguments and top
    otherwise; every other ``f_n`` is constantly top.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    max_arity = k if max_arity is None else max_arity
    if max_arity < 2:
        raise ValueError("max_arity must be at least 2")
    base, _ = direct_product([c_k_implication(k), c_k_implication(k)])
    n = base.size
    if n ** max_arity > MAX_TABLE_ENTRIES:
        raise InvalidTable(f"f_{max_arity} on {n} elements needs {n ** max_arity} table entries")
    bottom, top = base.constant("zero"), base.constant("one")
    symbols = list(base.signature.symbols)
    tables = dict(base.tables)
    for arity in range(2, max_arity + 1):
        if arity == k:
            table = np.full((n,) * arity, top, dtype=np.intp)
            for args in itertools.permutations(range(n), arity):
                table[args] = bottom
        else:
            table = np.full((n,) * arity, top, dtype=np.intp)
        symbols.append((f"f{arity}", arity))
        tables[f"f{arity}"] = table
    return FiniteAlgebra(name or f"g-{k}", n, Signature(tuple(symbols)), tables)


# element order 0, a, b, c, 1
M3_ORDER = ("0", "a", "b", "c", "1")


def m3_lattice(name="m3") -> FiniteAlgebra:
    """The diamond: bottom, top and three pairwise incomparable atoms."""
    bottom, top = 0, 4

    def leq(x, y):
        return x == y or x == bottom or y == top

    def lub(x, y):
        return x if leq(y, x) else y if leq(x, y) else top

    def glb(x, y):
        return x if leq(x, y) else y if leq(y, x) else bottom

    return make_algebra(
        name, 5, {"join": (2, lub), "meet": (2, glb), "zero": (0, [bottom]), "one": (0, [top])}
    )


def join_semilattice_cube(n: int, name=None) -> FiniteAlgebra:
    """``2^n`` as a bounded join semilattice (join, zero, one)."""
    two = make_algebra("semilattice-2", 2, {"join": (2, max), "zero": (0, [0]), "one": (0, [1])})
    if n == 1:
        return two.renamed(name or "semilattice-2")
    cube, _ = direct_product([two] * n)
    return cube.renamed(name or f"semilattice-2^{n}")


def boolean_lattice(n: int, name=None) -> FiniteAlgebra:
    """``2^n`` as a bounded distributive lattice."""
    if n == 1:
        return chain_lattice(2, name)
    cube, _ = direct_product([chain_lattice(2)] * n)
    return cube.renamed(name or f"lattice-2^{n}")


def z_n_ring(n: int, name=None) -> FiniteAlgebra:
    """Commutative ring with unit on ``Z_n``."""
    return make_algebra(
        name or f"z-{n}",
        n,
        {
            "add": (2, lambda x, y: (x + y) % n),
            "mul": (2, lambda x, y: (x * y) % n),
            "neg": (1, lambda x: (-x) % n),
            "zero": (0, [0]),
            "one": (0, [1 % n]),
        },
    )


# 00->000, 01->001, 10->011, 11->111 does not preserve joins:
# 001 v 011 = 011, not 111.
ALPHA_PRINTED_MAP = (0b000, 0b001, 0b011, 0b111)
ALPHA_MAP = (0b000, 0b101, 0b011, 0b111)


def alpha_hom() -> Homomorphism:
    """``2^2 -> 2^3`` on bounded join semilattices: 00->000, 01->101, 10->011, 11->111.

    Every element of both cubes is central and the map preserves that, but
    the complementary pair 01, 10 lands on 101, 011, which are not
    complements.
    """
    A, B = join_semilattice_cube(2), join_semilattice_cube(3)
    return Homomorphism(A, B, ALPHA_MAP)


def inclusion_c_into_d() -> Homomorphism:
    """``2 x 2`` into the diamond, sending the two atoms to ``a`` and ``b``."""
    C, D = boolean_lattice(2), m3_lattice()
    a, b, top = M3_ORDER.index("a"), M3_ORDER.index("b"), M3_ORDER.index("1")
    return Homomorphism(C, D, (0, a, b, top))


def l01_context(sig=None, trusted=False) -> PierceContext:
    """Bounded (distributive) lattices: ``U = (x v z) ^ (y v w)``."""
    sig = sig or chain_lattice(2).signature
    return PierceContext.from_strings(sig, ["(zero)"], ["(one)"], LATTICE_U, None, trusted)


def semilattice_context(sig=None) -> CentralContext:
    """Bounded join semilattices: constants only, no decomposition term."""
    sig = sig or join_semilattice_cube(1).signature
    return CentralContext.from_strings(sig, ["(zero)"], ["(one)"])


def ring_context(sig=None, trusted=False) -> PierceContext:
    """Rings with unit: ``u = x + z(y - x)``, also used as ``U``."""
    sig = sig or z_n_ring(2).signature
    return PierceContext.from_strings(sig, ["(zero)"], ["(one)"], RING_U, RING_U, trusted)


def implication_context(sig=None, trusted=False) -> PierceContext:
    """Chains with implication: lattice ``U`` and the if-then-else ``u``."""
    sig = sig or c_k_implication(2).signature
    return PierceContext.from_strings(sig, ["(zero)"], ["(one)"], LATTICE_U, IMPLICATION_U, trusted)


def context_for(alg: FiniteAlgebra):
    """The standard context matching an algebra's signature."""
    names = set(alg.signature.names)
    if {"add", "mul"} <= names:
        return ring_context(alg.signature)
    if "imp" in names:
        return implication_context(alg.signature)
    if "meet" in names:
        return l01_context(alg.signature)
    return semilattice_context(alg.signature)


_PATTERNS = [
    (r"chain-(\d+)", lambda m: chain_lattice(int(m[1]))),
    (r"lattice-2\^(\d+)", lambda m: boolean_lattice(int(m[1]))),
    (r"implication-(\d+)", lambda m: c_k_implication(int(m[1]))),
    (r"g-(\d+)", lambda m: g_k(int(m[1]))),
    (r"g-(\d+)-(\d+)", lambda m: g_k(int(m[1]), int(m[2]), name=m[0])),
    (r"semilattice-2", lambda m: join_semilattice_cube(1)),
    (r"semilattice-2\^(\d+)", lambda m: join_semilattice_cube(int(m[1]))),
    (r"z-(\d+)", lambda m: z_n_ring(int(m[1]))),
    (r"m3", lambda m: m3_lattice()),
    (r"alpha", lambda m: alpha_hom()),
    (r"c-into-d", lambda m: inclusion_c_into_d()),
]

_LISTED = [
    "chain-1", "chain-2", "chain-3", "chain-4", "lattice-2^2", "lattice-2^3", "m3",
    "implication-2", "implication-3", "implication-4", "g-2", "g-3",
    "semilattice-2", "semilattice-2^2", "semilattice-2^3",
    "z-2", "z-3", "z-4", "z-6", "alpha", "c-into-d",
]


def keys() -> list[str]:
    """Representative keys; the parametrised families accept any size."""
    return list(_LISTED)


def build(key: str):
    for pattern, builder in _PATTERNS:
        m = re.fullmatch(pattern, key)
        if m:
            obj = builder(m)
            if isinstance(obj, FiniteAlgebra) and obj.name != key:
                obj = obj.renamed(key)
            return obj
    raise KeyError(f"unknown corpus key {key!r}")


def pierce_algebras(max_size=8) -> list[FiniteAlgebra]:
    """Corpus members of declared Pierce varieties, up to ``max_size`` elements."""
    out = [chain_lattice(k) for k in range(1, 5)]
    out += [boolean_lattice(2), boolean_lattice(3), m3_lattice()]
    out.append(direct_product([chain_lattice(2), chain_lattice(3)])[0].renamed("chain-2xchain-3"))
    out += [c_k_implication(k) for k in range(2, 5)]
    out.append(direct_product([c_k_implication(2), c_k_implication(3)])[0].renamed("implication-2x3"))
    out.append(g_k(2))
    out += [z_n_ring(n) for n in range(1, 9)]
    return [a for a in out if a.size <= max_size]
