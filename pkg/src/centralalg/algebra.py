"""Finite algebras as operation tables, with terms, products, quotients and maps.

Elements of an algebra of size ``n`` are the integers ``0..n-1``.  An
operation of arity ``k`` is stored as a read-only numpy array of shape
``(n,) * k``; its C-order flattening is the documented flat table, so the
entry for ``(a1, ..., ak)`` sits at ``sum(aj * n**(k-j))``.

Identities are only ever checked on a finite list of algebras.  This is
sound for the variety those algebras generate because identities are
preserved by homomorphic images, subalgebras and products.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import (
    InvalidTable,
    NotACongruence,
    NotAHomomorphism,
    SignatureMismatch,
    UnboundVariable,
)
from .terms import App, Term, Var, check_term, variables


@dataclass(frozen=True)
class Signature:
    symbols: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [s for s, _ in self.symbols]
        if len(set(names)) != len(names):
            raise SignatureMismatch(f"duplicate operation symbols in {names}")
        for name, arity in self.symbols:
            if not isinstance(arity, int) or arity < 0:
                raise SignatureMismatch(f"bad arity {arity!r} for {name}")
        object.__setattr__(self, "_arity", dict(self.symbols))

    @classmethod
    def of(cls, *symbols):
        return cls(tuple((str(s), int(a)) for s, a in symbols))

    def arity(self, symbol: str) -> int:
        return self._arity[symbol]

    def __contains__(self, symbol):
        return symbol in self._arity

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    @property
    def names(self):
        return [s for s, _ in self.symbols]

    @property
    def constants(self):
        return [s for s, a in self.symbols if a == 0]


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    name: str
    size: int
    signature: Signature
    tables: Mapping[str, np.ndarray] = field(repr=False)

    def __post_init__(self):
        if self.size < 1:
            raise InvalidTable("an algebra needs at least one element")
        frozen = {}
        for symbol, arity in self.signature:
            if symbol not in self.tables:
                raise InvalidTable(f"missing table for {symbol}")
            table = np.asarray(self.tables[symbol], dtype=np.intp)
            if table.size != self.size ** arity:
                raise InvalidTable(
                    f"{symbol}: table has {table.size} entries, expected {self.size}**{arity}"
                )
            table = table.reshape((self.size,) * arity).copy()
            if table.size and (table.min() < 0 or table.max() >= self.size):
                raise InvalidTable(f"{symbol}: entries must lie in 0..{self.size - 1}")
            table.flags.writeable = False
            frozen[symbol] = table
        extra = set(self.tables) - set(self.signature.names)
        if extra:
            raise InvalidTable(f"tables for symbols outside the signature: {sorted(extra)}")
        object.__setattr__(self, "tables", frozen)

    def __repr__(self):
        ops = ", ".join(f"{s}/{a}" for s, a in self.signature)
        return f"FiniteAlgebra({self.name!r}, size={self.size}, ops=[{ops}])"

    @property
    def elements(self):
        return range(self.size)

    def op(self, symbol, *args):
        return int(self.tables[symbol][tuple(args)])

    def constant(self, symbol):
        return int(self.tables[symbol][()])

    def renamed(self, name):
        return FiniteAlgebra(name, self.size, self.signature, self.tables)

    def same_structure(self, other) -> bool:
        return (
            self.size == other.size
            and self.signature == other.signature
            and all(np.array_equal(self.tables[s], other.tables[s]) for s in self.signature.names)
        )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "size": self.size,
            "operations": [
                {"symbol": s, "arity": a, "table": [int(v) for v in self.tables[s].ravel()]}
                for s, a in self.signature
            ],
        }

    @classmethod
    def from_json(cls, data) -> "FiniteAlgebra":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            ops = data["operations"]
            sig = Signature.of(*[(o["symbol"], o["arity"]) for o in ops])
            tables = {o["symbol"]: np.asarray(o["table"], dtype=np.intp) for o in ops}
            return cls(str(data["name"]), int(data["size"]), sig, tables)
        except (KeyError, TypeError) as exc:
            raise InvalidTable(f"malformed algebra JSON: {exc}") from exc


def make_algebra(name, size, operations: Mapping[str, tuple[int, object]]) -> FiniteAlgebra:
    """Build an algebra from ``{symbol: (arity, table_or_function)}``.

    A callable is tabulated over all argument tuples; anything else is taken
    as a (flat or shaped) table.
    """
    sig = Signature.of(*[(s, a) for s, (a, _) in operations.items()])
    tables = {}
    for symbol, (arity, spec) in operations.items():
        if callable(spec):
            tables[symbol] = np.array(
                [spec(*args) for args in itertools.product(range(size), repeat=arity)],
                dtype=np.intp,
            )
        else:
            tables[symbol] = np.asarray(spec, dtype=np.intp)
    return FiniteAlgebra(name, size, sig, tables)


@dataclass(frozen=True, eq=False)
class Homomorphism:
    source: FiniteAlgebra
    target: FiniteAlgebra
    map: tuple[int, ...]

    def __post_init__(self):
        _same_signature(self.source, self.target)
        m = tuple(int(v) for v in self.map)
        if len(m) != self.source.size:
            raise NotAHomomorphism(f"map has length {len(m)}, source has {self.source.size} elements")
        if any(v < 0 or v >= self.target.size for v in m):
            raise NotAHomomorphism(f"map values must lie in 0..{self.target.size - 1}")
        object.__setattr__(self, "map", m)

    def __call__(self, x):
        return self.map[x]

    def apply(self, xs: Iterable[int]) -> tuple[int, ...]:
        return tuple(self.map[x] for x in xs)

    def then(self, other: "Homomorphism") -> "Homomorphism":
        """Composite ``other . self``."""
        return Homomorphism(self.source, other.target, tuple(other.map[v] for v in self.map))

    @property
    def is_injective(self):
        return len(set(self.map)) == len(self.map)

    @property
    def is_surjective(self):
        return set(self.map) == set(range(self.target.size))

    def to_json(self):
        return {"source": self.source.name, "target": self.target.name, "map": list(self.map)}

    @classmethod
    def from_json(cls, data, algebras: Mapping[str, FiniteAlgebra]):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(algebras[data["source"]], algebras[data["target"]], tuple(data["map"]))


def identity_hom(alg):
    return Homomorphism(alg, alg, tuple(range(alg.size)))


# -- term evaluation ---------------------------------------------------------

def _evaluate(alg, term, env):
    if isinstance(term, Var):
        try:
            return env[term.name]
        except KeyError:
            raise UnboundVariable(f"variable {term.name!r} is not bound") from None
    table = alg.tables.get(term.symbol)
    if table is None or table.ndim != len(term.args):
        check_term(term, alg.signature)
    if not term.args:
        return table[()]
    return table[tuple(_evaluate(alg, a, env) for a in term.args)]


def eval_term(alg: FiniteAlgebra, t: Term, env: Mapping[str, int]) -> int:
    """Value of ``t`` in ``alg`` under the assignment ``env``."""
    return int(_evaluate(alg, t, env))


def term_operation(alg: FiniteAlgebra, t: Term, var_order: Sequence[str], fixed=None) -> np.ndarray:
    """The term operation of ``t`` as an array of shape ``(n,) * len(var_order)``.

    Variables in ``fixed`` are held at the given elements.
    """
    k = len(var_order)
    env = dict(fixed or {})
    for j, name in enumerate(var_order):
        shape = [1] * k
        shape[j] = alg.size
        env[name] = np.arange(alg.size).reshape(shape)
    out = np.asarray(_evaluate(alg, t, env))
    return np.broadcast_to(out, (alg.size,) * k)


def check_identity(algs: Sequence[FiniteAlgebra], lhs: Term, rhs: Term):
    """First assignment falsifying ``lhs = rhs``, as ``(algebra index, env)``.

    Algebras are tried in order and assignments in mixed-radix order over the
    variables (first occurrence, lhs before rhs).  Returns None when the
    identity holds in every algebra.
    """
    names = variables(lhs, rhs)
    for idx, alg in enumerate(algs):
        check_term(lhs, alg.signature)
        check_term(rhs, alg.signature)
        left = term_operation(alg, lhs, names)
        right = term_operation(alg, rhs, names)
        bad = left != right
        if bad.any():
            where = np.unravel_index(int(np.argmax(bad)), bad.shape) if names else ()
            return idx, {name: int(v) for name, v in zip(names, where)}
    return None


# -- maps --------------------------------------------------------------------

def _same_signature(a, b):
    if a.signature != b.signature:
        raise SignatureMismatch(f"{a.name} and {b.name} have different signatures")


def is_homomorphism(h: Homomorphism) -> bool:
    a, b = h.source, h.target
    if a.signature != b.signature:
        return False
    m = np.asarray(h.map, dtype=np.intp)
    for symbol, arity in a.signature:
        fa, fb = a.tables[symbol], b.tables[symbol]
        if arity == 0:
            if m[fa[()]] != fb[()]:
                return False
            continue
        if not np.array_equal(m[fa], fb[np.ix_(*[m] * arity)]):
            return False
    return True


def _hom_search(a, b, injective) -> Iterator[tuple[int, ...]]:
    """Homomorphisms a -> b in lexicographic order of their maps.

    Depth-first over the least unassigned element, with forward propagation:
    once all arguments of a basic operation are mapped, the image of its
    value is forced.
    """
    _same_signature(a, b)
    if injective and a.size > b.size:
        return
    ops = [(a.tables[s], b.tables[s], ar) for s, ar in a.signature if ar > 0]
    h = [-1] * a.size
    used = [False] * b.size

    def assign(h, used, x, v, trail):
        if h[x] != -1:
            return h[x] == v
        if injective and used[v]:
            return False
        h[x] = v
        used[v] = True
        trail.append(x)
        return True

    def propagate(h, used, queue, trail):
        while queue:
            x = queue.pop()
            assigned = [y for y in range(a.size) if h[y] != -1]
            for fa, fb, arity in ops:
                for pos in range(arity):
                    for rest in itertools.product(assigned, repeat=arity - 1):
                        args = rest[:pos] + (x,) + rest[pos:]
                        r = int(fa[args])
                        t = int(fb[tuple(h[y] for y in args)])
                        if h[r] == -1:
                            if not assign(h, used, r, t, trail):
                                return False
                            queue.append(r)
                        elif h[r] != t:
                            return False
        return True

    trail: list[int] = []
    for s, ar in a.signature:
        if ar == 0 and not assign(h, used, a.constant(s), b.constant(s), trail):
            return
    if not propagate(h, used, list(trail), trail):
        return

    def dfs(h, used):
        try:
            x = h.index(-1)
        except ValueError:
            yield tuple(h)
            return
        for v in range(b.size):
            if injective and used[v]:
                continue
            h2, used2, trail2 = list(h), list(used), []
            assign(h2, used2, x, v, trail2)
            if propagate(h2, used2, [x], trail2):
                yield from dfs(h2, used2)

    yield from dfs(h, used)


def find_isomorphism(a: FiniteAlgebra, b: FiniteAlgebra):
    """Lexicographically least isomorphism ``a -> b`` as a tuple, or None."""
    _same_signature(a, b)
    if a.size != b.size:
        return None
    return next(_hom_search(a, b, injective=True), None)


def is_isomorphic(a, b) -> bool:
    return a.signature == b.signature and find_isomorphism(a, b) is not None


def homomorphisms(a: FiniteAlgebra, b: FiniteAlgebra) -> Iterator[Homomorphism]:
    """Every homomorphism ``a -> b``, in lexicographic order."""
    for m in _hom_search(a, b, injective=False):
        yield Homomorphism(a, b, m)


# -- constructions -----------------------------------------------------------

def encode(coords: Sequence[int], sizes: Sequence[int]) -> int:
    """Mixed-radix code of a tuple, first coordinate most significant."""
    x = 0
    for c, s in zip(coords, sizes):
        x = x * s + c
    return x


def decode(x: int, sizes: Sequence[int]) -> tuple[int, ...]:
    out = []
    for s in reversed(sizes):
        x, c = divmod(x, s)
        out.append(c)
    return tuple(reversed(out))


def direct_product(factors: Sequence[FiniteAlgebra], name=None):
    """Product algebra and its coordinate projections."""
    if not factors:
        raise ValueError("direct_product needs at least one factor")
    sig = factors[0].signature
    for f in factors[1:]:
        _same_signature(factors[0], f)
    sizes = [f.size for f in factors]
    n = prod(sizes)
    coords = np.array([decode(x, sizes) for x in range(n)], dtype=np.intp).reshape(n, len(factors))
    weights = [prod(sizes[j + 1:]) for j in range(len(factors))]
    tables = {}
    for symbol, arity in sig:
        table = np.zeros((n,) * arity, dtype=np.intp)
        for j, f in enumerate(factors):
            cj = coords[:, j]
            part = f.tables[symbol][()] if arity == 0 else f.tables[symbol][np.ix_(*[cj] * arity)]
            table = table + weights[j] * part
        tables[symbol] = table
    name = name or "x".join(f.name for f in factors)
    P = FiniteAlgebra(name, n, sig, tables)
    projections = [Homomorphism(P, f, tuple(int(v) for v in coords[:, j])) for j, f in enumerate(factors)]
    return P, projections


def quotient(alg: FiniteAlgebra, theta, name=None):
    """Quotient by a congruence; blocks are numbered in order of their least member."""
    from .congruences import is_congruence

    if theta.size != alg.size or not is_congruence(alg, theta):
        raise NotACongruence(f"partition is not a congruence of {alg.name}")
    reps = np.array(theta.representatives, dtype=np.intp)
    index = {int(r): i for i, r in enumerate(reps)}
    label = np.array([index[l] for l in theta.labels], dtype=np.intp)
    tables = {}
    for symbol, arity in alg.signature:
        t = alg.tables[symbol]
        tables[symbol] = label[t[()]] if arity == 0 else label[t[np.ix_(*[reps] * arity)]]
    Q = FiniteAlgebra(name or f"{alg.name}/~", len(reps), alg.signature, tables)
    return Q, Homomorphism(alg, Q, tuple(int(v) for v in label))


def subalgebra_generated(alg: FiniteAlgebra, seed: Iterable[int]) -> frozenset[int]:
    """Least subuniverse containing ``seed`` (constants included)."""
    current = set(int(s) for s in seed)
    for s in alg.signature.constants:
        current.add(alg.constant(s))
    ops = [(alg.tables[s], a) for s, a in alg.signature if a > 0]
    while True:
        members = np.array(sorted(current), dtype=np.intp)
        grown = set(current)
        if members.size:
            for table, arity in ops:
                grown.update(np.unique(table[np.ix_(*[members] * arity)]).tolist())
        if grown == current:
            return frozenset(current)
        current = grown


def subalgebra(alg: FiniteAlgebra, universe: Iterable[int], name=None):
    """Subalgebra on a closed subset, renumbered ascending, with its inclusion map."""
    members = sorted(set(int(u) for u in universe))
    if not members or subalgebra_generated(alg, members) != frozenset(members):
        raise ValueError(f"{members} is not a nonempty subuniverse of {alg.name}")
    pos = np.full(alg.size, -1, dtype=np.intp)
    pos[members] = np.arange(len(members))
    m = np.array(members, dtype=np.intp)
    tables = {}
    for symbol, arity in alg.signature:
        t = alg.tables[symbol]
        tables[symbol] = pos[t[()]] if arity == 0 else pos[t[np.ix_(*[m] * arity)]]
    S = FiniteAlgebra(name or f"Sg({alg.name};{members})", len(members), alg.signature, tables)
    return S, Homomorphism(S, alg, tuple(members))


def trivial_algebra(sig: Signature, name="1") -> FiniteAlgebra:
    return FiniteAlgebra(name, 1, sig, {s: np.zeros((1,) * a, dtype=np.intp) for s, a in sig})
