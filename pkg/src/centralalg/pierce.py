"""Central elements and complementary central pairs.

``e <> f`` (complementary central pair) holds when some isomorphism
``A -> A1 x A2`` sends ``e`` to ``[0, 1]`` and ``f`` to ``[1, 0]``.  For a
finite algebra this is decided by brute force over factor pairs
``(theta, theta*)``: ``e`` is the unique tuple with ``e = 0 (theta)`` and
``e = 1 (theta*)``.  In a Pierce variety with decomposition term ``U`` the
same relation is cut out by a finite family of equations; that test lives
here as an independent procedure, used only when the caller vouches for the
Pierce hypothesis (``trusted=True``).
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .algebra import FiniteAlgebra, Homomorphism, eval_term, is_homomorphism, term_operation
from .congruences import (
    FactorPair,
    Partition,
    _equivalence_join,
    cg,
    factor_pairs,
    is_factor_pair,
    meet,
)
from .errors import (
    NoComplementFound,
    NonBooleanFC,
    NotAHomomorphism,
    NotCentral,
    ShortTermMissing,
    VerificationFailed,
)
from .terms import Term, check_term, is_closed, parse_term, variables


@dataclass(frozen=True)
class CentralContext:
    """The closed witness terms ``0_1..0_N`` and ``1_1..1_N``."""

    zeros: tuple[Term, ...]
    ones: tuple[Term, ...]

    def __post_init__(self):
        if not self.zeros or len(self.zeros) != len(self.ones):
            raise ValueError("need the same positive number of zero and one terms")
        for t in (*self.zeros, *self.ones):
            if not is_closed(t):
                raise ValueError(f"witness term {t} has free variables")

    @classmethod
    def from_strings(cls, sig, zeros, ones):
        return cls(tuple(parse_term(z, sig) for z in zeros), tuple(parse_term(o, sig) for o in ones))

    @property
    def n_witnesses(self) -> int:
        return len(self.zeros)

    @property
    def base(self):
        return self

    @property
    def trusted(self):
        return False

    @property
    def decomposition_term(self):
        return None

    @property
    def short_term(self):
        return None

    def zero_values(self, alg) -> tuple[int, ...]:
        return tuple(eval_term(alg, t, {}) for t in self.zeros)

    def one_values(self, alg) -> tuple[int, ...]:
        return tuple(eval_term(alg, t, {}) for t in self.ones)

    def to_json(self):
        return {
            "n_witnesses": self.n_witnesses,
            "zeros": [str(t) for t in self.zeros],
            "ones": [str(t) for t in self.ones],
            "decomposition_term": None,
            "short_term": None,
            "trusted_pierce": False,
        }


def decomposition_variables(n):
    """``x, y, z1..zN, w1..wN``."""
    return ["x", "y", *[f"z{i}" for i in range(1, n + 1)], *[f"w{i}" for i in range(1, n + 1)]]


def short_variables(n):
    return ["x", "y", *[f"z{i}" for i in range(1, n + 1)]]


@dataclass(frozen=True)
class PierceContext:
    """Witness terms plus a decomposition term ``U`` and optionally a short term ``u``."""

    base: CentralContext
    decomposition_term: Term
    short_term: Optional[Term] = None
    trusted: bool = False

    def __post_init__(self):
        n = self.base.n_witnesses
        extra = set(variables(self.decomposition_term)) - set(decomposition_variables(n))
        if extra:
            raise ValueError(f"decomposition term uses unexpected variables {sorted(extra)}")
        if self.short_term is not None:
            extra = set(variables(self.short_term)) - set(short_variables(n))
            if extra:
                raise ValueError(f"short term uses unexpected variables {sorted(extra)}")

    @classmethod
    def from_strings(cls, sig, zeros, ones, decomposition_term=None, short_term=None, trusted=False):
        base = CentralContext.from_strings(sig, zeros, ones)
        short = parse_term(short_term, sig) if short_term else None
        if decomposition_term:
            U = parse_term(decomposition_term, sig)
        elif short is not None:
            U = short  # U(x, y, z, w) = u(x, y, z)
        else:
            raise ValueError("a Pierce context needs a decomposition or short term")
        return cls(base, U, short, trusted)

    @property
    def zeros(self):
        return self.base.zeros

    @property
    def ones(self):
        return self.base.ones

    @property
    def n_witnesses(self):
        return self.base.n_witnesses

    def zero_values(self, alg):
        return self.base.zero_values(alg)

    def one_values(self, alg):
        return self.base.one_values(alg)

    def to_json(self):
        out = self.base.to_json()
        out["decomposition_term"] = str(self.decomposition_term)
        out["short_term"] = str(self.short_term) if self.short_term is not None else None
        out["trusted_pierce"] = self.trusted
        return out


def context_from_json(data, sig):
    """Parse context JSON against ``sig``; returns a Pierce context when a term is given."""
    zeros, ones = data["zeros"], data["ones"]
    if len(zeros) != data.get("n_witnesses", len(zeros)):
        raise ValueError("n_witnesses does not match the number of zero terms")
    if data.get("decomposition_term") or data.get("short_term"):
        return PierceContext.from_strings(
            sig,
            zeros,
            ones,
            data.get("decomposition_term"),
            data.get("short_term"),
            bool(data.get("trusted_pierce", False)),
        )
    return CentralContext.from_strings(sig, zeros, ones)


@dataclass(frozen=True)
class CentralPair:
    e: tuple[int, ...]
    f: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class CentralReport:
    """Z(A) with the Boolean operations transported from the factor congruences.

    ``meet``, ``join`` and ``complement`` are arrays of positions in
    ``elements``; ``thetas[i]`` is the factor congruence of ``elements[i]``.
    """

    algebra: str
    elements: tuple[tuple[int, ...], ...]
    pairs: tuple[CentralPair, ...]
    thetas: tuple[Partition, ...]
    meet: np.ndarray = field(repr=False)
    join: np.ndarray = field(repr=False)
    complement: np.ndarray = field(repr=False)
    atoms: tuple[tuple[int, ...], ...]
    method: str

    def __contains__(self, e):
        return tuple(e) in self._index

    def __len__(self):
        return len(self.elements)

    @functools.cached_property
    def _index(self):
        return {e: i for i, e in enumerate(self.elements)}

    def index(self, e) -> int:
        return self._index[tuple(e)]

    def complement_of(self, e) -> tuple[int, ...]:
        return self.elements[self.complement[self.index(e)]]

    def theta_of(self, e) -> Partition:
        return self.thetas[self.index(e)]

    def is_pair(self, e, f) -> bool:
        return tuple(e) in self and self.complement_of(e) == tuple(f)

    def leq(self, e1, e2) -> bool:
        i, j = self.index(e1), self.index(e2)
        return self.meet[i, j] == i

    def to_json(self):
        return {
            "algebra": self.algebra,
            "method": self.method,
            "elements": [list(e) for e in self.elements],
            "pairs": [[list(p.e), list(p.f)] for p in self.pairs],
            "atoms": [list(a) for a in self.atoms],
            "meet": self.meet.tolist(),
            "join": self.join.tolist(),
            "complement": self.complement.tolist(),
        }


def _pair_from_factor_pair(alg, ctx, fp: FactorPair):
    """``(e, f)`` with e = 0 (theta), e = 1 (theta*), f = 1 (theta), f = 0 (theta*)."""
    by_labels = {(fp.theta.labels[a], fp.theta_star.labels[a]): a for a in range(alg.size)}
    th, ts = fp.theta.labels, fp.theta_star.labels
    zs, os_ = ctx.zero_values(alg), ctx.one_values(alg)
    e = tuple(by_labels[(th[z], ts[o])] for z, o in zip(zs, os_))
    f = tuple(by_labels[(th[o], ts[z])] for z, o in zip(zs, os_))
    return e, f


def complementary_pairs_oracle(alg, ctx, max_size=None) -> dict:
    """``{(e, f): FactorPair}`` over all factor pairs of ``alg``."""
    out = {}
    for fp in factor_pairs(alg, max_size):
        out.setdefault(_pair_from_factor_pair(alg, ctx, fp), fp)
    return out


def is_complementary_pair_oracle(alg, ctx, e, f, max_size=None) -> bool:
    return (tuple(e), tuple(f)) in complementary_pairs_oracle(alg, ctx, max_size)


def _u_binary(alg, ctx, e, f) -> np.ndarray:
    """The table of ``(a, b) -> U(a, b, e, f)``."""
    n = ctx.n_witnesses
    fixed = {f"z{i + 1}": int(v) for i, v in enumerate(e)}
    fixed.update({f"w{i + 1}": int(v) for i, v in enumerate(f)})
    check_term(ctx.decomposition_term, alg.signature)
    return np.asarray(term_operation(alg, ctx.decomposition_term, ["x", "y"], fixed))


_BLOCK = 1 << 22


def _homomorphism_family_holds(alg, B) -> bool:
    """F(U(a1,b1),...,U(am,bm)) = U(F(a), F(b)) for every basic F and all tuples."""
    n = alg.size
    ar = np.arange(n)
    for symbol, m in alg.signature:
        F = alg.tables[symbol]
        if m == 0:
            c = F[()]
            if B[c, c] != c:
                return False
            continue
        # with a large grid, loop over the first argument pair
        outer = [(None, None)] if n ** (2 * m) <= _BLOCK else itertools.product(range(n), repeat=2)
        for a1, b1 in outer:
            dims = 2 * m
            a_idx, b_idx = [], []
            for j in range(m):
                if j == 0 and a1 is not None:
                    a_idx.append(np.array(a1).reshape((1,) * dims))
                    b_idx.append(np.array(b1).reshape((1,) * dims))
                    continue
                sa = [1] * dims
                sa[j] = n
                sb = [1] * dims
                sb[m + j] = n
                a_idx.append(ar.reshape(sa))
                b_idx.append(ar.reshape(sb))
            lhs = F[tuple(B[a, b] for a, b in zip(a_idx, b_idx))]
            rhs = B[F[tuple(a_idx)], F[tuple(b_idx)]]
            if not np.all(lhs == rhs):
                return False
    return True


def is_complementary_pair_equational(alg, ctx: PierceContext, e, f) -> bool:
    """The equational test for ``e <> f`` through the decomposition term.

    Checks, with ``U(a, b)`` short for ``U(a, b, e, f)``:
    U(a, a) = a; U(e_i, 1_i) = U(0_i, e_i) = e_i; U(1_i, f_i) = U(f_i, 0_i) = f_i;
    U(a, c) = U(a, U(b, c)) = U(U(a, b), c); and that ``U`` commutes with every
    basic operation (for a constant ``c`` this reads c = U(c, c)).
    """
    e, f = tuple(e), tuple(f)
    B = _u_binary(alg, ctx, e, f)
    n = alg.size
    ar = np.arange(n)
    if not np.array_equal(B[ar, ar], ar):
        return False
    for ei, fi, zi, oi in zip(e, f, ctx.zero_values(alg), ctx.one_values(alg)):
        if not (B[ei, oi] == ei and B[zi, ei] == ei):
            return False
        if not (B[oi, fi] == fi and B[fi, zi] == fi):
            return False
    a = ar[:, None, None]
    b = ar[None, :, None]
    c = ar[None, None, :]
    ac = B[a, c]
    if not (np.all(ac == B[a, B[b, c]]) and np.all(ac == B[B[a, b], c])):
        return False
    return _homomorphism_family_holds(alg, B)


def _tuples(n, k):
    return itertools.product(range(n), repeat=k)


def central_elements(alg, ctx, max_size=None) -> CentralReport:
    """Z(A) with its Boolean algebra structure.

    By default the complementary pairs come from the factor-pair oracle.  A
    trusted Pierce context instead pairs all N-tuples by the equational test
    and takes ``Cg(0, e)`` as the factor congruence of ``e``, which avoids
    enumerating Con(A).
    """
    trusted = bool(getattr(ctx, "trusted", False)) and getattr(ctx, "decomposition_term", None) is not None
    zs = ctx.zero_values(alg)
    if trusted:
        pairs = {}
        for e in _tuples(alg.size, ctx.n_witnesses):
            for f in _tuples(alg.size, ctx.n_witnesses):
                if is_complementary_pair_equational(alg, ctx, e, f):
                    pairs.setdefault(e, f)
        theta = {e: cg(alg, zip(zs, e)) for e in pairs}
        method = "equational"
    else:
        oracle = complementary_pairs_oracle(alg, ctx, max_size)
        pairs, theta = {}, {}
        for (e, f), fp in oracle.items():
            if e in pairs and pairs[e] != f:
                raise NonBooleanFC(f"{alg.name}: central element {e} has two complements")
            if e in theta and theta[e] != fp.theta:
                raise NonBooleanFC(f"{alg.name}: {e} corresponds to two factor congruences")
            pairs[e] = f
            theta[e] = fp.theta
        method = "oracle"
    return _boolean_structure(alg, pairs, theta, method)


def _boolean_structure(alg, pairs, theta, method) -> CentralReport:
    elements = tuple(sorted(pairs))
    pos = {e: i for i, e in enumerate(elements)}
    thetas = tuple(theta[e] for e in elements)
    by_theta = {t: i for i, t in enumerate(thetas)}
    if len(by_theta) != len(thetas):
        raise NonBooleanFC(f"{alg.name}: two central elements share a factor congruence")
    k = len(elements)
    M = np.zeros((k, k), dtype=np.intp)
    J = np.zeros((k, k), dtype=np.intp)
    for i, j in itertools.product(range(k), repeat=2):
        m = meet(thetas[i], thetas[j])
        jn = _equivalence_join(thetas[i], thetas[j])
        if m not in by_theta or jn not in by_theta:
            raise NonBooleanFC(f"{alg.name}: factor congruences are not closed under meet and join")
        M[i, j], J[i, j] = by_theta[m], by_theta[jn]
    comp = np.array([pos[pairs[e]] for e in elements], dtype=np.intp)
    bottom = [i for i, t in enumerate(thetas) if t.is_identity]
    atoms = tuple(
        elements[i]
        for i in range(k)
        if i not in bottom
        and not any(j not in bottom and j != i and M[i, j] == j for j in range(k))
    )
    return CentralReport(
        alg.name,
        elements,
        tuple(CentralPair(e, pairs[e]) for e in elements),
        thetas,
        M,
        J,
        comp,
        atoms,
        method,
    )


def _require_central(report, e):
    if tuple(e) not in report:
        raise NotCentral(f"{tuple(e)} is not a central element of {report.algebra}")


def complement_general(alg, ctx: PierceContext, e, max_size=None):
    """The ``f`` in Z(A) with U(f_i, 1_i, e, 1) = U(f_i, 1_i, 1, e) and
    U(f_i, 0_i, e, 0) = U(f_i, 0_i, 0, e) for every i."""
    e = tuple(e)
    report = central_elements(alg, ctx, max_size)
    _require_central(report, e)
    zs, os_ = ctx.zero_values(alg), ctx.one_values(alg)
    U = ctx.decomposition_term
    N = ctx.n_witnesses

    def val(x, y, zvec, wvec):
        env = {"x": x, "y": y}
        env.update({f"z{i + 1}": v for i, v in enumerate(zvec)})
        env.update({f"w{i + 1}": v for i, v in enumerate(wvec)})
        return eval_term(alg, U, env)

    found = [
        f
        for f in report.elements
        if all(
            val(f[i], os_[i], e, os_) == val(f[i], os_[i], os_, e)
            and val(f[i], zs[i], e, zs) == val(f[i], zs[i], zs, e)
            for i in range(N)
        )
    ]
    if len(found) != 1:
        raise NoComplementFound(
            f"{len(found)} candidates satisfy the complement equations for {e} in {alg.name}"
        )
    return found[0]


def complement_short(alg, ctx: PierceContext, e, max_size=None):
    """``f_i = u(1_i, 0_i, e)``, verified against Z(A) afterwards."""
    if getattr(ctx, "short_term", None) is None:
        raise ShortTermMissing("context has no short decomposition term")
    e = tuple(e)
    report = central_elements(alg, ctx, max_size)
    _require_central(report, e)
    zs, os_ = ctx.zero_values(alg), ctx.one_values(alg)
    env = {f"z{i + 1}": v for i, v in enumerate(e)}
    f = tuple(eval_term(alg, ctx.short_term, {**env, "x": os_[i], "y": zs[i]}) for i in range(len(e)))
    if not report.is_pair(e, f):
        raise VerificationFailed(f"u(1, 0, {e}) = {f} is not the complement of {e} in {alg.name}")
    return f


def theta_zero_e(alg, ctx, e, max_size=None) -> Partition:
    """``Cg(0, e)``, checked to be a factor congruence whose complement is ``Cg(0, f)``."""
    e = tuple(e)
    report = central_elements(alg, ctx, max_size)
    _require_central(report, e)
    zs = ctx.zero_values(alg)
    theta = cg(alg, zip(zs, e))
    theta_star = cg(alg, zip(zs, report.complement_of(e)))
    if not is_factor_pair(alg, theta, theta_star):
        raise VerificationFailed(f"Cg(0, {e}) and Cg(0, f) are not complementary factor congruences")
    return theta


@dataclass(frozen=True)
class PreservationReport:
    preserved: bool
    failures: tuple = ()
    mode: str = "central"

    def to_json(self):
        return {
            "mode": self.mode,
            "preserved": self.preserved,
            "failures": [[list(x) for x in w] if isinstance(w[0], tuple) else list(w) for w in self.failures],
        }


def _hom_reports(h, ctx, max_size):
    if not is_homomorphism(h):
        raise NotAHomomorphism(f"map {h.source.name} -> {h.target.name} is not a homomorphism")
    return central_elements(h.source, ctx, max_size), central_elements(h.target, ctx, max_size)


def hom_preserves_central(h: Homomorphism, ctx, max_size=None) -> PreservationReport:
    src, tgt = _hom_reports(h, ctx, max_size)
    failures = tuple(e for e in src.elements if h.apply(e) not in tgt)
    return PreservationReport(not failures, failures, "central")


def hom_preserves_complementary(h: Homomorphism, ctx, max_size=None) -> PreservationReport:
    """Whether every pair ``e <> f`` maps to a pair ``h(e) <> h(f)``.

    Failures list the offending source pairs ``(e, f)``; a pair whose images
    are not even central counts as a failure too.
    """
    src, tgt = _hom_reports(h, ctx, max_size)
    failures = tuple(
        (p.e, p.f)
        for p in src.pairs
        if not (h.apply(p.e) in tgt and tgt.is_pair(h.apply(p.e), h.apply(p.f)))
    )
    return PreservationReport(not failures, failures, "complementary")
