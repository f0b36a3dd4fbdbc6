"""Term-scheme checks over generating algebras, and the coextensivity evidence report.

Identities are checked on the generators only; they then hold in the whole
variety generated, since identities survive homomorphic images,
subalgebras and products.  Quasi-identities (such as ``0 = 1 -> x = y``) do
not transfer that way and are checked per algebra only.

Every verdict carries either the scope it was exhausted over or a concrete
counterexample, so nothing in a report claims more than was computed.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .algebra import (
    FiniteAlgebra,
    Homomorphism,
    check_identity,
    eval_term,
    subalgebra,
    subalgebra_generated,
)
from .congruences import all_congruences, check_fhp_pair, compose, permute
from .decomposition import is_directly_indecomposable, is_subdirectly_irreducible, pierce_stalks
from .errors import AlgebraError
from .pierce import hom_preserves_central, hom_preserves_complementary
from .terms import App, Term, Var, check_term, substitute

PASS, FAIL, SKIPPED, INFO = "pass", "fail", "skipped", "info"


@dataclass(frozen=True)
class GeneratorSet:
    algebras: tuple[FiniteAlgebra, ...]
    name: str = "K"

    def __post_init__(self):
        algs = tuple(self.algebras)
        if not algs:
            raise ValueError("a generator set needs at least one algebra")
        if any(a.signature != algs[0].signature for a in algs):
            raise ValueError("generators must share a signature")
        object.__setattr__(self, "algebras", algs)

    @property
    def signature(self):
        return self.algebras[0].signature


@dataclass(frozen=True)
class ShellTerms:
    """Terms ``f_i`` and ``g_i`` over ``x1..xN, y1..yN``."""

    f_terms: tuple[Term, ...]
    g_terms: tuple[Term, ...]


@dataclass
class Verdict:
    name: str
    status: str
    scope: str = ""
    counterexample: Optional[dict] = None
    details: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.status in (PASS, INFO)

    def to_json(self):
        out = {"name": self.name, "status": self.status, "scope": self.scope}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.details:
            out["details"] = self.details
        return out


@dataclass
class EvidenceReport:
    corpus: str
    verdicts: dict[str, Verdict]

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.verdicts.items() if v.status == FAIL]

    @property
    def all_pass(self) -> bool:
        return not self.failures

    def to_json(self):
        return {"corpus": self.corpus, "verdicts": {k: v.to_json() for k, v in self.verdicts.items()}}

    def dumps(self):
        return json.dumps(self.to_json(), indent=2)


def _identities_verdict(name, algs, identities):
    """Exhaustively check ``[(label, lhs, rhs)]`` on every algebra."""
    for label, lhs, rhs in identities:
        hit = check_identity(algs, lhs, rhs)
        if hit is not None:
            idx, env = hit
            return Verdict(
                name,
                FAIL,
                counterexample={
                    "identity": label,
                    "lhs": str(lhs),
                    "rhs": str(rhs),
                    "algebra": algs[idx].name,
                    "assignment": env,
                },
            )
    names = ", ".join(a.name for a in algs)
    return Verdict(name, PASS, f"exhaustive over all assignments in {names}")


def _instantiate(term, prefix, values):
    return substitute(term, {f"{prefix}{i + 1}": v for i, v in enumerate(values)})


def verify_pierce(gens: GeneratorSet, ctx) -> Verdict:
    """U(x, y, 0, 1) = x and U(x, y, 1, 0) = y on every generator."""
    U = ctx.decomposition_term
    if U is None:
        return Verdict("pierce_identities", SKIPPED, "context has no decomposition term")
    zs, os_ = ctx.zeros, ctx.ones
    first = _instantiate(_instantiate(U, "z", zs), "w", os_)
    second = _instantiate(_instantiate(U, "z", os_), "w", zs)
    return _identities_verdict(
        "pierce_identities",
        gens.algebras,
        [("U(x,y,0,1) = x", first, Var("x")), ("U(x,y,1,0) = y", second, Var("y"))],
    )


def verify_short(gens: GeneratorSet, ctx) -> Verdict:
    """u(x, y, 0) = x and u(x, y, 1) = y on every generator."""
    u = getattr(ctx, "short_term", None)
    if u is None:
        return Verdict("short_identities", SKIPPED, "context has no short decomposition term")
    return _identities_verdict(
        "short_identities",
        gens.algebras,
        [
            ("u(x,y,0) = x", _instantiate(u, "z", ctx.zeros), Var("x")),
            ("u(x,y,1) = y", _instantiate(u, "z", ctx.ones), Var("y")),
        ],
    )


def verify_shell(gens: GeneratorSet, ctx, st: ShellTerms) -> Verdict:
    """The shell equations for each i:
    f_i(x, 0) = f_i(0, x) = 0_i, f_i(x, 1) = f_i(1, x) = x_i, g_i(x, 0) = g_i(0, x) = x_i.
    """
    N = ctx.n_witnesses
    if len(st.f_terms) != N or len(st.g_terms) != N:
        raise ValueError(f"need {N} f-terms and {N} g-terms")
    xs = [Var(f"x{i + 1}") for i in range(N)]

    def plug(t, left, right):
        return _instantiate(_instantiate(t, "x", left), "y", right)

    identities = []
    for i, (f, g) in enumerate(zip(st.f_terms, st.g_terms)):
        k = i + 1
        identities += [
            (f"f{k}(x,0) = 0_{k}", plug(f, xs, ctx.zeros), ctx.zeros[i]),
            (f"f{k}(0,x) = 0_{k}", plug(f, ctx.zeros, xs), ctx.zeros[i]),
            (f"f{k}(x,1) = x{k}", plug(f, xs, ctx.ones), xs[i]),
            (f"f{k}(1,x) = x{k}", plug(f, ctx.ones, xs), xs[i]),
            (f"g{k}(x,0) = x{k}", plug(g, xs, ctx.zeros), xs[i]),
            (f"g{k}(0,x) = x{k}", plug(g, ctx.zeros, xs), xs[i]),
        ]
    return _identities_verdict("shell_identities", gens.algebras, identities)


def verify_discriminator(alg: FiniteAlgebra, t: Term) -> Verdict:
    """t(a, a, c) = c and t(a, b, c) = a whenever a != b."""
    check_term(t, alg.signature)
    for a, b, c in itertools.product(range(alg.size), repeat=3):
        value = eval_term(alg, t, {"x": a, "y": b, "z": c})
        expected = c if a == b else a
        if value != expected:
            return Verdict(
                "discriminator",
                FAIL,
                counterexample={"algebra": alg.name, "assignment": {"x": a, "y": b, "z": c},
                                "value": value, "expected": expected},
            )
    return Verdict("discriminator", PASS, f"exhaustive over {alg.name}^3")


def verify_zero_one(algs: Sequence[FiniteAlgebra], ctx) -> Verdict:
    """Per algebra: if every 0_i equals 1_i then the algebra is trivial."""
    for alg in algs:
        if ctx.zero_values(alg) == ctx.one_values(alg) and alg.size > 1:
            return Verdict("zero_one", FAIL, counterexample={"algebra": alg.name, "size": alg.size})
    names = ", ".join(a.name for a in algs)
    return Verdict(
        "zero_one",
        PASS,
        f"checked in {names} only; a quasi-identity is not inherited by the variety they generate",
    )


def check_permutability(alg: FiniteAlgebra, max_size=None) -> Verdict:
    cons = all_congruences(alg, max_size)
    for p, q in itertools.combinations(cons, 2):
        if not permute(p, q):
            pq, qp = compose(p, q), compose(q, p)
            a, c = map(int, next(zip(*(pq != qp).nonzero())))
            return Verdict(
                "permutability",
                FAIL,
                counterexample={"algebra": alg.name, "theta": p.to_json(), "phi": q.to_json(),
                                "pair": [a, c]},
            )
    return Verdict("permutability", PASS, f"all {len(cons)} congruences of {alg.name} pairwise")


def _subuniverses(alg, seed_size):
    seen = set()
    for k in range(seed_size + 1):
        for seed in itertools.combinations(range(alg.size), k):
            s = subalgebra_generated(alg, seed)
            if s not in seen:
                seen.add(s)
                yield s


def coextensivity_report(
    gens: GeneratorSet,
    ctx,
    homs: Sequence[Homomorphism] = (),
    max_size=None,
    seed_size=3,
    subalgebra_max=10,
    fhp_max=16,
) -> EvidenceReport:
    """Corpus-scale evidence for the conditions characterising coextensivity.

    Checks the Pierce identities on the generators, that the Pierce stalks
    of each listed algebra are directly indecomposable, that subalgebras of
    the subdirectly irreducible listed algebras are directly indecomposable,
    that each supplied homomorphism carries central elements and
    complementary pairs along, and the Fraser-Horn property on pairs of
    listed algebras.  Permutability is reported for information only.
    """
    algs = gens.algebras
    v: dict[str, Verdict] = {}
    v["pierce_identities"] = verify_pierce(gens, ctx)

    stalk_details, bad = [], None
    for a in algs:
        try:
            stalks = pierce_stalks(a, ctx, max_size)
        except AlgebraError as exc:
            bad = bad or {"algebra": a.name, "error": str(exc)}
            continue
        sizes = [s.size for s in stalks]
        stalk_details.append({"algebra": a.name, "stalk_sizes": sizes})
        for s in stalks:
            if not is_directly_indecomposable(s, max_size) and bad is None:
                bad = {"algebra": a.name, "stalk": s.to_json()}
    v["stalks_di"] = Verdict(
        "stalks_di",
        FAIL if bad else PASS,
        "Pierce stalks of " + ", ".join(a.name for a in algs),
        bad,
        stalk_details,
    )

    checked, bad = [], None
    for a in algs:
        if a.size > subalgebra_max or not is_subdirectly_irreducible(a, max_size):
            continue
        checked.append(a.name)
        for s in _subuniverses(a, seed_size):
            sub, _ = subalgebra(a, s)
            if not is_directly_indecomposable(sub, max_size):
                bad = {"algebra": a.name, "subuniverse": sorted(s)}
                break
        if bad:
            break
    scope = (
        f"subuniverses generated by at most {seed_size} elements of the subdirectly "
        f"irreducible members of size <= {subalgebra_max}: {', '.join(checked) or 'none'}"
    )
    v["subalgebras_di"] = Verdict("subalgebras_di", FAIL if bad else PASS, scope, bad)

    details, bad = [], None
    for h in homs:
        central = hom_preserves_central(h, ctx, max_size)
        comp = hom_preserves_complementary(h, ctx, max_size)
        row = {
            "hom": f"{h.source.name} -> {h.target.name}",
            "map": list(h.map),
            "preserves_central": central.preserved,
            "preserves_complementary": comp.preserved,
        }
        if not central.preserved:
            row["central_witness"] = list(central.failures[0])
        if not comp.preserved:
            e, f = comp.failures[0]
            row["complementary_witness"] = [list(e), list(f)]
        details.append(row)
        if bad is None and not (central.preserved and comp.preserved):
            bad = row
    v["stability_on_corpus"] = Verdict(
        "stability_on_corpus",
        FAIL if bad else (PASS if homs else SKIPPED),
        f"{len(homs)} supplied homomorphism(s)",
        bad,
        details,
    )

    perm = []
    for a in algs:
        r = check_permutability(a, max_size)
        perm.append({"algebra": a.name, "permutable": r.status == PASS})
    v["permutability"] = Verdict(
        "permutability", INFO, "congruence permutability of each listed algebra", None, perm
    )

    pairs, bad = [], None
    for a, b in itertools.combinations_with_replacement(algs, 2):
        if a.size * b.size > fhp_max:
            continue
        pairs.append(f"{a.name} x {b.name}")
        theta = check_fhp_pair(a, b, max_size=fhp_max)
        if theta is not None and bad is None:
            bad = {"pair": [a.name, b.name], "congruence": theta.to_json()}
    v["fhp_samples"] = Verdict(
        "fhp_samples",
        FAIL if bad else (PASS if pairs else SKIPPED),
        "all congruences of " + (", ".join(pairs) or "no pair within bounds"),
        bad,
    )
    return EvidenceReport(gens.name, v)
