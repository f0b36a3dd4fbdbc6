"""``alg``: command-line front end.

Algebra, homomorphism and context arguments are JSON files; ``corpus:KEY``
names a built-in artifact instead (see ``alg corpus list``).  Context
arguments also accept ``corpus:l01``, ``corpus:semilattice``,
``corpus:ring`` and ``corpus:implication``; without one, the standard
context for the algebra's signature is used.

Exit status: 0 success, 1 a check failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import corpus
from .algebra import FiniteAlgebra, Homomorphism, homomorphisms
from .congruences import all_congruences, check_fhp_pair, factor_pairs
from .decomposition import decompose, is_directly_indecomposable, pierce_stalks
from .errors import AlgebraError, NonBooleanFC, VerificationFailed
from .pierce import central_elements, context_from_json, hom_preserves_central, hom_preserves_complementary
from .terms import parse_term
from .varieties import (
    FAIL,
    EvidenceReport,
    GeneratorSet,
    ShellTerms,
    Verdict,
    check_permutability,
    coextensivity_report,
    verify_discriminator,
    verify_pierce,
    verify_shell,
    verify_short,
    verify_zero_one,
)

CHECK_FAILED, BAD_INPUT = 1, 2

_CONTEXTS = {
    "l01": corpus.l01_context,
    "semilattice": corpus.semilattice_context,
    "ring": corpus.ring_context,
    "implication": corpus.implication_context,
}

SUITES = {
    "l01": (["chain-2", "lattice-2^2", "lattice-2^3", "chain-3"], "l01", "all"),
    "semilattice": (["semilattice-2", "semilattice-2^2", "semilattice-2^3"], "semilattice", ["alpha"]),
    "bounded-lattice": (["chain-2", "lattice-2^2", "m3"], "l01", ["c-into-d"]),
}


class InputError(Exception):
    pass


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})")


def _corpus_object(key):
    try:
        return corpus.build(key)
    except KeyError:
        raise InputError(f"unknown corpus key {key!r}; see 'alg corpus list'")


def load_algebra(spec: str) -> FiniteAlgebra:
    if spec.startswith("corpus:"):
        obj = _corpus_object(spec[len("corpus:"):])
        if not isinstance(obj, FiniteAlgebra):
            raise InputError(f"{spec} is not an algebra")
        return obj
    data = _read_json(spec)
    try:
        return FiniteAlgebra.from_json(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"{spec}: malformed algebra JSON ({exc})")


def load_hom(spec: str, algebras) -> Homomorphism:
    if spec.startswith("corpus:"):
        obj = _corpus_object(spec[len("corpus:"):])
        if not isinstance(obj, Homomorphism):
            raise InputError(f"{spec} is not a homomorphism")
        return obj
    data = _read_json(spec)
    known = {a.name: a for a in algebras}
    for end in ("source", "target"):
        name = data.get(end)
        if name not in known:
            known[name] = _corpus_object(name)
    try:
        return Homomorphism.from_json(data, known)
    except (KeyError, TypeError) as exc:
        raise InputError(f"{spec}: malformed homomorphism JSON ({exc})")


def load_context(spec, alg):
    if spec is None:
        return corpus.context_for(alg)
    if spec.startswith("corpus:"):
        name = spec[len("corpus:"):]
        if name not in _CONTEXTS:
            raise InputError(f"unknown context {name!r}; choose from {', '.join(_CONTEXTS)}")
        return _CONTEXTS[name](alg.signature)
    data = _read_json(spec)
    try:
        return context_from_json(data, alg.signature)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{spec}: malformed context JSON ({exc})")


class Output:
    def __init__(self, args):
        self.json = args.json
        self.path = args.out
        self.lines = []
        self.data = None

    def line(self, text=""):
        self.lines.append(text)

    def flush(self):
        text = json.dumps(self.data, indent=2) if self.json else "\n".join(self.lines)
        if self.path:
            with open(self.path, "w") as fh:
                fh.write(text + "\n")
        else:
            print(text)


def _one_algebra(args):
    if not args.algebra or len(args.algebra) != 1:
        raise InputError("exactly one --algebra is required")
    return load_algebra(args.algebra[0])


def _algebras(args, at_least=1):
    algs = [load_algebra(a) for a in args.algebra or []]
    if len(algs) < at_least:
        raise InputError(f"at least {at_least} --algebra argument(s) required")
    return algs


def _fmt(x):
    return "(" + ",".join(map(str, x)) + ")" if len(x) != 1 else str(x[0])


def cmd_show(args, out):
    alg = _one_algebra(args)
    out.data = alg.to_json()
    out.line(f"{alg.name}: {alg.size} elements")
    for symbol, arity in alg.signature:
        table = alg.tables[symbol]
        if arity == 0:
            out.line(f"  {symbol} = {int(table)}")
        elif arity == 1:
            out.line(f"  {symbol}: {' '.join(map(str, table.tolist()))}")
        elif arity == 2:
            out.line(f"  {symbol}:")
            for row in table.tolist():
                out.line("    " + " ".join(map(str, row)))
        else:
            out.line(f"  {symbol}: arity {arity}, {table.size} entries")
    return 0


def cmd_congruences(args, out):
    alg = _one_algebra(args)
    cons = all_congruences(alg, args.max_size)
    fps = factor_pairs(alg, args.max_size)
    out.data = {
        "algebra": alg.name,
        "congruences": [c.to_json() for c in cons],
        "factor_pairs": [[fp.theta.to_json(), fp.theta_star.to_json()] for fp in fps],
    }
    out.line(f"Con({alg.name}): {len(cons)} congruences")
    for c in cons:
        out.line(f"  {c}")
    out.line(f"factor pairs: {len(fps)}")
    for fp in fps:
        out.line(f"  {fp.theta}  /  {fp.theta_star}")
    return 0


def cmd_central(args, out):
    alg = _one_algebra(args)
    ctx = load_context(args.context, alg)
    report = central_elements(alg, ctx, args.max_size)
    out.data = report.to_json()
    out.line(f"Z({alg.name}) = {{{', '.join(_fmt(e) for e in report.elements)}}}  [{report.method}]")
    out.line("complementary pairs:")
    for p in report.pairs:
        out.line(f"  {_fmt(p.e)} <> {_fmt(p.f)}")
    out.line(f"atoms: {', '.join(_fmt(a) for a in report.atoms) or 'none'}")
    return 0


def cmd_decompose(args, out):
    alg = _one_algebra(args)
    try:
        cert = decompose(alg, args.max_size)
    except NonBooleanFC as exc:
        out.data = {"algebra": alg.name, "error": str(exc)}
        out.line(str(exc))
        return CHECK_FAILED
    out.data = cert.to_json()
    out.line(f"{alg.name} ~ {' x '.join(f.name for f in cert.factors) or 'trivial product'}")
    out.line(f"factor sizes: {cert.sizes}")
    for f, t in zip(cert.factors, cert.factor_congruences):
        out.line(f"  {f.name}  = {alg.name} / {t}")
    return 0


def cmd_stalks(args, out):
    alg = _one_algebra(args)
    ctx = load_context(args.context, alg)
    stalks = pierce_stalks(alg, ctx, args.max_size)
    di = [is_directly_indecomposable(s, args.max_size) for s in stalks]
    out.data = {"algebra": alg.name, "stalks": [s.to_json() for s in stalks], "directly_indecomposable": di}
    out.line(f"Pierce stalks of {alg.name}: {len(stalks)}")
    for s, ok in zip(stalks, di):
        out.line(f"  {s.name}: {s.size} elements, {'DI' if ok else 'not DI'}")
    return 0


def _render_verdict(v: Verdict, out):
    out.data = v.to_json()
    out.line(f"{v.name}: {v.status.upper()}")
    if v.scope:
        out.line(f"  scope: {v.scope}")
    if v.counterexample is not None:
        out.line(f"  counterexample: {json.dumps(v.counterexample)}")
    return CHECK_FAILED if v.status == FAIL else 0


def _gens_and_ctx(args):
    algs = _algebras(args)
    return GeneratorSet(tuple(algs), "+".join(a.name for a in algs)), load_context(args.context, algs[0])


def cmd_check_pierce(args, out):
    gens, ctx = _gens_and_ctx(args)
    return _render_verdict(verify_pierce(gens, ctx), out)


def cmd_check_short(args, out):
    gens, ctx = _gens_and_ctx(args)
    return _render_verdict(verify_short(gens, ctx), out)


def cmd_check_shell(args, out):
    gens, ctx = _gens_and_ctx(args)
    sig = gens.signature
    st = ShellTerms(tuple(parse_term(t, sig) for t in args.f), tuple(parse_term(t, sig) for t in args.g))
    return _render_verdict(verify_shell(gens, ctx, st), out)


def cmd_check_discriminator(args, out):
    alg = _one_algebra(args)
    return _render_verdict(verify_discriminator(alg, parse_term(args.term, alg.signature)), out)


def cmd_check_zero_one(args, out):
    algs = _algebras(args)
    return _render_verdict(verify_zero_one(algs, load_context(args.context, algs[0])), out)


def cmd_check_permutability(args, out):
    return _render_verdict(check_permutability(_one_algebra(args), args.max_size), out)


def cmd_check_hom(args, out):
    if not args.hom:
        raise InputError("--hom is required")
    h = load_hom(args.hom, _algebras(args, at_least=0))
    ctx = load_context(args.context, h.source)
    check = hom_preserves_central if args.mode == "central" else hom_preserves_complementary
    rep = check(h, ctx, args.max_size)
    out.data = {"hom": f"{h.source.name} -> {h.target.name}", **rep.to_json()}
    out.line(f"{h.source.name} -> {h.target.name}: {args.mode} elements "
             f"{'preserved' if rep.preserved else 'NOT preserved'}")
    for w in rep.failures:
        if args.mode == "central":
            out.line(f"  witness: {_fmt(w)} is central, its image {_fmt(h.apply(w))} is not")
        else:
            e, f = w
            out.line(f"  witness: {_fmt(e)} <> {_fmt(f)}, images {_fmt(h.apply(e))}, {_fmt(h.apply(f))}")
    return 0 if rep.preserved else CHECK_FAILED


def cmd_check_fhp(args, out):
    algs = _algebras(args, at_least=1)
    if len(algs) > 2:
        raise InputError("check-fhp takes one or two --algebra arguments")
    a, b = algs[0], algs[-1]
    theta = check_fhp_pair(a, b, args.max_size)
    out.data = {"pair": [a.name, b.name], "counterexample": None if theta is None else theta.to_json()}
    if theta is None:
        out.line(f"every congruence of {a.name} x {b.name} is a product congruence")
        return 0
    out.line(f"{a.name} x {b.name}: {theta} is not a product congruence")
    return CHECK_FAILED


def _suite(name):
    keys, ctx_name, hom_keys = SUITES[name]
    algs = [corpus.build(k) for k in keys]
    if hom_keys == "all":
        homs = [h for a in algs for b in algs for h in homomorphisms(a, b)]
    else:
        homs = [corpus.build(k) for k in hom_keys]
    ctx = _CONTEXTS[ctx_name](algs[0].signature)
    return GeneratorSet(tuple(algs), name), ctx, homs


def render_report(report: EvidenceReport, out):
    out.data = report.to_json()
    out.line(f"evidence report: {report.corpus}")
    width = max(len(k) for k in report.verdicts)
    for k, v in report.verdicts.items():
        out.line(f"  {k:<{width}}  {v.status:<7}  {v.scope}")
        if v.counterexample is not None:
            out.line(f"  {'':<{width}}  {'':<7}  counterexample: {json.dumps(v.counterexample)}")
    out.line(f"failing: {', '.join(report.failures) or 'none'}")


def cmd_report(args, out):
    if args.suite:
        gens, ctx, homs = _suite(args.suite)
    else:
        algs = _algebras(args)
        gens = GeneratorSet(tuple(algs), "+".join(a.name for a in algs))
        ctx = load_context(args.context, algs[0])
        homs = [load_hom(h, algs) for h in args.hom_list or []]
    report = coextensivity_report(gens, ctx, homs, args.max_size)
    render_report(report, out)
    return CHECK_FAILED if report.failures else 0


def cmd_corpus(args, out):
    if args.action == "list":
        out.data = corpus.keys()
        out.lines = corpus.keys()
        return 0
    if not args.key:
        raise InputError("corpus emit needs a key")
    obj = _corpus_object(args.key)
    out.data = obj.to_json()
    out.json = True
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", action="append", metavar="FILE", help="algebra JSON or corpus:KEY (repeatable)")
    common.add_argument("--context", metavar="FILE", help="context JSON or corpus:NAME")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--max-size", type=int, metavar="N", help="raise the size bound (default $ALG_MAX_SIZE or 14)")
    common.add_argument("--out", metavar="FILE", help="write output to FILE")

    parser = argparse.ArgumentParser(prog="alg", description="Finite algebra checks: congruences, central elements, decompositions.")
    sub = parser.add_subparsers(dest="verb", metavar="VERB")
    sub.required = True

    def verb(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    verb("show", cmd_show, "print operation tables")
    verb("congruences", cmd_congruences, "congruence lattice and factor pairs")
    verb("central", cmd_central, "central elements and complementary pairs")
    verb("decompose", cmd_decompose, "split into directly indecomposable factors")
    verb("stalks", cmd_stalks, "Pierce stalks")
    verb("check-pierce", cmd_check_pierce, "U(x,y,0,1)=x and U(x,y,1,0)=y on the generators")
    verb("check-short", cmd_check_short, "u(x,y,0)=x and u(x,y,1)=y on the generators")
    p = verb("check-shell", cmd_check_shell, "shell equations for given f and g terms")
    p.add_argument("--f", action="append", required=True, metavar="TERM")
    p.add_argument("--g", action="append", required=True, metavar="TERM")
    p = verb("check-discriminator", cmd_check_discriminator, "is a ternary term a discriminator")
    p.add_argument("--term", required=True)
    verb("check-zero-one", cmd_check_zero_one, "0 = 1 only in trivial algebras")
    verb("check-permutability", cmd_check_permutability, "do all congruences permute")
    p = verb("check-hom", cmd_check_hom, "does a homomorphism preserve central elements or complementary pairs")
    p.add_argument("--hom", metavar="FILE", help="homomorphism JSON or corpus:KEY")
    p.add_argument("--mode", choices=["central", "complementary"], default="central")
    verb("check-fhp", cmd_check_fhp, "are all congruences of A x B product congruences")
    p = verb("report", cmd_report, "coextensivity evidence report")
    p.add_argument("--suite", choices=sorted(SUITES))
    p.add_argument("--hom", dest="hom_list", action="append", metavar="FILE")
    p = verb("corpus", cmd_corpus, "list or emit built-in artifacts")
    p.add_argument("action", choices=["list", "emit"])
    p.add_argument("key", nargs="?")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else 0
    if args.max_size is not None:
        print(f"warning: size bound raised to {args.max_size}; exhaustive checks grow exponentially",
              file=sys.stderr)
    out = Output(args)
    try:
        code = args.func(args, out)
    except (InputError, AlgebraError, ValueError) as exc:
        if isinstance(exc, VerificationFailed):
            print(f"alg: verification failed: {exc}", file=sys.stderr)
            return CHECK_FAILED
        print(f"alg: {exc}", file=sys.stderr)
        return BAD_INPUT
    out.flush()
    return code


def main():
    sys.exit(run())
