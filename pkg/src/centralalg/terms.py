"""Terms over a signature and their S-expression syntax.

A parenthesised form ``(f t1 ... tk)`` applies the symbol ``f``; a bare
identifier is a variable.  Constants are written as zero-argument forms,
e.g. ``(zero)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Union

from .errors import ArityError, TermSyntaxError, UnknownSymbol

_TOKEN = re.compile(r"\(|\)|[^\s()]+")


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    symbol: str
    args: tuple = ()

    def __str__(self):
        if not self.args:
            return f"({self.symbol})"
        return "(" + " ".join([self.symbol, *map(str, self.args)]) + ")"


Term = Union[Var, App]


def parse_term(text: str, sig=None) -> Term:
    """Parse an S-expression into a term, checking symbols against ``sig``."""
    tokens = _TOKEN.findall(text)
    if not tokens:
        raise TermSyntaxError("empty term")
    term, pos = _parse(tokens, 0, sig)
    if pos != len(tokens):
        raise TermSyntaxError(f"unexpected trailing input: {' '.join(tokens[pos:])!r}")
    return term


def _parse(tokens, pos, sig):
    if pos >= len(tokens):
        raise TermSyntaxError("unexpected end of input (unbalanced parentheses)")
    tok = tokens[pos]
    if tok == ")":
        raise TermSyntaxError("unexpected ')'")
    if tok != "(":
        return Var(tok), pos + 1
    pos += 1
    if pos >= len(tokens):
        raise TermSyntaxError("unbalanced parentheses")
    head = tokens[pos]
    if head == ")":
        raise TermSyntaxError("empty form '()'")
    if head == "(":
        raise TermSyntaxError("the head of a form must be a symbol")
    pos += 1
    args = []
    while True:
        if pos >= len(tokens):
            raise TermSyntaxError("unbalanced parentheses")
        if tokens[pos] == ")":
            break
        arg, pos = _parse(tokens, pos, sig)
        args.append(arg)
    if sig is not None:
        if head not in sig:
            raise UnknownSymbol(f"unknown operation symbol {head!r}")
        arity = sig.arity(head)
        if arity != len(args):
            raise ArityError(f"{head} has arity {arity}, applied to {len(args)} argument(s)")
    return App(head, tuple(args)), pos + 1


def check_term(term: Term, sig) -> None:
    """Raise if ``term`` uses a symbol missing from ``sig`` or with the wrong arity."""
    if isinstance(term, Var):
        return
    if term.symbol not in sig:
        raise UnknownSymbol(f"unknown operation symbol {term.symbol!r}")
    if sig.arity(term.symbol) != len(term.args):
        raise ArityError(
            f"{term.symbol} has arity {sig.arity(term.symbol)}, applied to {len(term.args)} argument(s)"
        )
    for arg in term.args:
        check_term(arg, sig)


def variables(*terms: Term) -> list[str]:
    """Free variables in order of first occurrence (left to right, across terms)."""
    seen: dict[str, None] = {}

    def walk(t):
        if isinstance(t, Var):
            seen.setdefault(t.name)
        else:
            for a in t.args:
                walk(a)

    for t in terms:
        walk(t)
    return list(seen)


def substitute(term: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(term, Var):
        return mapping.get(term.name, term)
    return App(term.symbol, tuple(substitute(a, mapping) for a in term.args))


def rename(term: Term, mapping: Mapping[str, str]) -> Term:
    return substitute(term, {old: Var(new) for old, new in mapping.items()})


def is_closed(term: Term) -> bool:
    return not variables(term)


def app(symbol: str, *args: Term) -> App:
    return App(symbol, tuple(args))
