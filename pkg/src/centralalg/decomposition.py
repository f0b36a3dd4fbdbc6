"""Direct decompositions into directly indecomposable factors, and Pierce stalks.

For a finite algebra whose factor congruences form a Boolean lattice, the
maximal ideals of that lattice are the principal ideals below its coatoms,
so the union of a maximal ideal is just a coatom and every stalk is a
quotient by a coatom.  The coatoms are the complements of the atoms.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Optional

from .algebra import FiniteAlgebra, Homomorphism, is_homomorphism, quotient
from .congruences import (
    Partition,
    _equivalence_join,
    all_congruences,
    factor_pairs,
    meet,
    natural_map,
)
from .config import check_size
from .errors import NonBooleanFC, VerificationFailed
from .pierce import central_elements


@dataclass(frozen=True, eq=False)
class DecompositionCertificate:
    algebra: FiniteAlgebra
    factors: tuple[FiniteAlgebra, ...]
    factor_congruences: tuple[Partition, ...]
    natural_map: Optional[Homomorphism]

    @property
    def sizes(self):
        return [f.size for f in self.factors]

    @property
    def product(self):
        return None if self.natural_map is None else self.natural_map.target

    def to_json(self):
        return {
            "algebra": self.algebra.name,
            "factors": [f.to_json() for f in self.factors],
            "factor_congruences": [t.to_json()["blocks"] for t in self.factor_congruences],
            "natural_map": list(self.natural_map.map) if self.natural_map else [0],
        }


def is_directly_indecomposable(alg: FiniteAlgebra, max_size=None) -> bool:
    return alg.size > 1 and len(factor_pairs(alg, max_size)) == 2


def is_subdirectly_irreducible(alg: FiniteAlgebra, max_size=None) -> bool:
    """Nontrivial with a least nonidentity congruence (the monolith)."""
    if alg.size == 1:
        return False
    cons = [c for c in all_congruences(alg, max_size) if not c.is_identity]
    monolith = reduce(meet, cons)
    return not monolith.is_identity


def _boolean_factor_lattice(alg, max_size):
    """Factor congruences with complements, checked to form a Boolean lattice."""
    complement = {}
    for fp in factor_pairs(alg, max_size):
        if complement.setdefault(fp.theta, fp.theta_star) != fp.theta_star:
            raise NonBooleanFC(f"{alg.name}: factor congruence {fp.theta} has two complements")
    fc = set(complement)
    for p, q in itertools.combinations(fc, 2):
        if meet(p, q) not in fc or _equivalence_join(p, q) not in fc:
            raise NonBooleanFC(f"{alg.name}: factor congruences are not closed under meet and join")
    for p, q, r in itertools.permutations(fc, 3):
        if meet(p, _equivalence_join(q, r)) != _equivalence_join(meet(p, q), meet(p, r)):
            raise NonBooleanFC(f"{alg.name}: factor congruences do not form a distributive lattice")
    return complement


def _atoms(fc):
    nonzero = [p for p in fc if not p.is_identity]
    return sorted(
        (p for p in nonzero if not any(q < p for q in nonzero)),
        key=lambda p: (-p.num_blocks, p.labels),
    )


def decompose(alg: FiniteAlgebra, max_size=None) -> DecompositionCertificate:
    """Split ``alg`` into directly indecomposable factors ``A / alpha*``, one per atom ``alpha``."""
    check_size(alg, max_size)
    if alg.size == 1:
        return DecompositionCertificate(alg, (), (), None)
    complement = _boolean_factor_lattice(alg, max_size)
    thetas = tuple(complement[a] for a in _atoms(complement))
    if not reduce(meet, thetas).is_identity:
        raise VerificationFailed(f"{alg.name}: the coatom factor congruences do not meet to the identity")
    factors = tuple(
        quotient(alg, t, name=f"{alg.name}/{i}")[0] for i, t in enumerate(thetas)
    )
    nat = natural_map(alg, thetas)
    if not (nat.is_injective and nat.is_surjective and is_homomorphism(nat)):
        raise VerificationFailed(f"{alg.name}: natural map onto the product of factors is not an isomorphism")
    nat = Homomorphism(alg, nat.target.renamed(" x ".join(f.name for f in factors)), nat.map)
    for f in factors:
        if not is_directly_indecomposable(f, max_size):
            raise VerificationFailed(f"{f.name} is not directly indecomposable")
    return DecompositionCertificate(alg, factors, thetas, nat)


def split_recursively(alg: FiniteAlgebra, max_size=None) -> list[FiniteAlgebra]:
    """Factors obtained by splitting along any nontrivial factor pair, recursively."""
    if alg.size == 1:
        return []
    for fp in factor_pairs(alg, max_size):
        if not (fp.theta.is_identity or fp.theta.is_total):
            left = quotient(alg, fp.theta)[0]
            right = quotient(alg, fp.theta_star)[0]
            return split_recursively(left, max_size) + split_recursively(right, max_size)
    return [alg]


def pierce_stalks(alg: FiniteAlgebra, ctx, max_size=None) -> list[FiniteAlgebra]:
    """Quotients ``A / U m`` over the maximal ideals ``m`` of the Boolean algebra Z(A).

    Each maximal ideal is the down-set of a coatom ``c`` of Z(A); its union is
    the join of the factor congruences of its members.
    """
    report = central_elements(alg, ctx, max_size)
    k = len(report.elements)
    top = [i for i, t in enumerate(report.thetas) if t.is_total]
    coatoms = [report.elements[report.complement[report.index(a)]] for a in report.atoms]
    stalks = []
    for n, c in enumerate(coatoms):
        ci = report.index(c)
        ideal = [i for i in range(k) if report.meet[i, ci] == i]
        if any(i in top for i in ideal):
            raise VerificationFailed(f"ideal below {c} is not proper")
        union = reduce(_equivalence_join, (report.thetas[i] for i in ideal))
        stalks.append(quotient(alg, union, name=f"{alg.name}@{n}")[0])
    return stalks
