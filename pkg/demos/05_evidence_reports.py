"""
Evidence reports
================

Collect, for a handful of algebras from one variety, the checks that bear
on whether the variety is coextensive.  Every line states what it was
checked over or shows a counterexample.
"""

from centralalg import corpus
from centralalg.algebra import homomorphisms
from centralalg.varieties import GeneratorSet, coextensivity_report

lattices = [corpus.build(k) for k in ["chain-2", "lattice-2^2", "lattice-2^3", "chain-3"]]
homs = [h for a in lattices for b in lattices for h in homomorphisms(a, b)]
rep = coextensivity_report(GeneratorSet(tuple(lattices), "bounded distributive lattices"), corpus.l01_context(), homs)
print(rep.corpus, "failing:", rep.failures)

semis = [corpus.build(k) for k in ["semilattice-2", "semilattice-2^2", "semilattice-2^3"]]
rep = coextensivity_report(GeneratorSet(tuple(semis), "join semilattices"), corpus.semilattice_context(), [corpus.alpha_hom()])
print(rep.corpus, "failing:", rep.failures)
print(rep.verdicts["stability_on_corpus"].counterexample)

bounded = [corpus.build(k) for k in ["chain-2", "lattice-2^2", "m3"]]
rep = coextensivity_report(GeneratorSet(tuple(bounded), "bounded lattices"), corpus.l01_context(), [corpus.inclusion_c_into_d()])
print(rep.corpus, "failing:", rep.failures)
print(rep.dumps())
