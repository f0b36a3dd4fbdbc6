"""
Congruences, products and quotients
===================================

Build a few small algebras, list their congruences, and see which pairs of
congruences split the algebra as a direct product.
"""

from centralalg import corpus
from centralalg.algebra import direct_product, is_isomorphic, quotient
from centralalg.congruences import all_congruences, cg, check_fhp_pair, factor_pairs

# The square 2 x 2 as a bounded lattice.  Elements are numbered in
# mixed radix with the first coordinate most significant: 0=(0,0), 1=(0,1),
# 2=(1,0), 3=(1,1).
square = corpus.boolean_lattice(2)
print(square)
for theta in all_congruences(square):
    print("  ", theta)

# Identifying (0,0) with (0,1) forces (1,0) ~ (1,1) as well: the result is
# the kernel of the first projection.
print("Cg(0,1) =", cg(square, [(0, 1)]))

# A factor pair is two congruences that meet in the identity and permute
# to the total relation.  The square has the trivial two and one more.
for fp in factor_pairs(square):
    print("factor pair:", fp.theta, "/", fp.theta_star)

# Quotienting by one half of a factor pair gives back a factor.
chain, nu = quotient(square, factor_pairs(square)[2].theta)
print("quotient is a 2-chain:", is_isomorphic(chain, corpus.chain_lattice(2)))

# M3, the diamond, has no proper congruences at all.
print("Con(M3):", [str(t) for t in all_congruences(corpus.m3_lattice())])

# Products of lattices have only product congruences.  Join semilattices
# do not.
c2 = corpus.chain_lattice(2)
print("FHP witness for 2-chain x 2-chain:", check_fhp_pair(c2, c2))
s2 = corpus.join_semilattice_cube(1)
print("FHP witness for the semilattice 2 x 2:", check_fhp_pair(s2, s2))

P, (p0, p1) = direct_product([corpus.z_n_ring(2), corpus.z_n_ring(3)])
print("Z2 x Z3 is Z6:", is_isomorphic(P, corpus.z_n_ring(6)))
