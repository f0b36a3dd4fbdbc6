"""
Central elements and what homomorphisms do to them
==================================================

An element e is central when some decomposition A = B x C sends it to
(0, 1); its partner f goes to (1, 0).  Central elements of a finite algebra
form a Boolean algebra Z(A).
"""

from centralalg import corpus
from centralalg.algebra import Homomorphism, is_homomorphism
from centralalg.pierce import (
    central_elements,
    complement_short,
    hom_preserves_central,
    hom_preserves_complementary,
    is_complementary_pair_oracle,
)

# In Z6 the central elements are exactly the idempotents 0, 1, 3, 4.
z6 = corpus.z_n_ring(6)
ring = corpus.ring_context(z6.signature)
Z = central_elements(z6, ring)
print("Z(Z6) =", [e for (e,) in Z.elements])
print("pairs:", [(p.e[0], p.f[0]) for p in Z.pairs])

# The ring has a short term u = x + z(y - x); f = u(1, 0, e) is the
# complement of e.
print("complement of 3:", complement_short(z6, ring, (3,)))

# In the cube 2^3 of join semilattices, (1,0,0) and (0,1,1) are
# complementary.
cube = corpus.join_semilattice_cube(3)
sem = corpus.semilattice_context()
print("(1,0,0) <> (0,1,1):", is_complementary_pair_oracle(cube, sem, (0b100,), (0b011,)))

# A map of semilattices that keeps central elements central but breaks a
# complementary pair: 00->000, 01->101, 10->011, 11->111.
alpha = corpus.alpha_hom()
print("alpha:", alpha.map)
print("  preserves central:", hom_preserves_central(alpha, sem).preserved)
rep = hom_preserves_complementary(alpha, sem)
print("  preserves complementary:", rep.preserved, "witness", rep.failures[0])

# Printed as 00->000, 01->001, 10->011, 11->111 the map would not even be a
# homomorphism: 001 v 011 = 011, which is not the image 111 of 01 v 10.
printed = Homomorphism(alpha.source, alpha.target, corpus.ALPHA_PRINTED_MAP)
print("the 001 variant is a homomorphism:", is_homomorphism(printed))

# The square sits inside the diamond M3, but M3 has only 0 and 1 central,
# so the inclusion loses the central elements (0,1) and (1,0).
inc = corpus.inclusion_c_into_d()
lat = corpus.l01_context(inc.source.signature)
print("Z(C) has", len(central_elements(inc.source, lat).elements), "elements;",
      "Z(D) has", len(central_elements(inc.target, lat).elements))
print("inclusion preserves central:", hom_preserves_central(inc, lat))
