"""
Decomposition terms and other term conditions
=============================================

Identities are checked exhaustively on a set of generating algebras; since
identities survive products, subalgebras and images, a pass on the
generators is a pass on the whole variety they generate.
"""

from centralalg import corpus
from centralalg.pierce import PierceContext
from centralalg.terms import parse_term
from centralalg.varieties import GeneratorSet, ShellTerms, verify_discriminator, verify_pierce, verify_shell, verify_short

two = corpus.chain_lattice(2)
lat = corpus.l01_context()
print(verify_pierce(GeneratorSet((two,)), lat).to_json())

# A bad candidate returns a concrete failing assignment.
bad = PierceContext.from_strings(two.signature, ["(zero)"], ["(one)"], "x")
print(verify_pierce(GeneratorSet((two,)), bad).to_json())

# Rings with unit: u = x + z(y - x) is a short decomposition term.
z6 = corpus.z_n_ring(6)
print(verify_short(GeneratorSet((z6,)), corpus.ring_context(z6.signature)).status)

# x * y and x + y make rings a variety of shells.
st = ShellTerms((parse_term("(mul x1 y1)", z6.signature),), (parse_term("(add x1 y1)", z6.signature),))
print("ring shell:", verify_shell(GeneratorSet((z6,)), corpus.ring_context(z6.signature), st).status)

# On the 3-chain with implication, d = (x => y) ^ (y => x) is top when x = y
# and bottom otherwise, which gives a discriminator.
c3 = corpus.c_k_implication(3)
t = parse_term(
    "(join (meet (meet (imp x y) (imp y x)) z) (meet (imp (meet (imp x y) (imp y x)) (zero)) x))",
    c3.signature,
)
print("discriminator on C3:", verify_discriminator(c3, t).status)
