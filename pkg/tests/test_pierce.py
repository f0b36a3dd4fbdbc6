import itertools

import numpy as np
import pytest

import oracles
from centralalg import corpus
from centralalg.algebra import Homomorphism, direct_product, homomorphisms, identity_hom, make_algebra
from centralalg.congruences import Partition, cg, compose, meet
from centralalg.errors import NotAHomomorphism, NotCentral, ShortTermMissing
from centralalg.pierce import (
    CentralContext,
    PierceContext,
    central_elements,
    complement_general,
    complement_short,
    complementary_pairs_oracle,
    context_from_json,
    hom_preserves_central,
    hom_preserves_complementary,
    is_complementary_pair_equational,
    is_complementary_pair_oracle,
    theta_zero_e,
)


def ctx_of(alg):
    return corpus.context_for(alg)


# contexts


def test_context_json_round_trip():
    sig = corpus.chain_lattice(2).signature
    ctx = corpus.l01_context(sig)
    data = ctx.to_json()
    assert data == {
        "n_witnesses": 1,
        "zeros": ["(zero)"],
        "ones": ["(one)"],
        "decomposition_term": "(meet (join x z1) (join y w1))",
        "short_term": None,
        "trusted_pierce": False,
    }
    back = context_from_json(data, sig)
    assert back.to_json() == data
    sem = corpus.semilattice_context()
    assert isinstance(context_from_json(sem.to_json(), corpus.join_semilattice_cube(1).signature), CentralContext)


def test_context_rejects_open_constants():
    sig = corpus.chain_lattice(2).signature
    with pytest.raises(ValueError):
        CentralContext.from_strings(sig, ["x"], ["(one)"])


def test_context_rejects_stray_variables():
    sig = corpus.chain_lattice(2).signature
    with pytest.raises(ValueError):
        PierceContext.from_strings(sig, ["(zero)"], ["(one)"], "(join x q)")


# oracle


def test_trivial_pair_everywhere():
    for key in ["chain-2", "m3", "z-6", "semilattice-2^2", "g-2"]:
        alg = corpus.build(key)
        ctx = ctx_of(alg)
        z, o = ctx.zero_values(alg), ctx.one_values(alg)
        assert is_complementary_pair_oracle(alg, ctx, z, o)
        assert is_complementary_pair_oracle(alg, ctx, o, z)


def test_cube_pair_from_semilattice_example():
    B = corpus.join_semilattice_cube(3)
    # (1,0,0) and (0,1,1), factor 0 most significant
    assert is_complementary_pair_oracle(B, corpus.semilattice_context(), (0b100,), (0b011,))
    assert not is_complementary_pair_oracle(B, corpus.semilattice_context(), (0b100,), (0b001,))


def test_m3_has_no_proper_central_elements():
    D = corpus.m3_lattice()
    ctx = corpus.l01_context(D.signature)
    for e in (1, 2, 3):
        assert not any(is_complementary_pair_oracle(D, ctx, (e,), (f,)) for f in range(5))


# equational test


def test_equational_examples():
    sq = corpus.boolean_lattice(2)
    assert is_complementary_pair_equational(sq, corpus.l01_context(sq.signature), (1,), (2,))
    z6 = corpus.z_n_ring(6)
    assert is_complementary_pair_equational(z6, corpus.ring_context(z6.signature), (3,), (4,))
    assert not is_complementary_pair_equational(z6, corpus.ring_context(z6.signature), (2,), (5,))


@pytest.mark.parametrize("alg", corpus.pierce_algebras(8), ids=lambda a: a.name)
def test_zero_one_pair_equational(alg):
    ctx = ctx_of(alg)
    assert is_complementary_pair_equational(alg, ctx, ctx.zero_values(alg), ctx.one_values(alg))


@pytest.mark.parametrize("alg", corpus.pierce_algebras(8), ids=lambda a: a.name)
def test_equational_agrees_with_oracle(alg):
    ctx = ctx_of(alg)
    for e, f in itertools.product(range(alg.size), repeat=2):
        assert is_complementary_pair_equational(alg, ctx, (e,), (f,)) == is_complementary_pair_oracle(
            alg, ctx, (e,), (f,)
        ), (alg.name, e, f)


def test_equational_agrees_on_m3():
    # bounded lattices satisfy the Pierce identities for the lattice U,
    # so M3 is covered even though it is not distributive
    D = corpus.m3_lattice()
    ctx = corpus.l01_context(D.signature)
    for e, f in itertools.product(range(5), repeat=2):
        assert is_complementary_pair_equational(D, ctx, (e,), (f,)) == is_complementary_pair_oracle(D, ctx, (e,), (f,))


# central elements


def test_central_elements_examples():
    A = corpus.join_semilattice_cube(2)
    assert central_elements(A, corpus.semilattice_context()).elements == ((0,), (1,), (2,), (3,))
    D = corpus.m3_lattice()
    assert central_elements(D, corpus.l01_context(D.signature)).elements == ((0,), (4,))
    L8 = corpus.boolean_lattice(3)
    rep = central_elements(L8, corpus.l01_context(L8.signature))
    assert len(rep.elements) == 8 and len(rep.atoms) == 3
    assert rep.atoms == ((1,), (2,), (4,))


def test_z6_idempotents():
    z6 = corpus.z_n_ring(6)
    rep = central_elements(z6, corpus.ring_context(z6.signature))
    assert {e for (e,) in rep.elements} == oracles.idempotents(oracles.raw(z6)) == {0, 1, 3, 4}
    assert [(p.e, p.f) for p in rep.pairs] == [((0,), (1,)), ((1,), (0,)), ((3,), (4,)), ((4,), (3,))]


@pytest.mark.parametrize("n", range(1, 13))
def test_ring_central_elements_are_idempotents(n):
    zn = corpus.z_n_ring(n)
    rep = central_elements(zn, corpus.ring_context(zn.signature))
    assert {e for (e,) in rep.elements} == oracles.idempotents(oracles.raw(zn))
    for p in rep.pairs:
        assert (p.e[0] + p.f[0]) % n == 1 % n


@pytest.mark.parametrize("alg", corpus.pierce_algebras(8), ids=lambda a: a.name)
def test_trusted_mode_matches_oracle(alg):
    ctx = ctx_of(alg)
    trusted = PierceContext(ctx.base, ctx.decomposition_term, ctx.short_term, trusted=True)
    a, b = central_elements(alg, ctx), central_elements(alg, trusted)
    assert a.elements == b.elements
    assert [(p.e, p.f) for p in a.pairs] == [(p.e, p.f) for p in b.pairs]
    assert np.array_equal(a.meet, b.meet) and np.array_equal(a.complement, b.complement)
    assert b.method != a.method


@pytest.mark.parametrize("key", ["lattice-2^3", "z-6", "semilattice-2^3", "chain-2", "m3", "g-2"])
def test_boolean_axioms(key):
    alg = corpus.build(key)
    rep = central_elements(alg, ctx_of(alg))
    k = len(rep.elements)
    M, J, C = rep.meet, rep.join, rep.complement
    bot = rep.index(ctx_of(alg).zero_values(alg))
    top = rep.index(ctx_of(alg).one_values(alg))
    for a, b, c in itertools.product(range(k), repeat=3):
        assert M[a, b] == M[b, a] and J[a, b] == J[b, a]
        assert M[a, J[b, c]] == J[M[a, b], M[a, c]]
        assert M[a, J[a, b]] == a
    for a in range(k):
        assert M[a, C[a]] == bot and J[a, C[a]] == top
        assert M[a, top] == a and J[a, bot] == a


def test_complements_unique():
    for key in ["lattice-2^3", "z-6", "semilattice-2^3", "z-4"]:
        alg = corpus.build(key)
        ctx = ctx_of(alg)
        pairs = complementary_pairs_oracle(alg, ctx)
        firsts = [e for e, _ in pairs]
        assert len(firsts) == len(set(firsts))


def test_product_center_is_coordinatewise():
    a, b = corpus.chain_lattice(3), corpus.boolean_lattice(2)
    P, (p0, p1) = direct_product([a, b])
    ctx = corpus.l01_context(P.signature)
    ZP = central_elements(P, ctx).elements
    Za = central_elements(a, ctx).elements
    Zb = central_elements(b, ctx).elements
    expected = sorted((x * b.size + y,) for (x,), (y,) in itertools.product(Za, Zb))
    assert list(ZP) == expected


# complements


def test_complement_general():
    sq = corpus.boolean_lattice(2)
    ctx = corpus.l01_context(sq.signature)
    assert complement_general(sq, ctx, (0,)) == (3,)
    assert complement_general(sq, ctx, (1,)) == (2,)
    z6 = corpus.z_n_ring(6)
    assert complement_general(z6, corpus.ring_context(z6.signature), (3,)) == (4,)


def test_complement_general_requires_central():
    D = corpus.m3_lattice()
    with pytest.raises(NotCentral):
        complement_general(D, corpus.l01_context(D.signature), (1,))


def test_complement_short():
    z6 = corpus.z_n_ring(6)
    ctx = corpus.ring_context(z6.signature)
    assert complement_short(z6, ctx, (3,)) == (4,)
    assert complement_short(z6, ctx, (0,)) == (1,)
    assert complement_short(z6, ctx, (1,)) == (0,)
    sq = corpus.boolean_lattice(2)
    with pytest.raises(ShortTermMissing):
        complement_short(sq, corpus.l01_context(sq.signature), (1,))


def test_complement_short_implication():
    alg = corpus.build("implication-3")
    ctx = corpus.implication_context(alg.signature)
    assert complement_short(alg, ctx, (0,)) == (2,)


# theta_{0,e}


def test_theta_zero_e_examples():
    sq = corpus.boolean_lattice(2)
    ctx = corpus.l01_context(sq.signature)
    assert theta_zero_e(sq, ctx, (0,)).is_identity
    assert theta_zero_e(sq, ctx, (3,)).is_total
    t1 = theta_zero_e(sq, ctx, (1,))
    assert t1 == Partition.from_blocks([[0, 1], [2, 3]])
    assert meet(t1, cg(sq, [(0, 2)])).is_identity


@pytest.mark.parametrize("alg", corpus.pierce_algebras(8), ids=lambda a: a.name)
def test_cg_zero_e_pairs_are_factor_pairs(alg):
    ctx = ctx_of(alg)
    z = ctx.zero_values(alg)
    for p in central_elements(alg, ctx).pairs:
        a = cg(alg, list(zip(z, p.e)))
        b = cg(alg, list(zip(z, p.f)))
        assert meet(a, b).is_identity
        assert compose(a, b).all() and compose(b, a).all()


# homomorphisms


def test_alpha():
    h = corpus.alpha_hom()
    ctx = corpus.semilattice_context(h.source.signature)
    c = hom_preserves_central(h, ctx)
    assert c.preserved and c.failures == ()
    r = hom_preserves_complementary(h, ctx)
    assert not r.preserved
    assert r.failures[0] == ((1,), (2,))
    # the images are not complementary in the cube
    assert not is_complementary_pair_oracle(h.target, ctx, (h(1),), (h(2),))


def test_c_into_d():
    h = corpus.inclusion_c_into_d()
    ctx = corpus.l01_context(h.source.signature)
    r = hom_preserves_central(h, ctx)
    assert not r.preserved
    assert r.failures == ((1,), (2,))


def test_identity_preserves():
    for key in ["lattice-2^2", "z-6", "semilattice-2^3"]:
        alg = corpus.build(key)
        ctx = ctx_of(alg)
        assert hom_preserves_central(identity_hom(alg), ctx).preserved
        assert hom_preserves_complementary(identity_hom(alg), ctx).preserved


def test_projection_preserves_complementary():
    P, (p0, _) = direct_product([corpus.chain_lattice(2), corpus.boolean_lattice(2)])
    ctx = corpus.l01_context(P.signature)
    assert hom_preserves_complementary(p0, ctx).preserved


def test_non_homomorphism_rejected():
    A, B = corpus.join_semilattice_cube(2), corpus.join_semilattice_cube(3)
    h = Homomorphism(A, B, corpus.ALPHA_PRINTED_MAP)
    with pytest.raises(NotAHomomorphism):
        hom_preserves_central(h, corpus.semilattice_context())
    with pytest.raises(NotAHomomorphism):
        hom_preserves_complementary(h, corpus.semilattice_context())


def test_central_and_complementary_preservation_agree_in_pierce_corpus():
    algs = [corpus.build(k) for k in ["chain-2", "chain-3", "lattice-2^2", "lattice-2^3"]]
    ctx = corpus.l01_context(algs[0].signature)
    count = 0
    for a, b in itertools.product(algs, repeat=2):
        for h in homomorphisms(a, b):
            count += 1
            assert hom_preserves_central(h, ctx).preserved == hom_preserves_complementary(h, ctx).preserved
    assert count > 20


def test_surjections_between_fhp_algebras_preserve_central():
    algs = [corpus.build(k) for k in ["chain-2", "chain-3", "lattice-2^2", "z-2", "z-6", "z-3"]]
    for a, b in itertools.product(algs, repeat=2):
        if a.signature != b.signature:
            continue
        ctx = ctx_of(a)
        for h in homomorphisms(a, b):
            if h.is_surjective:
                assert hom_preserves_central(h, ctx).preserved


def test_equal_constants_only_trivial_center():
    # a 2-element algebra with equal constants has only the trivial decomposition
    alg = make_algebra("flat", 2, {"zero": (0, [0]), "one": (0, [0])})
    ctx = CentralContext.from_strings(alg.signature, ["(zero)"], ["(one)"])
    assert central_elements(alg, ctx).elements == ((0,),)


# Cg(1, e) against the complement congruence Cg(0, f): observed, not a theorem


def _cg_one_e_mismatches(algs):
    out = []
    for alg in algs:
        ctx = ctx_of(alg)
        z, o = ctx.zero_values(alg), ctx.one_values(alg)
        for p in central_elements(alg, ctx).pairs:
            if cg(alg, list(zip(o, p.e))) != cg(alg, list(zip(z, p.f))):
                out.append((alg.name, p.e[0], p.f[0]))
    return out


def test_cg_one_e_matches_complement_in_pierce_corpus():
    assert _cg_one_e_mismatches(corpus.pierce_algebras(8) + [corpus.g_k(3)]) == []


def test_cg_one_e_differs_in_semilattices():
    # in 2x2, Cg(11, 01) only merges 01 with 11, while Cg(00, 10) also
    # merges 00 with 10, so the two differ
    got = _cg_one_e_mismatches([corpus.join_semilattice_cube(2)])
    assert got == [("semilattice-2^2", 1, 2), ("semilattice-2^2", 2, 1)]
