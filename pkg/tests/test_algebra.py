import itertools
import json

import numpy as np
import pytest

import oracles
from centralalg import corpus
from centralalg.algebra import (
    FiniteAlgebra,
    Homomorphism,
    check_identity,
    decode,
    direct_product,
    encode,
    eval_term,
    find_isomorphism,
    homomorphisms,
    identity_hom,
    is_homomorphism,
    is_isomorphic,
    make_algebra,
    quotient,
    subalgebra,
    subalgebra_generated,
    term_operation,
    trivial_algebra,
)
from centralalg.congruences import Partition, kernel
from centralalg.errors import (
    ArityError,
    InvalidTable,
    NotACongruence,
    SignatureMismatch,
    TermSyntaxError,
    UnboundVariable,
    UnknownSymbol,
)
from centralalg.terms import App, Var, parse_term, substitute, variables


@pytest.fixture
def lat():
    return corpus.chain_lattice(2)


@pytest.fixture
def square():
    return corpus.boolean_lattice(2)


# terms


def test_parse_u_term(lat):
    t = parse_term("(meet (join x z1) (join y w1))", lat.signature)
    assert t == App("meet", (App("join", (Var("x"), Var("z1"))), App("join", (Var("y"), Var("w1")))))
    assert str(t) == "(meet (join x z1) (join y w1))"


def test_parse_variable():
    assert parse_term("x") == Var("x")


def test_parse_constant(lat):
    assert parse_term("(zero)", lat.signature) == App("zero", ())


@pytest.mark.parametrize(
    "text, exc",
    [
        ("(join x)", ArityError),
        ("(frob x y)", UnknownSymbol),
        ("(join x y", TermSyntaxError),
        ("()", TermSyntaxError),
        ("", TermSyntaxError),
        ("(join x y))", TermSyntaxError),
        ("((join) x)", TermSyntaxError),
    ],
)
def test_parse_errors(lat, text, exc):
    with pytest.raises(exc):
        parse_term(text, lat.signature)


def test_variables_first_occurrence_order():
    t = parse_term("(f y (g x y) z)")
    assert variables(t) == ["y", "x", "z"]
    assert variables(t, parse_term("(h w x)")) == ["y", "x", "z", "w"]


def test_substitute():
    t = substitute(parse_term("(join x z1)"), {"z1": parse_term("(zero)")})
    assert str(t) == "(join x (zero))"


# evaluation


def test_eval_join_with_bottom(lat):
    assert eval_term(lat, parse_term("(join x (zero))", lat.signature), {"x": 1}) == 1


def test_eval_u_on_square(square):
    t = parse_term(corpus.LATTICE_U, square.signature)
    # x=(0,0), y=(1,1), z1=(0,1), w1=(1,0): first coordinate from x, second from y
    got = eval_term(square, t, {"x": 0, "y": 3, "z1": 1, "w1": 2})
    assert got == encode([0, 1], [2, 2]) == 1


def test_eval_ring_short_term():
    z6 = corpus.z_n_ring(6)
    t = parse_term("(add x (mul z (add y (neg x))))", z6.signature)
    assert eval_term(z6, t, {"x": 2, "y": 5, "z": 1}) == 5


def test_eval_unbound(lat):
    with pytest.raises(UnboundVariable):
        eval_term(lat, parse_term("(join x y)"), {"x": 0})


def test_term_operation_matches_oracle():
    z6 = corpus.z_n_ring(6)
    t = parse_term("(add x (mul z (add y (neg x))))", z6.signature)
    table = term_operation(z6, t, ["x", "y", "z"])
    r = oracles.raw(z6)
    nested = ("add", "x", ("mul", "z", ("add", "y", ("neg", "x"))))
    for x in range(6):
        for y in range(6):
            for z in range(6):
                assert table[x, y, z] == oracles.evaluate(r, nested, {"x": x, "y": y, "z": z})


def test_check_identity(lat):
    sig = lat.signature
    u = parse_term(corpus.LATTICE_U, sig)
    u01 = substitute(u, {"z1": parse_term("(zero)"), "w1": parse_term("(one)")})
    assert check_identity([lat], u01, Var("x")) is None
    assert check_identity([lat], Var("x"), Var("y")) == (0, {"x": 0, "y": 1})


def test_check_identity_ring():
    z6 = corpus.z_n_ring(6)
    u = parse_term(corpus.RING_U, z6.signature)
    assert check_identity([z6], substitute(u, {"z1": parse_term("(one)")}), Var("y")) is None


def test_check_identity_reports_second_algebra():
    c2, c3 = corpus.chain_lattice(2), corpus.chain_lattice(3)
    # x v (x ^ y) = x holds; x ^ one = one fails at x=0 in the first algebra
    assert check_identity([c2, c3], parse_term("(join x (meet x y))"), Var("x")) is None
    idx, env = check_identity([c2, c3], parse_term("(meet x (one))"), parse_term("(one)"))
    assert (idx, env) == (0, {"x": 0})


# construction and validation


def test_make_algebra_rejects_bad_tables():
    with pytest.raises(InvalidTable):
        make_algebra("bad", 2, {"f": (1, [0, 2])})
    with pytest.raises(InvalidTable):
        make_algebra("bad", 2, {"f": (2, [0, 1, 1])})


def test_tables_are_read_only(lat):
    with pytest.raises(ValueError):
        lat.tables["join"][0, 0] = 1


def test_json_round_trip(square):
    data = square.to_json()
    assert json.loads(json.dumps(data)) == data
    back = FiniteAlgebra.from_json(data)
    assert back.same_structure(square) and back.name == square.name


def test_flat_index_rule():
    c3 = corpus.chain_lattice(3)
    join = next(op for op in c3.to_json()["operations"] if op["symbol"] == "join")
    # flat index of (1, 2) is 1*3 + 2
    assert join["table"][1 * 3 + 2] == 2


def test_encode_decode():
    sizes = [2, 3, 2]
    for x in range(12):
        assert encode(decode(x, sizes), sizes) == x
    assert decode(5, [2, 3]) == (1, 2)


# products, quotients, subalgebras


def test_product_is_coordinatewise():
    P, (p0, p1) = direct_product([corpus.chain_lattice(2), corpus.chain_lattice(2)])
    assert P.size == 4
    for a in range(4):
        for b in range(4):
            assert decode(P.op("join", a, b), [2, 2]) == tuple(
                max(i, j) for i, j in zip(decode(a, [2, 2]), decode(b, [2, 2]))
            )
    assert is_homomorphism(p0) and is_homomorphism(p1)


def test_product_of_three_semilattices():
    B = corpus.join_semilattice_cube(3)
    assert B.size == 8 and B.constant("one") == 7


def test_unary_product(lat):
    P, (p,) = direct_product([lat])
    assert P.same_structure(lat) and p.map == (0, 1)


def test_quotient_by_identity_and_total(square):
    Q, nu = quotient(square, Partition.identity(4))
    assert is_isomorphic(Q, square)
    Q, nu = quotient(square, Partition.total(4))
    assert Q.size == 1


def test_quotient_by_kernel_is_chain(square):
    P, (p0, _) = direct_product([corpus.chain_lattice(2)] * 2)
    Q, nu = quotient(square, kernel(p0))
    assert Q.same_structure(corpus.chain_lattice(2))


def test_quotient_rejects_non_congruence(square):
    with pytest.raises(NotACongruence):
        quotient(square, Partition.from_blocks([[0, 1], [2], [3]]))


def test_subalgebra_generated(lat, square):
    assert subalgebra_generated(lat, []) == {0, 1}
    assert subalgebra_generated(square, [1, 2]) == {0, 1, 2, 3}
    assert subalgebra_generated(square, range(4)) == {0, 1, 2, 3}
    r = oracles.raw(corpus.m3_lattice())
    m3 = corpus.m3_lattice()
    for seed in [(1,), (1, 2), (1, 2, 3)]:
        assert subalgebra_generated(m3, seed) == oracles.generated(r, seed)


def test_subalgebra_of_m3_is_square():
    m3 = corpus.m3_lattice()
    S, inc = subalgebra(m3, {0, 1, 2, 4})
    assert is_isomorphic(S, corpus.boolean_lattice(2))
    assert is_homomorphism(inc) and inc.map == (0, 1, 2, 4)


def test_trivial_algebra(lat):
    T = trivial_algebra(lat.signature)
    assert T.size == 1 and T.op("join", 0, 0) == 0


# homomorphisms and isomorphisms


def test_printed_alpha_is_not_a_homomorphism():
    A, B = corpus.join_semilattice_cube(2), corpus.join_semilattice_cube(3)
    h = Homomorphism(A, B, corpus.ALPHA_PRINTED_MAP)
    assert not is_homomorphism(h)
    # 01 v 10 = 11 but 001 v 011 = 011, not 111
    assert B.op("join", h(1), h(2)) == 0b011 != h(A.op("join", 1, 2))


def test_corrected_alpha_is_a_homomorphism():
    h = corpus.alpha_hom()
    assert is_homomorphism(h)
    assert oracles.is_hom(oracles.raw(h.source), oracles.raw(h.target), h.map)
    assert h(0) == 0 and h(3) == 7


def test_identity_is_hom(square):
    assert is_homomorphism(identity_hom(square))


def test_swap_breaks_constants(lat):
    assert not is_homomorphism(Homomorphism(lat, lat, (1, 0)))


def test_signature_mismatch():
    with pytest.raises(SignatureMismatch):
        Homomorphism(corpus.chain_lattice(2), corpus.z_n_ring(2), (0, 1))


def test_find_isomorphism():
    sq = corpus.boolean_lattice(2)
    assert find_isomorphism(sq, sq) == (0, 1, 2, 3)
    a, _ = direct_product([corpus.chain_lattice(2), corpus.chain_lattice(3)])
    b, _ = direct_product([corpus.chain_lattice(3), corpus.chain_lattice(2)])
    iso = find_isomorphism(a, b)
    assert iso is not None and is_homomorphism(Homomorphism(a, b, iso))
    assert oracles.isomorphic(oracles.raw(a), oracles.raw(b))
    assert find_isomorphism(corpus.chain_lattice(2), corpus.chain_lattice(3)) is None


def test_non_isomorphic_same_size():
    assert not is_isomorphic(corpus.chain_lattice(4), corpus.boolean_lattice(2))
    assert not oracles.isomorphic(oracles.raw(corpus.chain_lattice(4)), oracles.raw(corpus.boolean_lattice(2)))


def test_homomorphism_enumeration_matches_brute_force():
    for a, b in [
        (corpus.chain_lattice(3), corpus.boolean_lattice(2)),
        (corpus.boolean_lattice(2), corpus.chain_lattice(3)),
        (corpus.join_semilattice_cube(2), corpus.join_semilattice_cube(2)),
    ]:
        ra, rb = oracles.raw(a), oracles.raw(b)
        brute = [m for m in itertools.product(range(b.size), repeat=a.size) if oracles.is_hom(ra, rb, m)]
        assert [h.map for h in homomorphisms(a, b)] == brute


def test_hom_json_round_trip():
    h = corpus.alpha_hom()
    data = h.to_json()
    assert data == {"source": "semilattice-2^2", "target": "semilattice-2^3", "map": [0, 5, 3, 7]}
    back = Homomorphism.from_json(data, {h.source.name: h.source, h.target.name: h.target})
    assert back.map == h.map


def test_table_dtype(lat):
    assert lat.tables["join"].dtype.kind == "i"
    assert np.asarray(lat.tables["zero"]).shape == ()
