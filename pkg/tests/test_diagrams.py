from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from qmetric.diagrams import (FC, TL, PairingDiagram, WeightedDiagram, catalan, compose,
                              enumerate_fc, enumerate_tl, fc_colors, fc_generators, fuss_catalan,
                              gram_matrix, gram_rank, identity, involute, quantum_vs_classical,
                              tensor, tl_generators, weighted)
from qmetric.permgroup import automorphism_group, orbit_count_on_tuples, symmetric_group
from qmetric.quadfield import QuadScalar

from conftest import sq_product

DELTA = {None: QuadScalar.sqrt(5)}


def catalan_recurrence(m):
    c = [1]
    for i in range(m):
        c.append(sum(c[j] * c[i - j] for j in range(i + 1)))
    return c[m]


# -- enumeration -----------------------------------------------------------

@pytest.mark.parametrize("k, l", [(k, l) for k in range(4) for l in range(4) if k + l <= 6])
def test_tl_counts(k, l):
    assert len(enumerate_tl(k, l)) == catalan(k + l) == catalan_recurrence(k + l)


def test_tl_examples():
    assert len(enumerate_tl(0, 0)) == 1
    assert len(enumerate_tl(1, 1)) == 2
    assert len(enumerate_tl(0, 4)) == 14


@pytest.mark.parametrize("k, count", [(0, 1), (1, 1), (2, 3), (3, 12), (4, 55)])
def test_fc_counts(k, count):
    assert len(enumerate_fc(0, k)) == count == fuss_catalan(k)


def test_fc_small():
    (d,) = enumerate_fc(0, 1)
    assert d.pairs == ((0, 3), (1, 2))
    # identity, the projection E and U U*: the cyclic boundary word is the
    # same as for 0 -> 2, so the count matches it
    ends = enumerate_fc(1, 1)
    assert len(ends) == 3 == len(enumerate_fc(0, 2))
    g = fc_generators(2, 2)
    uu = compose(g["U"], involute(g["U"]), FC(2, 2).weights()).diagram
    assert {identity(4, fc_colors(4)).diagram, g["E"].diagram, uu} == set(ends)
    assert fc_colors(8) == tuple("yzzyyzzy")


def test_invalid_diagrams():
    with pytest.raises(ValueError):
        PairingDiagram(0, 4, ((0, 2), (1, 3)))
    with pytest.raises(ValueError):
        PairingDiagram(0, 4, ((0, 1), (2, 3)), fc_colors(4))
    with pytest.raises(ValueError):
        PairingDiagram(0, 2, ((0, 0),))
    with pytest.raises(ValueError):
        WeightedDiagram(QuadScalar(), PairingDiagram(0, 0, ()))


# -- generators ------------------------------------------------------------

def test_tl_unit_is_isometry():
    g = tl_generators(4)
    r = compose(involute(g["U"]), g["U"], TL(4).weights())
    assert (r.bottom, r.top, r.scalar) == (0, 0, 1)


def test_tl_unit_law():
    g = tl_generators(9)
    r = compose(g["M"], tensor(g["U"], identity(2)), TL(9).weights())
    assert r == identity(2)
    r = compose(g["M"], tensor(identity(2), g["U"]), TL(9).weights())
    assert r == identity(2)


def test_tl_generators_need_square():
    with pytest.raises(ValueError):
        tl_generators(3)


def test_fc_projection_is_idempotent():
    w = FC(2, 3).weights()
    with pytest.raises(ValueError):
        fc_generators(2, 3)
    g = fc_generators(2, 2)
    E = g["E"]
    assert compose(E, E, FC(2, 2).weights()) == E
    assert involute(E) == E
    # idempotence does not depend on the generator field constraint
    E3 = WeightedDiagram(QuadScalar.sqrt(3).inverse(), E.diagram)
    assert compose(E3, E3, w) == E3


def test_fc_unit_laws():
    g = fc_generators(2, 2)
    w = FC(2, 2).weights()
    ident = identity(4, fc_colors(4))
    assert compose(g["M"], tensor(g["U"], ident), w) == ident
    assert compose(g["M"], tensor(ident, g["U"]), w) == ident
    assert compose(involute(g["U"]), g["U"], w).scalar == 1


def test_tensor_examples():
    i1 = identity(1)
    assert tensor(i1, i1) == identity(2)
    g = tl_generators(4)
    uu = tensor(g["U"], g["U"])
    assert (uu.bottom, uu.top) == (0, 4)
    assert uu.scalar == QuadScalar.rational(1) / QuadScalar.sqrt(4)
    assert uu.diagram.pairs == ((0, 1), (2, 3))
    empty = weighted(PairingDiagram(0, 0, ()))
    assert tensor(g["M"], empty) == g["M"] == tensor(empty, g["M"])


def test_involute_examples():
    g = tl_generators(4)
    cup = involute(g["U"])
    assert (cup.bottom, cup.top, cup.scalar) == (2, 0, g["U"].scalar)
    m = involute(g["M"])
    assert (m.bottom, m.top) == (2, 4)
    assert involute(involute(g["M"])) == g["M"]


# -- random compatible triples ---------------------------------------------

def _tl(b, t):
    return st.sampled_from(enumerate_tl(b // 2, t // 2)).map(weighted)


@st.composite
def tl_triple(draw):
    a, b, c, d = (2 * draw(st.integers(0, 2)) for _ in range(4))
    return draw(_tl(c, d)), draw(_tl(b, c)), draw(_tl(a, b))


@settings(max_examples=150, deadline=None)
@given(tl_triple())
def test_compose_associative(triple):
    A, B, C = triple
    assert compose(compose(A, B, DELTA), C, DELTA) == compose(A, compose(B, C, DELTA), DELTA)


@settings(max_examples=150, deadline=None)
@given(tl_triple())
def test_involution_anti_homomorphism(triple):
    A, B, _ = triple
    assert involute(compose(A, B, DELTA)) == compose(involute(B), involute(A), DELTA)
    assert involute(involute(A)) == A


def _fc(b, t):
    return st.sampled_from(enumerate_fc(b, t)).map(weighted)


@settings(max_examples=80, deadline=None)
@given(st.tuples(*(st.integers(0, 2) for _ in range(4))).flatmap(
    lambda s: st.tuples(_fc(s[2], s[3]), _fc(s[1], s[2]), _fc(s[0], s[1]))))
def test_fc_associative_and_involutive(triple):
    A, B, C = triple
    w = FC(2, 3).weights()
    assert compose(compose(A, B, w), C, w) == compose(A, compose(B, C, w), w)
    assert involute(compose(A, B, w)) == compose(involute(B), involute(A), w)


def test_compose_shape_mismatch():
    with pytest.raises(ValueError):
        compose(identity(2), identity(4), DELTA)


# -- Gram matrices and ranks -----------------------------------------------

@pytest.mark.parametrize("family, k", [(TL(3), 3), (TL(5), 4), (FC(2, 3), 2), (FC(2, 2), 3)])
def test_gram_symmetric_with_maximal_diagonal(family, k):
    G = gram_matrix(family, k)
    size = len(G)
    assert all(G[i][j] == G[j][i] for i in range(size) for j in range(size))
    if isinstance(family, TL):
        # a diagram against itself closes k loops, the most possible
        assert all(G[i][i] == QuadScalar.sqrt(family.n) ** k for i in range(size))


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_tl_ranks_nondegenerate(n):
    assert [gram_rank(TL(n), k) for k in range(6)] == [1, 1, 2, 5, 14, 42]


def test_tl3_rank_equals_burnside():
    S3 = symmetric_group(3)
    assert [gram_rank(TL(3), k) for k in range(6)] == [orbit_count_on_tuples(S3, k) for k in range(6)]


@pytest.mark.parametrize("fam", [TL(2), TL(3), TL(4), FC(2, 2), FC(2, 3), FC(3, 2)])
def test_rank_one_at_level_one(fam):
    assert gram_rank(fam, 1) == 1


@pytest.mark.parametrize("params, ranks", [
    ((2, 2), [1, 1, 3, 10, 35]),
    ((2, 3), [1, 1, 3, 11, 45]),
    ((3, 2), [1, 1, 3, 11, 45]),
])
def test_fc_ranks(params, ranks):
    fam = FC(*params)
    assert [gram_rank(fam, k) for k in range(5)] == ranks
    assert all(r <= len(fam.diagrams(k)) for k, r in enumerate(ranks))


def test_rank_bounds():
    with pytest.raises(ValueError):
        gram_rank(TL(4), 6)
    with pytest.raises(ValueError):
        gram_rank(FC(2, 2), 5)


def test_quantum_vs_classical_tables(square):
    S4 = symmetric_group(4)
    rows = quantum_vs_classical(TL(4), [orbit_count_on_tuples(S4, k) for k in range(5)])
    assert (rows[4].rank, rows[4].classical, rows[4].gap) == (14, 15, 1)
    S5 = symmetric_group(5)
    rows = quantum_vs_classical(TL(5), [orbit_count_on_tuples(S5, k) for k in range(4)])
    assert (rows[3].rank, rows[3].classical, rows[3].gap) == (5, 5, 0)
    D4 = automorphism_group(square)
    rows = quantum_vs_classical(FC(2, 2), [orbit_count_on_tuples(D4, k) for k in range(5)])
    assert [(r.rank, r.classical) for r in rows] == [(1, 1), (1, 1), (3, 3), (10, 10), (35, 36)]
    with pytest.raises(ValueError):
        quantum_vs_classical(TL(4), [1, 1], max_k=3)
    with pytest.raises(ValueError):
        quantum_vs_classical(TL(4), [1, 0])


@pytest.mark.parametrize("m, s", [(2, 3), (3, 2)])
def test_fc_below_classical(m, s):
    G = automorphism_group(sq_product(m, s))
    quantum_vs_classical(FC(m, s), [orbit_count_on_tuples(G, k) for k in range(4)])
