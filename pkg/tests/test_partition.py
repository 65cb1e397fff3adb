from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from bintutte import (
    BinaryMatroid,
    Gf2Matrix,
    Graph,
    ParameterError,
    TwoPower,
    eval_spectrum_at,
    from_graph,
    hypergraph_potts,
    ising,
    potts_matroid,
    random_cluster_graph,
    sat_spectrum,
    tutte_T,
    tutte_tilde,
)
from bintutte.hypergraph import Hypergraph
from bintutte.matroid import full_rank
from bintutte.partition import SatSpectrum
from strategies import bit_rows, matroid_of, rationals

K3_GRAPH = Graph(3, ((0, 1), (1, 2), (0, 2)))
K3 = from_graph(K3_GRAPH)
U12 = BinaryMatroid.from_rows([[1, 1]])
EMPTY = BinaryMatroid(Gf2Matrix.zeros(2, 0))
LOOP = BinaryMatroid.from_rows([[0]])


def test_tutte_tilde_examples():
    assert tutte_tilde(EMPTY, Fraction(3, 7), {}) == 1
    g = Fraction(5, 3)
    assert tutte_tilde(LOOP, 2, {0: g}) == 1 + g
    assert tutte_tilde(K3, 2, 1) == Fraction(7, 2)


def test_tutte_tilde_rejects_q_zero():
    with pytest.raises(ParameterError):
        tutte_tilde(K3, 0, 1)


def test_tutte_T_examples():
    coloop = BinaryMatroid.from_rows([[1]])
    x, y = Fraction(3, 2), Fraction(-4, 5)
    assert tutte_T(coloop, x, y) == x
    assert tutte_T(LOOP, x, y) == y
    # q = gamma = 1 at (x, y) = (2, 2): T counts subsets
    assert tutte_T(K3, 2, 2) == tutte_tilde(K3, 1, 1) * 1 ** 2 == 8
    assert tutte_T(K3, 1, 1) == 3  # spanning trees


def test_random_cluster_examples():
    assert random_cluster_graph(Graph(4, ()), 3, []) == 81
    assert random_cluster_graph(K3_GRAPH, 2, 1) == 28
    assert random_cluster_graph(Graph(2, ((0, 1),)), 2, 1) == 6


def test_potts_and_ising_examples():
    assert potts_matroid(U12, 2, 1) == 5
    assert potts_matroid(BinaryMatroid(Gf2Matrix.zeros(3, 0)), 2, {}) == 8
    g = Fraction(2, 9)
    assert potts_matroid(LOOP, 2, {0: g}) == 2 * (1 + g)
    assert ising(U12, 1) == 5 == 2 * tutte_tilde(U12, 2, 1)
    assert ising(K3, 1) == 28
    assert ising(EMPTY, {}) == 4
    with pytest.raises(ParameterError):
        potts_matroid(U12, 3, 1)


def test_spectrum_examples():
    assert sat_spectrum(U12).coeffs == (1, 0, 1)
    assert sat_spectrum(LOOP).coeffs == (0, 2)
    assert sat_spectrum(BinaryMatroid(Gf2Matrix.identity(2))).coeffs == (1, 2, 1)
    assert str(sat_spectrum(U12)) == "1 0 1"


def test_hypergraph_potts_examples():
    assert hypergraph_potts(Hypergraph(3, ((0, 1, 2),)), 2, 1) == 10
    assert hypergraph_potts(Hypergraph(4, ()), 3, 1) == 81
    assert hypergraph_potts(Hypergraph(4, ((0, 1), (2, 3))), 2, 1) == 36


def test_eval_spectrum_examples():
    s = SatSpectrum((1, 0, 1))
    assert eval_spectrum_at(s, TwoPower(1), 64).lo == 5
    at_root2 = eval_spectrum_at(s, TwoPower(Fraction(1, 2)), 128)
    assert at_root2.contains(3) and at_root2.width <= Fraction(1, 2**126)
    two_z = eval_spectrum_at(SatSpectrum((0, 2)), TwoPower(Fraction(1, 2)), 128)
    assert two_z.width <= Fraction(1, 2**126)
    # 2 sqrt 2 squared is 8
    assert two_z.lo**2 < 8 < two_z.hi**2


def test_eval_spectrum_rational_point_is_exact():
    s = SatSpectrum((3, 1, 4, 1))
    z = Fraction(5, 3)
    r = eval_spectrum_at(s, z)
    assert r.is_point and r.lo == s(z)


@given(bit_rows(max_rows=3, max_cols=5), st.data())
def test_tutte_tilde_matches_subset_oracle(rc, data):
    rows, c = rc
    m = matroid_of(rc)
    q = data.draw(rationals(nonzero=True))
    w = data.draw(st.lists(rationals(), min_size=c, max_size=c))
    assert tutte_tilde(m, q, dict(enumerate(w))) == oracles.tutte_tilde(rows, c, q, w)


@given(bit_rows(max_rows=3, max_cols=5), rationals(), rationals())
def test_tutte_T_matches_oracle(rc, x, y):
    rows, c = rc
    assert tutte_T(matroid_of(rc), x, y) == oracles.tutte_T(rows, c, x, y)


@given(bit_rows(max_rows=4, max_cols=5), st.data())
def test_ising_matches_spin_oracle(rc, data):
    rows, c = rc
    m = matroid_of(rc)
    w = data.draw(st.lists(rationals(), min_size=c, max_size=c))
    assert ising(m, dict(enumerate(w))) == oracles.ising(rows, c, w)
    assert 2 ** len(rows) * tutte_tilde(m, 2, dict(enumerate(w))) == ising(m, dict(enumerate(w)))


@given(bit_rows(max_rows=4, max_cols=6))
def test_spectrum_matches_oracle(rc):
    rows, c = rc
    s = sat_spectrum(matroid_of(rc))
    assert list(s.coeffs) == oracles.sat_counts(rows, c)
    assert sum(s.coeffs) == 2 ** len(rows)


@given(bit_rows(max_rows=4, max_cols=5), rationals())
def test_spectrum_evaluates_to_ising(rc, g):
    m = matroid_of(rc)
    assert sat_spectrum(m)(1 + g) == ising(m, g)


def test_spectrum_chunking_does_not_matter():
    m = BinaryMatroid.from_rows([[1, 0, 1, 1], [0, 1, 1, 0], [1, 1, 0, 1], [0, 0, 1, 1], [1, 1, 1, 1]])
    assert sat_spectrum(m, chunk_bits=2) == sat_spectrum(m)


def test_workers_do_not_change_results():
    m = BinaryMatroid.from_rows([[1, 0, 1, 1, 0, 1], [0, 1, 1, 0, 1, 1], [1, 1, 0, 1, 1, 0]])
    w = {e: Fraction(e + 1, 3) for e in m.ground}
    assert tutte_tilde(m, Fraction(3, 2), w, workers=3) == tutte_tilde(m, Fraction(3, 2), w)
    assert ising(m, w, workers=2) == ising(m, w)


@st.composite
def multigraphs(draw, max_n=5, max_m=6):
    n = draw(st.integers(1, max_n))
    edge = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    return Graph(n, tuple(draw(st.lists(edge, max_size=max_m))))


@given(multigraphs(), rationals(nonzero=True), st.data())
def test_random_cluster_identity(g, q, data):
    w = data.draw(st.lists(rationals(), min_size=len(g.edges), max_size=len(g.edges)))
    rc = random_cluster_graph(g, q, w)
    assert rc == oracles.random_cluster(g.n, list(g.edges), q, w)
    m = from_graph(g)
    assert rc == q**g.n * tutte_tilde(m, q, dict(enumerate(w)))


@given(bit_rows(max_rows=3, max_cols=5), rationals(), rationals())
def test_tutte_T_from_tilde(rc, x, y):
    m = matroid_of(rc)
    q, gamma = (x - 1) * (y - 1), y - 1
    if q == 0:
        return
    assert tutte_T(m, x, y) == (q / gamma) ** full_rank(m) * tutte_tilde(m, q, gamma)


@given(st.integers(1, 4), st.lists(st.lists(st.integers(0, 3), min_size=1, max_size=4), max_size=3),
       st.integers(1, 3), rationals())
def test_hypergraph_potts_matches_oracle(n, raw, q, g):
    edges = [tuple(v % n for v in f) for f in raw]
    h = Hypergraph(n, tuple(edges))
    assert hypergraph_potts(h, q, g) == oracles.hypergraph_potts(n, h.edges, q, [g] * h.m)
