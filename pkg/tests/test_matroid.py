import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bintutte import BinaryMatroid, Gf2Matrix, Graph, InputError
from bintutte.matroid import (
    contract,
    count_components,
    delete,
    dual,
    format_graph,
    from_graph,
    full_rank,
    is_coloop,
    is_loop,
    parse_graph,
    rank_of,
    rank_table,
)
from oracles import components, dual_rank
from strategies import bit_rows, matroid_of

K3 = from_graph(Graph(3, ((0, 1), (1, 2), (0, 2))))
U12 = BinaryMatroid.from_rows([[1, 1]])
TWO_COLOOPS = BinaryMatroid(Gf2Matrix.identity(2))


def subsets(ground):
    for k in range(len(ground) + 1):
        yield from itertools.combinations(ground, k)


def same_rank_function(a, b):
    return set(a.ground) == set(b.ground) and all(
        rank_of(a, s) == rank_of(b, s) for s in subsets(a.ground)
    )


def test_rank_examples():
    loop = BinaryMatroid.from_rows([[0]])
    assert rank_of(loop, [0]) == 0
    assert rank_of(K3, [0, 1, 2]) == 2
    assert rank_of(K3, []) == 0


def test_unknown_element():
    with pytest.raises(InputError):
        rank_of(U12, [5])
    with pytest.raises(InputError):
        delete(U12, "x")


def test_delete_examples():
    d = delete(U12, 0)
    assert len(d) == 1 and full_rank(d) == 1 and d.ground == (1,)
    single = BinaryMatroid.from_rows([[1]])
    assert len(delete(single, 0)) == 0
    with_loop = BinaryMatroid.from_rows([[1, 0, 1], [0, 0, 1]])
    d = delete(with_loop, 1)
    assert all(rank_of(d, s) == rank_of(with_loop, s) for s in subsets((0, 2)))


def test_contract_examples():
    c = contract(TWO_COLOOPS, 0)
    assert c.ground == (1,) and is_coloop(c, 1)
    with_loop = BinaryMatroid.from_rows([[1, 0], [1, 0]])
    assert same_rank_function(contract(with_loop, 1), delete(with_loop, 1))
    c = contract(U12, 0)
    assert c.ground == (1,) and is_loop(c, 1)


@given(bit_rows(max_rows=4, max_cols=5, min_cols=1), st.data())
def test_contract_rank_formula(rc, data):
    m = matroid_of(rc)
    e = data.draw(st.sampled_from(m.ground))
    c = contract(m, e)
    re = rank_of(m, [e])
    for s in subsets(c.ground):
        assert rank_of(c, s) == rank_of(m, set(s) | {e}) - re


@given(bit_rows(max_rows=4, max_cols=6))
def test_dual_rank_formula(rc):
    rows, ncols = rc
    m = matroid_of(rc)
    d = dual(m)
    for s in subsets(m.ground):
        assert rank_of(d, s) == dual_rank(rows, ncols, s)


@given(bit_rows(max_rows=4, max_cols=6))
def test_double_dual(rc):
    m = matroid_of(rc)
    assert same_rank_function(dual(dual(m)), m)


@given(bit_rows(max_rows=4, max_cols=5))
def test_rank_axioms(rc):
    m = matroid_of(rc)
    table = rank_table(m)
    full = (1 << len(m)) - 1
    for a in range(full + 1):
        assert 0 <= table[a] <= a.bit_count()
        for b in range(full + 1):
            if a & b == a:
                assert table[a] <= table[b]
            assert table[a | b] + table[a & b] <= table[a] + table[b]


@given(bit_rows(max_rows=4, max_cols=5, min_cols=1), st.data())
def test_dual_swaps_loops_and_coloops(rc, data):
    m = matroid_of(rc)
    e = data.draw(st.sampled_from(m.ground))
    d = dual(m)
    assert is_loop(m, e) == is_coloop(d, e)
    assert is_coloop(m, e) == is_loop(d, e)


@given(bit_rows(max_rows=4, max_cols=5, min_cols=1), st.data())
def test_dual_swaps_delete_and_contract(rc, data):
    m = matroid_of(rc)
    e = data.draw(st.sampled_from(m.ground))
    assert same_rank_function(dual(delete(m, e)), contract(dual(m), e))


def test_dual_examples():
    d = dual(TWO_COLOOPS)
    assert is_loop(d, 0) and is_loop(d, 1)
    assert same_rank_function(dual(U12), U12)


def test_loop_coloop_examples():
    z = BinaryMatroid.from_rows([[0, 1]])
    assert is_loop(z, 0) and not is_loop(z, 1)
    assert is_coloop(TWO_COLOOPS, 0) and is_coloop(TWO_COLOOPS, 1)
    assert not any(f(U12, e) for f in (is_loop, is_coloop) for e in (0, 1))


def test_from_graph_examples():
    assert full_rank(K3) == 2
    assert is_loop(from_graph(Graph(1, ((0, 0),))), 0)
    par = from_graph(Graph(2, ((0, 1), (0, 1))))
    assert par.rep.column(0) == par.rep.column(1) and full_rank(par) == 1


@st.composite
def multigraphs(draw, max_n=5, max_m=7):
    n = draw(st.integers(1, max_n))
    edge = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    return Graph(n, tuple(draw(st.lists(edge, max_size=max_m))))


@given(multigraphs())
def test_graphic_rank_is_vertices_minus_components(g):
    m = from_graph(g)
    for s in subsets(range(len(g.edges))):
        sub = [g.edges[i] for i in s]
        assert rank_of(m, s) == g.n - components(g.n, sub)
        assert count_components(g.n, sub) == components(g.n, sub)


@given(multigraphs())
def test_graph_text_round_trip(g):
    assert parse_graph(format_graph(g)) == g


def test_graph_errors():
    with pytest.raises(InputError):
        Graph(2, ((0, 2),))
    with pytest.raises(InputError):
        parse_graph("2 2\n1 2\n")
    with pytest.raises(InputError):
        BinaryMatroid(Gf2Matrix.identity(2), ("a", "a"))
