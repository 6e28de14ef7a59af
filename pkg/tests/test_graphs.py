import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spexkit import (
    Graph,
    InvalidArgument,
    InvalidVertex,
    OrderCap,
    SelfLoop,
    basic,
    book,
    canonical_form,
    canonical_graph,
    common_neighbors,
    from_edge_list,
    from_mask,
    is_turan,
    join,
    theta,
    turan,
    turan_edge_count,
)
from spexkit.graphs import mask_bits, pair_count
from spexkit.patterns import Cycle, contains

from conftest import random_graph


def test_from_edge_list_examples():
    k3 = from_edge_list(3, [(0, 1), (1, 2), (0, 2)])
    assert k3.e == 3
    assert from_edge_list(4, []).e == 0
    dup = from_edge_list(4, [(0, 1), (0, 1), (1, 2)])
    assert dup.e == 2


def test_from_edge_list_errors():
    with pytest.raises(InvalidVertex):
        from_edge_list(3, [(0, 3)])
    with pytest.raises(SelfLoop):
        from_edge_list(3, [(1, 1)])
    with pytest.raises(OrderCap):
        from_edge_list(63, [])


def test_graph_validation():
    with pytest.raises(InvalidArgument):
        Graph(3, (0b010, 0b000, 0b000))  # asymmetric
    with pytest.raises(SelfLoop):
        Graph(2, (0b01, 0b10))


def test_common_neighbors_examples():
    k4 = basic("complete", 4)
    assert common_neighbors(k4, 0, 1) == 0b1100
    c5 = basic("cycle", 5)
    assert common_neighbors(c5, 0, 1) == 0
    k23 = from_edge_list(5, [(u, v) for u in (0, 1) for v in (2, 3, 4)])
    assert common_neighbors(k23, 0, 1) == 0b11100
    with pytest.raises(InvalidVertex):
        common_neighbors(k4, 0, 0)


def test_turan_examples():
    t72 = turan(7, 2)
    assert t72.e == 12 == (7 * 7) // 4
    t103 = turan(10, 3)
    assert t103.e == 33
    assert turan(5, 5).e == 10  # K5
    with pytest.raises(InvalidArgument):
        turan(5, 6)
    with pytest.raises(InvalidArgument):
        turan(5, 0)


def test_turan_edge_formula_full_range():
    for n in range(1, 63):
        for k in range(1, n + 1):
            assert turan(n, k).e == turan_edge_count(n, k)
    for n in range(2, 63):
        assert turan_edge_count(n, 2) == (n * n) // 4


def test_is_turan_examples():
    assert is_turan(turan(7, 2), 2)
    k25 = from_edge_list(7, [(u, v) for u in (0, 1) for v in range(2, 7)])
    assert not is_turan(k25, 2)
    assert not is_turan(basic("cycle", 5), 2)
    assert is_turan(basic("empty", 4), 1)
    assert not is_turan(basic("empty", 4), 2)
    for n in (5, 8, 11):
        for k in range(1, n + 1):
            assert is_turan(turan(n, k), k)
            if k > 1:
                assert not is_turan(turan(n, k), k - 1)


def test_book_examples():
    b1 = book(1)
    assert (b1.n, b1.e) == (3, 3)
    b2 = book(2)
    assert (b2.n, b2.e) == (4, 5)  # K4 minus an edge
    b3 = book(3)
    assert (b3.n, b3.e) == (5, 7)
    with pytest.raises(InvalidArgument):
        book(0)


def test_theta_examples():
    c4 = theta([2, 2])
    assert canonical_form(c4) == canonical_form(basic("cycle", 4))
    b2 = theta([1, 2, 2])
    assert canonical_form(b2) == canonical_form(book(2))
    t = theta([1, 2, 3])
    assert (t.n, t.e) == (5, 6)
    with pytest.raises(InvalidArgument):
        theta([1, 1, 2])
    with pytest.raises(InvalidArgument):
        theta([2, 1, 3])
    with pytest.raises(InvalidArgument):
        theta([3])


@pytest.mark.parametrize("ell", [3, 4, 5, 6])
def test_theta_cycle_content(ell):
    g = theta([1, 2, ell])
    expected = {3, ell + 1, ell + 2}
    for t in range(3, g.n + 1):
        assert contains(g, Cycle(t)) == (t in expected)


def test_join_examples():
    b3 = join(basic("complete", 2), basic("empty", 3))
    assert canonical_form(b3) == canonical_form(book(3))
    wheel = join(basic("complete", 1), basic("cycle", 4))
    assert (wheel.n, wheel.e) == (5, 8)
    big = join(basic("complete", 20), basic("empty", 42))
    assert big.e == 190 + 20 * 42
    with pytest.raises(OrderCap):
        join(basic("complete", 20), basic("empty", 80))


def test_basic_examples():
    assert basic("cycle", 5).e == 5
    assert basic("path", 4).e == 3
    assert basic("complete", 4).e == 6
    assert basic("empty", 7).e == 0
    with pytest.raises(InvalidArgument):
        basic("cycle", 2)
    with pytest.raises(InvalidArgument):
        basic("torus", 5)


def test_canonical_form_examples():
    k3 = basic("complete", 3)
    p3 = basic("path", 3)
    assert canonical_form(k3) == canonical_form(k3.relabel([2, 0, 1]))
    assert canonical_form(p3) == canonical_form(p3.relabel([1, 0, 2]))
    assert canonical_form(k3) != canonical_form(p3)


def test_canonical_relabeling_invariance():
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(2, 7)
        g = random_graph(n, rng)
        code = canonical_form(g)
        perm = list(range(n))
        rng.shuffle(perm)
        assert canonical_form(g.relabel(perm)) == code
        cg = canonical_graph(g)
        assert canonical_form(cg) == code


def test_canonical_symmetric_graphs_terminate():
    for n in (8, 9, 10):
        assert canonical_form(basic("complete", n)) == canonical_form(
            basic("complete", n).relabel(list(reversed(range(n))))
        )
    with pytest.raises(OrderCap):
        canonical_form(basic("empty", 11))


def test_components_and_connectivity():
    g = from_edge_list(6, [(0, 1), (1, 2), (3, 4)])
    comps = g.components()
    assert comps == [0b000111, 0b011000, 0b100000]
    assert not g.is_connected()
    assert basic("path", 6).is_connected()


def test_mask_round_trip():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 10)
        g = random_graph(n, rng)
        assert from_mask(n, g.to_mask()) == g


@given(
    st.integers(min_value=1, max_value=12).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(
                st.tuples(
                    st.integers(0, n - 1), st.integers(0, n - 1)
                ).filter(lambda uv: uv[0] != uv[1]),
                max_size=30,
            ),
        )
    )
)
@settings(max_examples=200, deadline=None)
def test_constructed_graphs_are_simple_and_symmetric(n_edges):
    n, edges = n_edges
    g = from_edge_list(n, edges)
    # revalidation through the checked constructor must succeed
    Graph(g.n, g.rows)
    assert 2 * g.e == sum(row.bit_count() for row in g.rows)
    for v in range(g.n):
        assert not g.rows[v] >> v & 1
        for u in mask_bits(g.rows[v]):
            assert g.has_edge(u, v) and g.has_edge(v, u)


def test_immutability():
    g = basic("cycle", 4)
    with pytest.raises(AttributeError):
        g.n = 5
