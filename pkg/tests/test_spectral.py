import math
import random

import numpy as np
import pytest

from spexkit import (
    Disconnected,
    EdgelessGraph,
    InvalidArgument,
    avg_degree_bound,
    basic,
    from_edge_list,
    from_mask,
    gamma_star,
    perron_vector,
    snk,
    snk_rho_quotient,
    spectral_radius,
    turan,
    turan_rho_bipartite,
    turan_rho_closed_form,
)
from spexkit.graphs import pair_count
from spexkit.spectral import adjacency_batch, power_iteration_batch

from conftest import dense_rho, dense_rho_batch, random_graph

TOL = 1e-10


def test_examples_closed_values():
    assert abs(spectral_radius(turan(6, 2)).value - 3.0) < TOL
    assert abs(spectral_radius(turan(7, 2)).value - math.sqrt(12)) < 1e-9
    assert spectral_radius(basic("empty", 5)).value == 0.0


def test_bracket_structure():
    est = spectral_radius(turan(9, 3))
    assert est.lower <= est.value <= est.upper
    assert est.upper - est.lower <= 2 * est.residual
    assert est.residual <= TOL
    assert est.lower >= avg_degree_bound(turan(9, 3)) - TOL


def test_disconnected_takes_component_max():
    g = from_edge_list(5, [(0, 1), (1, 2), (0, 2), (3, 4)])
    assert abs(spectral_radius(g).value - 2.0) < 1e-9


def test_bracket_validity_all_n5():
    n = 5
    masks = np.arange(1 << pair_count(n), dtype=np.int64)
    rho = dense_rho_batch(masks, n)
    res = power_iteration_batch(adjacency_batch(masks, n), TOL)
    assert res.converged.all()
    lower = res.value
    upper = res.value + res.residual
    assert (lower <= rho + 1e-12).all()
    assert (rho <= upper + 1e-12).all()
    # Collatz-Sinogowitz: average degree below the certified upper end
    e = np.bitwise_count(masks)
    assert (2.0 * e / n <= upper + TOL).all()


@pytest.mark.slow
def test_bracket_validity_all_n6_n7():
    for n in (6, 7):
        total = 1 << pair_count(n)
        for lo in range(0, total, 1 << 16):
            masks = np.arange(lo, min(lo + (1 << 16), total), dtype=np.int64)
            rho = dense_rho_batch(masks, n)
            res = power_iteration_batch(adjacency_batch(masks, n), TOL)
            assert res.converged.all()
            assert (res.value <= rho + 1e-12).all()
            assert (rho <= res.value + res.residual + 1e-12).all()


def test_bracket_validity_random_n7():
    rng = np.random.default_rng(11)
    masks = rng.integers(0, 1 << 21, size=20000, dtype=np.int64)
    rho = dense_rho_batch(masks, 7)
    res = power_iteration_batch(adjacency_batch(masks, 7), TOL)
    assert res.converged.all()
    assert (res.value <= rho + 1e-12).all()
    assert (rho <= res.value + res.residual + 1e-12).all()


def test_batch_equals_solo_bit_for_bit():
    rng = np.random.default_rng(5)
    n = 7
    masks = rng.integers(0, 1 << 21, size=500, dtype=np.int64)
    batch = power_iteration_batch(adjacency_batch(masks, n), TOL)
    for i, mask in enumerate(masks.tolist()):
        est = spectral_radius(from_mask(n, mask), TOL)
        assert est.value == batch.value[i]
        assert est.residual == batch.residual[i]
        assert est.iterations == batch.iterations[i]


def test_determinism():
    g = random_graph(12, random.Random(3))
    a = spectral_radius(g)
    b = spectral_radius(g)
    assert a == b


def test_perron_examples():
    vec, comp = perron_vector(turan(6, 2))
    assert comp == 0b111111
    assert np.allclose(vec, 1 / math.sqrt(6), atol=1e-9)

    star = from_edge_list(5, [(0, i) for i in range(1, 5)])
    vec, _ = perron_vector(star)
    assert vec[0] > vec[1] > 0
    assert np.allclose(vec[1:], vec[1], atol=1e-9)

    g = from_edge_list(5, [(0, 1), (1, 2), (0, 2), (3, 4)])
    vec, comp = perron_vector(g)
    assert comp == 0b00111
    assert vec[3] == 0.0 and vec[4] == 0.0
    assert (vec[:3] > 0).all()
    # residual bound holds for the embedded vector
    a = np.zeros((5, 5))
    for u, v in g.edges():
        a[u, v] = a[v, u] = 1.0
    rho = spectral_radius(g).value
    assert np.linalg.norm(a @ vec - rho * vec) <= 10 * TOL


def test_perron_errors():
    with pytest.raises(EdgelessGraph):
        perron_vector(basic("empty", 3))


def test_gamma_examples():
    gd = gamma_star(turan(6, 2))
    assert (gd.size_a, gd.e_a, gd.e_ab, gd.gamma) == (3, 0, 6, 9)
    gd = gamma_star(basic("complete", 4))
    assert gd.gamma == 9
    star = from_edge_list(5, [(0, i) for i in range(1, 5)])
    gd = gamma_star(star)
    assert gd.u_star == 0
    assert (gd.size_a, gd.e_a, gd.e_ab, gd.gamma) == (4, 0, 0, 4)


def test_gamma_errors():
    with pytest.raises(Disconnected):
        gamma_star(from_edge_list(4, [(0, 1), (2, 3)]))
    with pytest.raises(EdgelessGraph):
        gamma_star(basic("empty", 4))


def test_gamma_bound_all_connected_n5():
    for mask in range(1 << pair_count(5)):
        g = from_mask(5, mask)
        if g.e == 0 or not g.is_connected():
            continue
        est = spectral_radius(g)
        gd = gamma_star(g)
        assert gd.gamma >= est.lower**2 - 1e-9
        assert gd.size_a + gd.b_mask.bit_count() + 1 == g.n


def test_turan_rho_closed_form():
    assert turan_rho_closed_form(10, 2) == 5.0
    assert abs(turan_rho_closed_form(7, 2) - math.sqrt(12)) < 1e-12
    for n in (1, 5, 30):
        assert turan_rho_closed_form(n, 1) == 0.0
    with pytest.raises(InvalidArgument):
        turan_rho_closed_form(3, 4)


def test_turan_rho_bipartite_matches_closed_form():
    for n in range(2, 10001):
        assert abs(turan_rho_closed_form(n, 2) - turan_rho_bipartite(n)) <= 1e-12
    assert turan_rho_bipartite(10) == 5.0
    assert abs(turan_rho_bipartite(7) - math.sqrt(12)) < 1e-15
    assert turan_rho_bipartite(2) == 1.0


def test_closed_form_agreement_sample():
    for n, k in [(8, 2), (13, 3), (20, 5), (62, 10), (47, 7)]:
        est = spectral_radius(turan(n, k))
        assert abs(est.value - turan_rho_closed_form(n, k)) <= 1e-9


def test_avg_degree_examples():
    assert avg_degree_bound(basic("cycle", 5)) == 2.0
    t = turan(7, 2)
    assert abs(avg_degree_bound(t) - 24 / 7) < 1e-15
    assert avg_degree_bound(t) <= spectral_radius(t).upper + TOL
    assert avg_degree_bound(basic("empty", 4)) == 0.0


def test_snk_quotient_matches_matrix():
    for n in (10, 25, 40, 62):
        g = snk(n)
        from spexkit.graphs import snk_clique_order

        k = snk_clique_order(n)
        est = spectral_radius(g)
        assert abs(est.value - snk_rho_quotient(n, k)) <= 1e-8


def test_dense_oracle_agreement_random():
    rng = random.Random(19)
    for _ in range(60):
        n = rng.randint(2, 14)
        g = random_graph(n, rng)
        est = spectral_radius(g)
        assert abs(est.value - dense_rho(g)) <= 1e-8


def test_invalid_tol():
    with pytest.raises(InvalidArgument):
        spectral_radius(basic("cycle", 4), tol=0.0)
