import io
import math

import pytest

from spexkit import (
    Book,
    Cycle,
    InvalidArgument,
    OrderCap,
    Theta123,
    basic,
    canonical_form,
    from_edge_list,
    gamma_star,
    is_turan,
    parse_graph6,
    snk,
    spectral_radius,
    turan,
    write_graph6,
)
from spexkit.corpus import mask_chunks
from spexkit.graphs import canonical_graph
from spexkit.verify import (
    check_snk,
    merge_reports,
    run_scan,
    verify_bipartite_path_lemma,
    verify_booksize_corollary,
    verify_cycle_corollary,
    verify_edge_book,
    verify_erdos_gallai,
    verify_fact_chain,
    verify_gamma_bound,
    verify_spectral_theorem,
    verify_turan_number,
)


def canon_g6(g):
    return write_graph6(canonical_graph(g))


# ---------------------------------------------------------------------------
# spectral theorem scans


def test_spectral_theorem_below_range_finds_prism():
    r = verify_spectral_theorem(6, Book(2))
    assert r.params["range_note"] == "below theorem range"
    assert r.verdict == "violated"
    assert len(r.violations) == 1
    prism = parse_graph6(r.violations[0]["g6"])
    assert prism.e == 9
    assert spectral_radius(prism).value == pytest.approx(3.0, abs=1e-9)
    # max-rho witnesses: both the bipartite Turan graph and the prism tie at 3
    wit = {w["g6"] for w in r.extremal_witnesses}
    assert canon_g6(turan(6, 2)) in wit
    assert r.violations[0]["g6"] in wit


def test_spectral_theorem_stream_matches_enumeration():
    n = 5
    lines = []
    for chunk in mask_chunks(n):
        from spexkit import from_mask

        lines.extend(write_graph6(from_mask(n, int(m))) for m in chunk.tolist())
    enum_report = verify_spectral_theorem(n, Book(2))
    stream_report = verify_spectral_theorem(
        n, Book(2), stream=io.StringIO("\n".join(lines))
    )
    a = enum_report.comparable_dict()
    b = stream_report.comparable_dict()
    a["params"].pop("source")
    b["params"].pop("source")
    b["params"].pop("stream_diagnostics")
    assert a == b


def test_prefilter_equivalence_small():
    for n in (4, 5, 6):
        a = verify_spectral_theorem(n, Book(2), prefilters=True)
        b = verify_spectral_theorem(n, Book(2), prefilters=False)
        assert a.comparable_dict() == b.comparable_dict()


def test_shard_merge_equals_unsharded():
    base = verify_spectral_theorem(6, Book(2)).comparable_dict()
    for shards in (2, 3, 4):
        parts = [
            verify_spectral_theorem(6, Book(2), shard_count=shards, shard_index=i)
            for i in range(shards)
        ]
        merged = parts[0]
        for p in parts[1:]:
            merged = merge_reports(merged, p)
        assert merged.comparable_dict() == base
    # commutativity
    a, b = parts[0], parts[1]
    ab = merge_reports(merge_reports(a, b), parts[2])
    ba = merge_reports(parts[2], merge_reports(b, a))
    assert ab.comparable_dict() == ba.comparable_dict()


def test_merge_rejects_mixed_targets():
    a = verify_fact_chain(2, 10)
    b = verify_edge_book(4)
    with pytest.raises(InvalidArgument):
        merge_reports(a, b)


def test_violation_witnesses_reproduce():
    r = verify_spectral_theorem(6, Book(2))
    for entry in r.violations:
        g = parse_graph6(entry["g6"])
        est = spectral_radius(g)
        assert entry["values"]["e"] == g.e
        assert entry["values"]["rho"]["value"] == est.value
        assert entry["values"]["rho"]["lower"] == est.lower
        assert entry["values"]["rho"]["upper"] == est.upper


def test_theorem_range_notes():
    r = verify_spectral_theorem(5, Book(1))
    assert r.params["range_note"] == "below theorem range"
    r = verify_spectral_theorem(7, Book(2))
    assert "range_note" not in r.params
    r = verify_spectral_theorem(7, Theta123(2))
    assert "range_note" not in r.params  # theta_2 = book_2 proven from n >= 7


def test_spectral_theorem_rejects_other_patterns():
    with pytest.raises(InvalidArgument):
        verify_spectral_theorem(6, Cycle(4))
    with pytest.raises(OrderCap):
        verify_spectral_theorem(9, Book(2))


def test_run_scan_threads_deterministic():
    a = run_scan("spectral-book", threads=1, n=6, pattern=Book(2))
    b = run_scan("spectral-book", threads=2, n=6, pattern=Book(2))
    assert a.comparable_dict() == b.comparable_dict()


# ---------------------------------------------------------------------------
# booksize corollary


def test_booksize_corollary_small_orders():
    for n in (4, 5, 6, 7):
        r = verify_booksize_corollary(n, 6.5)
        assert r.verdict == "holds", (n, r.violations)
        probe = verify_booksize_corollary(n, 6.0)
        assert not probe.violations
        assert "range_note" in probe.params


def test_booksize_corollary_hypothesis_strictness():
    # with the >= hypothesis forced, the 3-regular prism (rho = 3 = threshold,
    # booksize 1 <= 6/6) is a genuine boundary violation at n = 6
    r = verify_booksize_corollary(6, 6.0, strict=False)
    assert r.verdict == "violated"
    prism = parse_graph6(r.violations[0]["g6"])
    assert prism.e == 9
    # the open problem's strict hypothesis excludes the tie
    r = verify_booksize_corollary(6, 6.0, strict=True)
    assert r.verdict == "holds"
    assert r.params["objective"] == 2


def test_booksize_corollary_min_witnesses_reproduce():
    r = verify_booksize_corollary(7, 6.5)
    assert r.params["objective"] == 2
    for w in r.extremal_witnesses:
        g = parse_graph6(w["g6"])
        from spexkit import booksize

        assert booksize(g) == 2 == w["values"]["booksize"]
        est = spectral_radius(g)
        assert est.lower >= r.params["threshold"] - r.params["tol"]
        assert not is_turan(g, 2)


def test_booksize_corollary_prefilter_equivalence():
    for n in (4, 5, 6):
        a = verify_booksize_corollary(n, 6.5, prefilters=True)
        b = verify_booksize_corollary(n, 6.5, prefilters=False)
        assert a.comparable_dict() == b.comparable_dict()


# ---------------------------------------------------------------------------
# cycle corollary


def test_cycle_corollary_vacuous_small():
    for n in (7, 8, 20):
        r = verify_cycle_corollary(n)
        assert r.verdict == "holds"
        assert "vacuous" in r.params["range_note"]
        assert r.scanned == 0


def test_cycle_corollary_stream():
    g = snk(21)  # k=5 clique join: qualifies, contains triangles
    r = verify_cycle_corollary(21, stream=io.StringIO(write_graph6(g) + "\n"))
    assert r.scanned == 1
    assert r.verdict == "holds"
    # the bipartite Turan graph is skipped as the excluded extremal case
    r = verify_cycle_corollary(21, stream=io.StringIO(write_graph6(turan(21, 2))))
    assert r.verdict == "holds" and not r.extremal_witnesses
    with pytest.raises(OrderCap):
        verify_cycle_corollary(21)


# ---------------------------------------------------------------------------
# edge-version book conjecture


def test_edge_book_small_orders():
    for n in (4, 5, 6, 7):
        r = verify_edge_book(n)
        assert r.verdict == "holds", (n, r.violations)
    r = verify_edge_book(6)
    assert r.params["objective"] == 2
    for w in r.extremal_witnesses:
        g = parse_graph6(w["g6"])
        assert g.e > 9 and w["values"]["booksize"] == 2


# ---------------------------------------------------------------------------
# Erdos-Gallai


def test_erdos_gallai_examples():
    r = verify_erdos_gallai(6, 2)
    assert r.verdict == "holds"
    assert len(r.extremal_witnesses) == 1
    two_k3 = parse_graph6(r.extremal_witnesses[0]["g6"])
    assert two_k3.e == 6
    comps = two_k3.components()
    assert len(comps) == 2 and all(c.bit_count() == 3 for c in comps)

    r = verify_erdos_gallai(7, 2)
    assert r.verdict == "holds" and not r.extremal_witnesses

    r = verify_erdos_gallai(5, 4)
    assert r.verdict == "holds"
    assert [parse_graph6(w["g6"]).e for w in r.extremal_witnesses] == [10]

    with pytest.raises(OrderCap):
        verify_erdos_gallai(8, 2)


# ---------------------------------------------------------------------------
# bipartite path lemma


def test_bipartite_path_lemma_equality_cases():
    r = verify_bipartite_path_lemma(4, 4, 2)
    assert r.verdict == "holds"
    got = {w["g6"] for w in r.extremal_witnesses}
    expected = set()
    for a, b in [(2, 1), (3, 1), (4, 1), (2, 2), (2, 3), (2, 4)]:
        kab = from_edge_list(a + b, [(i, a + j) for i in range(a) for j in range(b)])
        expected.add(canon_g6(kab))
    assert got == expected


def test_bipartite_path_lemma_other_ranges():
    assert verify_bipartite_path_lemma(4, 3, 2).verdict == "holds"
    assert verify_bipartite_path_lemma(3, 3, 3).verdict == "holds"
    with pytest.raises(OrderCap):
        verify_bipartite_path_lemma(5, 5, 2)
    with pytest.raises(InvalidArgument):
        verify_bipartite_path_lemma(4, 4, 1)


# ---------------------------------------------------------------------------
# gamma bound


def test_gamma_bound_small():
    for n in (4, 5, 6):
        r = verify_gamma_bound(n)
        assert r.verdict == "holds", (n, r.violations)
    r = verify_gamma_bound(6)
    wit = {w["g6"] for w in r.extremal_witnesses}
    assert canon_g6(turan(6, 2)) in wit  # K_{3,3}
    assert canon_g6(turan(6, 3)) in wit  # K_{2,2,2}
    for w in r.extremal_witnesses:
        g = parse_graph6(w["g6"])
        gd = gamma_star(g)
        est = spectral_radius(g)
        assert w["values"]["gamma"] == gd.gamma
        assert abs(gd.gamma - est.lower**2) <= 1e-9


# ---------------------------------------------------------------------------
# fact chain


def test_fact_chain_examples():
    r = verify_fact_chain(10, 500)
    assert r.verdict == "holds" and r.scanned == sum(
        500 - k + 1 for k in range(1, 11)
    )
    from spexkit import turan_rho_closed_form

    lhs = 5 * turan_rho_closed_form(10, 3)
    assert lhs == pytest.approx(33.117, abs=5e-4)
    assert lhs < 34
    assert 5 * turan_rho_closed_form(10, 2) == 25 < 26


# ---------------------------------------------------------------------------
# Turan numbers


def test_turan_number_examples():
    r = verify_turan_number(5, Cycle(3))
    assert r.params["objective"] == 6
    assert [w["g6"] for w in r.extremal_witnesses] == [canon_g6(turan(5, 2))]

    r = verify_turan_number(6, Book(2))
    assert r.params["objective"] == 9
    wit = {w["g6"] for w in r.extremal_witnesses}
    assert canon_g6(turan(6, 2)) in wit


# ---------------------------------------------------------------------------
# S_{n,k}


def test_check_snk_values():
    r = check_snk(100)
    assert r.params["k"] == 20
    assert r.params["rho_quotient"] == pytest.approx((19 + math.sqrt(6761)) / 2)
    assert r.params["rho_gt_half"] is True
    assert r.params["rho_source"] == "quotient-formula"

    r = check_snk(10)
    assert r.params["k"] == 2
    assert r.params["rho_quotient"] == pytest.approx((1 + math.sqrt(65)) / 2)
    assert r.params["rho_gt_half"] is False
    assert r.verdict == "holds"  # report-only by default
    assert check_snk(10, assert_rho=True).verdict == "violated"

    r = check_snk(40)
    assert r.params["k"] == 8
    assert r.params["independence_ok"] is True
    assert r.params["rho_source"] == "matrix"
    est_value = r.params["objective"]
    assert est_value == pytest.approx(r.params["rho_quotient"], abs=1e-8)
