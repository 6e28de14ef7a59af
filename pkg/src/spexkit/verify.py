"""Statement-by-statement verification scans producing mergeable reports.

Every scan walks a graph space (exhaustive labeled enumeration, sharded by
mask residue, or a graph6 stream), applies certified prefilters, and emits
one VerificationReport. Threshold comparisons only ever use certified
brackets: a graph qualifies as "rho >= rho(T_{n,2})" when its bracket lower
end clears threshold - tol, is dismissed when a certified upper bound sits
below threshold - 2*tol (so the dismissal agrees with what the converged
bracket would have decided), and anything straddling is re-run at tol/100
and then reported inconclusive.

Surviving witnesses are canonicalized before reporting and their
diagnostics recomputed on the canonical labeling, so each recorded entry
re-parses to exactly the recorded values and merge order cannot matter.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable

import numpy as np

from .corpus import mask_chunks, parse_graph6, stream_graph6, write_graph6
from .errors import InvalidArgument, OrderCap
from .graphs import (
    Graph,
    canonical_graph,
    from_mask,
    is_turan,
    mask_bits,
    pair_count,
    pair_list,
    turan_edge_count,
)
from .patterns import (
    Book,
    Cycle,
    PathOnK,
    PatternSpec,
    Theta123,
    booksize,
    contains,
    longest_xx_path_edges,
    pattern_str,
)
from .spectral import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    adjacency_batch,
    adjacency_matrix,
    certified_below,
    gamma_from_weights,
    power_iteration_batch,
    snk_rho_quotient,
    spectral_radius,
    turan_rho_bipartite,
)

ENUM_ORDER_CAP = 8
CANON_CAP = 10
DEFAULT_MAX_WITNESSES = 64
_TRACK_LIMIT = 256  # raw candidates retained before canonical dedup
_BATCH = 1 << 16

GAMMA_SLACK = 1e-9  # fixed tolerance of the gamma >= rho^2 statement


# ---------------------------------------------------------------------------
# Report type


@dataclass
class VerificationReport:
    target: str
    params: dict
    scanned: int = 0
    filtered: int = 0
    violations: list = field(default_factory=list)
    inconclusive: list = field(default_factory=list)
    extremal_witnesses: list = field(default_factory=list)
    elapsed: float = 0.0
    verdict: str = "holds"

    def finalize_verdict(self):
        if self.violations:
            self.verdict = "violated"
        elif self.inconclusive:
            self.verdict = "inconclusive"
        else:
            self.verdict = "holds"

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "params": self.params,
            "scanned": self.scanned,
            "filtered": self.filtered,
            "violations": self.violations,
            "inconclusive": self.inconclusive,
            "extremal_witnesses": self.extremal_witnesses,
            "elapsed": self.elapsed,
            "verdict": self.verdict,
        }

    def comparable_dict(self) -> dict:
        """Report content with run-dependent fields stripped (for tests)."""
        d = self.to_dict()
        d.pop("elapsed")
        d.pop("filtered")  # differs between prefiltered and plain runs
        params = dict(d["params"])
        for key in ("shard_count", "shard_index", "prefilters", "elapsed"):
            params.pop(key, None)
        d["params"] = params
        return d

    def csv_row(self) -> dict:
        return {
            "target": self.target,
            "scanned": self.scanned,
            "filtered": self.filtered,
            "violations": len(self.violations),
            "inconclusive": len(self.inconclusive),
            "witnesses": len(self.extremal_witnesses),
            "verdict": self.verdict,
            "elapsed": f"{self.elapsed:.3f}",
        }


def _entry_sort_key(entry: dict):
    return (entry.get("g6") or "", repr(entry.get("values")))


def _merge_entry_lists(a: list, b: list, limit: int) -> list:
    seen = {}
    for entry in a + b:
        key = entry.get("g6") or repr(entry.get("values"))
        if key not in seen:
            seen[key] = entry
    merged = sorted(seen.values(), key=_entry_sort_key)
    return merged[:limit] if limit else merged


def merge_reports(a: VerificationReport, b: VerificationReport) -> VerificationReport:
    """Associative, commutative shard merge."""
    if a.target != b.target:
        raise InvalidArgument(f"cannot merge {a.target} with {b.target}")
    params = dict(a.params)
    params["shard_count"] = "merged"
    params["shard_index"] = "merged"
    sense = a.params.get("objective_sense")
    limit = a.params.get("max_witnesses") or 0
    out = VerificationReport(target=a.target, params=params)
    out.scanned = a.scanned + b.scanned
    out.filtered = a.filtered + b.filtered
    out.violations = _merge_entry_lists(a.violations, b.violations, 0)
    out.inconclusive = _merge_entry_lists(a.inconclusive, b.inconclusive, 0)

    best_a = a.params.get("objective")
    best_b = b.params.get("objective")
    if best_a is None and best_b is None:
        best, wits = None, []
    elif best_b is None or (
        best_a is not None
        and (best_a <= best_b if sense == "min" else best_a >= best_b)
    ):
        if best_a == best_b:
            best = best_a
            wits = _merge_entry_lists(
                a.extremal_witnesses, b.extremal_witnesses, limit
            )
        else:
            best, wits = best_a, list(a.extremal_witnesses)
    else:
        best, wits = best_b, list(b.extremal_witnesses)
    out.params["objective"] = best
    out.extremal_witnesses = wits
    out.elapsed = a.elapsed + b.elapsed
    out.finalize_verdict()
    return out


# ---------------------------------------------------------------------------
# Small shared machinery


class _Tracker:
    """Running optimum with a bounded, deterministically chosen witness set.

    Payloads must be offered in a deterministic order (ascending mask order
    in scans); ties at the quantized objective keep the first _TRACK_LIMIT.
    """

    def __init__(self, sense: str, quantum: float = 0.0):
        self.sense = sense
        self.quantum = quantum
        self.best = None
        self.best_q = None
        self.items: list = []

    def _q(self, x):
        if not self.quantum:
            return x
        return round(x / self.quantum)

    def offer(self, obj, payload):
        q = self._q(obj)
        if self.best_q is None or (
            q < self.best_q if self.sense == "min" else q > self.best_q
        ):
            self.best_q = q
            self.best = obj
            self.items = [payload]
            return
        if q == self.best_q:
            if self.sense == "min":
                self.best = min(self.best, obj)
            else:
                self.best = max(self.best, obj)
            if len(self.items) < _TRACK_LIMIT:
                self.items.append(payload)


def _estimate_dict(value: float, residual: float, iterations: int) -> dict:
    return {
        "value": value,
        "lower": value,
        "upper": value + residual,
        "residual": residual,
        "iterations": iterations,
    }


def _canonicalize(g: Graph) -> Graph:
    return canonical_graph(g) if g.n <= CANON_CAP else g


def _qualify(lower: float, upper: float, cut: float) -> str:
    if lower >= cut:
        return "yes"
    if upper < cut:
        return "no"
    return "straddle"


def _decide_threshold(g: Graph, thr: float, tol: float, est) -> tuple[str, dict]:
    """Bracket decision against thr - tol, refining once at tol/100."""
    verdict = _qualify(est.lower, est.upper, thr - tol)
    info = {"rho": est.as_dict()}
    if verdict == "straddle":
        refined = spectral_radius(g, tol / 100)
        info["rho_refined"] = refined.as_dict()
        verdict = _qualify(refined.lower, refined.upper, thr - tol)
        if verdict == "straddle":
            verdict = "inconclusive"
    return verdict, info


# Vectorized per-chunk primitives (enumeration orders are capped at 8, so a
# neighbor row always fits one byte).


def _chunk_rows(masks: np.ndarray, n: int) -> list[np.ndarray]:
    rows = [np.zeros(masks.size, dtype=np.uint8) for _ in range(n)]
    for k, (u, v) in enumerate(pair_list(n)):
        bit = ((masks >> k) & 1).astype(np.uint8)
        rows[u] |= bit << v
        rows[v] |= bit << u
    return rows


def _chunk_booksize(masks: np.ndarray, rows: list[np.ndarray], n: int) -> np.ndarray:
    bk = np.zeros(masks.size, dtype=np.uint8)
    for k, (u, v) in enumerate(pair_list(n)):
        present = ((masks >> k) & 1).astype(bool)
        c = np.bitwise_count(rows[u] & rows[v])
        np.maximum(bk, np.where(present, c, 0), out=bk)
    return bk


def _chunk_connected(rows: list[np.ndarray], n: int) -> np.ndarray:
    reach = np.ones(rows[0].size, dtype=np.uint8)  # vertex 0
    for _ in range(n - 1):
        grown = reach.copy()
        for v in range(n):
            grown |= np.where((reach >> v) & 1 == 1, rows[v], 0).astype(np.uint8)
        if np.array_equal(grown, reach):
            break
        reach = grown
    full = np.uint8((1 << n) - 1)
    return reach == full


def _hong_excludable(
    e: np.ndarray, rows: list[np.ndarray], n: int, cut: float
) -> np.ndarray:
    """True where rho < cut is certified by rho <= sqrt(2e - n' + 1)."""
    noniso = np.zeros(e.size, dtype=np.int16)
    for v in range(n):
        noniso += rows[v] != 0
    return (2 * e - noniso + 1).astype(np.float64) < cut * cut


def _a2_excludable(rows: list[np.ndarray], n: int, cut: float) -> np.ndarray:
    """True where rho < cut is certified by rho^2 <= max_u sum_{v~u} d(v)."""
    deg = [np.bitwise_count(rows[v]).astype(np.int16) for v in range(n)]
    s_max = np.zeros(rows[0].size, dtype=np.int16)
    for u in range(n):
        s_u = np.zeros(rows[0].size, dtype=np.int16)
        for v in range(n):
            if v != u:
                s_u += (((rows[u] >> v) & 1).astype(np.int16)) * deg[v]
        np.maximum(s_max, s_u, out=s_max)
    return s_max.astype(np.float64) < cut * cut


def _converge_masks(masks: np.ndarray, n: int, tol: float, want_vectors=False):
    """Converged per-graph results for a mask array, as (offset, batch) pairs."""
    for lo in range(0, masks.size, _BATCH):
        part = masks[lo : lo + _BATCH]
        mats = adjacency_batch(part, n)
        yield lo, power_iteration_batch(mats, tol, DEFAULT_MAX_ITER, want_vectors)


def _pattern_free_flags(
    masks: np.ndarray, bk: np.ndarray, n: int, p: PatternSpec
) -> np.ndarray:
    """Vector of pattern-freeness; books and theta:2 purely by booksize."""
    if isinstance(p, Book):
        return bk < p.q
    if isinstance(p, Theta123) and p.ell == 2:
        return bk < 2  # theta(1,2,2) is the 2-page book
    if isinstance(p, Cycle) and p.t == 3:
        return bk == 0  # triangle-free
    free = np.ones(masks.size, dtype=bool)
    if isinstance(p, Theta123):
        maybe = np.nonzero(bk >= 1)[0]  # theta contains a triangle
    else:
        maybe = np.arange(masks.size)
    for i in maybe.tolist():
        if contains(from_mask(n, int(masks[i])), p):
            free[i] = False
    return free


def _base_params(**kw) -> dict:
    params = dict(kw)
    params.setdefault("max_witnesses", DEFAULT_MAX_WITNESSES)
    return params


def _finish(
    report: VerificationReport,
    tracker: _Tracker | None,
    entry_builder: Callable | None,
    t0: float,
):
    if tracker is not None:
        report.params["objective"] = tracker.best
        if entry_builder is not None:
            entries = {}
            for payload in tracker.items:
                entry = entry_builder(payload)
                key = entry.get("g6") or repr(entry.get("values"))
                entries.setdefault(key, entry)
            limit = report.params.get("max_witnesses", DEFAULT_MAX_WITNESSES)
            report.extremal_witnesses = sorted(
                entries.values(), key=_entry_sort_key
            )[:limit]
    report.violations = _merge_entry_lists(report.violations, [], 0)
    report.inconclusive = _merge_entry_lists(report.inconclusive, [], 0)
    report.elapsed = time.perf_counter() - t0
    report.finalize_verdict()
    return report


def _require_enum_order(n: int, stream):
    if stream is None and n > ENUM_ORDER_CAP:
        raise OrderCap(
            f"exhaustive enumeration capped at n={ENUM_ORDER_CAP}; supply a stream"
        )


# ---------------------------------------------------------------------------
# Target: spectral extremal theorem (books / thetas)


def _theorem_range_note(p: PatternSpec, n: int) -> str | None:
    if isinstance(p, Book):
        r = p.q - 1
        if r >= 1 and n >= 6.5 * r:
            return None
    else:
        r = p.ell - 1
        if r == 1 and n >= 7:
            return None
        if r >= 2 and n >= (10 * r if r % 2 else 7 * r):
            return None
    return "below theorem range"


def verify_spectral_theorem(
    n: int,
    pattern: PatternSpec,
    source: str = "enumerate",
    stream=None,
    tol: float = DEFAULT_TOL,
    shard_count: int = 1,
    shard_index: int = 0,
    prefilters: bool = True,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
) -> VerificationReport:
    """Scan order-n graphs for pattern-free graphs with rho >= rho(T_{n,2}).

    A violation is pattern-free, spectrally qualified (bracket lower end at
    or above threshold - tol) and not the balanced bipartite Turan graph.
    The extremal witnesses achieve the maximum rho among pattern-free graphs.
    """
    if not isinstance(pattern, (Book, Theta123)):
        raise InvalidArgument("spectral theorem scan takes Book or Theta123")
    if n < 2:
        raise InvalidArgument("need n >= 2")
    t0 = time.perf_counter()
    thr = turan_rho_bipartite(n)
    target = "spectral-book" if isinstance(pattern, Book) else "spectral-theta"
    params = _base_params(
        n=n,
        pattern=pattern_str(pattern),
        tol=tol,
        threshold=thr,
        source=source if stream is None else "stream",
        shard_count=shard_count,
        shard_index=shard_index,
        prefilters=prefilters,
        max_witnesses=max_witnesses,
        objective_sense="max",
        objective_quantum=tol / 10,
    )
    note = _theorem_range_note(pattern, n)
    if note:
        params["range_note"] = note
    report = VerificationReport(target=target, params=params)
    tracker = _Tracker("max", quantum=tol / 10)

    def handle_graph(g: Graph, e: int, bk: int):
        verdict, info = _decide_threshold(g, thr, tol, spectral_radius(g, tol))
        _record_spectral_candidate(report, tracker, g, e, bk, verdict, info, thr, tol)

    if stream is not None:
        _stream_spectral_scan(report, stream, n, pattern, thr, tol, prefilters, handle_graph)
    else:
        _require_enum_order(n, stream)
        _enum_spectral_scan(
            report, tracker, n, pattern, thr, tol,
            shard_count, shard_index, prefilters,
        )
    return _finish(report, tracker, _spectral_entry_builder(n, thr, tol), t0)


def _record_spectral_candidate(report, tracker, g, e, bk, verdict, info, thr, tol):
    values = {"e": e, "booksize": bk, **info}
    mask = g.to_mask()
    tracker.offer(info["rho"]["value"], (mask, e, bk))
    if verdict == "yes" and not is_turan(g, 2):
        cg = _canonicalize(g)
        report.violations.append(_recomputed_spectral_entry(cg, tol))
    elif verdict == "inconclusive":
        report.inconclusive.append(
            {"g6": write_graph6(_canonicalize(g)), "values": values}
        )


def _recomputed_spectral_entry(cg: Graph, tol: float) -> dict:
    est = spectral_radius(cg, tol)
    return {
        "g6": write_graph6(cg),
        "values": {"e": cg.e, "booksize": booksize(cg), "rho": est.as_dict()},
    }


def _spectral_entry_builder(n: int, thr: float, tol: float):
    def build(payload):
        mask, e, bk = payload
        cg = _canonicalize(from_mask(n, mask))
        est = spectral_radius(cg, tol)
        return {
            "g6": write_graph6(cg),
            "objective": est.value,
            "values": {"e": cg.e, "booksize": booksize(cg), "rho": est.as_dict()},
        }

    return build


def _enum_spectral_scan(
    report, tracker, n, pattern, thr, tol, shard_count, shard_index, prefilters
):
    qualify_cut = thr - tol
    reject_cut = thr - 2 * tol
    e_floor = (qualify_cut * qualify_cut) / 2.0
    for masks in mask_chunks(n, shard_count, shard_index):
        report.scanned += masks.size
        e = np.bitwise_count(masks)
        if prefilters:
            keep = (2.0 * e) >= 2.0 * e_floor
            report.filtered += int((~keep).sum())
            masks_k = masks[keep]
            e_k = e[keep]
        else:
            masks_k, e_k = masks, e
        if not masks_k.size:
            continue
        rows = _chunk_rows(masks_k, n)
        bk = _chunk_booksize(masks_k, rows, n)
        free = _pattern_free_flags(masks_k, bk, n, pattern)
        report.filtered += int((~free).sum())
        cand = np.nonzero(free)[0]
        if not cand.size:
            continue
        masks_c = masks_k[cand]
        e_c = e_k[cand]
        bk_c = bk[cand]
        if prefilters:
            mats = adjacency_batch(masks_c, n)
            below = certified_below(mats, reject_cut)
            sel = ~below
            masks_c, e_c, bk_c = masks_c[sel], e_c[sel], bk_c[sel]
        for lo, batch in _converge_masks(masks_c, n, tol):
            _consume_spectral_batch(
                report, tracker, masks_c[lo:], e_c[lo:], bk_c[lo:], batch, n, thr, tol
            )


def _consume_spectral_batch(report, tracker, masks_c, e_c, bk_c, batch, n, thr, tol):
    from .spectral import SpectralEstimate

    count = batch.value.size
    for i in range(count):
        mask = int(masks_c[i])
        value = float(batch.value[i])
        rn = float(batch.residual[i])
        tracker.offer(value, (mask, int(e_c[i]), int(bk_c[i])))
        if not batch.converged[i]:
            g = from_mask(n, mask)
            report.inconclusive.append(
                {
                    "g6": write_graph6(_canonicalize(g)),
                    "values": {"note": "iteration budget exhausted"},
                }
            )
            continue
        verdict = _qualify(value, value + rn, thr - tol)
        if verdict == "no":
            continue
        g = from_mask(n, mask)
        est = SpectralEstimate(value, value, value + rn, rn, int(batch.iterations[i]))
        verdict, info = _decide_threshold(g, thr, tol, est)
        values = {"e": int(e_c[i]), "booksize": int(bk_c[i]), **info}
        if verdict == "yes" and not is_turan(g, 2):
            report.violations.append(_recomputed_spectral_entry(_canonicalize(g), tol))
        elif verdict == "inconclusive":
            report.inconclusive.append(
                {"g6": write_graph6(_canonicalize(g)), "values": values}
            )


def _stream_spectral_scan(report, stream, n, pattern, thr, tol, prefilters, handle):
    qualify_cut = thr - tol
    e_floor = (qualify_cut * qualify_cut) / 2.0
    src = stream_graph6(stream) if not hasattr(stream, "diagnostics") else stream
    for g in src:
        if g.n != n:
            raise InvalidArgument(f"stream graph of order {g.n}, scan expects {n}")
        report.scanned += 1
        e = g.e
        if prefilters and e < e_floor:
            report.filtered += 1
            continue
        if contains(g, pattern):
            report.filtered += 1
            continue
        handle(g, e, booksize(g))
    report.params["stream_diagnostics"] = [str(d) for d in getattr(src, "diagnostics", [])]


# ---------------------------------------------------------------------------
# Target: booksize corollary / open problem probe


def verify_booksize_corollary(
    n: int,
    divisor: float,
    tol: float = DEFAULT_TOL,
    strict: bool | None = None,
    shard_count: int = 1,
    shard_index: int = 0,
    prefilters: bool = True,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
) -> VerificationReport:
    """Minimum booksize over spectrally qualifying graphs other than T_{n,2}.

    A violation is a qualifying non-Turan graph whose booksize is at most
    n/divisor; the recorded objective is the minimum booksize among
    qualifying graphs and the witnesses achieve it.

    Divisor 6.5 is the proven statement, whose hypothesis is
    rho >= rho(T_{n,2}); smaller divisors probe the open problem, whose
    hypothesis is strictly greater. `strict` defaults accordingly and can be
    forced. Strict mode treats graphs whose bracket cannot be separated from
    the threshold (exact ties like regular graphs with rho = n/2) as
    non-qualifying rather than inconclusive.
    """
    if divisor <= 0:
        raise InvalidArgument("divisor must be positive")
    if n < 2:
        raise InvalidArgument("need n >= 2")
    _require_enum_order(n, None)
    t0 = time.perf_counter()
    thr = turan_rho_bipartite(n)
    cap = int(math.floor(n / divisor + 1e-12))
    if strict is None:
        strict = divisor < 6.5
    params = _base_params(
        n=n,
        divisor=divisor,
        tol=tol,
        threshold=thr,
        hypothesis="rho > threshold" if strict else "rho >= threshold",
        booksize_cap=cap,
        shard_count=shard_count,
        shard_index=shard_index,
        prefilters=prefilters,
        max_witnesses=max_witnesses,
        objective_sense="min",
        objective_quantum=0,
    )
    if divisor < 6.5:
        params["range_note"] = "open-problem probe (divisor below 6.5)"
    report = VerificationReport(target="booksize-cor", params=params)

    core = _booksize_core(n, tol, cap, strict, shard_count, shard_index, prefilters)
    report.scanned = core["scanned"]
    report.filtered = core["filtered"]
    report.inconclusive = list(core["inconclusive"])

    # violations: qualifying graphs with booksize <= n/divisor
    for b, mask in core["qualified_small"]:
        if b <= n / divisor:
            cg = _canonicalize(from_mask(n, mask))
            est = spectral_radius(cg, tol)
            report.violations.append(
                {
                    "g6": write_graph6(cg),
                    "values": {
                        "e": cg.e,
                        "booksize": booksize(cg),
                        "rho": est.as_dict(),
                    },
                }
            )

    tracker = _Tracker("min")
    for b, mask in core["min_witnesses"]:
        tracker.offer(b, mask)

    def build(mask):
        cg = _canonicalize(from_mask(n, mask))
        est = spectral_radius(cg, tol)
        return {
            "g6": write_graph6(cg),
            "objective": booksize(cg),
            "values": {"e": cg.e, "booksize": booksize(cg), "rho": est.as_dict()},
        }

    return _finish(report, tracker, build, t0)


@lru_cache(maxsize=8)
def _booksize_core(
    n: int,
    tol: float,
    cap: int,
    strict: bool,
    shard_count: int,
    shard_index: int,
    prefilters: bool,
) -> dict:
    """Divisor-independent part of the booksize scan.

    Returns the minimum qualifying booksize, bounded witness mask lists, and
    every qualifying graph with booksize <= cap (the violation bucket).

    Pass 1 resolves the small-booksize bucket exactly and tracks the minimum
    booksize among graphs whose qualification is certified by the average
    degree bound 2e/n. Pass 2 re-enumerates only the booksize values between
    the bucket cap and that certified minimum, where slower certified
    screens (Hong, A^2 row sums, Collatz-Wielandt stages) leave a thin
    layer of graphs that get converged brackets.
    """
    thr = turan_rho_bipartite(n)
    cert_cut = thr + tol if strict else thr - tol
    reject_cut = thr - 2 * tol
    e_floor = (reject_cut * reject_cut) / 2.0
    m_edges = turan_edge_count(n, 2)

    scanned = 0
    filtered = 0
    inconclusive: list = []
    qualified_small: list = []  # (booksize, mask) with booksize <= cap
    min_cert: int | None = None
    cert_tracks: dict[int, list[int]] = {}

    def cert_track(b: int, masks: Iterable[int]):
        lst = cert_tracks.setdefault(b, [])
        for m in masks:
            if len(lst) >= _TRACK_LIMIT:
                break
            lst.append(m)

    for masks in mask_chunks(n, shard_count, shard_index):
        scanned += masks.size
        e = np.bitwise_count(masks)
        if prefilters:
            keep = e.astype(np.float64) >= e_floor
            filtered += int((~keep).sum())
            masks, e = masks[keep], e[keep]
        if not masks.size:
            continue
        rows = _chunk_rows(masks, n)
        bk = _chunk_booksize(masks, rows, n)
        if strict:
            cert = 2.0 * e > n * cert_cut
        else:
            cert = 2.0 * e >= n * cert_cut

        # peel balanced-bipartite Turan labelings off the certified set
        maybe_t = np.nonzero(cert & (bk == 0) & (e == m_edges))[0]
        turan_hits = np.zeros(masks.size, dtype=bool)
        for i in maybe_t.tolist():
            if is_turan(from_mask(n, int(masks[i])), 2):
                turan_hits[i] = True
        certq = cert & ~turan_hits
        if certq.any():
            bmin = int(bk[certq].min())
            if min_cert is None or bmin < min_cert:
                min_cert = bmin
            for b in np.unique(bk[certq]).tolist():
                if b <= (min_cert if min_cert is not None else n):
                    sel = certq & (bk == b)
                    cert_track(int(b), masks[sel][:_TRACK_LIMIT].tolist())
            for i in np.nonzero(certq & (bk <= cap))[0].tolist():
                qualified_small.append((int(bk[i]), int(masks[i])))

        # violation bucket: small booksize, qualification undecided
        und = ~cert & (bk <= cap)
        if prefilters:
            und &= ~_hong_excludable(e, rows, n, reject_cut)
        idx = np.nonzero(und)[0]
        if prefilters and idx.size:
            sub_rows = [r[idx] for r in rows]
            idx = idx[~_a2_excludable(sub_rows, n, reject_cut)]
        if idx.size:
            sub = masks[idx]
            if prefilters:
                below = certified_below(adjacency_batch(sub, n), reject_cut)
                sub = sub[~below]
            _resolve_bucket(sub, n, thr, tol, strict, qualified_small, inconclusive)

    # pass 2: booksize values above the bucket cap but at or below the
    # certified minimum may still hold the true minimum or extra witnesses
    hi = min_cert if min_cert is not None else n - 2
    pass2_hits: list = []
    if hi > cap:
        _booksize_pass2(
            n, tol, cap, hi, strict, shard_count, shard_index, prefilters,
            pass2_hits, inconclusive,
        )

    candidates = qualified_small + pass2_hits
    for b, lst in cert_tracks.items():
        candidates += [(b, m) for m in lst]
    min_b = min((b for b, _ in candidates), default=None)
    min_witnesses = sorted(
        (b, m) for b, m in candidates if b == min_b
    )[:_TRACK_LIMIT]
    return {
        "scanned": scanned,
        "filtered": filtered,
        "inconclusive": tuple(inconclusive),
        "qualified_small": tuple(sorted(qualified_small)),
        "min_witnesses": tuple(min_witnesses),
        "min_booksize": min_b,
    }


def _resolve_bucket(sub, n, thr, tol, strict, qualified_out, inconclusive):
    """Converged-bracket decisions for a small mask array."""
    from .spectral import SpectralEstimate

    for pos, batch in _converge_masks(sub, n, tol):
        for i in range(batch.value.size):
            mask = int(sub[pos + i])
            g = from_mask(n, mask)
            if not batch.converged[i]:
                inconclusive.append(
                    {
                        "g6": write_graph6(_canonicalize(g)),
                        "values": {"note": "iteration budget exhausted"},
                    }
                )
                continue
            value = float(batch.value[i])
            rn = float(batch.residual[i])
            est = SpectralEstimate(value, value, value + rn, rn, 0)
            verdict, info = _decide_hypothesis(g, thr, tol, strict, est)
            if verdict == "yes" and not is_turan(g, 2):
                qualified_out.append((booksize(g), mask))
            elif verdict == "inconclusive":
                inconclusive.append(
                    {
                        "g6": write_graph6(_canonicalize(g)),
                        "values": {
                            "e": g.e,
                            "booksize": booksize(g),
                            **info,
                        },
                    }
                )


def _decide_hypothesis(g, thr, tol, strict, est):
    """Bracket decision for the qualification hypothesis.

    Non-strict: rho >= thr, fuzzy at tol, straddle refined then
    inconclusive. Strict: rho > thr; brackets that cannot be separated from
    the threshold (exact ties) count as non-qualifying after one refinement.
    """
    if not strict:
        return _decide_threshold(g, thr, tol, est)
    cut = thr + tol
    info = {"rho": est.as_dict()}
    if est.lower > cut:
        return "yes", info
    if est.upper <= cut:
        return "no", info
    refined = spectral_radius(g, tol / 100)
    info["rho_refined"] = refined.as_dict()
    return ("yes" if refined.lower > cut else "no"), info


def _booksize_pass2(
    n, tol, cap, hi, strict, shard_count, shard_index, prefilters, hits, inconclusive
):
    thr = turan_rho_bipartite(n)
    cert_cut = thr + tol if strict else thr - tol
    reject_cut = thr - 2 * tol
    e_floor = (reject_cut * reject_cut) / 2.0
    confirmed_at_hi = 0
    for masks in mask_chunks(n, shard_count, shard_index):
        e = np.bitwise_count(masks)
        keep = e.astype(np.float64) >= e_floor
        masks, e = masks[keep], e[keep]
        if not masks.size:
            continue
        rows = _chunk_rows(masks, n)
        bk = _chunk_booksize(masks, rows, n)
        if strict:
            cert = 2.0 * e > n * cert_cut
        else:
            cert = 2.0 * e >= n * cert_cut
        sel = ~cert & (bk > cap) & (bk <= hi)
        if prefilters:
            sel &= ~_hong_excludable(e, rows, n, reject_cut)
        idx = np.nonzero(sel)[0]
        if prefilters and idx.size:
            sub_rows = [r[idx] for r in rows]
            idx = idx[~_a2_excludable(sub_rows, n, reject_cut)]
        if idx.size:
            sub = masks[idx]
            bks = bk[idx]
            if prefilters:
                below = certified_below(adjacency_batch(sub, n), reject_cut)
                sub, bks = sub[~below], bks[~below]
            before = len(hits)
            _resolve_bucket(sub, n, thr, tol, strict, hits, inconclusive)
            confirmed_at_hi += sum(1 for b, _ in hits[before:] if b == hi)
        # every undecided candidate below hi has been resolved for the
        # masks seen so far; once enough witnesses at hi are confirmed and
        # nothing smaller appeared, later chunks cannot change the outcome
        if (
            hi == cap + 1
            and confirmed_at_hi >= _TRACK_LIMIT
            and all(b >= hi for b, _ in hits)
        ):
            break


# ---------------------------------------------------------------------------
# Target: consecutive cycles corollary


def verify_cycle_corollary(
    n: int,
    stream=None,
    tol: float = DEFAULT_TOL,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
) -> VerificationReport:
    """Qualifying non-Turan graphs must contain every cycle length <= n/7."""
    t0 = time.perf_counter()
    thr = turan_rho_bipartite(n) if n >= 2 else 0.0
    t_max = n // 7
    params = _base_params(
        n=n,
        tol=tol,
        threshold=thr,
        t_max=t_max,
        max_witnesses=max_witnesses,
        objective_sense="max",
        objective_quantum=tol / 10,
    )
    report = VerificationReport(target="cycle-cor", params=params)
    if t_max < 3:
        params["range_note"] = "vacuous: floor(n/7) < 3 leaves no cycle lengths"
        return _finish(report, None, None, t0)
    if stream is None:
        raise OrderCap(
            "cycle corollary is vacuous below n=21; larger orders need a stream"
        )
    tracker = _Tracker("max", quantum=tol / 10)
    src = stream_graph6(stream) if not hasattr(stream, "diagnostics") else stream
    e_floor = ((thr - tol) ** 2) / 2.0
    for g in src:
        if g.n != n:
            raise InvalidArgument(f"stream graph of order {g.n}, scan expects {n}")
        report.scanned += 1
        if g.e < e_floor:
            report.filtered += 1
            continue
        verdict, info = _decide_threshold(g, thr, tol, spectral_radius(g, tol))
        if verdict == "no":
            continue
        if verdict == "inconclusive":
            report.inconclusive.append(
                {"g6": write_graph6(_canonicalize(g)), "values": info}
            )
            continue
        if is_turan(g, 2):
            continue
        tracker.offer(info["rho"]["value"], (g.to_mask(), g.n))
        missing = [t for t in range(3, t_max + 1) if not contains(g, Cycle(t))]
        if missing:
            cg = _canonicalize(g)
            est = spectral_radius(cg, tol)
            report.violations.append(
                {
                    "g6": write_graph6(cg),
                    "values": {
                        "e": cg.e,
                        "missing_cycles": missing,
                        "rho": est.as_dict(),
                    },
                }
            )
    report.params["stream_diagnostics"] = [str(d) for d in getattr(src, "diagnostics", [])]

    def build(payload):
        mask, order = payload
        cg = _canonicalize(from_mask(order, mask))
        est = spectral_radius(cg, tol)
        return {
            "g6": write_graph6(cg),
            "objective": est.value,
            "values": {"e": cg.e, "rho": est.as_dict()},
        }

    return _finish(report, tracker, build, t0)


# ---------------------------------------------------------------------------
# Target: edge-version book conjecture


def verify_edge_book(
    n: int,
    tol: float = DEFAULT_TOL,
    shard_count: int = 1,
    shard_index: int = 0,
    prefilters: bool = True,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
) -> VerificationReport:
    """Graphs with e > e(T_{n,2}) must have booksize above n/6."""
    _require_enum_order(n, None)
    t0 = time.perf_counter()
    m_edges = turan_edge_count(n, 2)
    params = _base_params(
        n=n,
        tol=tol,
        edge_threshold=m_edges,
        divisor=6.0,
        shard_count=shard_count,
        shard_index=shard_index,
        prefilters=prefilters,
        max_witnesses=max_witnesses,
        objective_sense="min",
        objective_quantum=0,
    )
    report = VerificationReport(target="edge-book", params=params)
    tracker = _Tracker("min")
    for masks in mask_chunks(n, shard_count, shard_index):
        report.scanned += masks.size
        e = np.bitwise_count(masks)
        keep = e > m_edges
        report.filtered += int((~keep).sum())
        masks_k = masks[keep]
        if not masks_k.size:
            continue
        rows = _chunk_rows(masks_k, n)
        bk = _chunk_booksize(masks_k, rows, n)
        chunk_min = int(bk.min())
        if tracker.best_q is None or chunk_min <= tracker.best_q:
            for i in np.nonzero(bk == chunk_min)[0][:_TRACK_LIMIT].tolist():
                tracker.offer(chunk_min, int(masks_k[i]))
        for i in np.nonzero(bk.astype(np.float64) <= n / 6.0)[0].tolist():
            cg = _canonicalize(from_mask(n, int(masks_k[i])))
            report.violations.append(
                {
                    "g6": write_graph6(cg),
                    "values": {"e": cg.e, "booksize": booksize(cg)},
                }
            )

    def build(mask):
        cg = _canonicalize(from_mask(n, mask))
        return {
            "g6": write_graph6(cg),
            "objective": booksize(cg),
            "values": {"e": cg.e, "booksize": booksize(cg)},
        }

    return _finish(report, tracker, build, t0)


# ---------------------------------------------------------------------------
# Target: Erdos-Gallai path lemma


def verify_erdos_gallai(
    n: int,
    r: int,
    shard_count: int = 1,
    shard_index: int = 0,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
) -> VerificationReport:
    """P_{r+2}-free graphs satisfy 2e <= rn, equality only disjoint K_{r+1}s."""
    if n > 7:
        raise OrderCap("Erdos-Gallai scan capped at n=7")
    if r < 1:
        raise InvalidArgument("need r >= 1")
    t0 = time.perf_counter()
    params = _base_params(
        n=n,
        r=r,
        shard_count=shard_count,
        shard_index=shard_index,
        max_witnesses=max_witnesses,
        objective_sense="max",
        objective_quantum=0,
    )
    report = VerificationReport(target="erdos-gallai", params=params)
    tracker = _Tracker("max")

    from .patterns import _seek_path_with_edges  # early-exit path probe

    for masks in mask_chunks(n, shard_count, shard_index):
        report.scanned += masks.size
        e = np.bitwise_count(masks)
        keep = 2 * e >= r * n
        report.filtered += int((~keep).sum())
        for mask, edges in zip(masks[keep].tolist(), e[keep].tolist()):
            g = from_mask(n, mask)
            if _seek_path_with_edges(g, r + 1) is not None:
                continue  # contains P_{r+2}
            if 2 * edges > r * n:
                cg = _canonicalize(g)
                report.violations.append(
                    {
                        "g6": write_graph6(cg),
                        "values": {"e": edges, "bound": r * n / 2, "kind": "excess"},
                    }
                )
            elif 2 * edges == r * n:
                ok = _is_disjoint_cliques(g, r + 1)
                if not ok:
                    cg = _canonicalize(g)
                    report.violations.append(
                        {
                            "g6": write_graph6(cg),
                            "values": {
                                "e": edges,
                                "kind": "equality not a union of K_{r+1}",
                            },
                        }
                    )
                else:
                    tracker.offer(edges, mask)

    def build(mask):
        cg = _canonicalize(from_mask(n, mask))
        return {
            "g6": write_graph6(cg),
            "objective": cg.e,
            "values": {"e": cg.e, "disjoint_cliques": True},
        }

    return _finish(report, tracker, build, t0)


def _is_disjoint_cliques(g: Graph, size: int) -> bool:
    for comp in g.components():
        k = comp.bit_count()
        if k == 1:
            continue  # isolated vertices are allowed alongside
        if k != size:
            return False
        for v in mask_bits(comp):
            if g.rows[v] != comp & ~(1 << v):
                return False
    return True


# ---------------------------------------------------------------------------
# Target: bipartite X-X path lemma


def verify_bipartite_path_lemma(
    x_max: int,
    y_max: int,
    r: int,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
) -> VerificationReport:
    """e <= (r-1)|X| + r|Y| - r(r-1) for bipartite graphs without an X-X
    path of 2r edges; equality only at complete bipartite extremes."""
    if x_max + y_max > 9:
        raise OrderCap("bipartite path scan capped at |X| + |Y| <= 9")
    if r < 2:
        raise InvalidArgument("need r >= 2 so that |Y| >= r-1 >= 1")
    t0 = time.perf_counter()
    params = _base_params(
        x_max=x_max,
        y_max=y_max,
        r=r,
        max_witnesses=max_witnesses,
        objective_sense="max",
        objective_quantum=0,
    )
    report = VerificationReport(target="bipartite-path", params=params)
    tracker = _Tracker("max")
    for a in range(r, x_max + 1):
        for b in range(r - 1, y_max + 1):
            bound = (r - 1) * a + r * b - r * (r - 1)
            x_mask = (1 << a) - 1
            cross = [(i, a + j) for i in range(a) for j in range(b)]
            for mask in range(1 << (a * b)):
                report.scanned += 1
                edges = [cross[i] for i in range(a * b) if mask >> i & 1]
                g = _bip_graph(a, b, edges)
                if longest_xx_path_edges(g, x_mask) >= 2 * r:
                    report.filtered += 1
                    continue
                e = len(edges)
                if e > bound:
                    report.violations.append(
                        {
                            "g6": write_graph6(_canonicalize(g)),
                            "values": {"x": a, "y": b, "e": e, "bound": bound,
                                       "kind": "excess"},
                        }
                    )
                elif e == bound:
                    complete = e == a * b
                    named = complete and (a == r or b == r - 1)
                    if not named:
                        report.violations.append(
                            {
                                "g6": write_graph6(_canonicalize(g)),
                                "values": {"x": a, "y": b, "e": e, "bound": bound,
                                           "kind": "equality not K_{X,Y} extreme"},
                            }
                        )
                    else:
                        tracker.offer(0, (a, b, mask))

    def build(payload):
        a, b, mask = payload
        cross = [(i, a + j) for i in range(a) for j in range(b)]
        g = _bip_graph(a, b, [cross[i] for i in range(a * b) if mask >> i & 1])
        cg = _canonicalize(g)
        return {
            "g6": write_graph6(cg),
            "objective": 0,
            "values": {"x": a, "y": b, "e": g.e},
        }

    return _finish(report, tracker, build, t0)


def _bip_graph(a: int, b: int, edges) -> Graph:
    from .graphs import from_edge_list

    return from_edge_list(a + b, edges)


# ---------------------------------------------------------------------------
# Target: gamma(u*) >= rho^2


def verify_gamma_bound(
    n: int,
    tol: float = DEFAULT_TOL,
    shard_count: int = 1,
    shard_index: int = 0,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
) -> VerificationReport:
    """gamma(u*) >= rho^2 - 1e-9 for every connected graph of order n."""
    if n > 7:
        raise OrderCap("gamma scan capped at n=7")
    t0 = time.perf_counter()
    params = _base_params(
        n=n,
        tol=tol,
        slack=GAMMA_SLACK,
        shard_count=shard_count,
        shard_index=shard_index,
        max_witnesses=max_witnesses,
        objective_sense="min",
        objective_quantum=GAMMA_SLACK,
    )
    report = VerificationReport(target="gamma", params=params)
    tracker = _Tracker("min", quantum=GAMMA_SLACK)
    for masks in mask_chunks(n, shard_count, shard_index):
        report.scanned += masks.size
        e = np.bitwise_count(masks)
        keep = e >= n - 1  # connectivity needs at least a spanning tree
        masks_k = masks[keep]
        pruned = int((~keep).sum())
        if masks_k.size:
            rows = _chunk_rows(masks_k, n)
            conn = _chunk_connected(rows, n)
            pruned += int((~conn).sum())
            masks_k = masks_k[conn]
        report.filtered += pruned
        if not masks_k.size:
            continue
        for pos, batch in _converge_masks(masks_k, n, tol, want_vectors=True):
            count = batch.value.size
            sub = masks_k[pos : pos + count]
            gam = _chunk_gamma(sub, batch.vectors[:count], n)
            for i in range(count):
                g6mask = int(sub[i])
                if not batch.converged[i]:
                    g = from_mask(n, g6mask)
                    report.inconclusive.append(
                        {
                            "g6": write_graph6(_canonicalize(g)),
                            "values": {"note": "iteration budget exhausted"},
                        }
                    )
                    continue
                lower = float(batch.value[i])
                gap = float(gam[i]) - lower * lower
                tracker.offer(gap, g6mask)
                if gap < -GAMMA_SLACK:
                    g = from_mask(n, g6mask)
                    cg = _canonicalize(g)
                    cest = spectral_radius(cg, tol)
                    from .spectral import gamma_star

                    cgam = gamma_star(cg, tol)
                    report.violations.append(
                        {
                            "g6": write_graph6(cg),
                            "values": {
                                "gamma": cgam.gamma,
                                "rho": cest.as_dict(),
                                "gap": cgam.gamma - cest.lower**2,
                            },
                        }
                    )

    def build(mask):
        from .spectral import gamma_star

        cg = _canonicalize(from_mask(n, mask))
        est = spectral_radius(cg, tol)
        gd = gamma_star(cg, tol)
        return {
            "g6": write_graph6(cg),
            "objective": gd.gamma - est.lower**2,
            "values": {
                "gamma": gd.gamma,
                "size_a": gd.size_a,
                "e_a": gd.e_a,
                "e_ab": gd.e_ab,
                "rho": est.as_dict(),
            },
        }

    return _finish(report, tracker, build, t0)


def _chunk_gamma(masks: np.ndarray, vectors: np.ndarray, n: int) -> np.ndarray:
    """Vectorized gamma at the per-graph weight argmax."""
    rows = _chunk_rows(masks, n)
    rowarr = np.stack(rows)  # (n, K)
    ustar = np.argmax(vectors[:, :n], axis=1)
    k = masks.size
    a = rowarr[ustar, np.arange(k)]
    full = np.uint8((1 << n) - 1)
    ubit = (np.uint8(1) << ustar.astype(np.uint8)).astype(np.uint8)
    b = (~(a | ubit)) & full
    two_ea = np.zeros(k, dtype=np.int32)
    eab = np.zeros(k, dtype=np.int32)
    for v in range(n):
        in_a = ((a >> v) & 1).astype(np.int32)
        two_ea += in_a * np.bitwise_count(rowarr[v] & a)
        eab += in_a * np.bitwise_count(rowarr[v] & b)
    return np.bitwise_count(a).astype(np.int32) + two_ea + eab


# ---------------------------------------------------------------------------
# Target: closed-form chain e(G*) <= (n/2) rho(T_{n,k}) < e(T_{n,k}) + 1


def verify_fact_chain(k_max: int, n_max: int) -> VerificationReport:
    """Pure arithmetic check of the closed-form pinching for all k <= k_max."""
    if k_max < 1 or n_max < 1:
        raise InvalidArgument("need positive k_max and n_max")
    t0 = time.perf_counter()
    params = _base_params(
        k_max=k_max,
        n_max=n_max,
        max_witnesses=1,
        objective_sense="min",
        objective_quantum=0.0,
    )
    report = VerificationReport(target="fact-chain", params=params)
    from .spectral import turan_rho_closed_form

    best = None
    best_pair = None
    for k in range(1, k_max + 1):
        for n in range(k, n_max + 1):
            report.scanned += 1
            lhs = 0.5 * n * turan_rho_closed_form(n, k)
            rhs = turan_edge_count(n, k) + 1
            if lhs >= rhs:
                report.violations.append(
                    {
                        "g6": None,
                        "values": {"n": n, "k": k, "lhs": lhs, "rhs": rhs},
                    }
                )
            margin = rhs - lhs
            if best is None or margin < best:
                best, best_pair = margin, (n, k)
    report.params["objective"] = best
    if best_pair is not None:
        nn, kk = best_pair
        report.extremal_witnesses = [
            {
                "g6": None,
                "objective": best,
                "values": {"n": nn, "k": kk, "margin": best},
            }
        ]
    return _finish(report, None, None, t0)


# ---------------------------------------------------------------------------
# Target: Turan numbers at desk scale


def verify_turan_number(
    n: int,
    pattern: PatternSpec,
    tol: float = DEFAULT_TOL,
    shard_count: int = 1,
    shard_index: int = 0,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
) -> VerificationReport:
    """Maximum edge count over pattern-free graphs plus the extremal set."""
    _require_enum_order(n, None)
    t0 = time.perf_counter()
    params = _base_params(
        n=n,
        pattern=pattern_str(pattern),
        tol=tol,
        shard_count=shard_count,
        shard_index=shard_index,
        max_witnesses=max_witnesses,
        objective_sense="max",
        objective_quantum=0,
    )
    report = VerificationReport(target="turan-number", params=params)
    tracker = _Tracker("max")
    for masks in mask_chunks(n, shard_count, shard_index):
        report.scanned += masks.size
        e = np.bitwise_count(masks)
        rows = _chunk_rows(masks, n)
        bk = _chunk_booksize(masks, rows, n)
        free = _pattern_free_flags(masks, bk, n, pattern)
        report.filtered += int((~free).sum())
        idx = np.nonzero(free)[0]
        if not idx.size:
            continue
        emax = int(e[idx].max())
        if tracker.best_q is None or emax >= tracker.best_q:
            hit = idx[e[idx] == emax]
            for mask in masks[hit][:_TRACK_LIMIT].tolist():
                tracker.offer(emax, int(mask))

    def build(mask):
        cg = _canonicalize(from_mask(n, mask))
        est = spectral_radius(cg, tol)
        return {
            "g6": write_graph6(cg),
            "objective": cg.e,
            "values": {"e": cg.e, "booksize": booksize(cg), "rho": est.as_dict()},
        }

    return _finish(report, tracker, build, t0)


# ---------------------------------------------------------------------------
# Target: clique-join construction


def check_snk(
    n: int,
    assert_rho: bool = False,
    tol: float = DEFAULT_TOL,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
) -> VerificationReport:
    """Clique-join lower-bound construction: rho vs n/2 and the cycle cap.

    For n <= 62 the spectral bracket comes from the matrix; above that the
    exact two-class quotient formula is used (flagged in params). The cycle
    obstruction is checked structurally: the non-clique part must be
    independent, which caps cycle lengths at 2k.
    """
    from .graphs import snk as snk_graph
    from .graphs import snk_clique_order

    if n < 2:
        raise InvalidArgument("need n >= 2")
    t0 = time.perf_counter()
    k = snk_clique_order(n)
    quotient = snk_rho_quotient(n, k)
    params = _base_params(
        n=n,
        k=k,
        tol=tol,
        half=n / 2,
        rho_quotient=quotient,
        cycle_cap=2 * k,
        assert_rho=assert_rho,
        max_witnesses=max_witnesses,
        objective_sense="max",
        objective_quantum=tol / 10,
    )
    report = VerificationReport(target="snk", params=params)
    report.scanned = 1
    if n <= 62:
        g = snk_graph(n, k)
        est = spectral_radius(g, tol)
        non_clique = g.vertex_mask & ~((1 << k) - 1)
        independent = all(
            g.rows[v] & non_clique == 0 for v in mask_bits(non_clique)
        )
        params["rho_source"] = "matrix"
        params["independence_ok"] = independent
        params["rho_gt_half"] = bool(est.lower > n / 2)
        report.params["objective"] = est.value
        report.extremal_witnesses = [
            {
                "g6": write_graph6(g),
                "objective": est.value,
                "values": {"e": g.e, "rho": est.as_dict(), "quotient": quotient},
            }
        ]
        rho_low = est.lower
        if not independent:
            report.violations.append(
                {
                    "g6": write_graph6(g),
                    "values": {"kind": "non-clique part not independent"},
                }
            )
    else:
        params["rho_source"] = "quotient-formula"
        params["independence_ok"] = True  # independent set by construction
        params["rho_gt_half"] = bool(quotient > n / 2)
        report.params["objective"] = quotient
        report.extremal_witnesses = [
            {
                "g6": None,
                "objective": quotient,
                "values": {"n": n, "k": k, "quotient": quotient},
            }
        ]
        rho_low = quotient
    if assert_rho and not rho_low > n / 2:
        report.violations.append(
            {
                "g6": None,
                "values": {
                    "kind": "rho <= n/2",
                    "rho": rho_low,
                    "half": n / 2,
                },
            }
        )
    if not params["rho_gt_half"]:
        params["range_note"] = "rho(S_{n,k}) > n/2 fails at this order (asymptotic claim)"
    return _finish(report, None, None, t0)


# ---------------------------------------------------------------------------
# Dispatch and sharded execution

TARGETS = {
    "spectral-book": verify_spectral_theorem,
    "spectral-theta": verify_spectral_theorem,
    "booksize-cor": verify_booksize_corollary,
    "cycle-cor": verify_cycle_corollary,
    "edge-book": verify_edge_book,
    "erdos-gallai": verify_erdos_gallai,
    "bipartite-path": verify_bipartite_path_lemma,
    "gamma": verify_gamma_bound,
    "fact-chain": verify_fact_chain,
    "turan-number": verify_turan_number,
    "snk": check_snk,
}

_SHARDABLE = {
    "spectral-book",
    "spectral-theta",
    "booksize-cor",
    "edge-book",
    "erdos-gallai",
    "gamma",
    "turan-number",
}


def _run_target(target: str, kwargs: dict) -> VerificationReport:
    fn = TARGETS[target]
    return fn(**kwargs)


def run_scan(target: str, threads: int = 1, **kwargs) -> VerificationReport:
    """Run one verification target, optionally sharded over worker processes.

    The merged report is independent of the worker count; workers share
    nothing but the immutable parameters.
    """
    if target not in TARGETS:
        raise InvalidArgument(f"unknown verify target {target!r}")
    if threads <= 1 or target not in _SHARDABLE:
        return _run_target(target, kwargs)
    shard_count = kwargs.pop("shard_count", threads)
    kwargs.pop("shard_index", None)
    jobs = [
        (target, {**kwargs, "shard_count": shard_count, "shard_index": i})
        for i in range(shard_count)
    ]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(_scan_job, jobs))
    report = parts[0]
    for part in parts[1:]:
        report = merge_reports(report, part)
    return report


def _scan_job(job):
    target, kwargs = job
    return _run_target(target, kwargs)
