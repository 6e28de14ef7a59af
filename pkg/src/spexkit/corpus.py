"""graph6 codec, corpus streaming, and exhaustive labeled enumeration.

The codec is bit-exact: column-major upper-triangle bits, six per byte at
offset 63, single-byte headers only (n <= 62). Enumeration walks raw edge
masks (pair k at bit k) and shards them by residue so independent workers
partition the space exactly.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Iterator, Union

import numpy as np

from .errors import (
    BadHeader,
    InvalidArgument,
    NonzeroPadding,
    OrderCap,
    TruncatedRecord,
)
from .graphs import Graph, from_mask, pair_count, pair_list

HEADER_PREFIX = ">>graph6<<"
LABELED_ORDER_CAP = 8
DEDUP_ORDER_CAP = 7


def parse_graph6(record: Union[str, bytes]) -> Graph:
    """Decode one graph6 record (optional '>>graph6<<' prefix allowed)."""
    if isinstance(record, str):
        record = record.encode("ascii", errors="replace")
    record = record.strip()
    if record.startswith(HEADER_PREFIX.encode()):
        record = record[len(HEADER_PREFIX):].strip()
    if not record:
        raise TruncatedRecord("empty record")
    head = record[0]
    if head == ord(":"):
        raise BadHeader("sparse6 records are not supported")
    if head == ord("&"):
        raise BadHeader("digraph6 records are not supported")
    if head == 126:
        raise OrderCap("multi-byte graph6 header (n > 62) is not supported")
    if not 63 <= head <= 125:
        raise BadHeader(f"order byte {head} outside 63..125")
    n = head - 63
    if n == 0:
        raise BadHeader("graphs of order 0 are not supported")
    P = pair_count(n)
    nbytes = (P + 5) // 6
    body = record[1:]
    if len(body) != nbytes:
        raise TruncatedRecord(f"expected {nbytes} payload bytes, got {len(body)}")
    mask = 0
    for m, byte in enumerate(body):
        if not 63 <= byte <= 126:
            raise BadHeader(f"payload byte {byte} outside 63..126")
        group = byte - 63
        for t in range(6):
            if group >> (5 - t) & 1:
                k = 6 * m + t
                if k >= P:
                    raise NonzeroPadding(f"padding bit {k} is set")
                mask |= 1 << k
    return from_mask(n, mask)


def write_graph6(g: Graph) -> str:
    """Encode under the current labeling; round-trips through parse_graph6."""
    if g.n > 62:
        raise OrderCap(f"graph6 single-byte header caps order at 62, got {g.n}")
    mask = g.to_mask()
    P = pair_count(g.n)
    out = [chr(63 + g.n)]
    for m in range((P + 5) // 6):
        group = 0
        for t in range(6):
            k = 6 * m + t
            if k < P and mask >> k & 1:
                group |= 1 << (5 - t)
        out.append(chr(63 + group))
    return "".join(out)


@dataclass(frozen=True)
class MalformedRecord:
    """One undecodable input line: its 1-based line number and the reason."""

    line: int
    reason: str

    def __str__(self):
        return f"line {self.line}: {self.reason}"


class Graph6Stream:
    """Lazily yield graphs from line-delimited graph6 input.

    Malformed lines are recorded in `diagnostics` as iteration passes them;
    they are never silently dropped. Blank lines are ignored.
    """

    def __init__(self, source: Union[str, Path, IO, Iterable[str]]):
        self._source = source
        self.diagnostics: list[MalformedRecord] = []

    def _lines(self) -> Iterator[str]:
        src = self._source
        if src == "-":
            yield from sys.stdin
        elif isinstance(src, (str, Path)):
            try:
                with open(src, "r", encoding="ascii", errors="replace") as fh:
                    yield from fh
            except OSError as exc:
                raise OSError(f"cannot read graph6 source {src}: {exc}") from exc
        else:
            yield from src

    def __iter__(self) -> Iterator[Graph]:
        for lineno, line in enumerate(self._lines(), start=1):
            if not line.strip():
                continue
            try:
                yield parse_graph6(line)
            except (BadHeader, TruncatedRecord, NonzeroPadding, OrderCap) as exc:
                self.diagnostics.append(MalformedRecord(lineno, str(exc)))


def stream_graph6(source) -> Graph6Stream:
    return Graph6Stream(source)


# ---------------------------------------------------------------------------
# Exhaustive enumeration


@dataclass(frozen=True)
class EnumerationSpec:
    """What to enumerate: order, mode, and the shard of the space to emit."""

    n: int
    mode: str = "labeled"
    shard_count: int = 1
    shard_index: int = 0

    def __post_init__(self):
        if self.mode not in ("labeled", "canonical-deduped"):
            raise InvalidArgument(f"unknown enumeration mode {self.mode!r}")
        if self.n < 1:
            raise InvalidArgument(f"need n >= 1, got {self.n}")
        cap = LABELED_ORDER_CAP if self.mode == "labeled" else DEDUP_ORDER_CAP
        if self.n > cap:
            raise OrderCap(f"{self.mode} enumeration capped at n={cap}")
        if self.shard_count < 1:
            raise InvalidArgument("shard_count must be >= 1")
        if not 0 <= self.shard_index < self.shard_count:
            raise InvalidArgument("shard_index must lie in [0, shard_count)")


def mask_chunks(
    n: int,
    shard_count: int = 1,
    shard_index: int = 0,
    chunk_size: int = 1 << 20,
) -> Iterator[np.ndarray]:
    """Edge masks of the shard in ascending order, as int64 chunks."""
    total = 1 << pair_count(n)
    step = shard_count
    lo = shard_index
    span = chunk_size * step
    while lo < total:
        hi = min(lo + span, total)
        yield np.arange(lo, hi, step, dtype=np.int64)
        lo = hi


def enumerate_labeled(spec: EnumerationSpec) -> Iterator[Graph]:
    """Every graph of the shard exactly once, in ascending mask order.

    Labeled mode walks raw masks; canonical-deduped mode yields one
    representative per isomorphism class (its minimal relabeling), sharded
    round-robin so shards still partition the output.
    """
    if spec.mode == "labeled":
        for chunk in mask_chunks(spec.n, spec.shard_count, spec.shard_index):
            for mask in chunk.tolist():
                yield from_mask(spec.n, mask)
    else:
        for i, g in enumerate(canonical_representatives(spec.n)):
            if i % spec.shard_count == spec.shard_index:
                yield g


# ---------------------------------------------------------------------------
# Isomorphism dedup
#
# Orbit minima over the canonical key layout (pair k at bit P-1-k, so the
# numeric minimum of an orbit is the graph whose canonical_form equals its
# own encoding). Adjacent transpositions generate the symmetric group; each
# acts on keys as a bit permutation, applied through two half-width lookup
# tables. Min-propagation with pointer jumping converges to per-orbit minima.


def _generator_tables(n: int):
    P = pair_count(n)
    pairs = pair_list(n)
    half = P // 2
    lo_mask = (1 << half) - 1
    tables = []
    for t in range(n - 1):
        perm = list(range(n))
        perm[t], perm[t + 1] = perm[t + 1], perm[t]
        # canonical-key bit position of pair k is P-1-k
        posmap = [0] * P
        for k, (u, v) in enumerate(pairs):
            a, b = perm[u], perm[v]
            if a > b:
                a, b = b, a
            k2 = b * (b - 1) // 2 + a
            posmap[P - 1 - k] = P - 1 - k2
        lo = np.zeros(1 << half, dtype=np.int64)
        for x in range(1 << half):
            y = 0
            for b in range(half):
                if x >> b & 1:
                    y |= 1 << posmap[b]
            lo[x] = y
        hi = np.zeros(1 << (P - half), dtype=np.int64)
        for x in range(1 << (P - half)):
            y = 0
            for b in range(P - half):
                if x >> b & 1:
                    y |= 1 << posmap[half + b]
            hi[x] = y
        tables.append((lo, hi))
    return half, lo_mask, tables


def _orbit_minima(n: int) -> np.ndarray:
    """rep[key] = minimal key in the isomorphism orbit of key."""
    P = pair_count(n)
    total = 1 << P
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    half, lo_mask, tables = _generator_tables(n)
    keys = np.arange(total, dtype=np.int64)
    images = [lo[keys & lo_mask] | hi[keys >> half] for lo, hi in tables]
    rep = keys.copy()
    while True:
        before = rep.copy()
        for img in images:
            np.minimum(rep, rep[img], out=rep)
        rep = rep[rep]
        if np.array_equal(rep, before):
            return rep


def _graph_from_key(n: int, key: int) -> Graph:
    P = pair_count(n)
    mask = 0
    for k in range(P):
        if key >> (P - 1 - k) & 1:
            mask |= 1 << k
    return from_mask(n, mask)


def canonical_representatives(n: int) -> list[Graph]:
    """One minimal representative per isomorphism class, ascending key order."""
    if n > DEDUP_ORDER_CAP:
        raise OrderCap(f"canonical dedup capped at n={DEDUP_ORDER_CAP}")
    rep = _orbit_minima(n)
    keys = np.nonzero(rep == np.arange(rep.size, dtype=np.int64))[0]
    return [_graph_from_key(n, int(k)) for k in keys]


def count_isomorphism_classes(n: int) -> int:
    if n > DEDUP_ORDER_CAP:
        raise OrderCap(f"canonical dedup capped at n={DEDUP_ORDER_CAP}")
    rep = _orbit_minima(n)
    return int((rep == np.arange(rep.size, dtype=np.int64)).sum())
