"""Immutable bit-packed simple graphs and the constructions used throughout.

Vertices are 0..n-1 with n <= 62 so every neighbor set fits in one machine
word and the upper-triangle edge mask of any graph fits in a Python int.
Vertex sets are plain ints (bit i = vertex i); edge masks use column-major
pair order (0,1),(0,2),(1,2),(0,3),... shared with the graph6 codec.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import InvalidArgument, InvalidVertex, OrderCap, SelfLoop

MAX_ORDER = 62
CANONICAL_ORDER_CAP = 10

VertexMask = int


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


@lru_cache(maxsize=None)
def pair_list(n: int) -> tuple[tuple[int, int], ...]:
    """Upper-triangle pairs in column-major order: (0,1),(0,2),(1,2),(0,3),..."""
    return tuple((i, j) for j in range(n) for i in range(j))


def pair_index(u: int, v: int) -> int:
    """Index of the pair {u, v} in column-major order."""
    if u > v:
        u, v = v, u
    return v * (v - 1) // 2 + u


def mask_bits(mask: int) -> Iterator[int]:
    """Ascending vertex indices present in a bit mask."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Immutable simple graph: order n plus one neighbor bit mask per vertex."""

    __slots__ = ("n", "rows")

    n: int
    rows: tuple[int, ...]

    def __init__(self, n: int, rows: Sequence[int]):
        if not 1 <= n <= MAX_ORDER:
            raise OrderCap(f"order {n} outside 1..{MAX_ORDER}")
        rows = tuple(rows)
        if len(rows) != n:
            raise InvalidArgument(f"expected {n} rows, got {len(rows)}")
        full = (1 << n) - 1
        for v, row in enumerate(rows):
            if row & ~full:
                raise InvalidVertex(f"row {v} mentions vertices >= {n}")
            if row >> v & 1:
                raise SelfLoop(f"vertex {v} adjacent to itself")
        for v, row in enumerate(rows):
            for u in mask_bits(row):
                if not rows[u] >> v & 1:
                    raise InvalidArgument(f"adjacency not symmetric at ({u},{v})")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def _unchecked(cls, n: int, rows: tuple[int, ...]) -> "Graph":
        # Fast path for constructors that build symmetric loop-free rows.
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "rows", rows)
        return g

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Graph) and self.n == other.n and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"Graph(n={self.n}, e={self.e})"

    @property
    def e(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    @property
    def vertex_mask(self) -> VertexMask:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def neighbors(self, v: int) -> VertexMask:
        return self.rows[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for v in range(self.n):
            for u in mask_bits(self.rows[v] & ((1 << v) - 1)):
                yield (u, v)

    def to_mask(self) -> int:
        """Upper-triangle edge mask, pair k at bit k."""
        mask = 0
        for u, v in self.edges():
            mask |= 1 << pair_index(u, v)
        return mask

    def with_edge(self, u: int, v: int) -> "Graph":
        self._check_pair(u, v)
        rows = list(self.rows)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph._unchecked(self.n, tuple(rows))

    def without_edge(self, u: int, v: int) -> "Graph":
        self._check_pair(u, v)
        rows = list(self.rows)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph._unchecked(self.n, tuple(rows))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex v mapped to perm[v]."""
        if sorted(perm) != list(range(self.n)):
            raise InvalidArgument("not a permutation of the vertex set")
        rows = [0] * self.n
        for v, row in enumerate(self.rows):
            for u in mask_bits(row):
                rows[perm[v]] |= 1 << perm[u]
        return Graph._unchecked(self.n, tuple(rows))

    def components(self) -> list[VertexMask]:
        """Connected components as vertex masks, ordered by lowest vertex."""
        remaining = self.vertex_mask
        comps = []
        while remaining:
            start = remaining & -remaining
            comp = start
            frontier = start
            while frontier:
                grown = comp
                for v in mask_bits(frontier):
                    grown |= self.rows[v]
                frontier = grown & ~comp
                comp = grown
            comps.append(comp)
            remaining &= ~comp
        return comps

    def is_connected(self) -> bool:
        return self.components()[0] == self.vertex_mask

    def _check_pair(self, u: int, v: int):
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise InvalidVertex(f"vertex pair ({u},{v}) out of range for n={self.n}")
        if u == v:
            raise SelfLoop(f"({u},{v})")


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Graph on n vertices with the given edges; duplicates collapse."""
    if not 1 <= n <= MAX_ORDER:
        raise OrderCap(f"order {n} outside 1..{MAX_ORDER}")
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidVertex(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise SelfLoop(f"({u},{v})")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph._unchecked(n, tuple(rows))


def from_mask(n: int, mask: int) -> Graph:
    """Graph from an upper-triangle edge mask (pair k at bit k)."""
    if not 1 <= n <= MAX_ORDER:
        raise OrderCap(f"order {n} outside 1..{MAX_ORDER}")
    if mask >> pair_count(n):
        raise InvalidArgument("mask has bits beyond the upper triangle")
    rows = [0] * n
    for k, (u, v) in enumerate(pair_list(n)):
        if mask >> k & 1:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return Graph._unchecked(n, tuple(rows))


def common_neighbors(g: Graph, u: int, v: int) -> VertexMask:
    """N(u) & N(v); never contains u or v because rows are loop-free."""
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise InvalidVertex(f"({u},{v}) out of range")
    if u == v:
        raise InvalidVertex("common_neighbors needs two distinct vertices")
    return g.rows[u] & g.rows[v]


# ---------------------------------------------------------------------------
# Named constructions


def turan(n: int, k: int) -> Graph:
    """Complete k-partite graph with near-equal parts.

    Parts are laid out in nonincreasing size with ascending vertex labels:
    the first n mod k parts have ceil(n/k) vertices, the rest floor(n/k).
    """
    if n > MAX_ORDER:
        raise OrderCap(f"order {n} exceeds {MAX_ORDER}")
    if not 1 <= k <= n:
        raise InvalidArgument(f"need 1 <= k <= n, got k={k}, n={n}")
    s, big = divmod(n, k)
    sizes = [s + 1] * big + [s] * (k - big)
    rows = [0] * n
    full = (1 << n) - 1
    start = 0
    for size in sizes:
        part = ((1 << size) - 1) << start
        for v in range(start, start + size):
            rows[v] = full & ~part
        start += size
    return Graph._unchecked(n, tuple(rows))


def turan_edge_count(n: int, k: int) -> int:
    """e(T_{n,k}) = (n(n-2s-1) + s(s+1)k)/2 with s = floor(n/k), exact."""
    if not 1 <= k <= n:
        raise InvalidArgument(f"need 1 <= k <= n, got k={k}, n={n}")
    s = n // k
    return (n * (n - 2 * s - 1) + s * (s + 1) * k) // 2


def book(q: int) -> Graph:
    """Book with q pages: spine edge 0-1, page vertices 2..q+1 joined to both."""
    if q < 1:
        raise InvalidArgument(f"book needs q >= 1, got {q}")
    n = q + 2
    if n > MAX_ORDER:
        raise OrderCap(f"book({q}) has order {n} > {MAX_ORDER}")
    edges = [(0, 1)]
    for w in range(2, n):
        edges.append((0, w))
        edges.append((1, w))
    return from_edge_list(n, edges)


def theta(lengths: Sequence[int]) -> Graph:
    """Two poles joined by internally disjoint paths of the given lengths."""
    lengths = list(lengths)
    if len(lengths) < 2:
        raise InvalidArgument("theta needs at least two paths")
    if lengths != sorted(lengths):
        raise InvalidArgument("path lengths must be sorted ascending")
    if lengths[0] < 1 or lengths[1] < 2:
        raise InvalidArgument("at most one path of length 1 and second length >= 2")
    n = 2 + sum(l - 1 for l in lengths)
    if n > MAX_ORDER:
        raise OrderCap(f"theta{tuple(lengths)} has order {n} > {MAX_ORDER}")
    a, b = 0, 1
    edges = []
    nxt = 2
    for l in lengths:
        prev = a
        for _ in range(l - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, b))
    return from_edge_list(n, edges)


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus all edges between the two vertex sets."""
    n = g.n + h.n
    if n > MAX_ORDER:
        raise OrderCap(f"join has order {n} > {MAX_ORDER}")
    cross_g = ((1 << h.n) - 1) << g.n
    cross_h = (1 << g.n) - 1
    rows = [row | cross_g for row in g.rows]
    rows += [(row << g.n) | cross_h for row in h.rows]
    return Graph._unchecked(n, tuple(rows))


def basic(kind: str, n: int) -> Graph:
    """One of the stock graphs: path, cycle, complete, empty."""
    if n < 1:
        raise InvalidArgument(f"need n >= 1, got {n}")
    if n > MAX_ORDER:
        raise OrderCap(f"order {n} exceeds {MAX_ORDER}")
    if kind == "path":
        return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "cycle":
        if n < 3:
            raise InvalidArgument(f"cycle needs n >= 3, got {n}")
        return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])
    if kind == "complete":
        return from_edge_list(n, pair_list(n))
    if kind == "empty":
        return from_edge_list(n, [])
    raise InvalidArgument(f"unknown kind {kind!r}")


def snk(n: int, k: int | None = None) -> Graph:
    """Join of a k-clique with n-k isolated vertices; default k = ceil((3-sqrt 5)n/4)."""
    if k is None:
        k = snk_clique_order(n)
    if not 1 <= k < n:
        raise InvalidArgument(f"need 1 <= k < n, got k={k}, n={n}")
    return join(basic("complete", k), basic("empty", n - k))


def snk_clique_order(n: int) -> int:
    return math.ceil((3 - math.sqrt(5)) * n / 4)


# ---------------------------------------------------------------------------
# Structure tests


def is_turan(g: Graph, k: int) -> bool:
    """Structural test: complete multipartite with k near-equal parts.

    Vertices are grouped by neighbor mask; the graph is complete multipartite
    exactly when every vertex is adjacent to everything outside its own group.
    No isomorphism search is involved, so this is safe in scan hot paths.
    """
    if k < 1:
        raise InvalidArgument(f"need k >= 1, got {k}")
    n = g.n
    if k > n:
        return False
    groups: dict[int, int] = {}
    for v, row in enumerate(g.rows):
        groups[row] = groups.get(row, 0) | (1 << v)
    if len(groups) != k:
        return False
    full = g.vertex_mask
    s = n // k
    for row, members in groups.items():
        if row != full & ~members:
            return False
        if members.bit_count() not in (s, s + 1):
            return False
    return True


# ---------------------------------------------------------------------------
# Canonical form


def canonical_key(g: Graph) -> int:
    """Minimum over relabelings of the edge bit string, pair 0 most significant.

    Branch-and-bound over vertex placements: placing position j fixes the
    column-j bits, which extend the most-significant prefix, so any prefix
    already above the incumbent prunes. States that revisit a placed vertex
    set with an identical prefix are skipped (handles highly symmetric graphs
    where plain pruning would degenerate to n! walks).
    """
    n = g.n
    if n > CANONICAL_ORDER_CAP:
        raise OrderCap(f"canonical form capped at order {CANONICAL_ORDER_CAP}")
    P = pair_count(n)
    rows = g.rows
    best: int | None = None
    seen: set[tuple[int, int]] = set()

    def extend(used: int, perm: list[int], prefix: int, bits: int):
        nonlocal best
        depth = len(perm)
        if depth == n:
            if best is None or prefix < best:
                best = prefix
            return
        state = (used, prefix)
        if state in seen:
            return
        seen.add(state)
        for v in range(n):
            if used >> v & 1:
                continue
            col = 0
            row = rows[v]
            for i in range(depth):
                col = (col << 1) | (row >> perm[i] & 1)
            new_prefix = (prefix << depth) | col
            new_bits = bits + depth
            if best is not None and new_prefix > (best >> (P - new_bits)):
                continue
            perm.append(v)
            extend(used | (1 << v), perm, new_prefix, new_bits)
            perm.pop()

    extend(0, [], 0, 0)
    assert best is not None
    return best


def canonical_form(g: Graph) -> bytes:
    """Canonical code: the order byte followed by the minimal edge bits."""
    key = canonical_key(g)
    nbytes = (pair_count(g.n) + 7) // 8
    return bytes([g.n]) + key.to_bytes(nbytes, "big")


def canonical_graph(g: Graph) -> Graph:
    """A concrete minimal relabeling of g (same canonical form as g)."""
    key = canonical_key(g)
    P = pair_count(g.n)
    mask = 0
    for k in range(P):
        if key >> (P - 1 - k) & 1:
            mask |= 1 << k
    return from_mask(g.n, mask)
