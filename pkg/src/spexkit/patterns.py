"""Subgraph decision procedures: books, theta(1,2,l), cycles, paths.

One backtracking exact-length path engine powers theta and cycle detection.
Searches are deterministic (edges by ascending pair order, neighbors by
ascending index) so the first witness found is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import (
    InvalidArgument,
    InvalidVertex,
    NotBipartiteWithGivenParts,
    OrderCap,
)
from .graphs import Graph, VertexMask, basic, book, mask_bits, theta

PATH_ORDER_CAP = 16


@dataclass(frozen=True)
class Book:
    """q pages: two adjacent spine vertices with q common neighbors."""

    q: int

    def __post_init__(self):
        if self.q < 1:
            raise InvalidArgument(f"book pages must be >= 1, got {self.q}")


@dataclass(frozen=True)
class Theta123:
    """theta(1, 2, ell): poles joined by paths of lengths 1, 2 and ell."""

    ell: int

    def __post_init__(self):
        if self.ell < 2:
            raise InvalidArgument(f"third path length must be >= 2, got {self.ell}")


@dataclass(frozen=True)
class Cycle:
    t: int

    def __post_init__(self):
        if self.t < 3:
            raise InvalidArgument(f"cycle length must be >= 3, got {self.t}")


@dataclass(frozen=True)
class PathOnK:
    """Path on k vertices (k-1 edges)."""

    k: int

    def __post_init__(self):
        if self.k < 2:
            raise InvalidArgument(f"path order must be >= 2, got {self.k}")


PatternSpec = Union[Book, Theta123, Cycle, PathOnK]


def parse_pattern(text: str) -> PatternSpec:
    """Parse the shared CLI grammar: book:Q, theta:L, cycle:T, path:K."""
    kind, sep, arg = text.partition(":")
    if not sep or not arg:
        raise InvalidArgument(f"bad pattern {text!r}, expected kind:N")
    try:
        value = int(arg)
    except ValueError:
        raise InvalidArgument(f"bad pattern parameter in {text!r}") from None
    if kind == "book":
        return Book(value)
    if kind == "theta":
        return Theta123(value)
    if kind == "cycle":
        return Cycle(value)
    if kind == "path":
        return PathOnK(value)
    raise InvalidArgument(f"unknown pattern kind {kind!r}")


def pattern_str(p: PatternSpec) -> str:
    if isinstance(p, Book):
        return f"book:{p.q}"
    if isinstance(p, Theta123):
        return f"theta:{p.ell}"
    if isinstance(p, Cycle):
        return f"cycle:{p.t}"
    return f"path:{p.k}"


def pattern_order(p: PatternSpec) -> int:
    if isinstance(p, Book):
        return p.q + 2
    if isinstance(p, Theta123):
        return p.ell + 2
    if isinstance(p, Cycle):
        return p.t
    return p.k


def pattern_graph(p: PatternSpec) -> Graph:
    """The pattern itself as a concrete graph."""
    if isinstance(p, Book):
        return book(p.q)
    if isinstance(p, Theta123):
        return theta([1, 2, p.ell])
    if isinstance(p, Cycle):
        return basic("cycle", p.t)
    return basic("path", p.k)


# ---------------------------------------------------------------------------
# Books


def booksize(g: Graph) -> int:
    """max over edges uv of |N(u) & N(v)|; 0 for edgeless or triangle-free."""
    best = 0
    for u, v in g.edges():
        c = (g.rows[u] & g.rows[v]).bit_count()
        if c > best:
            best = c
    return best


# ---------------------------------------------------------------------------
# Exact-length path engine


def path_exists_exact(
    g: Graph, u: int, v: int, length: int, excluded: VertexMask = 0
) -> bool:
    """Is there a u-v path with exactly `length` edges, internal vertices
    outside `excluded`?"""
    return _find_path(g, u, v, length, excluded) is not None


def _find_path(
    g: Graph, u: int, v: int, length: int, excluded: VertexMask
) -> list[int] | None:
    """Vertex sequence of one such path (deterministic), or None."""
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise InvalidVertex(f"({u},{v}) out of range")
    if u == v:
        raise InvalidVertex("path endpoints must differ")
    if (excluded >> u & 1) or (excluded >> v & 1):
        raise InvalidVertex("path endpoints may not be excluded")
    if length < 1:
        raise InvalidArgument(f"path length must be >= 1, got {length}")
    rows = g.rows
    usable = g.vertex_mask & ~excluded

    def dfs(cur: int, visited: VertexMask, rem: int) -> list[int] | None:
        if rem == 1:
            return [v] if rows[cur] >> v & 1 else None
        # internal candidates: usable, unvisited, not the target
        cands = rows[cur] & usable & ~visited & ~(1 << v)
        if rem - 1 > cands.bit_count() and rem - 1 > (
            usable & ~visited & ~(1 << v)
        ).bit_count():
            return None
        for w in mask_bits(cands):
            tail = dfs(w, visited | (1 << w), rem - 1)
            if tail is not None:
                return [w] + tail
        return None

    tail = dfs(u, 1 << u, length)
    return [u] + tail if tail is not None else None


# ---------------------------------------------------------------------------
# Containment


def contains(g: Graph, p: PatternSpec) -> bool:
    """True iff g contains the pattern as a (not necessarily induced) subgraph."""
    return find_witness(g, p) is not None


def find_witness(g: Graph, p: PatternSpec) -> tuple[tuple[int, int], ...] | None:
    """Edges of the first embedded copy found, or None.

    Deterministic: edges are tried in ascending pair order, common neighbors
    and path extensions in ascending vertex order.
    """
    if pattern_order(p) > g.n:
        return None
    if isinstance(p, Book):
        for u, v in g.edges():
            common = g.rows[u] & g.rows[v]
            if common.bit_count() >= p.q:
                pages = []
                for w in mask_bits(common):
                    pages.append((min(u, w), max(u, w)))
                    pages.append((min(v, w), max(v, w)))
                    if len(pages) == 2 * p.q:
                        break
                return ((u, v), *pages)
        return None
    if isinstance(p, Theta123):
        for u, v in g.edges():
            common = g.rows[u] & g.rows[v]
            if not common:
                continue
            for w in mask_bits(common):
                path = _find_path(g, u, v, p.ell, excluded=1 << w)
                if path is not None:
                    edges = [(u, v), (min(u, w), max(u, w)), (min(v, w), max(v, w))]
                    edges += _path_edges(path)
                    return tuple(edges)
        return None
    if isinstance(p, Cycle):
        for u, v in g.edges():
            path = _find_path(g, u, v, p.t - 1, excluded=0)
            if path is not None:
                return ((u, v), *_path_edges(path))
        return None
    path = _seek_path_with_edges(g, p.k - 1)
    return tuple(_path_edges(path)) if path is not None else None


def _path_edges(path: list[int]) -> list[tuple[int, int]]:
    return [
        (min(a, b), max(a, b)) for a, b in zip(path, path[1:])
    ]


# ---------------------------------------------------------------------------
# Longest paths


def _seek_path_with_edges(g: Graph, target: int) -> list[int] | None:
    """First path with exactly `target` edges, early exit; None if none."""
    if target == 0:
        return [0]
    rows = g.rows

    def dfs(cur: int, visited: VertexMask, path: list[int]) -> list[int] | None:
        if len(path) - 1 == target:
            return path
        avail = rows[cur] & ~visited
        if len(path) - 1 + (g.vertex_mask & ~visited).bit_count() < target:
            return None
        for w in mask_bits(avail):
            got = dfs(w, visited | (1 << w), path + [w])
            if got is not None:
                return got
        return None

    for start in range(g.n):
        got = dfs(start, 1 << start, [start])
        if got is not None:
            return got
    return None


def longest_path_edges(g: Graph) -> int:
    """Edge count of a longest path; exhaustive DFS, order capped at 16."""
    if g.n > PATH_ORDER_CAP:
        raise OrderCap(f"longest_path_edges capped at n={PATH_ORDER_CAP}")
    rows = g.rows
    best = 0

    def dfs(cur: int, visited: VertexMask, length: int):
        nonlocal best
        if length > best:
            best = length
        if length + (g.vertex_mask & ~visited).bit_count() <= best:
            return
        for w in mask_bits(rows[cur] & ~visited):
            dfs(w, visited | (1 << w), length + 1)

    for start in range(g.n):
        if best == g.n - 1:
            break
        dfs(start, 1 << start, 0)
    return best


def longest_xx_path_edges(g: Graph, x_mask: VertexMask) -> int:
    """Longest path with both endpoints in X, for bipartite g with parts
    (X, V minus X); 0 if there is none."""
    if g.n > PATH_ORDER_CAP:
        raise OrderCap(f"longest_xx_path_edges capped at n={PATH_ORDER_CAP}")
    y_mask = g.vertex_mask & ~x_mask
    for v in range(g.n):
        side = x_mask if x_mask >> v & 1 else y_mask
        if g.rows[v] & side:
            raise NotBipartiteWithGivenParts(
                f"edge inside one part at vertex {v}"
            )
    rows = g.rows
    best = 0

    def dfs(cur: int, visited: VertexMask, length: int):
        nonlocal best
        if (x_mask >> cur & 1) and length > best:
            best = length
        for w in mask_bits(rows[cur] & ~visited):
            dfs(w, visited | (1 << w), length + 1)

    for start in mask_bits(x_mask):
        dfs(start, 1 << start, 0)
    return best
