"""Shared oracles and helpers, independent of the code paths they check."""

from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from spexkit.graphs import Graph, from_mask, pair_count, pair_list


def all_masks(n: int):
    return range(1 << pair_count(n))


def all_graphs(n: int):
    for mask in all_masks(n):
        yield from_mask(n, mask)


def dense_rho(g: Graph) -> float:
    """Independent oracle: largest eigenvalue via LAPACK on the dense matrix."""
    a = np.zeros((g.n, g.n))
    for u, v in g.edges():
        a[u, v] = a[v, u] = 1.0
    return float(np.linalg.eigvalsh(a)[-1]) if g.n else 0.0


def dense_rho_batch(masks: np.ndarray, n: int) -> np.ndarray:
    mats = np.zeros((masks.size, n, n))
    for k, (u, v) in enumerate(pair_list(n)):
        bit = ((masks >> k) & 1).astype(np.float64)
        mats[:, u, v] = bit
        mats[:, v, u] = bit
    return np.linalg.eigvalsh(mats)[:, -1]


def contains_naive(g: Graph, pattern: Graph) -> bool:
    """Backtracking injective-embedding oracle, independent of the detectors."""
    pn = pattern.n
    if pn > g.n:
        return False
    p_adj = [[u for u in range(pn) if pattern.has_edge(u, v)] for v in range(pn)]
    assignment = [-1] * pn

    def extend(v: int, used: int) -> bool:
        if v == pn:
            return True
        for target in range(g.n):
            if used >> target & 1:
                continue
            if all(
                g.has_edge(target, assignment[u]) for u in p_adj[v] if u < v
            ):
                assignment[v] = target
                if extend(v + 1, used | (1 << target)):
                    return True
        assignment[v] = -1
        return False

    return extend(0, 0)


def random_graph(n: int, rng: random.Random) -> Graph:
    return from_mask(n, rng.getrandbits(pair_count(n)) if n > 1 else 0)


def burnside_class_count(n: int) -> int:
    """Number of isomorphism classes of order-n graphs by orbit counting."""
    import math

    pairs = pair_list(n)
    index = {p: i for i, p in enumerate(pairs)}
    total = 0
    for perm in itertools.permutations(range(n)):
        seen = [False] * len(pairs)
        cycles = 0
        for start in range(len(pairs)):
            if seen[start]:
                continue
            cycles += 1
            k = start
            while not seen[k]:
                seen[k] = True
                u, v = pairs[k]
                a, b = perm[u], perm[v]
                k = index[(min(a, b), max(a, b))]
        total += 1 << cycles
    return total // math.factorial(n)
