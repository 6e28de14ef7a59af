"""Spectral radius and Perron vectors with certified brackets.

One batched power-iteration engine serves both the public single-graph API
and the verification scans. The iteration runs on the shifted operator
A + nI (bipartite +/-rho oscillation cannot stall it), starts from the
all-ones vector, and keeps iterates strictly positive. The matvec is an
explicit multiply-reduce so per-graph arithmetic is identical whether a
graph is solved alone or inside a batch; scans rely on that bit-identity.

Bracket: lower = final Rayleigh quotient (a lower bound on the top
eigenvalue of a symmetric matrix, which equals rho for adjacency matrices);
upper = Rayleigh quotient + residual norm. Cheap certified exclusion for
scans uses Collatz-Wielandt ratio bounds on the positive iterates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    Disconnected,
    EdgelessGraph,
    InvalidArgument,
    IterationCap,
)
from .graphs import Graph, VertexMask, mask_bits, pair_list

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 1_000_000


@dataclass(frozen=True)
class SpectralEstimate:
    """Certified bracket around rho(G): lower <= rho <= upper."""

    value: float
    lower: float
    upper: float
    residual: float
    iterations: int

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "residual": self.residual,
            "iterations": self.iterations,
        }


@dataclass(frozen=True)
class GammaDecomposition:
    """Two-step walk budget at the Perron argmax: |A| + 2e(A) + e(A,B)."""

    u_star: int
    a_mask: VertexMask
    b_mask: VertexMask
    size_a: int
    e_a: int
    e_ab: int
    gamma: int


class BatchResult:
    """Per-graph outputs of one batched power-iteration run."""

    __slots__ = ("value", "residual", "iterations", "vectors", "converged")

    def __init__(self, value, residual, iterations, vectors, converged):
        self.value = value
        self.residual = residual
        self.iterations = iterations
        self.vectors = vectors
        self.converged = converged


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for v, row in enumerate(g.rows):
        for u in mask_bits(row):
            a[v, u] = 1.0
    return a


def adjacency_batch(masks: np.ndarray, n: int) -> np.ndarray:
    """Dense (K, n, n) adjacency stack from upper-triangle edge masks."""
    mats = np.zeros((masks.size, n, n))
    for k, (u, v) in enumerate(pair_list(n)):
        bit = ((masks >> k) & 1).astype(np.float64)
        mats[:, u, v] = bit
        mats[:, v, u] = bit
    return mats


def _matvec(mats: np.ndarray, x: np.ndarray) -> np.ndarray:
    # multiply-reduce instead of BLAS: summation order is fixed per row,
    # so batch composition cannot change any graph's float trajectory
    return (mats * x[:, None, :]).sum(axis=2)


def power_iteration_batch(
    mats: np.ndarray,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    want_vectors: bool = False,
) -> BatchResult:
    """Shifted power iteration over a stack of adjacency matrices.

    Each graph freezes its outputs at the first iteration whose residual
    ||Ax - rq x|| drops to tol; converged graphs are compacted away so
    stragglers iterate in shrinking batches.
    """
    if tol <= 0:
        raise InvalidArgument(f"tol must be positive, got {tol}")
    K, n, _ = mats.shape
    value = np.zeros(K)
    residual = np.zeros(K)
    iterations = np.zeros(K, dtype=np.int64)
    converged = np.zeros(K, dtype=bool)
    vectors = np.zeros((K, n)) if want_vectors else None

    x = np.full((K, n), 1.0 / math.sqrt(n))
    active = np.arange(K)
    a = mats
    it = 0
    while active.size and it < max_iter:
        it += 1
        z = _matvec(a, x)
        rq = (x * z).sum(axis=1)
        r = z - rq[:, None] * x
        rn = np.sqrt((r * r).sum(axis=1))
        done = rn <= tol
        if done.any():
            idx = active[done]
            value[idx] = rq[done]
            residual[idx] = rn[done]
            iterations[idx] = it
            converged[idx] = True
            if want_vectors:
                vectors[idx] = x[done]
            keep = ~done
            active = active[keep]
            a = a[keep]
            x = x[keep]
            z = z[keep]
            rq = rq[keep]
            if not active.size:
                break
        y = z + n * x
        norm = np.sqrt((y * y).sum(axis=1))
        x = y / norm[:, None]
    if active.size:
        # budget exhausted: report the last iterate, flagged unconverged
        z = _matvec(a, x)
        rq = (x * z).sum(axis=1)
        r = z - rq[:, None] * x
        value[active] = rq
        residual[active] = np.sqrt((r * r).sum(axis=1))
        iterations[active] = it
        if want_vectors:
            vectors[active] = x
    return BatchResult(value, residual, iterations, vectors, converged)


def spectral_radius(
    g: Graph, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> SpectralEstimate:
    """Certified bracket of width <= 2*tol containing rho(G).

    Deterministic for fixed (G, tol); for disconnected graphs the iteration
    converges to the component achieving the maximum.
    """
    res = power_iteration_batch(adjacency_matrix(g)[None], tol, max_iter)
    if not res.converged[0]:
        raise IterationCap(
            f"no convergence to tol={tol} within {max_iter} iterations"
        )
    value = float(res.value[0])
    rn = float(res.residual[0])
    return SpectralEstimate(
        value=value,
        lower=value,
        upper=value + rn,
        residual=rn,
        iterations=int(res.iterations[0]),
    )


def perron_vector(
    g: Graph, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> tuple[np.ndarray, VertexMask]:
    """Nonnegative unit eigenvector for the component achieving rho(G).

    Returns (vector, component mask); entries off the achieving component
    are exactly zero, entries on it strictly positive.
    """
    if g.e == 0:
        raise EdgelessGraph("perron_vector needs at least one edge")
    res = power_iteration_batch(adjacency_matrix(g)[None], tol, max_iter, True)
    if not res.converged[0]:
        raise IterationCap(
            f"no convergence to tol={tol} within {max_iter} iterations"
        )
    x = res.vectors[0]
    comp = _component_of(g, int(np.argmax(x)))
    if comp == g.vertex_mask:
        return x, comp
    # restrict to the achieving component and re-solve there so the
    # off-component entries are exact zeros rather than decayed dust
    verts = list(mask_bits(comp))
    sub = _induced(g, verts)
    sres = power_iteration_batch(adjacency_matrix(sub)[None], tol, max_iter, True)
    if not sres.converged[0]:
        raise IterationCap("component iteration did not converge")
    out = np.zeros(g.n)
    out[verts] = sres.vectors[0]
    return out, comp


def _component_of(g: Graph, v: int) -> VertexMask:
    for comp in g.components():
        if comp >> v & 1:
            return comp
    raise AssertionError("unreachable")


def _induced(g: Graph, verts: list[int]) -> Graph:
    index = {v: i for i, v in enumerate(verts)}
    rows = [0] * len(verts)
    for v in verts:
        for u in mask_bits(g.rows[v]):
            if u in index:
                rows[index[v]] |= 1 << index[u]
    return Graph._unchecked(len(verts), tuple(rows))


def gamma_star(
    g: Graph, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> GammaDecomposition:
    """Decomposition at the Perron-weight argmax (lowest index on ties)."""
    if g.e == 0:
        raise EdgelessGraph("gamma_star needs at least one edge")
    if not g.is_connected():
        raise Disconnected("gamma_star is defined for connected graphs")
    x, _ = perron_vector(g, tol, max_iter)
    return gamma_from_weights(g, x)


def gamma_from_weights(g: Graph, x: np.ndarray) -> GammaDecomposition:
    """Gamma decomposition at argmax of a given weight vector."""
    u_star = int(np.argmax(x))
    a = g.rows[u_star]
    b = g.vertex_mask & ~(a | (1 << u_star))
    e_a = 0
    e_ab = 0
    for v in mask_bits(a):
        e_a += (g.rows[v] & a).bit_count()
        e_ab += (g.rows[v] & b).bit_count()
    e_a //= 2
    size_a = a.bit_count()
    return GammaDecomposition(
        u_star=u_star,
        a_mask=a,
        b_mask=b,
        size_a=size_a,
        e_a=e_a,
        e_ab=e_ab,
        gamma=size_a + 2 * e_a + e_ab,
    )


# ---------------------------------------------------------------------------
# Closed forms


def turan_rho_closed_form(n: int, k: int) -> float:
    """rho(T_{n,k}) = (n-2s-1 + sqrt((n-2s-1)^2 + 4s(s+1)(k-1)))/2, s=floor(n/k).

    k = 1 is special-cased to 0 (the one-part Turan graph is edgeless).
    """
    if not 1 <= k <= n:
        raise InvalidArgument(f"need 1 <= k <= n, got k={k}, n={n}")
    if k == 1:
        return 0.0
    s = n // k
    d = n - 2 * s - 1
    return 0.5 * (d + math.sqrt(d * d + 4 * s * (s + 1) * (k - 1)))


def turan_rho_bipartite(n: int) -> float:
    """rho(T_{n,2}) = sqrt(floor(n/2) * ceil(n/2)) = sqrt(floor(n^2/4))."""
    if n < 2:
        raise InvalidArgument(f"need n >= 2, got {n}")
    return math.sqrt(n * n // 4)


def avg_degree_bound(g: Graph) -> float:
    """Collatz-Sinogowitz lower bound 2e(G)/n <= rho(G)."""
    return 2.0 * g.e / g.n


def snk_rho_quotient(n: int, k: int) -> float:
    """rho of the clique-join construction from its 2x2 quotient matrix.

    The partition (clique, independent set) is equitable, so rho is the
    largest root of x^2 - (k-1)x - k(n-k).
    """
    if not 1 <= k < n:
        raise InvalidArgument(f"need 1 <= k < n, got k={k}, n={n}")
    return 0.5 * ((k - 1) + math.sqrt((k - 1) ** 2 + 4 * k * (n - k)))


# ---------------------------------------------------------------------------
# Certified screening for scans


def certified_below(
    mats: np.ndarray,
    cutoff: float,
    stages: tuple[int, ...] = (3, 6, 12, 24, 48),
) -> np.ndarray:
    """Boolean mask: True where rho < cutoff is certified.

    Runs a few power-iteration stages and bounds rho from above by the
    Collatz-Wielandt ratio max_i (Ax + nx)_i / x_i - n, valid for any
    strictly positive x. Graphs are dropped from later (more expensive)
    stages as soon as their bound clears the cutoff.
    """
    K, n, _ = mats.shape
    below = np.zeros(K, dtype=bool)
    if not K:
        return below
    live = np.arange(K)
    a = mats
    x = np.full((K, n), 1.0 / math.sqrt(n))
    for iters in stages:
        up = np.full(live.size, np.inf)
        for _ in range(iters):
            z = _matvec(a, x)
            y = z + n * x
            np.minimum(up, (y / x).max(axis=1) - n, out=up)
            x = y / np.sqrt((y * y).sum(axis=1))[:, None]
        done = up < cutoff
        below[live[done]] = True
        keep = ~done
        live = live[keep]
        if not live.size:
            break
        a = a[keep]
        x = x[keep]
    return below
