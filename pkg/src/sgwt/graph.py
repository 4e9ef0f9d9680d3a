"""Weighted graphs and their Laplacians.

Graphs are stored as a symmetric CSR adjacency matrix. Vertices are
indexed from 0. A self-loop ``(u, u, w)`` sits on the adjacency diagonal
and contributes ``w`` once to the degree of ``u``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph
from scipy.spatial.distance import pdist, squareform


class GraphError(ValueError):
    """Invalid graph input (bad index, weight, duplicate edge, ...)."""


UNNORMALIZED = "unnormalized"
NORMALIZED = "normalized"


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected graph with strictly positive edge weights.

    Attributes
    ----------
    num_vertices : int
    adjacency : scipy.sparse.csr_matrix
        Symmetric ``(N, N)`` matrix of weights; zero means no edge.
    """

    num_vertices: int
    adjacency: sp.csr_matrix = field(repr=False)

    @property
    def degrees(self) -> np.ndarray:
        return np.asarray(self.adjacency.sum(axis=1)).ravel()

    @property
    def num_edges(self) -> int:
        """Number of undirected edges, loops included."""
        upper = sp.triu(self.adjacency, format="coo")
        return int(upper.nnz)

    def edges(self) -> list[tuple[int, int, float]]:
        """Edges as ``(u, v, w)`` with ``u <= v``, sorted."""
        upper = sp.triu(self.adjacency, format="coo")
        order = np.lexsort((upper.col, upper.row))
        return [
            (int(upper.row[i]), int(upper.col[i]), float(upper.data[i]))
            for i in order
        ]

    def weight(self, u: int, v: int) -> float:
        return float(self.adjacency[u, v])

    def dense_adjacency(self) -> np.ndarray:
        return self.adjacency.toarray()


def _from_coo(num_vertices, rows, cols, weights) -> WeightedGraph:
    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    weights = np.asarray(weights, dtype=np.float64)
    off = rows != cols
    r = np.concatenate([rows, cols[off]])
    c = np.concatenate([cols, rows[off]])
    w = np.concatenate([weights, weights[off]])
    adj = sp.csr_matrix((w, (r, c)), shape=(num_vertices, num_vertices))
    adj.sort_indices()
    return WeightedGraph(num_vertices, adj)


def build_from_edge_list(
    records: Iterable[Sequence], num_vertices: int
) -> WeightedGraph:
    """Build a graph from ``(u, v, w)`` records.

    Each undirected edge may appear once, in either orientation. Raises
    `GraphError` on out-of-range indices, non-positive or non-finite
    weights, and duplicates.
    """
    if int(num_vertices) != num_vertices or num_vertices < 1:
        raise GraphError(f"num_vertices must be a positive integer, got {num_vertices}")
    num_vertices = int(num_vertices)
    rows, cols, weights = [], [], []
    seen = set()
    for i, rec in enumerate(records):
        if len(rec) != 3:
            raise GraphError(f"record {i}: expected (u, v, w), got {rec!r}")
        u, v, w = rec
        if int(u) != u or int(v) != v:
            raise GraphError(f"record {i}: vertex indices must be integers")
        u, v, w = int(u), int(v), float(w)
        if not (0 <= u < num_vertices and 0 <= v < num_vertices):
            raise GraphError(
                f"record {i}: vertex index out of range [0, {num_vertices})"
            )
        if not np.isfinite(w) or w <= 0:
            raise GraphError(f"record {i}: weight must be positive and finite, got {w}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphError(f"record {i}: duplicate edge {key}")
        seen.add(key)
        rows.append(u)
        cols.append(v)
        weights.append(w)
    return _from_coo(num_vertices, rows, cols, weights)


def build_from_point_cloud(points, sigma: float, threshold: float | None = None):
    """Gaussian-weighted complete graph on a point cloud.

    ``w_ij = exp(-|x_i - x_j|^2 / (2 sigma^2))`` for ``i != j``. Edges with
    weight below `threshold` are dropped, as are edges whose weight
    underflows to zero.
    """
    if sigma <= 0:
        raise GraphError("sigma must be positive")
    if threshold is not None and threshold < 0:
        raise GraphError("threshold must be non-negative")
    try:
        x = np.array(points, dtype=np.float64)
    except ValueError as exc:
        raise GraphError("points must share one dimensionality") from exc
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2 or x.shape[0] == 0:
        raise GraphError("points must be a non-empty (N, d) array")
    if not np.all(np.isfinite(x)):
        raise GraphError("point coordinates must be finite")
    n = x.shape[0]
    w = np.exp(-squareform(pdist(x, "sqeuclidean")) / (2.0 * sigma**2))
    np.fill_diagonal(w, 0.0)
    if threshold is not None:
        w[w < threshold] = 0.0
    adj = sp.csr_matrix(w)
    adj.eliminate_zeros()
    adj.sort_indices()
    return WeightedGraph(n, adj)


def build_from_grid_mask(mask) -> WeightedGraph:
    """4-connected unit-weight graph on the true pixels of a 2-D mask.

    Vertices are numbered by a row-major scan of the true pixels.
    """
    m = np.asarray(mask, dtype=bool)
    if m.ndim != 2:
        raise GraphError("mask must be 2-D")
    if not m.any():
        raise GraphError("mask has no true pixels")
    index = np.full(m.shape, -1, dtype=np.int64)
    index[m] = np.arange(int(m.sum()))
    right = m[:, :-1] & m[:, 1:]
    down = m[:-1, :] & m[1:, :]
    rows = np.concatenate([index[:, :-1][right], index[:-1, :][down]])
    cols = np.concatenate([index[:, 1:][right], index[1:, :][down]])
    return _from_coo(int(m.sum()), rows, cols, np.ones(len(rows)))


@dataclass(frozen=True)
class LaplacianOperator:
    """Sparse graph Laplacian, unnormalized (D - A) or normalized."""

    kind: str
    matrix: sp.csr_matrix = field(repr=False)
    degrees: np.ndarray = field(repr=False)

    @property
    def shape(self):
        return self.matrix.shape

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def matvec(self, f):
        return apply_laplacian(self, f)

    def __matmul__(self, f):
        return apply_laplacian(self, f)

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()


def laplacian(g: WeightedGraph, kind: str = UNNORMALIZED) -> LaplacianOperator:
    d = g.degrees
    if kind == UNNORMALIZED:
        mat = sp.diags(d) - g.adjacency
    elif kind == NORMALIZED:
        if np.any(d <= 0):
            bad = int(np.flatnonzero(d <= 0)[0])
            raise GraphError(
                f"normalized Laplacian needs positive degrees; vertex {bad} is isolated"
            )
        base = sp.coo_matrix(sp.diags(d) - g.adjacency)
        # sqrt(d_r * d_c) is symmetric in (r, c), so the result is exactly symmetric
        scaled = base.data / np.sqrt(d[base.row] * d[base.col])
        mat = sp.coo_matrix((scaled, (base.row, base.col)), shape=base.shape)
    else:
        raise ValueError(f"unknown Laplacian kind {kind!r}")
    mat = sp.csr_matrix(mat)
    mat.sort_indices()
    return LaplacianOperator(kind, mat, d)


def apply_laplacian(L: LaplacianOperator, f):
    """Sparse product ``L f``; `f` may be ``(N,)`` or ``(N, k)``."""
    f = np.asarray(f, dtype=np.float64)
    if f.shape[0] != L.dimension:
        raise ValueError(
            f"signal has length {f.shape[0]}, Laplacian has dimension {L.dimension}"
        )
    return L.matrix @ f


def hop_distance(g: WeightedGraph, source: int) -> np.ndarray:
    """Unweighted shortest-path lengths from `source`; ``inf`` if unreachable."""
    if not 0 <= source < g.num_vertices:
        raise GraphError(f"source {source} out of range")
    pattern = g.adjacency.copy()
    pattern.data[:] = 1.0
    return csgraph.shortest_path(pattern, unweighted=True, directed=False, indices=source)


def connected_components(g: WeightedGraph) -> int:
    n, _ = csgraph.connected_components(g.adjacency, directed=False)
    return int(n)


def swiss_roll_points(num_points: int, rng: np.random.Generator) -> np.ndarray:
    """Sample points uniformly by area on the Swiss roll surface.

    The surface is ``(t cos t / 4pi, s, t sin t / 4pi)`` with
    ``s in [-1, 1]`` and ``t in [pi, 4pi]``. Its area element is
    proportional to ``sqrt(1 + t**2)``, so ``t`` is drawn by rejection.
    """
    lo, hi = np.pi, 4 * np.pi
    peak = np.sqrt(1 + hi**2)
    ts = np.empty(0)
    while ts.size < num_points:
        cand = rng.uniform(lo, hi, size=2 * num_points)
        keep = rng.uniform(0.0, peak, size=cand.size) <= np.sqrt(1 + cand**2)
        ts = np.concatenate([ts, cand[keep]])
    t = ts[:num_points]
    s = rng.uniform(-1.0, 1.0, size=num_points)
    return np.column_stack([t * np.cos(t) / (4 * np.pi), s, t * np.sin(t) / (4 * np.pi)])
