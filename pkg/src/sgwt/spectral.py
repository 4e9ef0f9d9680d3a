"""Dense spectral machinery: eigendecomposition, graph Fourier transform,
exact wavelets and spectrum bounds.

Everything here except `estimate_lambda_max` is O(N^3) or O(N^2) and is
meant as the reference against which the fast transform is checked.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .graph import LaplacianOperator
from .kernels import TransformDesign

ORACLE_LIMIT = 2000


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues ascending; ``eigenvectors[:, l]`` pairs with ``eigenvalues[l]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray = field(repr=False)

    @property
    def num_vertices(self) -> int:
        return len(self.eigenvalues)


@dataclass(frozen=True)
class SpectrumBound:
    lambda_max: float
    method: str
    iterations: int
    converged: bool = True


def householder_tridiagonalize(a: np.ndarray):
    """Reduce symmetric `a` to tridiagonal form ``a = q @ T @ q.T``.

    Returns the diagonal ``d``, the subdiagonal ``e`` (``e[i] = T[i+1, i]``,
    padded with a trailing zero) and ``q``.
    """
    a = np.array(a, dtype=np.float64)
    n = a.shape[0]
    q = np.eye(n)
    for k in range(n - 2):
        x = a[k + 1:, k]
        tail = np.linalg.norm(x[1:])
        if tail == 0.0:
            continue
        alpha = -math.copysign(math.hypot(x[0], tail), x[0])
        v = x.copy()
        v[0] -= alpha
        v /= np.linalg.norm(v)
        # a <- H a H with H = I - 2 v v^T acting on indices k+1:
        a[k + 1:, :] -= 2.0 * np.outer(v, v @ a[k + 1:, :])
        a[:, k + 1:] -= 2.0 * np.outer(a[:, k + 1:] @ v, v)
        q[:, k + 1:] -= 2.0 * np.outer(q[:, k + 1:] @ v, v)
    d = np.diag(a).copy()
    e = np.zeros(n)
    e[: n - 1] = np.diag(a, -1)
    return d, e, q


def tridiagonal_ql(d, e, z, max_sweeps: int = 60):
    """Implicit-shift QL on a symmetric tridiagonal matrix.

    `d` and `e` are overwritten with eigenvalues and garbage; the plane
    rotations are accumulated into the columns of `z` in place.
    """
    n = len(d)
    eps = np.finfo(np.float64).eps
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > max_sweeps:
                raise np.linalg.LinAlgError("tridiagonal QL failed to converge")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                zi1 = z[:, i + 1].copy()
                z[:, i + 1] = s * z[:, i] + c * zi1
                z[:, i] = c * z[:, i] - s * zi1
            else:
                d[l] -= p
                e[l] = g
                e[m] = 0.0
    return d, z


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    tol = 1e-12
    for col in range(vectors.shape[1]):
        v = vectors[:, col]
        nz = np.flatnonzero(np.abs(v) > tol)
        if nz.size and v[nz[0]] < 0:
            vectors[:, col] = -v
    return vectors


def full_eigendecomposition(L, method: str = "ql", limit: int = ORACLE_LIMIT):
    """Complete eigensystem of a symmetric Laplacian.

    Parameters
    ----------
    L : LaplacianOperator or array_like
    method : {"ql", "lapack"}
        ``"ql"`` is Householder reduction followed by implicit-shift QL;
        ``"lapack"`` defers to :func:`numpy.linalg.eigh`.
    limit : int
        Largest accepted N.

    Eigenvectors are normalized so the first entry with magnitude above
    1e-12 is positive.
    """
    a = L.toarray() if hasattr(L, "toarray") else np.asarray(L, dtype=np.float64)
    n = a.shape[0]
    if n > limit:
        raise ValueError(f"N = {n} exceeds the dense oracle limit {limit}")
    if method == "ql":
        d, e, q = householder_tridiagonalize(a)
        lam, vecs = tridiagonal_ql(d, e, q)
    elif method == "lapack":
        lam, vecs = np.linalg.eigh(a)
    else:
        raise ValueError(f"unknown method {method!r}")
    order = np.argsort(lam, kind="stable")
    lam = np.asarray(lam)[order]
    vecs = _fix_signs(np.ascontiguousarray(vecs[:, order]))
    return EigenDecomposition(lam, vecs)


def _check_length(eig: EigenDecomposition, f):
    f = np.asarray(f, dtype=np.float64)
    if f.shape[0] != eig.num_vertices:
        raise ValueError(f"expected length {eig.num_vertices}, got {f.shape[0]}")
    return f


def graph_fourier(eig: EigenDecomposition, f):
    return eig.eigenvectors.T @ _check_length(eig, f)


def inverse_graph_fourier(eig: EigenDecomposition, fhat):
    return eig.eigenvectors @ _check_length(eig, fhat)


def spectral_filter(eig: EigenDecomposition, kernel, f):
    """Apply ``kernel(L)`` to `f` through the eigenbasis."""
    f = _check_length(eig, f)
    response = np.asarray(kernel(np.clip(eig.eigenvalues, 0.0, None)))
    fhat = eig.eigenvectors.T @ f
    if fhat.ndim == 2:
        response = response[:, None]
    return eig.eigenvectors @ (response * fhat)


def _as_kernel(kernel):
    return kernel.kernel if isinstance(kernel, TransformDesign) else kernel


def exact_wavelet(eig: EigenDecomposition, kernel, t: float, n: int):
    """Wavelet ``psi_{t,n} = g(tL) delta_n``.

    `kernel` is a `TransformDesign` (its wavelet kernel is used) or any
    vectorized callable g.
    """
    if not t > 0:
        raise ValueError("scale must be positive")
    g = _as_kernel(kernel)
    U = eig.eigenvectors
    lam = np.clip(eig.eigenvalues, 0.0, None)
    return U @ (np.asarray(g(t * lam)) * U[n, :])


def exact_transform(eig: EigenDecomposition, design: TransformDesign, f):
    """Scaling band ``h(L) f`` followed by the wavelet bands ``g(t_j L) f``.

    Returns an array of shape ``(J + 1, N)``.
    """
    f = _check_length(eig, f)
    U = eig.eigenvectors
    lam = np.clip(eig.eigenvalues, 0.0, None)
    fhat = U.T @ f
    responses = np.stack([np.asarray(k(lam)) for k in design.band_kernels()])
    return (responses * fhat) @ U.T


def estimate_lambda_max(L: LaplacianOperator, tol: float = 1e-5,
                        max_iter: int = 500, safety: float = 1.01,
                        seed: int = 0, block_size: int = 4) -> SpectrumBound:
    """Power-iteration estimate of the largest eigenvalue times `safety`.

    A block of `block_size` vectors is iterated and re-orthonormalized;
    the estimate is the largest Rayleigh-Ritz value of the block. Stops
    when it changes by less than `tol` relative. With ``block_size=1``
    this is plain power iteration, which can stall near the second
    eigenvalue when the start vector is nearly orthogonal to the top
    eigenvector and the top of the spectrum is clustered; the block
    makes that far less likely at a few extra products per step.
    If `max_iter` is hit the best estimate is returned with
    ``converged=False`` and a warning.
    """
    n = L.shape[0]
    if L.matrix.nnz == 0 or not np.any(L.matrix.data):
        raise ValueError("graph has no edges")
    k = max(1, min(int(block_size), n))
    rng = np.random.default_rng(seed)
    x, _ = np.linalg.qr(rng.standard_normal((n, k)))
    rq = 0.0
    for it in range(1, max_iter + 1):
        y = L.matvec(x)
        ritz = np.linalg.eigvalsh(0.5 * (x.T @ y + y.T @ x))
        rq_new = float(ritz[-1])
        if not np.any(y):
            break
        x, _ = np.linalg.qr(y)
        if it > 1 and abs(rq_new - rq) <= tol * abs(rq_new):
            return SpectrumBound(safety * rq_new, "power", it, True)
        rq = rq_new
    warnings.warn("power iteration did not converge; bound may be low", RuntimeWarning)
    return SpectrumBound(safety * max(rq, rq_new), "power", max_iter, False)
