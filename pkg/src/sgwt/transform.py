"""Fast spectral graph wavelet transform.

A `PreparedTransform` holds one Chebyshev expansion per band (scaling
band first) together with the expansion of their sum of squares, which
applies the frame operator ``W*W`` in a single sweep.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.sparse as sp
from scipy import integrate
from scipy.sparse import csgraph

from . import chebyshev
from .chebyshev import ChebyshevExpansion
from .graph import LaplacianOperator
from .kernels import KernelSpec, TransformDesign, admissibility_constant, frame_bounds
from .spectral import EigenDecomposition

DEFAULT_DEGREE = 50


@dataclass(frozen=True)
class CoefficientSet:
    """Transform output: ``bands[0]`` is the scaling band, ``bands[j]`` the
    wavelet band at scale ``t_j`` (coarse to fine)."""

    bands: np.ndarray

    def __post_init__(self):
        b = np.array(self.bands, dtype=np.float64)
        if b.ndim != 2 or b.shape[0] < 2:
            raise ValueError("bands must have shape (J + 1, N) with J >= 1")
        b.flags.writeable = False
        object.__setattr__(self, "bands", b)

    @property
    def num_scales(self) -> int:
        return self.bands.shape[0] - 1

    @property
    def num_vertices(self) -> int:
        return self.bands.shape[1]

    @property
    def scaling(self) -> np.ndarray:
        return self.bands[0]

    def wavelet(self, j: int) -> np.ndarray:
        """Wavelet band for scale index ``j`` in ``1..J``."""
        if not 1 <= j <= self.num_scales:
            raise IndexError(j)
        return self.bands[j]

    def as_vector(self) -> np.ndarray:
        return self.bands.ravel()

    @classmethod
    def from_vector(cls, vec, num_vertices: int) -> "CoefficientSet":
        vec = np.asarray(vec, dtype=np.float64)
        if vec.size % num_vertices:
            raise ValueError("vector length is not a multiple of num_vertices")
        return cls(vec.reshape(-1, num_vertices))

    def __len__(self):
        return self.bands.size


@dataclass(frozen=True)
class PreparedTransform:
    design: TransformDesign
    laplacian: LaplacianOperator = field(repr=False)
    expansions: tuple = field(repr=False)
    frame_expansion: ChebyshevExpansion = field(repr=False)

    @property
    def num_vertices(self) -> int:
        return self.laplacian.shape[0]

    @property
    def degrees(self) -> list[int]:
        return [e.degree for e in self.expansions]

    def sup_errors(self, n_grid: int = 10_000) -> list[float]:
        """Per-band sup error of the polynomial against its kernel."""
        return [
            chebyshev.sup_error(e, k, n_grid)
            for e, k in zip(self.expansions, self.design.band_kernels())
        ]

    def approximate_frame_bounds(self, eigenvalues) -> tuple[float, float]:
        """min/max of ``sum_j p_j(lam)**2`` over the given eigenvalues."""
        lam = np.clip(np.asarray(eigenvalues, dtype=np.float64), 0.0,
                      self.design.lambda_max)
        vals = chebyshev.eval_scalar(self.frame_expansion, lam)
        return float(np.min(vals)), float(np.max(vals))


def prepare(design: TransformDesign, L: LaplacianOperator,
            degrees: int | Sequence[int] = DEFAULT_DEGREE) -> PreparedTransform:
    """Compute the band expansions once for reuse across signals."""
    kernels = design.band_kernels()
    if np.ndim(degrees) == 0:
        degrees = [int(degrees)] * len(kernels)
    if len(degrees) != len(kernels):
        raise ValueError(f"need {len(kernels)} degrees, got {len(degrees)}")
    expansions = tuple(
        chebyshev.compute_coefficients(k, int(m), design.lambda_max)
        for k, m in zip(kernels, degrees)
    )
    return PreparedTransform(design, L, expansions,
                             chebyshev.square_and_sum(expansions))


def _signal(pt: PreparedTransform, f):
    f = np.asarray(f, dtype=np.float64)
    if f.shape[0] != pt.num_vertices:
        raise ValueError(f"signal has length {f.shape[0]}, graph has {pt.num_vertices}")
    return f


def forward(pt: PreparedTransform, f) -> CoefficientSet:
    f = _signal(pt, f)
    if f.ndim != 1:
        raise ValueError("forward expects a single signal of shape (N,)")
    bands = chebyshev.apply_many(pt.expansions, pt.laplacian, f)
    return CoefficientSet(np.stack(bands))


def adjoint(pt: PreparedTransform, c) -> np.ndarray:
    """``sum_j p_j(L) eta_j``, the exact adjoint of `forward`.

    All bands are pushed through one recurrence as columns of an
    ``(N, J + 1)`` block; band j's column then gets its own coefficients.
    """
    bands = c.bands if isinstance(c, CoefficientSet) else np.asarray(c, dtype=np.float64)
    if bands.shape != (len(pt.expansions), pt.num_vertices):
        raise ValueError(
            f"coefficients have shape {bands.shape}, expected "
            f"{(len(pt.expansions), pt.num_vertices)}"
        )
    block = np.ascontiguousarray(bands.T)
    a = pt.design.lambda_max / 2.0
    degree = max(pt.degrees)
    width = len(pt.expansions)
    coef = np.zeros((degree + 1, width))
    for j, e in enumerate(pt.expansions):
        coef[: e.degree + 1, j] = e.coefficients
    coef[0] *= 0.5
    L = pt.laplacian
    acc = block * coef[0]
    if degree >= 1:
        t_prev = block
        t_cur = (L.matvec(block) - a * block) / a
        acc += t_cur * coef[1]
        for k in range(2, degree + 1):
            t_next = (2.0 / a) * (L.matvec(t_cur) - a * t_cur) - t_prev
            t_prev, t_cur = t_cur, t_next
            acc += t_cur * coef[k]
    return acc.sum(axis=1)


def frame_operator(pt: PreparedTransform, f) -> np.ndarray:
    """``W*W f`` as the single polynomial ``P(L) f``."""
    return chebyshev.apply_to_vector(pt.frame_expansion, pt.laplacian, _signal(pt, f))


@dataclass(frozen=True)
class CGInfo:
    iterations: int
    residual: float
    converged: bool


def conjugate_gradient(apply_a, b, tol: float = 1e-8, max_iter: int = 500, x0=None):
    """Conjugate gradients for a symmetric positive definite operator.

    Stops once the recursively updated residual satisfies
    ``|r| <= tol * |b|``. Returns ``(x, CGInfo)``.
    """
    b = np.asarray(b, dtype=np.float64)
    bnorm = np.linalg.norm(b)
    x = np.zeros_like(b) if x0 is None else np.array(x0, dtype=np.float64)
    if bnorm == 0.0:
        return np.zeros_like(b), CGInfo(0, 0.0, True)
    r = b - apply_a(x) if x0 is not None else b.copy()
    p = r.copy()
    rr = float(r @ r)
    rel = np.sqrt(rr) / bnorm
    it = 0
    while rel > tol and it < max_iter:
        ap = apply_a(p)
        step = rr / float(p @ ap)
        x += step * p
        r -= step * ap
        rr_new = float(r @ r)
        p = r + (rr_new / rr) * p
        rr = rr_new
        rel = np.sqrt(rr) / bnorm
        it += 1
    converged = bool(rel <= tol)
    # report the true residual; the recursive one drifts in long runs
    rel = np.linalg.norm(b - apply_a(x)) / bnorm
    return x, CGInfo(it, float(rel), converged)


def _component_count(L: LaplacianOperator) -> int:
    pattern = sp.csr_matrix(L.matrix)
    return csgraph.connected_components(pattern, directed=False)[0]


def pseudoinverse(pt: PreparedTransform, c, tol: float = 1e-8,
                  max_iter: int = 500):
    """Least-squares inverse of the fast transform.

    Solves ``P(L) f = W* c`` by conjugate gradients with a zero start.
    Returns ``(f, CGInfo)``; a `RuntimeWarning` is issued if CG stops
    before reaching `tol`, if the frame is close to degenerate, or if the
    graph is disconnected.
    """
    A, B = frame_bounds(pt.design, "interval_grid")
    if A <= 1e-10 * B:
        warnings.warn(f"frame lower bound {A:.3g} is near zero; inversion is "
                      "ill-conditioned", RuntimeWarning, stacklevel=2)
    if _component_count(pt.laplacian) > 1:
        warnings.warn("graph is disconnected; each component's mean is recovered "
                      "only through the scaling band", RuntimeWarning, stacklevel=2)
    rhs = adjoint(pt, c)
    f, info = conjugate_gradient(lambda v: frame_operator(pt, v), rhs, tol, max_iter)
    if not info.converged:
        warnings.warn(f"conjugate gradients stopped after {info.iterations} "
                      f"iterations at relative residual {info.residual:.3g}",
                      RuntimeWarning, stacklevel=2)
    return f, info


def continuous_inverse_check(eig: EigenDecomposition, kernel: KernelSpec, f,
                             num_scales: int, t_min: float, t_max: float):
    """Discretize the continuous-scale reconstruction formula.

    For each of `num_scales` log-spaced scales, ``sum_n W_f(t, n)
    psi_{t,n}`` equals ``g(tL)**2 f``; these are integrated against
    ``dt/t`` with the trapezoidal rule in ``log t`` and divided by the
    admissibility constant. Returns ``(reconstruction, relative_error)``
    where the error is measured against f minus its projection on the
    first eigenvector.
    """
    C_g = admissibility_constant(kernel)
    if not np.isfinite(C_g) or C_g <= 0:
        raise ValueError("kernel is not admissible")
    if not 0 < t_min < t_max or num_scales < 2:
        raise ValueError("need 0 < t_min < t_max and at least two scales")
    f = np.asarray(f, dtype=np.float64)
    U = eig.eigenvectors
    lam = np.clip(eig.eigenvalues, 0.0, None)
    fhat = U.T @ f
    log_t = np.linspace(np.log(t_min), np.log(t_max), int(num_scales))
    squared = np.asarray(kernel(np.outer(np.exp(log_t), lam))) ** 2
    weights = integrate.trapezoid(squared, log_t, axis=0)
    rec = U @ (weights * fhat) / C_g
    f_sharp = f - fhat[0] * U[:, 0]
    denom = np.linalg.norm(f_sharp)
    err = np.linalg.norm(rec - f_sharp)
    return rec, float(err / denom if denom > 0 else err)
