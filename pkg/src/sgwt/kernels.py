"""Wavelet and scaling kernels, scale selection and frame bounds."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, optimize


@dataclass(frozen=True)
class KernelSpec:
    """Band-pass wavelet kernel g.

    ``g(x) = (x/x1)**alpha`` below `x1`, a cubic spline ``s`` on
    ``[x1, x2]`` and ``(x2/x)**beta`` above `x2`. The spline is fixed by
    ``s(x1) = s(x2) = 1``, ``s'(x1) = alpha/x1`` and ``s'(x2) = -beta/x2``.
    """

    alpha: int = 2
    beta: int = 2
    x1: float = 1.0
    x2: float = 2.0
    spline: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.alpha <= 0 or int(self.alpha) != self.alpha:
            raise ValueError("alpha must be a positive integer")
        if self.beta < 0 or int(self.beta) != self.beta:
            raise ValueError("beta must be a non-negative integer")
        if not 0 < self.x1 < self.x2:
            raise ValueError("need 0 < x1 < x2")
        object.__setattr__(self, "spline", _spline_coefficients(self))

    def __call__(self, x):
        return eval_g(self, x)

    def spline_value(self, x):
        s0, s1, s2, s3 = self.spline
        x = np.asarray(x, dtype=np.float64)
        return s0 + x * (s1 + x * (s2 + x * s3))

    @property
    def maximum(self) -> float:
        """max over x >= 0 of g; attained on ``[x1, x2]``."""
        res = optimize.minimize_scalar(
            lambda x: -self.spline_value(x),
            bounds=(self.x1, self.x2),
            method="bounded",
            options={"xatol": 1e-10},
        )
        return float(max(1.0, -res.fun))


def _spline_coefficients(spec: KernelSpec) -> np.ndarray:
    x1, x2 = float(spec.x1), float(spec.x2)
    lhs = np.array(
        [
            [1.0, x1, x1**2, x1**3],
            [1.0, x2, x2**2, x2**3],
            [0.0, 1.0, 2 * x1, 3 * x1**2],
            [0.0, 1.0, 2 * x2, 3 * x2**2],
        ]
    )
    rhs = np.array([1.0, 1.0, spec.alpha / x1, -spec.beta / x2])
    return np.linalg.solve(lhs, rhs)


def eval_g(spec: KernelSpec, x):
    """Evaluate the wavelet kernel; vectorized over `x` (x >= 0)."""
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    lo = x < spec.x1
    hi = x > spec.x2
    mid = ~(lo | hi)
    out[lo] = (x[lo] / spec.x1) ** spec.alpha
    out[mid] = spec.spline_value(x[mid])
    out[hi] = (spec.x2 / x[hi]) ** spec.beta
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class ScalingKernelSpec:
    """Low-pass kernel ``h(x) = gamma * exp(-(x / (0.6 lambda_min))**4)``."""

    gamma: float
    lambda_min: float

    def __post_init__(self):
        if self.gamma <= 0 or self.lambda_min <= 0:
            raise ValueError("gamma and lambda_min must be positive")

    def __call__(self, x):
        return eval_h(self, x)


def eval_h(spec: ScalingKernelSpec, x):
    x = np.asarray(x, dtype=np.float64)
    out = spec.gamma * np.exp(-((x / (0.6 * spec.lambda_min)) ** 4))
    return out if out.ndim else float(out)


def select_scales(lambda_max: float, K: float, J: int, x2: float = 2.0) -> np.ndarray:
    """Log-equispaced scales from ``x2/lambda_min`` down to ``x2/lambda_max``."""
    if not lambda_max > 0:
        raise ValueError("lambda_max must be positive")
    if not K > 1:
        raise ValueError("K must exceed 1")
    if int(J) != J or J < 1:
        raise ValueError("J must be a positive integer")
    lambda_min = lambda_max / K
    t_first = x2 / lambda_min
    t_last = x2 / lambda_max
    if J == 1:
        return np.array([t_first])
    scales = np.exp(np.linspace(np.log(t_first), np.log(t_last), int(J)))
    # pin the endpoints so that g(t_J * lambda_max) == g(x2) holds exactly
    scales[0], scales[-1] = t_first, t_last
    return scales


@dataclass(frozen=True)
class TransformDesign:
    """Kernels plus scales for one transform.

    Use `make_design` rather than building this by hand.
    """

    J: int
    K: float
    lambda_max: float
    scales: np.ndarray = field(repr=False)
    kernel: KernelSpec
    scaling: ScalingKernelSpec

    @property
    def lambda_min(self) -> float:
        return self.lambda_max / self.K

    def band_kernels(self):
        """Scalar kernels for bands 0..J: h, then g(t_j x)."""
        g = self.kernel
        return [self.scaling] + [_Scaled(g, float(t)) for t in self.scales]


@dataclass(frozen=True)
class _Scaled:
    kernel: KernelSpec
    t: float

    def __call__(self, x):
        return self.kernel(self.t * np.asarray(x, dtype=np.float64))


def make_design(
    lambda_max: float, J: int = 4, K: float = 20, kernel: KernelSpec | None = None
) -> TransformDesign:
    kernel = kernel if kernel is not None else KernelSpec()
    scales = select_scales(lambda_max, K, J, kernel.x2)
    scaling = ScalingKernelSpec(gamma=kernel.maximum, lambda_min=lambda_max / K)
    return TransformDesign(int(J), float(K), float(lambda_max), scales, kernel, scaling)


def partition_function(design: TransformDesign, lam):
    """``G(lam) = h(lam)**2 + sum_j g(t_j lam)**2``."""
    lam = np.asarray(lam, dtype=np.float64)
    total = eval_h(design.scaling, lam) ** 2
    for t in design.scales:
        total = total + eval_g(design.kernel, t * lam) ** 2
    return total


def frame_bounds(design: TransformDesign, mode: str = "interval_grid",
                 eig=None, n_grid: int = 10_000):
    """Frame bounds ``(A, B)`` as min/max of the partition function.

    ``mode="interval_grid"`` samples ``[0, lambda_max]`` uniformly;
    ``mode="exact_spectrum"`` evaluates at the eigenvalues of `eig`.
    """
    if mode == "interval_grid":
        if n_grid < 1:
            raise ValueError("empty grid")
        lam = np.linspace(0.0, design.lambda_max, int(n_grid))
    elif mode == "exact_spectrum":
        if eig is None:
            raise ValueError("exact_spectrum mode needs an eigendecomposition")
        lam = np.clip(eig.eigenvalues, 0.0, None)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    G = partition_function(design, lam)
    return float(G.min()), float(G.max())


def admissibility_constant(spec: KernelSpec, quad_points: int = 1001) -> float:
    """``C_g = int_0^inf g(x)**2 / x dx``.

    The two power-law pieces integrate in closed form to ``1/(2 alpha)``
    and ``1/(2 beta)``; the spline piece uses composite Simpson.
    """
    if spec.beta == 0:
        raise ValueError("beta = 0 makes the admissibility integral diverge")
    x = np.linspace(spec.x1, spec.x2, int(quad_points))
    middle = integrate.simpson(spec.spline_value(x) ** 2 / x, x=x)
    return 1.0 / (2 * spec.alpha) + float(middle) + 1.0 / (2 * spec.beta)
