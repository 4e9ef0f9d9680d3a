"""Shifted Chebyshev expansions on ``[0, lambda_max]`` and their
application to vectors through a sparse Laplacian.

Series use the half-weighted constant term::

    p(x) = c[0]/2 + sum_{k>=1} c[k] T_k((x - a) / a),   a = lambda_max / 2
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class ChebyshevExpansion:
    coefficients: np.ndarray = field(repr=False)
    lambda_max: float

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=np.float64).copy()
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a non-empty 1-D array")
        if not self.lambda_max > 0:
            raise ValueError("lambda_max must be positive")
        c.flags.writeable = False
        object.__setattr__(self, "coefficients", c)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def a(self) -> float:
        return self.lambda_max / 2.0

    def __call__(self, x):
        return eval_scalar(self, x)


def default_quadrature_points(M: int) -> int:
    return max(2 * (M + 1), 64)


def compute_coefficients(func, M: int, lambda_max: float,
                         n_quad: int | None = None) -> ChebyshevExpansion:
    """Truncated Chebyshev series of `func` on ``[0, lambda_max]``.

    The coefficient integrals are evaluated with the `n_quad`-point
    Gauss-Chebyshev rule, exact for integrands of degree < n_quad in
    ``cos(theta)``. `func` must accept an array.
    """
    if M < 0:
        raise ValueError("degree must be non-negative")
    n = default_quadrature_points(M) if n_quad is None else int(n_quad)
    if n < M + 1:
        raise ValueError("n_quad must be at least M + 1")
    a = lambda_max / 2.0
    theta = np.pi * (np.arange(n) + 0.5) / n
    values = np.asarray(func(a * (np.cos(theta) + 1.0)), dtype=np.float64)
    if not np.all(np.isfinite(values)):
        raise ValueError("function is not finite on the approximation interval")
    k = np.arange(M + 1)
    coeffs = (2.0 / n) * (np.cos(np.outer(k, theta)) @ values)
    return ChebyshevExpansion(coeffs, float(lambda_max))


def eval_scalar(exp: ChebyshevExpansion, x):
    """Evaluate the series at scalar or array `x` by the three-term recurrence."""
    x = np.asarray(x, dtype=np.float64)
    if np.any((x < 0) | (x > exp.lambda_max)):
        warnings.warn("evaluating Chebyshev expansion outside [0, lambda_max]",
                      RuntimeWarning, stacklevel=2)
    c = exp.coefficients
    y = (x - exp.a) / exp.a
    t_prev = np.ones_like(y)
    value = 0.5 * c[0] * t_prev
    if len(c) > 1:
        t_cur = y
        value = value + c[1] * t_cur
        for k in range(2, len(c)):
            t_prev, t_cur = t_cur, 2.0 * y * t_cur - t_prev
            value = value + c[k] * t_cur
    return value if value.ndim else float(value)


def _matvec(L, v):
    return L.matvec(v) if hasattr(L, "matvec") else L @ v


def apply_many(expansions: Sequence[ChebyshevExpansion], L, f):
    """Apply several expansions to `f` with one shared recurrence sweep.

    All expansions must share ``lambda_max``. The sweep costs
    ``max degree`` products with `L` and keeps three working vectors
    besides the outputs.
    """
    lmax = expansions[0].lambda_max
    if any(e.lambda_max != lmax for e in expansions):
        raise ValueError("expansions must share lambda_max")
    f = np.asarray(f, dtype=np.float64)
    n = L.shape[0]
    if f.shape[0] != n:
        raise ValueError(f"signal has length {f.shape[0]}, operator has dimension {n}")
    a = lmax / 2.0
    degree = max(e.degree for e in expansions)
    out = [0.5 * e.coefficients[0] * f for e in expansions]
    if degree == 0:
        return out
    t_prev = f
    t_cur = (_matvec(L, f) - a * f) / a
    for e, acc in zip(expansions, out):
        if e.degree >= 1:
            acc += e.coefficients[1] * t_cur
    for k in range(2, degree + 1):
        t_next = (2.0 / a) * (_matvec(L, t_cur) - a * t_cur) - t_prev
        t_prev, t_cur = t_cur, t_next
        for e, acc in zip(expansions, out):
            if e.degree >= k:
                acc += e.coefficients[k] * t_cur
    return out


def apply_to_vector(exp: ChebyshevExpansion, L, f):
    """``p(L) f`` using exactly ``exp.degree`` products with `L`."""
    return apply_many([exp], L, f)[0]


def sup_error(exp: ChebyshevExpansion, func, n_grid: int = 10_000) -> float:
    """Max of ``|func - p|`` on a uniform grid over ``[0, lambda_max]``."""
    if n_grid < 2:
        raise ValueError("n_grid must be at least 2")
    x = np.linspace(0.0, exp.lambda_max, int(n_grid))
    return float(np.max(np.abs(np.asarray(func(x)) - eval_scalar(exp, x))))


def _square_coefficients(c: np.ndarray) -> np.ndarray:
    """Coefficients d of p**2 (half-weighted convention) from those of p."""
    M = len(c) - 1
    cp = c.astype(np.float64).copy()
    cp[0] *= 0.5
    dp = np.zeros(2 * M + 1)
    dp[0] = 0.5 * (cp[0] ** 2 + np.sum(cp**2))
    for k in range(1, M + 1):
        dp[k] = 0.5 * (
            np.dot(cp[: k + 1], cp[k::-1])
            + np.dot(cp[: M - k + 1], cp[k:])
            + np.dot(cp[k:], cp[: M - k + 1])
        )
    for k in range(M + 1, 2 * M + 1):
        i = np.arange(k - M, M + 1)
        dp[k] = 0.5 * np.dot(cp[i], cp[k - i])
    dp[0] *= 2.0
    return dp


def square_and_sum(expansions: Sequence[ChebyshevExpansion]) -> ChebyshevExpansion:
    """Expansion of ``sum_j p_j(x)**2``, of degree ``2 * max_j M_j``."""
    lmax = expansions[0].lambda_max
    if any(e.lambda_max != lmax for e in expansions):
        raise ValueError("expansions must share lambda_max")
    top = 2 * max(e.degree for e in expansions)
    total = np.zeros(top + 1)
    for e in expansions:
        d = _square_coefficients(e.coefficients)
        total[: len(d)] += d
    return ChebyshevExpansion(total, lmax)
