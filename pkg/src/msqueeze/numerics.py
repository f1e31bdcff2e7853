"""Number-state wavefunctions and quadrature on Gaussian-decaying integrands.

Convention: ``[X1, X2] = i/2``, ``X2 = -(i/2) d/dx``, vacuum ``∝ exp(-x^2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import NoConvergence

MAX_N = 512
DEFAULT_PNDS_N = 128
# (x - c)^2 / (2 v) at the grid edge; exp(-TAIL_EXPONENT) < 1e-16
TAIL_EXPONENT = 40.0
_RESCALE = 1e100


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid ``center ± half_width`` with ``points`` nodes (ends included)."""

    center: float = 0.0
    half_width: float = 8.0
    points: int = 256

    def __post_init__(self):
        if not self.half_width > 0:
            raise ValueError("half_width must be positive")
        if self.points < 16:
            raise ValueError("need at least 16 grid points")

    @classmethod
    def for_gaussian(cls, center: float, variance: float, points: int = 256,
                     extra: float = 0.0) -> "GridSpec":
        """Grid whose edges sit where the Gaussian weight is below 1e-16 of its peak."""
        hw = math.sqrt(2.0 * TAIL_EXPONENT * variance) + extra
        return cls(center, hw, points)

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.center - self.half_width, self.center + self.half_width, self.points)

    @property
    def step(self) -> float:
        return 2.0 * self.half_width / (self.points - 1)

    def doubled(self) -> "GridSpec":
        return replace(self, points=2 * self.points - 1)

    @property
    def weights(self) -> np.ndarray:
        w = np.full(self.points, self.step)
        w[0] = w[-1] = 0.5 * self.step
        return w


def hermite_table(n_max: int, x) -> np.ndarray:
    """Rows ``h_0 .. h_{n_max}`` evaluated at ``x``.

    ``h_n(x) = (2/pi)^{1/4} (2^n n!)^{-1/2} H_n(sqrt(2) x) exp(-x^2)``, computed
    with the three-term recurrence on the normalized functions.  The Gaussian
    factor is applied at the end together with a running log-scale, so no
    intermediate value overflows for ``n <= 512`` at any ``x``.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if n_max > MAX_N:
        raise ValueError(f"n_max above supported maximum {MAX_N}")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty((n_max + 1,) + x.shape)
    log_scale = np.zeros_like(x)
    prev = np.zeros_like(x)
    cur = np.full_like(x, (2.0 / math.pi) ** 0.25)
    out[0] = cur
    for n in range(1, n_max + 1):
        nxt = (2.0 * x / math.sqrt(n)) * cur - math.sqrt((n - 1) / n) * prev
        big = np.abs(nxt) > _RESCALE
        if big.any():
            s = np.where(big, np.abs(nxt), 1.0)
            nxt = nxt / s
            cur = cur / s
            # earlier rows must share one scale per column
            out[:n] /= s
            log_scale += np.log(s)
        prev, cur = cur, nxt
        out[n] = cur
    return out * np.exp(log_scale - x * x)


def hermite_psi(n: int, x):
    """Number-state wavefunction ``<x|n>`` in the ``[X1, X2] = i/2`` convention."""
    if not 0 <= n <= MAX_N:
        raise ValueError(f"n must lie in [0, {MAX_N}]")
    vals = hermite_table(n, x)[n]
    return vals if np.ndim(x) else float(vals[0])


@dataclass(frozen=True)
class IntegrationResult:
    value: complex
    error: float
    points: int

    def __iter__(self):
        yield self.value
        yield self.error


def integrate(f, grid: GridSpec, rtol: float = 1e-12, atol: float = 1e-14,
              max_doublings: int = 8) -> IntegrationResult:
    """Trapezoid rule with Cauchy refinement by grid doubling.

    ``f`` maps an array of nodes to values (scalar or vector-valued along
    the last axis).  Stops once successive estimates differ by less than
    ``max(atol, rtol |I|)``.  The returned error is that last change, floored
    at a few ulps of the summed magnitude.
    """
    def rule(g: GridSpec):
        vals = np.asarray(f(g.nodes))
        w = g.weights
        return vals @ w if vals.ndim == 1 else np.tensordot(vals, w, axes=([-1], [0])), \
            np.abs(vals) @ w if vals.ndim == 1 else np.tensordot(np.abs(vals), w, axes=([-1], [0]))

    prev, _ = rule(grid)
    g = grid
    for _ in range(max_doublings):
        g = g.doubled()
        cur, mag = rule(g)
        change = np.max(np.abs(cur - prev))
        size = np.max(np.abs(cur))
        if change <= max(atol, rtol * size):
            floor = 16 * np.finfo(float).eps * float(np.max(mag))
            return IntegrationResult(cur if np.ndim(cur) else complex(cur),
                                     float(max(change, floor)), g.points)
        prev = cur
    raise NoConvergence(
        f"no convergence after {max_doublings} doublings ({g.points} points): last change {change:.3e}")
