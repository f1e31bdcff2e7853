"""Wigner function on a rectangular phase-space grid.

    W(x, p) = (2/pi) * integral conj(Psi(x + y)) Psi(x - y) exp(4 i p y) dy

With ``[X1, X2] = i/2`` this is normalized to one, its p-marginal is
``|Psi(x)|^2`` and the vacuum gives ``(2/pi) exp(-2x^2 - 2p^2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import contourpy
import numpy as np
from scipy.integrate import trapezoid
from scipy.optimize import minimize
from scipy.special import erfc

from .errors import EmptyContour, NoConvergence, RangeTooSmall
from .states import StateSpec, log_derivative, wavefunction_eval

BOUND = 2.0 / math.pi
NEG_FLOOR = 1e-9
X_SIGMAS = 8.0          # x window half-width in density standard deviations
Y_SIGMAS = 9.0          # y support of the correlation integrand
P_SIGMAS = 9.0
IMAG_TOL = 1e-10
NORM_TOL = 1e-6


@dataclass
class WignerGrid:
    x_axis: np.ndarray
    p_axis: np.ndarray
    values: np.ndarray          # shape (len(x_axis), len(p_axis))
    min_value: float
    min_location: tuple
    negative_region: tuple | None   # (x_lo, x_hi, p_lo, p_hi)
    norm: float
    imag_residue: float = 0.0

    @property
    def dx(self) -> float:
        return float(self.x_axis[1] - self.x_axis[0])

    @property
    def dp(self) -> float:
        return float(self.p_axis[1] - self.p_axis[0])

    def x_marginal(self) -> np.ndarray:
        """``int W dp`` on the x axis (the position density)."""
        return trapezoid(self.values, dx=self.dp, axis=1)

    def p_marginal(self) -> np.ndarray:
        """``int W dx`` on the p axis (the momentum density)."""
        return trapezoid(self.values, dx=self.dx, axis=0)

    def second_moments(self) -> tuple:
        """``(var x, var p)`` of the grid treated as a distribution."""
        mx, mp = self.x_marginal(), self.p_marginal()
        n = trapezoid(mx, dx=self.dx)
        ex = trapezoid(self.x_axis * mx, dx=self.dx) / n
        ep = trapezoid(self.p_axis * mp, dx=self.dp) / n
        vx = trapezoid((self.x_axis - ex) ** 2 * mx, dx=self.dx) / n
        vp = trapezoid((self.p_axis - ep) ** 2 * mp, dx=self.dp) / n
        return vx, vp


class _Kernel:
    """Correlation integrand on a fixed symmetric y grid."""

    def __init__(self, state: StateSpec, p_max: float, x_span: tuple):
        sd = math.sqrt(state.variance)
        self.state = state
        y_max = Y_SIGMAS * sd
        lo, hi = x_span
        xs = np.linspace(lo - y_max, hi + y_max, 4001)
        theta = np.max(np.abs(np.imag(log_derivative(state, xs))))
        # oscillation of exp(4ipy) plus the phase difference of the two factors
        k_max = 4.0 * p_max + 2.0 * theta
        dy = min(sd / 8.0, math.pi / (2.0 * max(k_max, 1.0)))
        ny = 2 * int(math.ceil(y_max / dy)) + 1
        self.y = np.linspace(-y_max, y_max, ny)
        self.dy = self.y[1] - self.y[0]

    def corr(self, x: float) -> np.ndarray:
        psi = wavefunction_eval(self.state, x + self.y)
        return np.conj(psi) * psi[::-1]

    def rows(self, xs, ps) -> np.ndarray:
        E = np.exp(4j * np.outer(self.y, ps)) * self.dy
        C = np.stack([self.corr(x) for x in xs])
        return (2.0 / math.pi) * (C @ E)

    def point(self, x: float, p: float) -> float:
        w = (2.0 / math.pi) * np.sum(self.corr(x) * np.exp(4j * p * self.y)) * self.dy
        return float(w.real)


def default_ranges(state: StateSpec) -> tuple:
    """x window around the density, p window following the local momentum."""
    sd = math.sqrt(state.variance)
    x_lo, x_hi = state.center - X_SIGMAS * sd, state.center + X_SIGMAS * sd
    # local momentum theta'/2 sampled where the density is appreciable
    xs = np.linspace(state.center - 6 * sd, state.center + 6 * sd, 2001)
    mom = 0.5 * np.imag(log_derivative(state, xs))
    sp = 1.0 / (4.0 * sd)
    # amplitude gradient also spreads p; a margin of a few sp covers it
    return (x_lo, x_hi), (float(mom.min() - P_SIGMAS * sp), float(mom.max() + P_SIGMAS * sp))


def _x_tail_mass(state: StateSpec, lo: float, hi: float) -> float:
    s = math.sqrt(2.0 * state.variance)
    return 0.5 * (erfc((state.center - lo) / s) + erfc((hi - state.center) / s))


def wigner(state: StateSpec, x_range=None, p_range=None, resolution=(256, 256),
           refine: bool = True) -> WignerGrid:
    """Sample W on a ``resolution[0] x resolution[1]`` grid.

    Raises :class:`RangeTooSmall` when the x window clips more than 1e-12 of
    the density or the sampled norm misses one by more than 1e-6.
    """
    dx_rng, dp_rng = default_ranges(state)
    x_range = tuple(x_range) if x_range is not None else dx_rng
    p_range = tuple(p_range) if p_range is not None else dp_rng
    nx, npts = resolution
    if nx < 16 or npts < 16:
        raise ValueError("resolution must be at least 16 x 16")
    if not (x_range[1] > x_range[0] and p_range[1] > p_range[0]):
        raise ValueError("ranges must be increasing")
    tail = _x_tail_mass(state, *x_range)
    if tail > 1e-12:
        raise RangeTooSmall(f"x window clips density mass {tail:.3e}")

    xs = np.linspace(*x_range, nx)
    ps = np.linspace(*p_range, npts)
    kern = _Kernel(state, max(abs(p_range[0]), abs(p_range[1])), x_range)
    Wc = kern.rows(xs, ps)
    imag = float(np.max(np.abs(Wc.imag)))
    if imag > IMAG_TOL:
        raise NoConvergence(f"Wigner imaginary residue {imag:.3e} above {IMAG_TOL:g}")
    W = Wc.real
    norm = float(trapezoid(trapezoid(W, dx=ps[1] - ps[0], axis=1), dx=xs[1] - xs[0]))
    if abs(norm - 1.0) > NORM_TOL:
        raise RangeTooSmall(f"sampled norm {norm:.8f}; widen the p window or raise the resolution")

    i, j = np.unravel_index(np.argmin(W), W.shape)
    wmin, loc = float(W[i, j]), (float(xs[i]), float(ps[j]))
    if refine:
        res = minimize(lambda v: kern.point(v[0], v[1]), np.array(loc), method="Nelder-Mead",
                       options={"xatol": 1e-7, "fatol": 1e-14})
        if res.fun < wmin:
            wmin, loc = float(res.fun), (float(res.x[0]), float(res.x[1]))
    grid = WignerGrid(xs, ps, W, wmin, loc, None, norm, imag)
    grid.negative_region = negativity(grid).bbox
    return grid


@dataclass(frozen=True)
class Negativity:
    min_value: float
    min_location: tuple
    bbox: tuple | None
    negative_mass: float

    @property
    def negative(self) -> bool:
        return self.bbox is not None


def negativity(grid: WignerGrid, floor: float = NEG_FLOOR) -> Negativity:
    """Scan for ``W < -floor``; ``negative_mass`` integrates ``max(-W, 0)``."""
    neg = np.clip(-grid.values, 0.0, None)
    mass = float(trapezoid(trapezoid(neg, dx=grid.dp, axis=1), dx=grid.dx))
    mask = grid.values < -floor
    bbox = None
    if mask.any():
        ii, jj = np.nonzero(mask)
        bbox = (float(grid.x_axis[ii.min()]), float(grid.x_axis[ii.max()]),
                float(grid.p_axis[jj.min()]), float(grid.p_axis[jj.max()]))
    return Negativity(grid.min_value, grid.min_location, bbox, mass)


@dataclass(frozen=True)
class Contour:
    points: np.ndarray      # (n, 2) columns x, p

    @property
    def closed(self) -> bool:
        return len(self.points) > 2 and np.allclose(self.points[0], self.points[-1])

    @property
    def centroid(self) -> tuple:
        """Area centroid for closed curves, vertex mean otherwise."""
        x, p = self.points[:, 0], self.points[:, 1]
        if self.closed:
            cross = x[:-1] * p[1:] - x[1:] * p[:-1]
            area = cross.sum() / 2
            if area != 0:
                cx = ((x[:-1] + x[1:]) * cross).sum() / (6 * area)
                cp = ((p[:-1] + p[1:]) * cross).sum() / (6 * area)
                return float(cx), float(cp)
        return float(x.mean()), float(p.mean())


def section(grid: WignerGrid, level_fraction: float, sign: int = 1) -> list:
    """Iso-contours of W at ``sign * level_fraction * max|W|``."""
    if not 0 < level_fraction < 1:
        raise ValueError("level_fraction must lie in (0, 1)")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    level = sign * level_fraction * float(np.max(np.abs(grid.values)))
    if not grid.values.min() < level < grid.values.max():
        raise EmptyContour(f"level {level:.6g} outside sampled range "
                           f"[{grid.values.min():.6g}, {grid.values.max():.6g}]")
    gen = contourpy.contour_generator(grid.x_axis, grid.p_axis, grid.values.T,
                                      line_type=contourpy.LineType.Separate)
    lines = gen.lines(level)
    if not lines:
        raise EmptyContour(f"no contour at level {level:.6g}")
    return [Contour(np.asarray(seg, dtype=float)) for seg in lines]


def evaluate(state: StateSpec, x: float, p: float) -> float:
    """Single-point W with the default kernel for this state."""
    (xr, pr) = default_ranges(state)
    kern = _Kernel(state, max(abs(pr[0]), abs(pr[1]), abs(p)), (min(xr[0], x), max(xr[1], x)))
    return kern.point(x, p)
