"""Quadrature uncertainties, photon statistics and second-order coherence."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import reference
from .errors import MsqueezeError, NoConvergence, TailTooHeavy
from .nonlinear import NonlinearSpec
from .numerics import DEFAULT_PNDS_N, MAX_N, GridSpec, hermite_table, integrate
from .params import TransformSpec, from_polar
from .states import StateSpec, log_derivative, solve_eigenstate, wavefunction_eval

TAIL_LIMIT = 1e-6
# auto moments only trust the truncated distribution when the missing mass is negligible
MOMENT_TAIL = 1e-12
CROSS_TOL = 1e-12


# -- uncertainties ------------------------------------------------------------

@dataclass(frozen=True)
class UncertaintyReport:
    dx1: float
    dx2: float
    dx2_linear: float
    dx2_nonlinear: float
    cross_term: float
    product: float
    mean_x1: float
    mean_x2: float
    x1_sq: float
    x2_sq: float
    dx1_closed: float
    dx2_linear_closed: float
    error: float

    @property
    def decomposition_gap(self) -> float:
        return abs(self.dx2 - (self.dx2_linear + self.dx2_nonlinear + self.cross_term))

    @property
    def n_mean(self) -> float:
        """``<a^dag a> = <X1^2> + <X2^2> - 1/2``."""
        return self.x1_sq + self.x2_sq - 0.5

    def rows(self) -> list:
        keys = ("dx1", "dx2", "dx2_linear", "dx2_nonlinear", "cross_term", "product",
                "mean_x1", "mean_x2", "dx1_closed", "dx2_linear_closed")
        return [(k, getattr(self, k)) for k in keys]


def _moments(state: StateSpec, fn, grid: GridSpec, rtol: float):
    # fn(x, L, F) -> stacked integrands, weighted here by |Psi|^2
    def integrand(x):
        psi2 = np.abs(wavefunction_eval(state, x)) ** 2
        return fn(x, log_derivative(state, x), state.F(x)) * psi2
    return integrate(integrand, grid, rtol=rtol, atol=1e-300)


def uncertainties(state: StateSpec, grid: GridSpec | None = None, rtol: float = 1e-13) -> UncertaintyReport:
    """Quadrature variances with the split ``X2 = X2_lin + kappa F(X1)``.

    ``kappa = Im(mu gamma* - nu* gamma)`` follows from inverting the
    transformation; ``X2_lin`` is linear in ``b`` and ``b^dag``.  Means are
    computed first, then central moments, to avoid cancellation at large r.
    ``X2 Psi = -(i/2) L Psi`` with ``L`` the analytic log-derivative.
    """
    grid = grid or state.grid()
    kappa = state.transform.nonlinear_weight

    def first(x, L, F):
        x2 = -0.5j * L
        return np.stack([np.ones_like(x), x, x2.real, F, x * x, np.abs(L) ** 2 / 4])
    r1 = _moments(state, first, grid, rtol)
    norm, mx1, mx2, mF, x1sq, x2sq = r1.value.real
    mx1, mx2, mF = mx1 / norm, mx2 / norm, mF / norm

    def second(x, L, F):
        d2 = -0.5j * L - mx2                  # (X2 - <X2>) Psi / Psi
        dF = kappa * (F - mF)                 # (X2_nl - <X2_nl>) Psi / Psi
        dl = d2 - dF                          # linear part, centred
        return np.stack([(x - mx1) ** 2, np.abs(d2) ** 2, np.abs(dl) ** 2, dF * dF,
                         2 * (np.conj(dl) * dF).real])
    r2 = _moments(state, second, grid, rtol)
    dx1, dx2, dlin, dnl, cross = r2.value.real / norm
    t = state.transform
    return UncertaintyReport(
        dx1=dx1, dx2=dx2, dx2_linear=dlin, dx2_nonlinear=dnl, cross_term=cross,
        product=dx1 * dx2, mean_x1=mx1, mean_x2=mx2,
        x1_sq=x1sq / norm, x2_sq=x2sq / norm,
        dx1_closed=abs(t.mu_minus_nu) ** 2 / 4, dx2_linear_closed=abs(t.mu_plus_nu) ** 2 / 4,
        error=max(r1.error, r2.error),
    )


# -- photon statistics --------------------------------------------------------

@dataclass(frozen=True)
class PNDResult:
    probabilities: np.ndarray
    tail_mass: float
    n_mean: float
    n_var: float
    g2: float

    @property
    def n_max(self) -> int:
        return len(self.probabilities) - 1

    @property
    def total(self) -> float:
        return float(self.probabilities.sum())


def _g2(n_mean: float, n_var: float) -> float:
    return 1.0 + (n_var - n_mean) / n_mean ** 2 if n_mean > 0 else float("nan")


def _pnd_grid(state: StateSpec, n_max: int) -> GridSpec:
    # the integrand carries Psi, not |Psi|^2, so the window needs the doubled variance;
    # points are widened so h_n oscillations are resolved from the start
    g = GridSpec.for_gaussian(state.center, 2.0 * state.variance)
    points = max(256, 8 * int(math.sqrt(n_max + 1) * g.half_width))
    return GridSpec(g.center, g.half_width, points)


def overlaps(state: StateSpec, n_max: int = DEFAULT_PNDS_N, rtol: float = 1e-12) -> np.ndarray:
    """Amplitudes ``<n|Psi>`` for ``n = 0..n_max``."""
    if not 0 <= n_max <= MAX_N:
        raise ValueError(f"n_max must lie in [0, {MAX_N}]")
    res = integrate(lambda x: hermite_table(n_max, x) * wavefunction_eval(state, x),
                    _pnd_grid(state, n_max), rtol=rtol, atol=1e-13)
    return np.asarray(res.value)


def pnd(state: StateSpec, n_max: int = DEFAULT_PNDS_N, tail_limit: float = TAIL_LIMIT) -> PNDResult:
    """Photon-number distribution with moments taken from the distribution."""
    c = overlaps(state, n_max)
    p = np.abs(c) ** 2
    tail = max(0.0, 1.0 - float(p.sum()))
    if tail > tail_limit:
        raise TailTooHeavy(f"tail mass {tail:.3e} beyond n_max={n_max} exceeds {tail_limit:g}")
    n = np.arange(n_max + 1)
    mass = p.sum()
    mean = float(n @ p / mass)
    var = float(((n - mean) ** 2) @ p / mass)
    return PNDResult(p, tail, mean, var, _g2(mean, var))


@dataclass(frozen=True)
class PhotonMoments:
    n_mean: float
    n_var: float
    g2: float
    method: str


def ladder_moments(state: StateSpec, grid: GridSpec | None = None, rtol: float = 1e-12) -> PhotonMoments:
    """Moments from ``||a Psi||^2`` and ``||a^2 Psi||^2``.

    In the position representation ``a = x + (1/2) d/dx``, so
    ``a Psi = u Psi`` with ``u = x + L/2`` and
    ``a^2 Psi = (x u + u'/2 + u L/2) Psi``.  Needs no truncation in n.
    """
    grid = grid or state.grid()
    A, P = state.A, state.P

    def integrand(x):
        L = log_derivative(state, x)
        u = x + 0.5 * L
        du = 1.0 + 0.5 * (2.0 * A + P * state.F.derivative(x))
        v = x * u + 0.5 * du + 0.5 * u * L
        psi2 = np.abs(wavefunction_eval(state, x)) ** 2
        return np.stack([psi2, np.abs(u) ** 2 * psi2, np.abs(v) ** 2 * psi2])

    norm, n1, n2 = integrate(integrand, grid, rtol=rtol, atol=1e-300).value.real
    mean, fact2 = n1 / norm, n2 / norm
    var = fact2 + mean - mean * mean
    return PhotonMoments(mean, var, fact2 / mean ** 2 if mean > 0 else float("nan"), "ladder")


def photon_moments(state: StateSpec, method: str = "auto", n_max: int = DEFAULT_PNDS_N) -> PhotonMoments:
    """``method`` is ``pnd``, ``ladder`` or ``auto``.

    ``auto`` uses the distribution when its tail is below ``MOMENT_TAIL`` and
    the ladder moments otherwise.
    """
    if method not in ("auto", "pnd", "ladder"):
        raise ValueError(f"unknown moment method {method!r}")
    if method != "ladder":
        try:
            r = pnd(state, n_max, MOMENT_TAIL if method == "auto" else TAIL_LIMIT)
            return PhotonMoments(r.n_mean, r.n_var, r.g2, "pnd")
        except TailTooHeavy:
            if method == "pnd":
                raise
    return ladder_moments(state)


# -- closed forms ---------------------------------------------------------------

def closed_moments(transform: TransformSpec, beta1: float) -> tuple:
    """Printed ``(n_mean, n_var)`` for ``F(q) = q^2`` (see :mod:`msqueeze.reference`)."""
    return reference.closed_moments(transform, beta1)


@dataclass(frozen=True)
class MomentComparison:
    closed_mean: float
    closed_var: float
    numeric_mean: float
    numeric_var: float
    method: str

    @property
    def delta_mean(self) -> float:
        return self.numeric_mean - self.closed_mean

    @property
    def delta_var(self) -> float:
        return self.numeric_var - self.closed_var

    def rows(self) -> list:
        return [("closed_mean", self.closed_mean), ("numeric_mean", self.numeric_mean),
                ("delta_mean", self.delta_mean), ("closed_var", self.closed_var),
                ("numeric_var", self.numeric_var), ("delta_var", self.delta_var)]


def compare_closed_moments(transform: TransformSpec, beta1: float,
                           F: NonlinearSpec | None = None, method: str = "auto") -> MomentComparison:
    """Printed moments against numerics; the deltas are reported, not asserted."""
    F = F or NonlinearSpec.monomial(2, convention="standard")
    mean, var = closed_moments(transform, beta1)
    m = photon_moments(solve_eigenstate(transform, beta1, F), method)
    return MomentComparison(mean, var, m.n_mean, m.n_var, m.method)


def yuen_moments(transform: TransformSpec, beta: complex) -> tuple:
    """Two-photon coherent-state ``(n_mean, n_var)`` for ``phi1 = phi2 = 0``."""
    a = abs(transform.alpha_from_beta(beta))
    return reference.yuen_mean_photon(transform.r, a), reference.yuen_photon_variance(transform.r, a)


# -- scans -------------------------------------------------------------------------

@dataclass
class ScanResult:
    parameter: str
    values: np.ndarray
    g2: np.ndarray
    n_mean: np.ndarray
    n_var: np.ndarray
    methods: list
    crossings: list = field(default_factory=list)

    def rows(self):
        return list(zip(self.values, self.g2, self.n_mean, self.n_var))


@dataclass(frozen=True)
class ScanFamily:
    """Canonical family ``phi1 = phi2 = phi``, ``delta = phi + pi/2``, varied over r or |gamma|."""

    over: str
    r: float = 0.8
    gamma_abs: float = 0.1
    beta: complex = 3.0
    F: NonlinearSpec = NonlinearSpec.monomial(2, convention="standard")
    phi: float = 0.0

    def __post_init__(self):
        if self.over not in ("r", "gamma"):
            raise ValueError("scan parameter must be 'r' or 'gamma'")

    def transform(self, value: float) -> TransformSpec:
        r, g = (value, self.gamma_abs) if self.over == "r" else (self.r, value)
        return from_polar(r, self.phi, self.phi, g, self.phi + math.pi / 2)

    def state(self, value: float) -> StateSpec:
        return solve_eigenstate(self.transform(value), self.beta, self.F)


def _bisect(fn, lo: float, hi: float, flo: float, xtol: float) -> float:
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        fm = fn(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def g2_scan(family: ScanFamily, values, method: str = "auto", xtol: float = 1e-3) -> ScanResult:
    """g2 along a monotone grid; sign changes of ``g2 - 1`` are bisected to ``xtol``."""
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or len(values) < 2 or np.any(np.diff(values) <= 0):
        raise ValueError("scan values must be a strictly increasing sequence")
    moments = [photon_moments(family.state(v), method) for v in values]
    g2 = np.array([m.g2 for m in moments])
    out = ScanResult(family.over, values, g2, np.array([m.n_mean for m in moments]),
                     np.array([m.n_var for m in moments]), [m.method for m in moments])

    def excess(v):
        return photon_moments(family.state(v), method).g2 - 1.0

    # touching g2 = 1 without changing side (e.g. the coherent point r = 0) is not a crossing
    d = g2 - 1.0
    side = [(i, d[i]) for i in range(len(d)) if abs(d[i]) > CROSS_TOL]
    for (i, di), (j, dj) in zip(side, side[1:]):
        if di * dj > 0:
            continue
        if j == i + 1:
            out.crossings.append(float(_bisect(excess, values[i], values[j], di, xtol)))
        else:
            out.crossings.append(float(np.mean(values[i + 1:j])))
    return out


def scan_grid(start: float, stop: float, step: float) -> np.ndarray:
    n = int(round((stop - start) / step))
    return start + step * np.arange(n + 1)


__all__ = [
    "UncertaintyReport", "uncertainties", "PNDResult", "pnd", "overlaps", "PhotonMoments",
    "ladder_moments", "photon_moments", "closed_moments", "MomentComparison",
    "compare_closed_moments", "yuen_moments", "ScanFamily", "ScanResult", "g2_scan", "scan_grid",
    "NoConvergence", "MsqueezeError",
]
