"""Closed-form eigenstates of ``b = mu a + nu a^dag + gamma F(X1)``.

In the position representation of ``X1`` (``[X1, X2] = i/2``)

    b = (mu + nu) x + ((mu - nu)/2) d/dx + gamma F(x)

so ``b Psi = beta Psi`` is first order and integrates to

    Psi(x) = N exp(A x^2 + B x + P G(x)),   G' = F,

with ``A = -(mu+nu)/(mu-nu)``, ``B = 2 beta/(mu-nu)`` and ``P = -2 gamma/(mu-nu)``.
For canonical coefficients ``P`` is purely imaginary, so F only enters the
phase and the density is the Gaussian fixed by ``A`` and ``B``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import Degenerate, NonNormalizable
from .nonlinear import NonlinearSpec
from .numerics import GridSpec, integrate
from .params import TransformSpec

__all__ = [
    "NonlinearSpec", "StateSpec", "solve_eigenstate", "phase_coefficient",
    "wavefunction_eval", "log_derivative", "eigen_residual", "state_table",
]

DEGENERATE_TOL = 1e-12


def phase_coefficient(transform: TransformSpec) -> complex:
    """``-2 gamma / (mu - nu)``; no canonicity check, so violations show up in its real part."""
    mmn = transform.mu_minus_nu
    if abs(mmn) < DEGENERATE_TOL:
        raise Degenerate("mu - nu vanishes")
    return -2.0 * complex(transform.gamma) / mmn


@dataclass(frozen=True)
class StateSpec:
    transform: TransformSpec
    beta: complex
    F: NonlinearSpec
    A: complex
    B: complex
    P: complex
    log_norm: float

    @property
    def phase_coeff(self) -> float:
        """Imaginary part of ``P``; the real part vanishes for canonical transforms."""
        return self.P.imag

    @property
    def center(self) -> float:
        return self.B.real / (-2.0 * self.A.real)

    @property
    def variance(self) -> float:
        return 1.0 / (-4.0 * self.A.real)

    @property
    def alpha(self) -> complex:
        """Displacement of the equivalent two-photon coherent state, ``beta = mu alpha + nu alpha*``."""
        return self.transform.alpha_from_beta(self.beta)

    def grid(self, points: int = 256, extra: float = 0.0) -> GridSpec:
        return GridSpec.for_gaussian(self.center, self.variance, points, extra)


def _log_norm(A: complex, B: complex) -> float:
    # |Psi|^2 = exp(-a x^2 + b x) up to N^2, Re(P G) = 0
    a, b = -2.0 * A.real, 2.0 * B.real
    log_mass = 0.5 * math.log(math.pi / a) + b * b / (4.0 * a)
    return -0.5 * log_mass


def solve_eigenstate(transform: TransformSpec, beta: complex = 0.0,
                     F: NonlinearSpec | None = None) -> StateSpec:
    """Normalized eigenstate of ``b`` with eigenvalue ``beta``."""
    transform.require_canonical()
    F = F if F is not None else NonlinearSpec.monomial(1)
    mmn = transform.mu_minus_nu
    if abs(mmn) < DEGENERATE_TOL:
        raise Degenerate(f"|mu - nu| = {abs(mmn):.3e}; position representation degenerates")
    A = -transform.mu_plus_nu / mmn
    if not A.real < 0:
        raise NonNormalizable(f"Re((mu+nu)/(mu-nu)) = {-A.real:.6g} is not positive")
    beta = complex(beta)
    B = 2.0 * beta / mmn
    P = phase_coefficient(transform)
    return StateSpec(transform, beta, F, A, B, P, _log_norm(A, B))


def log_wavefunction(state: StateSpec, x):
    x = np.asarray(x, dtype=float)
    return state.log_norm + state.A * x * x + state.B * x + state.P * state.F.antiderivative(x)


def wavefunction_eval(state: StateSpec, x):
    """``Psi(x)``; scalar in, scalar out."""
    vals = np.exp(log_wavefunction(state, x))
    return vals if np.ndim(x) else complex(vals)


def log_derivative(state: StateSpec, x):
    """``L = Psi'/Psi = 2 A x + B + P F(x)``."""
    x = np.asarray(x, dtype=float)
    return 2.0 * state.A * x + state.B + state.P * state.F(x)


def phase(state: StateSpec, x):
    """Continuous phase ``Im log Psi`` (not wrapped to (-pi, pi])."""
    return np.imag(log_wavefunction(state, x))


def eigen_residual(state: StateSpec, grid: GridSpec | None = None, rtol: float = 1e-6) -> float:
    """``||b Psi - beta Psi|| / ||Psi||`` with the analytic derivative."""
    t = state.transform
    mpn, mmn, g = t.mu_plus_nu, t.mu_minus_nu, complex(t.gamma)
    grid = grid or state.grid()

    def integrand(x):
        psi2 = np.abs(wavefunction_eval(state, x)) ** 2
        r = mpn * x + 0.5 * mmn * log_derivative(state, x) + g * state.F(x) - state.beta
        return np.stack([np.abs(r) ** 2 * psi2, psi2])

    # the residual is pure rounding noise, so only a loose absolute floor makes sense
    res = integrate(integrand, grid, rtol=rtol, atol=1e-30)
    num, den = res.value.real
    return math.sqrt(max(num, 0.0) / den)


def state_table(state: StateSpec, grid: GridSpec):
    """Columns ``x, re, im, |Psi|^2, phase`` over the grid nodes."""
    x = grid.nodes
    psi = wavefunction_eval(state, x)
    return {
        "x": x,
        "re_psi": psi.real,
        "im_psi": psi.imag,
        "density": np.abs(psi) ** 2,
        "phase": phase(state, x),
    }
