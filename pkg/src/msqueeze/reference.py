"""Literature closed forms kept verbatim for comparison, plus their errata.

The literature operator formulas use the standard position
``q = (a + a^dag)/sqrt(2)`` as the argument of F (``convention="standard"`` in
:class:`~msqueeze.nonlinear.NonlinearSpec`).  Each comparison reports a
term-level diff; terms known to disagree with exact reordering are listed in
the ``*_ERRATA`` tables together with the exactly derived coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .nonlinear import NonlinearSpec
from .opalg import NormalPoly, QuadPoly, expand_hamiltonian
from .params import TransformSpec


def printed_hamiltonian_x2(mu, nu, gamma) -> dict:
    """Literature normal-ordered ``b^dag b`` for ``F(q) = q^2``, keyed by ``(k, l)``."""
    mu, nu, g = complex(mu), complex(nu), complex(gamma)
    mus, nus, gs = mu.conjugate(), nu.conjugate(), g.conjugate()
    g2 = abs(g) ** 2
    re_mix = ((mu + nu) * gs).real
    return {
        (4, 0): g2 / 4, (0, 4): g2 / 4,
        (3, 1): g2, (1, 3): g2,
        (2, 2): g2 / 4,
        (3, 0): (mus * g + nu * gs) / 2,
        (0, 3): (mu * gs + nus * g) / 2,
        (2, 1): re_mix, (1, 2): re_mix,
        (2, 0): g2 / 2 + mus * nu,
        (0, 2): g2 / 2 + mu * nus,
        (1, 1): abs(mu) ** 2 + abs(nu) ** 2 + 2 * g2,
        (1, 0): (mus * g + 3 * nu * gs + 2 * nus * g) / 2,
        (0, 1): (mu * gs + 2 * nu * gs + 3 * nus * g) / 2,
        (0, 0): g2 / 4 + abs(nu) ** 2 + 0.5,
    }


def printed_linear_hamiltonian(mu, nu) -> dict:
    """Literature ``b^dag b`` at ``gamma = 0`` (including its constant)."""
    mu, nu = complex(mu), complex(nu)
    return {
        (1, 1): abs(mu) ** 2 + abs(nu) ** 2,
        (2, 0): mu.conjugate() * nu,
        (0, 2): mu * nu.conjugate(),
        (0, 0): abs(nu) ** 2 + 0.5,
    }


# Exact reordering of b^dag b with F(q) = q^2, q = (a + a^dag)/sqrt(2).
# Values are the derived coefficients; the printed ones are above.
HAMILTONIAN_X2_ERRATA = {
    (2, 2): "derived 3|g|^2/2: q^4/4 contributes 6/4 a^dag^2 a^2",
    (2, 1): "derived (2 g mu* + g nu* + g* mu + 2 g* nu)/2; printed Re[(mu+nu) g*] omits (g mu* + g* nu)/2",
    (1, 2): "derived (g mu* + 2 g nu* + 2 g* mu + g* nu)/2; Hermitian partner of (2, 1)",
    (2, 0): "derived 3|g|^2/2 + mu* nu",
    (0, 2): "derived 3|g|^2/2 + mu nu*",
    (1, 1): "derived |mu|^2 + |nu|^2 + 3|g|^2",
    (0, 0): "derived 3|g|^2/4 + |nu|^2; b^dag b carries no zero-point 1/2",
}

LINEAR_HAMILTONIAN_ERRATA = {
    (0, 0): "derived |nu|^2; the printed extra 1/2 is not part of b^dag b",
}


@dataclass
class TermDiff:
    key: tuple
    derived: complex
    printed: complex

    @property
    def delta(self) -> float:
        return abs(self.derived - self.printed)


@dataclass
class ComparisonReport:
    matched: list = field(default_factory=list)
    mismatched: list = field(default_factory=list)
    tol: float = 1e-12

    @property
    def mismatched_keys(self) -> set:
        return {d.key for d in self.mismatched}

    def lines(self, errata: dict | None = None) -> list:
        out = []
        for d in sorted(self.matched + self.mismatched, key=lambda d: d.key):
            status = "match" if d.delta <= self.tol else "ERRATUM"
            note = (errata or {}).get(d.key, "") if status != "match" else ""
            out.append(f"{d.key}: derived={d.derived:.12g} printed={d.printed:.12g} {status} {note}".rstrip())
        return out


def compare_terms(derived: NormalPoly, printed: dict, tol: float = 1e-12) -> ComparisonReport:
    report = ComparisonReport(tol=tol)
    keys = set(printed) | set(derived.terms)
    for key in sorted(keys):
        d = complex(derived.coeff(*key))
        p = complex(printed.get(key, 0))
        diff = TermDiff(key, d, p)
        scale = max(1.0, abs(p))
        (report.matched if diff.delta <= tol * scale else report.mismatched).append(diff)
    return report


def compare_hamiltonian_x2(spec: TransformSpec, tol: float = 1e-12) -> ComparisonReport:
    """Term-by-term diff of the exact ``F(q) = q^2`` Hamiltonian against print."""
    F = NonlinearSpec.monomial(2, convention="standard")
    return compare_terms(expand_hamiltonian(spec, F), printed_hamiltonian_x2(spec.mu, spec.nu, spec.gamma), tol)


def compare_linear_hamiltonian(spec: TransformSpec, tol: float = 1e-12) -> ComparisonReport:
    F = NonlinearSpec.monomial(1)
    lin = TransformSpec(spec.mu, spec.nu, 0)
    return compare_terms(expand_hamiltonian(lin, F), printed_linear_hamiltonian(spec.mu, spec.nu), tol)


# -- quadrature completed square ---------------------------------------------

def equal_phase_square(spec: TransformSpec, F: NonlinearSpec) -> QuadPoly:
    """``e^{2r} X1^2 + e^{-2r} (X2 + s |g| e^r F)^2`` for ``phi1 = phi2``.

    Built directly from the closed form (``s = sin(delta - phi)``), without
    the ordering constant; valid in the ``[X1, X2] = i/2`` variables.
    """
    if abs(math.sin(spec.phi1 - spec.phi2)) > 1e-12 and spec.r > 0:
        raise DomainError("completed square needs equal phases of mu and nu")
    r = spec.r
    k = math.sin(spec.delta - spec.phi1) * spec.gamma_abs * math.exp(r)
    f = [complex(c).real for c in F.operator_coefficients()]
    terms = {("x2sq", 0): math.exp(-2 * r)}
    terms[("x1", 2)] = math.exp(2 * r)
    for m, fm in enumerate(f):
        terms[("anti", m)] = terms.get(("anti", m), 0.0) + math.exp(-2 * r) * k * fm
    sq = np.convolve(f, f)
    for m, v in enumerate(sq):
        terms[("x1", m)] = terms.get(("x1", m), 0.0) + math.exp(-2 * r) * k * k * v
    return QuadPoly(terms)


# -- closed-form photon moments ----------------------------------------------

def _check_special_case(spec: TransformSpec):
    ok = (abs(spec.phi1) < 1e-12 and abs(spec.phi2) < 1e-12) or spec.r == 0
    ok = ok and (spec.gamma_abs == 0 or abs(abs(spec.delta) - math.pi / 2) < 1e-12)
    if not ok:
        raise DomainError("closed-form moments hold only for real mu, nu and imaginary gamma")


def printed_mean_photon(g: float, r: float, beta1: float) -> float:
    """Literature mean photon number for ``F(q) = q^2``, real ``beta``."""
    c2, s2 = math.cosh(2 * r), math.sinh(2 * r)
    return ((2 + 3 * g * g) * c2 - 3 * g * g * s2 - 2) / 4 + beta1 ** 2 * (c2 - s2) * (
        1 + 6 * g * g + 4 * g * g * beta1 ** 2)


def printed_photon_variance(g: float, r: float, beta1: float) -> float:
    """Literature photon-number variance for ``F(q) = q^2``, real ``beta``."""
    e = math.exp
    b2 = beta1 ** 2
    inner = (1 + e(8 * r) + 12 * g ** 2 + 48 * g ** 4 + 2 * e(4 * r) * (g ** 2 - 1)
             + 8 * b2 * (1 + (18 + 4 * e(4 * r)) * g ** 2
                         + 4 * b2 * g ** 2 * (4 + e(4 * r) + 42 * g ** 2 + 16 * b2 * g ** 2)
                         + 96 * g ** 4))
    return e(-4 * r) / 8 * inner


def yuen_mean_photon(r: float, alpha_abs: float) -> float:
    return math.sinh(r) ** 2 + alpha_abs ** 2


def yuen_photon_variance(r: float, alpha_abs: float) -> float:
    return math.exp(-4 * r) / 8 * ((math.exp(4 * r) - 1) ** 2 + 8 * alpha_abs ** 2 * math.exp(2 * r))


def closed_moments(spec: TransformSpec, beta1: float) -> tuple:
    """Literature ``(n_mean, n_var)`` for ``F(q) = q^2``, ``phi = 0``, real ``beta``.

    ``gamma`` enters through ``|gamma|``; F is understood in the standard
    convention.
    """
    spec.require_canonical()
    _check_special_case(spec)
    g, r = spec.gamma_abs, spec.r
    return printed_mean_photon(g, r, beta1), printed_photon_variance(g, r, beta1)
