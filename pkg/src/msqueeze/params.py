"""Transformation coefficients ``b = mu a + nu a^dag + gamma F(X1)``.

The raw complex coefficients are the source of truth.  The polar view
``mu = cosh r e^{i phi1}``, ``nu = sinh r e^{i phi2}``,
``gamma = |gamma| e^{i delta}`` is derived from them with ``r >= 0``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import NonNormalizable, NotCanonical
from .exact import coerce, is_exact

DEFAULT_TOL = 1e-10

POLAR_KEYS = ("r", "phi1", "phi2", "gamma_abs", "delta")
RAW_KEYS = ("mu_re", "mu_im", "nu_re", "nu_im", "gamma_re", "gamma_im")


@dataclass(frozen=True)
class CanonicityReport:
    cond1_residual: float
    cond2_residual: float
    ok: bool
    tol: float = DEFAULT_TOL


def check_canonical(mu, nu, gamma, tol: float = DEFAULT_TOL) -> CanonicityReport:
    """Evaluate both canonicity residuals.

    ``cond1 = | |mu|^2 - |nu|^2 - 1 |`` and
    ``cond2 = | Re(mu conj(gamma) - conj(nu) gamma) |``; ``ok`` iff both
    are below ``tol``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    mu, nu, gamma = coerce(mu), coerce(nu), coerce(gamma)
    c1 = mu * mu.conjugate() - nu * nu.conjugate() - 1
    c2 = mu * gamma.conjugate() - nu.conjugate() * gamma
    r1 = abs(float(c1.real))
    r2 = abs(float(c2.real))
    return CanonicityReport(r1, r2, r1 < tol and r2 < tol, tol)


@dataclass(frozen=True)
class TransformSpec:
    """Coefficients of the quadrature-dependent Bogoliubov transformation.

    Values may be Python complex numbers or exact
    :class:`~msqueeze.exact.GaussianRational` instances; the latter keep
    symbolic expansions exact.
    """

    mu: complex = 1
    nu: complex = 0
    gamma: complex = 0
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        for name in ("mu", "nu", "gamma"):
            object.__setattr__(self, name, coerce(getattr(self, name)))

    # -- polar view ---------------------------------------------------------
    @property
    def r(self) -> float:
        # asinh|nu| equals arcosh|mu| on the canonical surface and keeps
        # precision at small r
        if self.report.cond1_residual < self.tol:
            return math.asinh(abs(complex(self.nu)))
        return math.acosh(max(1.0, abs(complex(self.mu))))

    @property
    def phi1(self) -> float:
        return cmath.phase(complex(self.mu))

    @property
    def phi2(self) -> float:
        nu = complex(self.nu)
        return cmath.phase(nu) if nu != 0 else 0.0

    @property
    def gamma_abs(self) -> float:
        return abs(complex(self.gamma))

    @property
    def delta(self) -> float:
        g = complex(self.gamma)
        return cmath.phase(g) if g != 0 else 0.0

    def polar(self) -> dict:
        return {k: getattr(self, k) for k in POLAR_KEYS}

    @property
    def exact(self) -> bool:
        return all(is_exact(v) for v in (self.mu, self.nu, self.gamma))

    # -- canonicity ---------------------------------------------------------
    @property
    def report(self) -> CanonicityReport:
        return check_canonical(self.mu, self.nu, self.gamma, self.tol)

    @property
    def canonical(self) -> bool:
        return self.report.ok

    def require_canonical(self) -> "TransformSpec":
        rep = self.report
        if not rep.ok:
            raise NotCanonical(
                f"canonicity violated: |mu|^2-|nu|^2-1 residual {rep.cond1_residual:.3e}, "
                f"Re(mu gamma* - nu* gamma) residual {rep.cond2_residual:.3e} (tol {rep.tol:g})"
            )
        return self

    # -- convenience --------------------------------------------------------
    @property
    def mu_minus_nu(self) -> complex:
        return complex(self.mu) - complex(self.nu)

    @property
    def mu_plus_nu(self) -> complex:
        return complex(self.mu) + complex(self.nu)

    @property
    def nonlinear_weight(self) -> float:
        """``Im(mu conj(gamma) - conj(nu) gamma)``, the weight of F in X2."""
        mu, nu, g = complex(self.mu), complex(self.nu), complex(self.gamma)
        return (mu * g.conjugate() - nu.conjugate() * g).imag

    def beta_from_alpha(self, alpha: complex) -> complex:
        """Eigenvalue ``mu alpha + nu conj(alpha)`` of the displaced-squeezed form."""
        return complex(self.mu) * alpha + complex(self.nu) * complex(alpha).conjugate()

    def alpha_from_beta(self, beta: complex) -> complex:
        mu, nu = complex(self.mu), complex(self.nu)
        # beta = mu a + nu a*  =>  a = conj(mu) beta - nu conj(beta)
        return mu.conjugate() * beta - nu * complex(beta).conjugate()


def from_polar(r: float, phi1: float = 0.0, phi2: float = 0.0,
               gamma_abs: float = 0.0, delta: float = 0.0,
               tol: float = DEFAULT_TOL, check: bool = True) -> TransformSpec:
    """Build a spec from the squeezing parametrization.

    The first canonicity condition holds by construction.  The second is
    checked and :class:`NotCanonical` raised when ``check`` is set.
    """
    if r < 0:
        raise ValueError("r must be non-negative")
    if gamma_abs < 0:
        raise ValueError("gamma_abs must be non-negative")
    spec = TransformSpec(
        mu=math.cosh(r) * cmath.exp(1j * phi1),
        nu=math.sinh(r) * cmath.exp(1j * phi2),
        gamma=gamma_abs * cmath.exp(1j * delta),
        tol=tol,
    )
    if check:
        spec.require_canonical()
    return spec


def from_raw(mu, nu, gamma, tol: float = DEFAULT_TOL, check: bool = True) -> TransformSpec:
    spec = TransformSpec(mu, nu, gamma, tol)
    if check:
        spec.require_canonical()
    return spec


@dataclass(frozen=True)
class DerivedConstants:
    c_plus: float
    c_minus: float
    sigma: float
    x0: float


def derived_constants(spec: TransformSpec, beta: complex = 0.0) -> DerivedConstants:
    """Width and centre constants of the closed-form eigenstate.

    ``C+- = cosh r sin(phi1-delta) +- sinh r sin(phi2-delta)``,
    ``sigma = C- / C+`` and ``x0 = |beta| sin(xi - delta) / C+``.
    In the ``[X1, X2] = i/2`` convention the density variance equals
    ``sigma / 4`` and its centre equals ``x0``.
    """
    spec.require_canonical()
    r, d = spec.r, spec.delta
    ch, sh = math.cosh(r), math.sinh(r)
    s1, s2 = math.sin(spec.phi1 - d), math.sin(spec.phi2 - d)
    c_plus = ch * s1 + sh * s2
    c_minus = ch * s1 - sh * s2
    if c_plus == 0 or not (c_minus / c_plus) > 0:
        raise NonNormalizable(
            f"sigma = C-/C+ = {c_minus}/{c_plus} is not positive; Gaussian profile does not decay"
        )
    beta = complex(beta)
    x0 = abs(beta) * math.sin(cmath.phase(beta) - d) / c_plus
    return DerivedConstants(c_plus, c_minus, c_minus / c_plus, x0)


# -- plain-text serialization ----------------------------------------------

def to_text(spec: TransformSpec, polar: bool = True) -> str:
    """Serialize as ``key=value`` lines (radians, 17 significant digits)."""
    if polar:
        items = spec.polar().items()
    else:
        mu, nu, g = complex(spec.mu), complex(spec.nu), complex(spec.gamma)
        items = zip(RAW_KEYS, (mu.real, mu.imag, nu.real, nu.imag, g.real, g.imag))
    return "".join(f"{k}={float(v):.17g}\n" for k, v in items)


def from_text(text: str, tol: float = DEFAULT_TOL, check: bool = True) -> TransformSpec:
    """Parse the output of :func:`to_text` (either key family)."""
    values = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"malformed line: {raw!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        values[key] = float(val)
    if set(values) >= set(RAW_KEYS):
        return from_raw(complex(values["mu_re"], values["mu_im"]),
                        complex(values["nu_re"], values["nu_im"]),
                        complex(values["gamma_re"], values["gamma_im"]),
                        tol=tol, check=check)
    if "r" in values:
        return from_polar(values["r"], values.get("phi1", 0.0), values.get("phi2", 0.0),
                          values.get("gamma_abs", 0.0), values.get("delta", 0.0),
                          tol=tol, check=check)
    raise ValueError("document holds neither polar nor raw coefficient keys")
