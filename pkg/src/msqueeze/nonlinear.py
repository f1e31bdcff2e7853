"""The real nonlinearity F entering ``b = mu a + nu a^dag + gamma F(X1)``.

Two argument conventions are supported:

``operator``
    F acts on ``X1 = (a + a^dag)/2`` directly.
``standard``
    F acts on the standard position ``q = (a + a^dag)/sqrt(2) = sqrt(2) X1``,
    i.e. the operator-convention function is ``x -> F(sqrt(2) x)``.  The
    reference figures, the printed x^2 Hamiltonian and the closed-form photon
    moments are all stated in this convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NotPolynomial

MAX_DEGREE = 6
CONVENTIONS = ("operator", "standard")


@dataclass(frozen=True)
class NonlinearSpec:
    kind: str = "polynomial"
    coefficients: tuple = (0,)
    convention: str = "operator"

    def __post_init__(self):
        if self.kind not in ("polynomial", "sine"):
            raise ValueError(f"unknown nonlinearity kind {self.kind!r}")
        if self.convention not in CONVENTIONS:
            raise ValueError(f"unknown argument convention {self.convention!r}")
        coeffs = tuple(self.coefficients)
        for c in coeffs:
            if isinstance(c, complex) and c.imag != 0:
                raise ValueError("F must be real-valued: coefficients must be real")
        if self.kind == "polynomial":
            while len(coeffs) > 1 and coeffs[-1] == 0:
                coeffs = coeffs[:-1]
            if len(coeffs) - 1 > MAX_DEGREE:
                raise ValueError(f"polynomial degree above {MAX_DEGREE}")
        elif len(coeffs) != 2 or coeffs[1] == 0:
            raise ValueError("sine nonlinearity needs (amplitude, nonzero frequency)")
        object.__setattr__(self, "coefficients", coeffs)

    # -- constructors -------------------------------------------------------
    @classmethod
    def polynomial(cls, coeffs, convention: str = "operator") -> "NonlinearSpec":
        return cls("polynomial", tuple(coeffs), convention)

    @classmethod
    def monomial(cls, n: int, convention: str = "operator") -> "NonlinearSpec":
        return cls("polynomial", (0,) * n + (1,), convention)

    @classmethod
    def sine(cls, amplitude: float, frequency: float, convention: str = "operator") -> "NonlinearSpec":
        return cls("sine", (amplitude, frequency), convention)

    def with_convention(self, convention: str) -> "NonlinearSpec":
        return NonlinearSpec(self.kind, self.coefficients, convention)

    # -- properties ---------------------------------------------------------
    @property
    def arg_scale(self) -> float:
        return math.sqrt(2.0) if self.convention == "standard" else 1.0

    @property
    def is_polynomial(self) -> bool:
        return self.kind == "polynomial"

    @property
    def degree(self) -> int:
        if not self.is_polynomial:
            raise NotPolynomial("sine nonlinearity has no polynomial degree")
        return len(self.coefficients) - 1

    def operator_coefficients(self) -> list:
        """Monomial coefficients of F as a polynomial in ``X1``.

        Exact inputs stay exact where the argument scale allows it (every
        power in the operator convention, even powers in the standard one).
        """
        if not self.is_polynomial:
            raise NotPolynomial("symbolic expansion needs a polynomial F")
        out = []
        for k, c in enumerate(self.coefficients):
            if self.convention == "operator":
                out.append(c)
            elif k % 2 == 0:
                out.append(c * 2 ** (k // 2))
            else:
                out.append(float(c) * math.sqrt(2.0) ** k)
        return out

    def _float_coeffs(self) -> np.ndarray:
        return np.array([float(c) for c in self.operator_coefficients()])

    # -- evaluation (operator-convention variable x) -------------------------
    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.is_polynomial:
            return np.polynomial.polynomial.polyval(x, self._float_coeffs())
        amp, freq = (float(c) for c in self.coefficients)
        return amp * np.sin(freq * self.arg_scale * x)

    def derivative(self, x):
        x = np.asarray(x, dtype=float)
        if self.is_polynomial:
            return np.polynomial.polynomial.polyval(
                x, np.polynomial.polynomial.polyder(self._float_coeffs()))
        amp, freq = (float(c) for c in self.coefficients)
        k = freq * self.arg_scale
        return amp * k * np.cos(k * x)

    def antiderivative(self, x):
        """Closed-form primitive ``G`` with ``G(0) = 0`` and ``G' = F``."""
        x = np.asarray(x, dtype=float)
        if self.is_polynomial:
            return np.polynomial.polynomial.polyval(
                x, np.polynomial.polynomial.polyint(self._float_coeffs()))
        amp, freq = (float(c) for c in self.coefficients)
        k = freq * self.arg_scale
        return amp * (1.0 - np.cos(k * x)) / k

    def antiderivative_coefficients(self) -> list:
        if not self.is_polynomial:
            raise NotPolynomial("sine antiderivative is not a polynomial")
        return [0] + [c / Fraction(k + 1) if isinstance(c, (int, Fraction)) else c / (k + 1)
                      for k, c in enumerate(self.operator_coefficients())]

    def label(self) -> str:
        body = ",".join(f"{float(c):g}" for c in self.coefficients)
        name = "poly" if self.is_polynomial else "sin"
        return f"{name}[{body}]@{self.convention}"
