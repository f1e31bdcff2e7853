"""Exact symbolic algebra over polynomials in a single bosonic mode.

Two independent reordering paths are provided:

* :class:`NormalPoly` multiplication reorders whole blocks ``a^l a^dag^k``
  with a memoized single-swap recursion (``a a^dag = a^dag a + 1``);
* :func:`normal_form` expands an :class:`Expr` tree into letter words and
  bubble-sorts each word, one adjacent swap at a time.

The same block machinery, with ``[X2, X1] = -i/2`` in place of
``[a, a^dag] = 1``, orders polynomials in the quadratures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DegreeOverflow, NotReducible
from .exact import GaussianRational, coerce
from .nonlinear import NonlinearSpec
from .params import TransformSpec

DEFAULT_MAX_DEGREE = 16
ZERO_TOL = 1e-12


@lru_cache(maxsize=None)
def _reorder(l: int, k: int) -> tuple:
    """Expansion ``R^l L^k = sum_j n_j c^j L^(k-j) R^(l-j)`` as ``((j, n_j), ...)``.

    ``c = [R, L]`` is a scalar; the integers ``n_j`` do not depend on it.
    """
    if l == 0 or k == 0:
        return ((0, 1),)
    # R^l L^k = (R^(l-1) L^k) R + k c R^(l-1) L^(k-1)
    out = dict(_reorder(l - 1, k))
    for j, n in _reorder(l - 1, k - 1):
        out[j + 1] = out.get(j + 1, 0) + k * n
    return tuple(sorted(out.items()))


def _is_zero(c) -> bool:
    return not c


class _OrderedPoly:
    """Polynomial ``sum c_{k,l} L^k R^l`` with ``[R, L]`` a scalar."""

    _comm = 1
    _left = "L"
    _right = "R"

    __slots__ = ("_terms", "max_degree")

    def __init__(self, terms=None, max_degree: int = DEFAULT_MAX_DEGREE):
        clean = {}
        for key, c in (terms or {}).items():
            c = coerce(c)
            if not _is_zero(c):
                clean[(int(key[0]), int(key[1]))] = c
        self._terms = clean
        self.max_degree = max_degree
        if clean and self.degree > max_degree:
            raise DegreeOverflow(f"degree {self.degree} exceeds maximum {max_degree}")

    # -- construction -------------------------------------------------------
    @classmethod
    def const(cls, c, max_degree: int = DEFAULT_MAX_DEGREE):
        return cls({(0, 0): c}, max_degree)

    @classmethod
    def zero(cls, max_degree: int = DEFAULT_MAX_DEGREE):
        return cls({}, max_degree)

    def _new(self, terms, other=None):
        md = self.max_degree if other is None else min(self.max_degree, other.max_degree)
        return type(self)(terms, md)

    # -- mapping access -----------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))

    def coeff(self, k: int, l: int):
        return self._terms.get((k, l), 0)

    def __len__(self):
        return len(self._terms)

    @property
    def degree(self) -> int:
        return max((k + l for k, l in self._terms), default=0)

    # -- arithmetic ---------------------------------------------------------
    def _coerce_other(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, _OrderedPoly):
            raise TypeError("cannot mix polynomials over different generators")
        return type(self).const(other, self.max_degree)

    def __add__(self, other):
        other = self._coerce_other(other)
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out[key] + c if key in out else c
        return self._new(out, other)

    __radd__ = __add__

    def __neg__(self):
        return self._new({key: -c for key, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce_other(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, _OrderedPoly):
            c = coerce(other)
            return self._new({key: v * c for key, v in self._terms.items()})
        other = self._coerce_other(other)
        md = min(self.max_degree, other.max_degree)
        comm = coerce(self._comm)
        out = {}
        for (k1, l1), c1 in self._terms.items():
            for (k2, l2), c2 in other._terms.items():
                if k1 + l1 + k2 + l2 > md:
                    raise DegreeOverflow(
                        f"product degree {k1 + l1 + k2 + l2} exceeds maximum {md}")
                base = c1 * c2
                # L^k1 (R^l1 L^k2) R^l2
                for j, n in _reorder(l1, k2):
                    key = (k1 + k2 - j, l1 + l2 - j)
                    term = base * n * comm ** j if j else base * n
                    out[key] = out[key] + term if key in out else term
        return type(self)(out, md)

    def __rmul__(self, other):
        c = coerce(other)
        return self._new({key: c * v for key, v in self._terms.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        out = type(self).const(1, self.max_degree)
        for _ in range(n):
            out = out * self
        return out

    # -- comparison ---------------------------------------------------------
    def max_abs(self) -> float:
        return max((abs(complex(c)) for c in self._terms.values()), default=0.0)

    def chop(self, tol: float = ZERO_TOL):
        return self._new({key: c for key, c in self._terms.items() if abs(complex(c)) > tol})

    def is_zero(self, tol: float | None = None) -> bool:
        """Exact emptiness when ``tol`` is None, else every |c| <= tol."""
        if tol is None:
            return not self._terms
        return self.max_abs() <= tol

    def allclose(self, other, tol: float = ZERO_TOL) -> bool:
        return (self - other).is_zero(tol)

    def __eq__(self, other):
        if isinstance(other, _OrderedPoly):
            if type(other) is not type(self):
                return False
        else:
            try:
                other = self._coerce_other(other)
            except TypeError:
                return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    # -- output -------------------------------------------------------------
    def _monomial(self, k, l) -> str:
        parts = []
        if k:
            parts.append(self._left if k == 1 else f"{self._left}^{k}")
        if l:
            parts.append(self._right if l == 1 else f"{self._right}^{l}")
        return " ".join(parts) if parts else "1"

    def pretty(self, digits: int = 12) -> str:
        if not self._terms:
            return "0"
        out = []
        for (k, l), c in self.items():
            if isinstance(c, GaussianRational):
                cs = str(c)
            else:
                cs = _fmt_complex(c, digits)
            out.append(f"{cs} · {self._monomial(k, l)}")
        return " + ".join(out)

    def __str__(self):
        return self.pretty()

    def __repr__(self):
        return f"{type(self).__name__}({self.pretty()})"

    def rows(self) -> list:
        """``(k, l, re, im)`` rows in the canonical term order."""
        return [(k, l, float(complex(c).real), float(complex(c).imag)) for (k, l), c in self.items()]


def _fmt_complex(c, digits) -> str:
    c = complex(c)
    if c.imag == 0:
        return f"{c.real:.{digits}g}"
    if c.real == 0:
        return f"{c.imag:.{digits}g}i"
    return f"({c.real:.{digits}g}{c.imag:+.{digits}g}i)"


class NormalPoly(_OrderedPoly):
    """Normal-ordered polynomial ``sum c_{k,l} a^dag^k a^l``."""

    _comm = 1
    _left = "ad"
    _right = "a"
    __slots__ = ()

    @classmethod
    def a(cls, max_degree: int = DEFAULT_MAX_DEGREE):
        return cls({(0, 1): 1}, max_degree)

    @classmethod
    def ad(cls, max_degree: int = DEFAULT_MAX_DEGREE):
        return cls({(1, 0): 1}, max_degree)

    def dag(self) -> "NormalPoly":
        return self._new({(l, k): c.conjugate() for (k, l), c in self._terms.items()})

    def is_hermitian(self, tol: float = ZERO_TOL) -> bool:
        return self.allclose(self.dag(), tol)


class QuadOrdered(_OrderedPoly):
    """Polynomial ``sum c_{m,n} X1^m X2^n`` with ``[X2, X1] = -i/2``."""

    _comm = GaussianRational(0, Fraction(-1, 2))
    _left = "X1"
    _right = "X2"
    __slots__ = ()


def commutator(p: NormalPoly, q: NormalPoly) -> NormalPoly:
    return p * q - q * p


def quadratures(max_degree: int = DEFAULT_MAX_DEGREE) -> tuple:
    """``(X1, X2)`` with ``X1 = (a + a^dag)/2`` and ``X2 = (a - a^dag)/(2i)``."""
    a, ad = NormalPoly.a(max_degree), NormalPoly.ad(max_degree)
    half = Fraction(1, 2)
    return (a + ad) * half, (a - ad) * GaussianRational(0, -half)


def poly_of(x: NormalPoly, coeffs) -> NormalPoly:
    """Horner evaluation of ``sum coeffs[k] x^k``."""
    out = NormalPoly.zero(x.max_degree)
    for c in reversed(list(coeffs)):
        out = out * x + c
    return out


# -- expression trees ------------------------------------------------------

class Expr:
    """Unevaluated operator expression built from ``a``, ``a^dag`` and scalars."""

    def __add__(self, other):
        return Add(self, _as_expr(other))

    def __radd__(self, other):
        return Add(_as_expr(other), self)

    def __sub__(self, other):
        return Add(self, Mul(Scalar(-1), _as_expr(other)))

    def __rsub__(self, other):
        return Add(_as_expr(other), Mul(Scalar(-1), self))

    def __neg__(self):
        return Mul(Scalar(-1), self)

    def __mul__(self, other):
        return Mul(self, _as_expr(other))

    def __rmul__(self, other):
        return Mul(_as_expr(other), self)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        out: Expr = Scalar(1)
        for _ in range(n):
            out = Mul(out, self)
        return out

    def dag(self) -> "Expr":
        return Dag(self)


@dataclass(frozen=True, eq=False)
class Sym(Expr):
    name: str  # "a" or "ad"

    def __post_init__(self):
        if self.name not in ("a", "ad"):
            raise ValueError("symbol must be 'a' or 'ad'")


@dataclass(frozen=True, eq=False)
class Scalar(Expr):
    value: object


@dataclass(frozen=True, eq=False)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=False)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=False)
class Dag(Expr):
    arg: Expr


def _as_expr(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, NormalPoly):
        return from_normal(x)
    return Scalar(x)


A = Sym("a")
AD = Sym("ad")


def from_normal(p: NormalPoly) -> Expr:
    """Expression tree for an already normal-ordered polynomial."""
    out: Expr = Scalar(0)
    for (k, l), c in p.items():
        out = Add(out, Mul(Scalar(c), Mul(AD ** k, A ** l)))
    return out


# words are tuples of letters: 0 for a, 1 for a^dag

def _words(e: Expr, max_degree: int) -> dict:
    if isinstance(e, Sym):
        return {(0,) if e.name == "a" else (1,): coerce(1)}
    if isinstance(e, Scalar):
        c = coerce(e.value)
        return {(): c} if c else {}
    if isinstance(e, Add):
        out = dict(_words(e.left, max_degree))
        for w, c in _words(e.right, max_degree).items():
            out[w] = out[w] + c if w in out else c
        return out
    if isinstance(e, Mul):
        left, right = _words(e.left, max_degree), _words(e.right, max_degree)
        out = {}
        for w1, c1 in left.items():
            for w2, c2 in right.items():
                w = w1 + w2
                if len(w) > max_degree:
                    raise DegreeOverflow(f"word length {len(w)} exceeds maximum {max_degree}")
                c = c1 * c2
                out[w] = out[w] + c if w in out else c
        return out
    if isinstance(e, Dag):
        return {tuple(1 - x for x in reversed(w)): c.conjugate()
                for w, c in _words(e.arg, max_degree).items()}
    raise TypeError(f"not an operator expression: {e!r}")


@lru_cache(maxsize=None)
def _word_normal(word: tuple) -> tuple:
    """Normal-ordered expansion of one word as ``(((k, l), n), ...)``."""
    for i in range(len(word) - 1):
        if word[i] == 0 and word[i + 1] == 1:
            swapped = word[:i] + (1, 0) + word[i + 2:]
            contracted = word[:i] + word[i + 2:]
            out = dict(_word_normal(swapped))
            for key, n in _word_normal(contracted):
                out[key] = out.get(key, 0) + n
            return tuple(sorted((k, n) for k, n in out.items() if n))
    k = sum(word)
    return (((k, len(word) - k), 1),)


def normal_form(expr, max_degree: int = DEFAULT_MAX_DEGREE) -> NormalPoly:
    """Normal-ordered form of an expression tree by single-swap rewriting."""
    if isinstance(expr, NormalPoly):
        return expr
    out = {}
    for w, c in _words(_as_expr(expr), max_degree).items():
        for key, n in _word_normal(w):
            term = c * n
            out[key] = out[key] + term if key in out else term
    return NormalPoly(out, max_degree)


# -- the transformation ----------------------------------------------------

def nonlinear_operator(F: NonlinearSpec, max_degree: int = DEFAULT_MAX_DEGREE) -> NormalPoly:
    """Normal form of ``F(X1)`` (convention handled by ``F``)."""
    x1, _ = quadratures(max_degree)
    return poly_of(x1, F.operator_coefficients())


def expand_b(spec: TransformSpec, F: NonlinearSpec, max_degree: int = DEFAULT_MAX_DEGREE) -> NormalPoly:
    """Normal form of ``mu a + nu a^dag + gamma F(X1)``."""
    a, ad = NormalPoly.a(max_degree), NormalPoly.ad(max_degree)
    out = spec.mu * a + spec.nu * ad
    if spec.gamma:
        out = out + spec.gamma * nonlinear_operator(F, max_degree)
    return out


def commutator_check(spec: TransformSpec, F: NonlinearSpec,
                     max_degree: int = DEFAULT_MAX_DEGREE) -> NormalPoly:
    """``[b, b^dag] - 1`` in normal order; zero iff the spec is canonical."""
    b = expand_b(spec, F, max_degree)
    return commutator(b, b.dag()) - 1


def expand_hamiltonian(spec: TransformSpec, F: NonlinearSpec,
                       max_degree: int = DEFAULT_MAX_DEGREE) -> NormalPoly:
    """Normal form of ``b^dag b`` in the original mode operators."""
    b = expand_b(spec, F, max_degree)
    return b.dag() * b


# -- quadrature representation ---------------------------------------------

@dataclass(frozen=True)
class CompletedSquare:
    """``H = a X1^2 + (b X1 + c X2 + g F(X1))^2 + const``."""

    a: float
    b: float
    c: float
    g: float
    const: float


class QuadPoly:
    """Operator in the Hermitian basis ``X1^m``, ``X2^2``, ``{X1^m, X2}``.

    Keys are ``("x1", m)``, ``("x2sq", 0)`` and ``("anti", m)``.  For
    ``m = 0`` the anticommutator key stands for ``{1, X2} = 2 X2``.
    """

    def __init__(self, terms: dict):
        self.terms = {k: complex(v) for k, v in terms.items() if v != 0}

    def coeff(self, kind: str, m: int = 0) -> complex:
        return self.terms.get((kind, m), 0j)

    def x1_coeffs(self) -> dict:
        return {m: c for (kind, m), c in self.terms.items() if kind == "x1"}

    def anti_coeffs(self) -> dict:
        return {m: c for (kind, m), c in self.terms.items() if kind == "anti"}

    def max_imag(self) -> float:
        return max((abs(c.imag) for c in self.terms.values()), default=0.0)

    def is_hermitian(self, tol: float = ZERO_TOL) -> bool:
        scale = max(1.0, max((abs(c) for c in self.terms.values()), default=0.0))
        return self.max_imag() <= tol * scale

    def __sub__(self, other: "QuadPoly") -> "QuadPoly":
        keys = set(self.terms) | set(other.terms)
        return QuadPoly({k: self.terms.get(k, 0j) - other.terms.get(k, 0j) for k in keys})

    def without_constant(self) -> "QuadPoly":
        return QuadPoly({k: v for k, v in self.terms.items() if k != ("x1", 0)})

    def max_abs(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def rescaled(self, scale: float) -> "QuadPoly":
        """Coefficients in the variables ``x = scale X1``, ``p = scale X2``."""
        out = {}
        for (kind, m), c in self.terms.items():
            power = {"x1": m, "x2sq": 2, "anti": m + 1}[kind]
            out[(kind, m)] = c / scale ** power
        return QuadPoly(out)

    def pretty(self, digits: int = 12) -> str:
        names = {"x1": lambda m: "1" if m == 0 else ("X1" if m == 1 else f"X1^{m}"),
                 "x2sq": lambda m: "X2^2",
                 "anti": lambda m: "{1,X2}" if m == 0 else ("{X1,X2}" if m == 1 else f"{{X1^{m},X2}}")}
        parts = [f"{_fmt_complex(c if abs(c.imag) > 0 else c.real, digits)} · {names[k](m)}"
                 for (k, m), c in sorted(self.terms.items(), key=lambda kv: (kv[0][0], -kv[0][1]))]
        return " + ".join(parts) if parts else "0"

    def rows(self) -> list:
        """``(kind, m, re, im)`` rows in a fixed order."""
        return [(k, m, c.real, c.imag) for (k, m), c in sorted(self.terms.items())]

    def __repr__(self):
        return f"QuadPoly({self.pretty()})"

    def completed_square(self, F: NonlinearSpec, tol: float = 1e-10) -> CompletedSquare:
        """Fit the ``a X1^2 + (b X1 + c X2 + g F)^2 + const`` template.

        Raises :class:`NotReducible` naming the first obstruction found.
        """
        f = [complex(c).real for c in F.operator_coefficients()]
        c2 = self.coeff("x2sq").real
        if c2 <= 0:
            raise NotReducible(f"X2^2 coefficient {c2} is not positive")
        c = math.sqrt(c2)
        anti = {m: v.real for m, v in self.anti_coeffs().items()}
        scale = max(1.0, self.max_abs())
        cand = [m for m in range(len(f)) if m != 1 and abs(f[m]) > 0]
        if cand:
            m_ref = max(cand)
            g = anti.get(m_ref, 0.0) / (c * f[m_ref])
        else:
            g = 0.0
        f1 = f[1] if len(f) > 1 else 0.0
        b = (anti.get(1, 0.0) - c * g * f1) / c
        for m in set(anti) | set(range(len(f))):
            want = c * ((b if m == 1 else 0.0) + g * (f[m] if m < len(f) else 0.0))
            if abs(anti.get(m, 0.0) - want) > tol * scale:
                raise NotReducible(
                    f"{{X1^{m}, X2}} coefficient {anti.get(m, 0.0)} is not c*(b delta_m1 + g f_m) = {want}")
        # remaining X1-polynomial must be a X1^2 + const
        shift = [0.0] * max(len(f), 2)
        shift[1] += b
        for m, fm in enumerate(f):
            shift[m] += g * fm
        sq = [0.0] * (2 * len(shift) - 1)
        for i, si in enumerate(shift):
            for j, sj in enumerate(shift):
                sq[i + j] += si * sj
        rest = {m: v.real for m, v in self.x1_coeffs().items()}
        for m, v in enumerate(sq):
            rest[m] = rest.get(m, 0.0) - v
        for m, v in rest.items():
            if m not in (0, 2) and abs(v) > tol * scale:
                raise NotReducible(f"residual X1^{m} coefficient {v} outside the template")
        return CompletedSquare(rest.get(2, 0.0), b, c, g, rest.get(0, 0.0))


def _to_quadratures(h: NormalPoly) -> QuadOrdered:
    """Substitute ``a = X1 + i X2`` and ``a^dag = X1 - i X2``."""
    md = h.max_degree
    x1 = QuadOrdered({(1, 0): 1}, md)
    ix2 = QuadOrdered({(0, 1): GaussianRational(0, 1)}, md)
    a, ad = x1 + ix2, x1 - ix2
    out = QuadOrdered.zero(md)
    for (k, l), c in h.items():
        out = out + c * (ad ** k) * (a ** l)
    return out


def quadrature_form(spec: TransformSpec, F: NonlinearSpec,
                    max_degree: int = DEFAULT_MAX_DEGREE, tol: float = 1e-10) -> QuadPoly:
    """``b^dag b`` in the Hermitian quadrature basis."""
    h = expand_hamiltonian(spec, F, max_degree)
    ordered = _to_quadratures(h)
    scale = max(1.0, ordered.max_abs())
    out = {}

    def put(key, v):
        out[key] = out.get(key, 0) + complex(v)

    for (m, n), c in ordered.items():
        if n == 0:
            put(("x1", m), c)
        elif n == 1:
            # X1^m X2 = {X1^m, X2}/2 + (i m / 4) X1^(m-1)
            put(("anti", m), complex(c) / 2)
            if m:
                put(("x1", m - 1), complex(c) * 1j * m / 4)
        elif n == 2 and m == 0:
            put(("x2sq", 0), c)
        elif abs(complex(c)) > tol * scale:
            raise NotReducible(f"term X1^{m} X2^{n} has no place in the Hermitian basis")
    q = QuadPoly({k: v for k, v in out.items() if abs(v) > ZERO_TOL * scale})
    if not q.is_hermitian(tol):
        raise NotReducible(f"non-Hermitian residue {q.max_imag():.3e} in quadrature form")
    return q
