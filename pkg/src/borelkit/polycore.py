"""Exact multivariate polynomials over Q(i).

Variables are indexed from 0 in the Python API and printed as ``z1 .. zn``.
Monomials are exponent tuples; the global monomial order is graded
lexicographic (total degree first, then lexicographic with z1 highest).
"""

from __future__ import annotations

import itertools
from math import comb, factorial
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .gaussian import ONE, ZERO, GaussianRational, format_gaussian

Monomial = tuple


def grlex_key(alpha: Sequence[int]):
    return (sum(alpha), tuple(alpha))


def num_monomials(nvars: int, degree: int) -> int:
    """dim P_{<=degree} in ``nvars`` variables (0 for negative degree)."""
    if degree < 0:
        return 0
    return comb(nvars + degree, nvars)


def monomials_up_to(nvars: int, degree: int) -> list[Monomial]:
    """All exponent vectors of total degree <= ``degree``, grlex ascending."""
    out = []
    for d in range(degree + 1):
        out.extend(_monomials_of_degree(nvars, d))
    return sorted(out, key=grlex_key)


def _monomials_of_degree(nvars: int, d: int):
    if nvars == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _monomials_of_degree(nvars - 1, d - first):
            yield (first,) + rest


def multifactorial(alpha: Sequence[int]) -> int:
    out = 1
    for a in alpha:
        out *= factorial(a)
    return out


def _is_exact(x) -> bool:
    return isinstance(x, (GaussianRational, int)) or type(x).__name__ in ("Fraction", "mpq", "mpz")


class Polynomial:
    """Immutable polynomial in ``nvars`` variables with Gaussian-rational coefficients.

    Stored coefficients are never zero, so equality of term maps is equality
    of polynomials.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Mapping] = None):
        if nvars < 1:
            raise ValueError("nvars must be a positive integer")
        clean = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != nvars or any(a < 0 for a in alpha):
                raise ValueError(f"bad exponent vector {alpha} for {nvars} variables")
            c = GaussianRational.coerce(c)
            if alpha in clean:
                c = clean[alpha] + c
            if c:
                clean[alpha] = c
            else:
                clean.pop(alpha, None)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Polynomial":
        # caller guarantees canonical form
        obj = object.__new__(cls)
        object.__setattr__(obj, "nvars", nvars)
        object.__setattr__(obj, "_terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, c, nvars: int) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {(0,) * nvars: ONE})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "Polynomial":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        alpha = [0] * nvars
        alpha[i] = 1
        return cls._raw(nvars, {tuple(alpha): ONE})

    @classmethod
    def monomial(cls, alpha: Sequence[int], c=1) -> "Polynomial":
        return cls(len(alpha), {tuple(alpha): c})

    @classmethod
    def variables(cls, nvars: int) -> list["Polynomial"]:
        return [cls.variable(i, nvars) for i in range(nvars)]

    @classmethod
    def parse(cls, text: str, nvars: Optional[int] = None) -> "Polynomial":
        from .textformat import parse_polynomial
        return parse_polynomial(text, nvars)

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, GaussianRational]:
        return MappingProxyType(self._terms)

    def items(self) -> list[tuple[Monomial, GaussianRational]]:
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def coefficient(self, alpha: Sequence[int]) -> GaussianRational:
        return self._terms.get(tuple(alpha), ZERO)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0,) * self.nvars in self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(a) for a in self._terms)

    def degree_in(self, i: int) -> int:
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self.nvars} variables")
        if not self._terms:
            return -1
        return max(a[i] for a in self._terms)

    def used_variables(self) -> set[int]:
        return {i for a in self._terms for i, e in enumerate(a) if e}

    def is_homogeneous(self) -> bool:
        return len({sum(a) for a in self._terms}) <= 1

    def leading_term(self) -> tuple[Monomial, GaussianRational]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        alpha = max(self._terms, key=grlex_key)
        return alpha, self._terms[alpha]

    def constant_value(self) -> GaussianRational:
        if not self.is_constant:
            raise ValueError("polynomial is not constant")
        return self._terms.get((0,) * self.nvars, ZERO)

    def is_real(self) -> bool:
        return all(c.is_real for c in self._terms.values())

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(other, self.nvars)

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            try:
                other = self._lift(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for alpha, c in other._terms.items():
            s = out.get(alpha)
            s = c if s is None else s + c
            if s:
                out[alpha] = s
            else:
                del out[alpha]
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            try:
                other = self._lift(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = GaussianRational.coerce(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {a: v * c for a, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        out: dict = {}
        get = out.get
        n = self.nvars
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                key = tuple(a[j] + b[j] for j in range(n))
                s = get(key)
                out[key] = ca * cb if s is None else s + ca * cb
        return Polynomial._raw(n, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift_monomial(self, alpha: Sequence[int]) -> "Polynomial":
        """Multiply by the monomial z^alpha."""
        return Polynomial._raw(
            self.nvars,
            {tuple(a + b for a, b in zip(k, alpha)): c for k, c in self._terms.items()})

    def monic(self) -> "Polynomial":
        """Scale so the graded-lex leading coefficient is 1 (zero stays zero)."""
        if not self._terms:
            return self
        _, lc = self.leading_term()
        if lc == ONE:
            return self
        inv = lc.inverse()
        return Polynomial._raw(self.nvars, {a: c * inv for a, c in self._terms.items()})

    # -- equality ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, GaussianRational)):
            return self._terms == Polynomial.constant(other, self.nvars)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.nvars, frozenset(self._terms.items()))))
        return self._hash

    # -- evaluation -------------------------------------------------------
    def __call__(self, point):
        return evaluate(self, point)

    def eval_many(self, points) -> np.ndarray:
        """Float evaluation at each row of an (N, nvars) complex array."""
        pts = np.asarray(points, dtype=complex)
        if pts.ndim == 1:
            pts = pts.reshape(1, -1)
        if pts.shape[1] != self.nvars:
            raise ValueError(f"expected points with {self.nvars} coordinates")
        out = np.zeros(pts.shape[0], dtype=complex)
        if not self._terms:
            return out
        maxdeg = [max(a[j] for a in self._terms) for j in range(self.nvars)]
        powers = []
        for j in range(self.nvars):
            table = np.ones((maxdeg[j] + 1, pts.shape[0]), dtype=complex)
            for k in range(1, maxdeg[j] + 1):
                table[k] = table[k - 1] * pts[:, j]
            powers.append(table)
        for alpha, c in self._terms.items():
            term = np.full(pts.shape[0], complex(c), dtype=complex)
            for j, e in enumerate(alpha):
                if e:
                    term = term * powers[j][e]
            out += term
        return out

    def monomial_magnitudes(self, point) -> np.ndarray:
        """|c_alpha z^alpha| for every term at a float point."""
        z = np.asarray(point, dtype=complex)
        return np.array([abs(complex(c)) * abs(np.prod(z ** np.array(a))) for a, c in self._terms.items()])

    # -- formatting -------------------------------------------------------
    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial.parse({format_polynomial(self)!r}, nvars={self.nvars})"


def format_monomial(alpha: Sequence[int]) -> str:
    parts = []
    for j, e in enumerate(alpha):
        if e == 1:
            parts.append(f"z{j + 1}")
        elif e > 1:
            parts.append(f"z{j + 1}^{e}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    """Round-trippable text: ``(1/1)*z1^2 + (1/1)*z2^2 + (-1/1)``."""
    if p.is_zero:
        return "0"
    out = []
    for alpha, c in p.items():
        lit = format_gaussian(c)
        if c.is_real:
            lit = f"({lit})"
        mono = format_monomial(alpha)
        out.append(f"{lit}*{mono}" if mono else lit)
    return " + ".join(out)


# -- module-level operations ---------------------------------------------

def add(a: Polynomial, b: Polynomial) -> Polynomial:
    a._check(b)
    return a + b


def mul(a: Polynomial, b: Polynomial) -> Polynomial:
    a._check(b)
    return a * b


def evaluate(p: Polynomial, point):
    """Evaluate at a point; exact when every coordinate is exact, complex otherwise."""
    point = list(point)
    if len(point) != p.nvars:
        raise ValueError(f"expected {p.nvars} coordinates, got {len(point)}")
    if all(_is_exact(x) for x in point):
        z = [GaussianRational.coerce(x) for x in point]
        total = ZERO
    else:
        z = [complex(x) for x in point]
        total = 0j
    if not p._terms:
        return total
    # nested Horner over the last variable is overkill at desk scale; power tables suffice
    tables = []
    for j in range(p.nvars):
        m = max(a[j] for a in p._terms)
        t = [ONE if isinstance(total, GaussianRational) else 1 + 0j]
        for _ in range(m):
            t.append(t[-1] * z[j])
        tables.append(t)
    for alpha, c in p._terms.items():
        term = c if isinstance(total, GaussianRational) else complex(c)
        for j, e in enumerate(alpha):
            if e:
                term = term * tables[j][e]
        total = total + term
    return total


def partial(p: Polynomial, i: int) -> Polynomial:
    """Formal partial derivative with respect to variable ``i`` (0-based)."""
    if not 0 <= i < p.nvars:
        raise IndexError(f"variable index {i} out of range for {p.nvars} variables")
    out = {}
    for alpha, c in p._terms.items():
        e = alpha[i]
        if e:
            beta = alpha[:i] + (e - 1,) + alpha[i + 1:]
            out[beta] = c * e
    return Polynomial._raw(p.nvars, out)


def derivative(p: Polynomial, alpha: Sequence[int]) -> Polynomial:
    """The mixed partial d^alpha p."""
    out = {}
    for beta, c in p._terms.items():
        if all(b >= a for a, b in zip(alpha, beta)):
            k = 1
            for a, b in zip(alpha, beta):
                for t in range(b - a + 1, b + 1):
                    k *= t
            out[tuple(b - a for a, b in zip(alpha, beta))] = c * k
    return Polynomial._raw(p.nvars, out)


def taylor_shift(p: Polynomial, w: Sequence) -> Polynomial:
    """Exact q with q(z) = p(z + w)."""
    w = [GaussianRational.coerce(x) for x in w]
    if len(w) != p.nvars:
        raise ValueError(f"expected {p.nvars} coordinates, got {len(w)}")
    if not any(w):
        return p
    n = p.nvars
    maxdeg = [max((a[j] for a in p._terms), default=0) for j in range(n)]
    wpow = []
    for j in range(n):
        t = [ONE]
        for _ in range(maxdeg[j]):
            t.append(t[-1] * w[j])
        wpow.append(t)
    out: dict = {}
    for alpha, c in p._terms.items():
        # each factor (z_j + w_j)^{a_j} = sum_k C(a_j, k) w_j^{a_j-k} z_j^k
        choices = []
        for j, a in enumerate(alpha):
            if w[j]:
                choices.append([(k, wpow[j][a - k] * comb(a, k)) for k in range(a + 1)])
            else:
                choices.append([(a, ONE)])
        for combo in itertools.product(*choices):
            key = tuple(k for k, _ in combo)
            v = c
            for _, f in combo:
                v = v * f
            s = out.get(key)
            out[key] = v if s is None else s + v
    return Polynomial._raw(n, {k: v for k, v in out.items() if v})


def leading_coefficient(p: Polynomial, i: int) -> tuple[Polynomial, int]:
    """Coefficient of the highest power of z_i, and that power d.

    The coefficient is returned as a polynomial in the same ring that does
    not involve z_i.
    """
    if p.is_zero:
        raise ValueError("zero polynomial has no leading coefficient")
    d = p.degree_in(i)
    out = {}
    for alpha, c in p._terms.items():
        if alpha[i] == d:
            out[alpha[:i] + (0,) + alpha[i + 1:]] = c
    return Polynomial._raw(p.nvars, out), d


def coefficients_in(p: Polynomial, i: int) -> dict[int, Polynomial]:
    """Split p = sum_k c_k z_i^k; keys are powers k with c_k != 0."""
    buckets: dict[int, dict] = {}
    for alpha, c in p._terms.items():
        buckets.setdefault(alpha[i], {})[alpha[:i] + (0,) + alpha[i + 1:]] = c
    return {k: Polynomial._raw(p.nvars, v) for k, v in buckets.items()}


# -- exact division -------------------------------------------------------

def _divide(f: Polynomial, p: Polynomial) -> Optional[Polynomial]:
    lt, lc = p.leading_term()
    inv = lc.inverse()
    n = f.nvars
    pterms = list(p._terms.items())
    r = dict(f._terms)
    q = {}
    while r:
        alpha = max(r, key=grlex_key)
        beta = tuple(a - b for a, b in zip(alpha, lt))
        if any(b < 0 for b in beta):
            return None
        c = r[alpha] * inv
        q[beta] = c
        for gamma, d in pterms:
            key = tuple(gamma[j] + beta[j] for j in range(n))
            v = r.get(key, ZERO) - c * d
            if v:
                r[key] = v
            else:
                r.pop(key, None)
    return Polynomial._raw(n, q)


def divide_exact(f: Polynomial, p: Polynomial) -> Optional[Polynomial]:
    """Return g with f = p*g, or None when p does not divide f."""
    f._check(p)
    if p.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero:
        return Polynomial.zero(f.nvars)
    g = _divide(f, p)
    if g is None:
        return None
    if g * p != f:  # pragma: no cover - leading-term division is exact
        raise ArithmeticError("exact division failed verification")
    return g


def divides(p: Polynomial, f: Polynomial) -> bool:
    return divide_exact(f, p) is not None


def associated(a: Polynomial, b: Polynomial) -> bool:
    """True when a = c*b for a nonzero scalar c."""
    return a.monic() == b.monic()


# -- gcd ------------------------------------------------------------------

def _content(f: Polynomial, k: int) -> Polynomial:
    coeffs = sorted(coefficients_in(f, k).values(), key=lambda c: len(c._terms))
    g = coeffs[0].monic()
    for c in coeffs[1:]:
        if g.is_constant:
            break
        g = _gcd(g, c)
    return g.monic()


def _primpart(f: Polynomial, k: int) -> Polynomial:
    c = _content(f, k)
    if c.is_constant:
        return f.monic()
    return _divide(f, c).monic()


def _prem(a: Polynomial, b: Polynomial, k: int) -> Polynomial:
    db = b.degree_in(k)
    lcb, _ = leading_coefficient(b, k)
    field_lc = lcb.is_constant
    inv = lcb.constant_value().inverse() if field_lc else None
    r = a
    while not r.is_zero:
        dr = r.degree_in(k)
        if dr < db:
            break
        lcr, _ = leading_coefficient(r, k)
        shift = [0] * r.nvars
        shift[k] = dr - db
        if field_lc:
            r = r - (lcr * inv).shift_monomial(shift) * b
        else:
            r = lcb * r - lcr.shift_monomial(shift) * b
    return r


def _gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    # both nonzero; result defined up to a unit
    if a.is_constant or b.is_constant:
        return Polynomial.one(a.nvars)
    va, vb = a.used_variables(), b.used_variables()
    k = max(va | vb)
    if k not in va:
        return _gcd(a, _content(b, k))
    if k not in vb:
        return _gcd(_content(a, k), b)
    ca, cb = _content(a, k), _content(b, k)
    c = _gcd(ca, cb)
    pa = a.monic() if ca.is_constant else _divide(a, ca).monic()
    pb = b.monic() if cb.is_constant else _divide(b, cb).monic()
    if pa.degree_in(k) < pb.degree_in(k):
        pa, pb = pb, pa
    while not pb.is_zero:
        r = _prem(pa, pb, k)
        pa, pb = pb, (_primpart(r, k) if not r.is_zero else r)
    return (c * pa).monic()


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Greatest common divisor, normalized to graded-lex leading coefficient 1."""
    a._check(b)
    if a.is_zero and b.is_zero:
        raise ValueError("gcd of two zero polynomials is undefined")
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    return _gcd(a, b)


def gcd_many(polys: Iterable[Polynomial]) -> Polynomial:
    polys = [p for p in polys]
    nonzero = [p for p in polys if not p.is_zero]
    if not nonzero:
        raise ValueError("gcd of zero polynomials is undefined")
    g = nonzero[0].monic()
    for p in nonzero[1:]:
        if g.is_constant:
            return Polynomial.one(g.nvars)
        g = gcd(g, p)
    return g
