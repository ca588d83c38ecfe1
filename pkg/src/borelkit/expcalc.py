"""Exponential-polynomials sum_i Q_i(z) exp(<w_i, z>) and the operator dp acting on them.

The pairing <z, w> = z_1 w_1 + ... + z_n w_n is bilinear (no conjugation).
Frequencies are exact Gaussian-rational points.
"""

from __future__ import annotations

import cmath
from typing import Iterable, Sequence

import numpy as np

from .gaussian import ONE, ZERO, GaussianRational
from .polycore import Polynomial, derivative, monomials_up_to, multifactorial, taylor_shift
from .textformat import format_point

D_CAP = 24

Point = tuple


def exact_point(w: Sequence) -> Point:
    return tuple(GaussianRational.coerce(x) for x in w)


def _point_key(w: Point):
    return tuple((c.re, c.im) for c in w)


class ExpPoly:
    """Canonical finite sum of Q(z) * exp(<w, z>) with distinct frequencies w."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Iterable[tuple[Polynomial, Sequence]] = ()):
        merged: dict = {}
        for q, w in terms:
            w = exact_point(w)
            if len(w) != nvars or q.nvars != nvars:
                raise ValueError(f"term does not live in {nvars} variables")
            merged[w] = merged[w] + q if w in merged else q
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", {w: q for w, q in merged.items() if not q.is_zero})

    def __setattr__(self, name, value):
        raise AttributeError("ExpPoly is immutable")

    @classmethod
    def exponential(cls, w: Sequence, q: Polynomial | None = None) -> "ExpPoly":
        """q(z) * exp(<w, z>), with q = 1 by default."""
        w = exact_point(w)
        return cls(len(w), [(q if q is not None else Polynomial.one(len(w)), w)])

    @classmethod
    def from_polynomial(cls, q: Polynomial) -> "ExpPoly":
        return cls(q.nvars, [(q, (ZERO,) * q.nvars)])

    @classmethod
    def parse(cls, text: str, nvars: int | None = None) -> "ExpPoly":
        from .textformat import parse_exppoly
        return parse_exppoly(text, nvars)

    def terms(self) -> list[tuple[Polynomial, Point]]:
        """(Q, w) pairs sorted by frequency."""
        return [(self._terms[w], w) for w in sorted(self._terms, key=_point_key)]

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def frequencies(self) -> list[Point]:
        return sorted(self._terms, key=_point_key)

    def coefficient(self, w: Sequence) -> Polynomial:
        return self._terms.get(exact_point(w), Polynomial.zero(self.nvars))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def __add__(self, other: "ExpPoly") -> "ExpPoly":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        return ExpPoly(self.nvars, [(q, w) for w, q in self._terms.items()]
                       + [(q, w) for w, q in other._terms.items()])

    def __neg__(self) -> "ExpPoly":
        return ExpPoly(self.nvars, [(-q, w) for w, q in self._terms.items()])

    def __sub__(self, other: "ExpPoly") -> "ExpPoly":
        return self + (-other)

    def scale(self, c) -> "ExpPoly":
        return ExpPoly(self.nvars, [(q.scale(c), w) for w, q in self._terms.items()])

    def __call__(self, z):
        return evaluate(self, z)

    def eval_many(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=complex)
        if pts.ndim == 1:
            pts = pts.reshape(1, -1)
        out = np.zeros(pts.shape[0], dtype=complex)
        for w, q in self._terms.items():
            wf = np.array([complex(c) for c in w])
            out += q.eval_many(pts) * np.exp(pts @ wf)
        return out

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"[{q}] * exp(<{format_point(w)}>)" for q, w in self.terms())

    def __repr__(self) -> str:
        return f"ExpPoly.parse({str(self)!r}, nvars={self.nvars})"


def evaluate(f: ExpPoly, z: Sequence) -> complex:
    """Float value of f at z."""
    z = [complex(x) for x in z]
    if len(z) != f.nvars:
        raise ValueError(f"expected {f.nvars} coordinates, got {len(z)}")
    total = 0j
    for w, q in f._terms.items():
        pairing = sum(zj * complex(wj) for zj, wj in zip(z, w))
        total += complex(q(z)) * cmath.exp(pairing)
    return total


def mul_poly(g: Polynomial, f: ExpPoly) -> ExpPoly:
    if g.nvars != f.nvars:
        raise ValueError("variable count mismatch")
    return ExpPoly(f.nvars, [(g * q, w) for w, q in f._terms.items()])


def apply_operator(op: Polynomial, q: Polynomial) -> Polynomial:
    """op(d) applied to the polynomial q: sum_beta op_beta * d^beta q."""
    if op.nvars != q.nvars:
        raise ValueError("variable count mismatch")
    deg = q.degree()
    total = Polynomial.zero(q.nvars)
    for beta, c in op.terms.items():
        if sum(beta) <= deg:
            total = total + derivative(q, beta).scale(c)
    return total


def apply_dp(p: Polynomial, f: ExpPoly) -> ExpPoly:
    """dp f via the shift rule dp(Q e^{<w,.>}) = (p(w + d) Q) e^{<w,.>}."""
    if p.nvars != f.nvars:
        raise ValueError("variable count mismatch")
    out = []
    for w, q in f._terms.items():
        shifted = taylor_shift(p, w)
        out.append((apply_operator(shifted, q), w))
    return ExpPoly(f.nvars, out)


def exp_taylor(w: Sequence, degree: int) -> Polynomial:
    """Taylor polynomial of exp(<w, z>) at 0 through total degree ``degree``."""
    w = exact_point(w)
    n = len(w)
    terms = {}
    for alpha in monomials_up_to(n, degree):
        c = ONE
        for wj, a in zip(w, alpha):
            if a:
                c = c * wj ** a
        if c:
            terms[alpha] = c / multifactorial(alpha)
    return Polynomial(n, terms)


def truncate(p: Polynomial, degree: int) -> Polynomial:
    """Drop all terms of total degree above ``degree``."""
    return Polynomial(p.nvars, {a: c for a, c in p.terms.items() if sum(a) <= degree})


def taylor_truncate(f: ExpPoly, degree: int, cap: int = D_CAP) -> Polynomial:
    """Exact Taylor polynomial of f at 0 through total degree ``degree``."""
    if degree < 0:
        raise ValueError("degree bound must be non-negative")
    if degree > cap:
        raise ValueError(f"degree bound {degree} exceeds the configured cap {cap}")
    total = Polynomial.zero(f.nvars)
    for w, q in f._terms.items():
        if not any(w):
            total = total + truncate(q, degree)
            continue
        # only exponential terms up to degree - ord(q) can contribute
        low = min(sum(a) for a in q.terms)
        series = exp_taylor(w, degree - low)
        total = total + truncate(q * series, degree)
    return total
