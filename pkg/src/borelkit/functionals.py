"""Point-supported differential functionals T(f) = sum_i (Q_i(d) f)(w_i).

Sign convention: a term (Q, w) differentiates and then evaluates, with no
distributional (-1)^|alpha| factor. Under this convention the Fourier-Borel
transform of (Q, w) is Q(z) exp(<z, w>).
"""

from __future__ import annotations

import cmath
from typing import Iterable, Sequence

from .expcalc import ExpPoly, Point, apply_dp, apply_operator, exact_point
from .gaussian import ZERO
from .polycore import Polynomial, derivative, evaluate, monomials_up_to, multifactorial
from .textformat import format_point


def _point_key(w: Point):
    return tuple((c.re, c.im) for c in w)


class ExpFunctional:
    """Canonical finite sum of terms (Q, w) acting by f -> (Q(d) f)(w)."""

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
        raise AttributeError("ExpFunctional is immutable")

    @classmethod
    def delta(cls, w: Sequence) -> "ExpFunctional":
        """Point evaluation f -> f(w)."""
        w = exact_point(w)
        return cls(len(w), [(Polynomial.one(len(w)), w)])

    @classmethod
    def derivative_at(cls, alpha: Sequence[int], w: Sequence | None = None) -> "ExpFunctional":
        """f -> (d^alpha f)(w), at the origin unless w is given."""
        n = len(alpha)
        w = exact_point(w if w is not None else (0,) * n)
        return cls(n, [(Polynomial.monomial(alpha), w)])

    @classmethod
    def parse(cls, text: str, nvars: int | None = None) -> "ExpFunctional":
        from .textformat import parse_functional
        return parse_functional(text, nvars)

    def terms(self) -> list[tuple[Polynomial, Point]]:
        return [(self._terms[w], w) for w in sorted(self._terms, key=_point_key)]

    def support(self) -> list[Point]:
        return sorted(self._terms, key=_point_key)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExpFunctional):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def __add__(self, other: "ExpFunctional") -> "ExpFunctional":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        return ExpFunctional(self.nvars, [(q, w) for w, q in self._terms.items()]
                             + [(q, w) for w, q in other._terms.items()])

    def __neg__(self) -> "ExpFunctional":
        return ExpFunctional(self.nvars, [(-q, w) for w, q in self._terms.items()])

    def __sub__(self, other: "ExpFunctional") -> "ExpFunctional":
        return self + (-other)

    def scale(self, c) -> "ExpFunctional":
        return ExpFunctional(self.nvars, [(q.scale(c), w) for w, q in self._terms.items()])

    def __call__(self, f):
        return apply(self, f)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"[{q}] @ ({format_point(w)})" for q, w in self.terms())

    def __repr__(self) -> str:
        return f"ExpFunctional.parse({str(self)!r}, nvars={self.nvars})"


def apply(T: ExpFunctional, f):
    """The pairing <T, f>.

    Exact for a polynomial f. For an ExpPoly the result is exact when every
    factor exp(<w_i, u_j>) is exp(0); otherwise it is a complex float.
    """
    if f.nvars != T.nvars:
        raise ValueError("variable count mismatch")
    if isinstance(f, Polynomial):
        total = ZERO
        for w, q in T._terms.items():
            total = total + evaluate(apply_operator(q, f), w)
        return total
    if isinstance(f, ExpPoly):
        exact = ZERO
        inexact = 0j
        transcendental = False
        for w, q in T._terms.items():
            for gq, u in apply_dp(q, f).terms():
                value = evaluate(gq, w)
                pairing = sum((wj * uj for wj, uj in zip(w, u)), ZERO)
                if pairing:
                    transcendental = True
                    inexact += complex(value) * cmath.exp(complex(pairing))
                else:
                    exact = exact + value
        return complex(exact) + inexact if transcendental else exact
    raise TypeError(f"cannot apply a functional to {type(f).__name__}")


def multiply(g: Polynomial, T: ExpFunctional) -> ExpFunctional:
    """The functional gT: f -> T(g f), in closed form by the Leibniz rule.

    At a support point w with coefficient Q the new coefficient is
    sum_alpha (d^alpha g)(w) / alpha! * d^alpha Q.
    """
    if g.nvars != T.nvars:
        raise ValueError("variable count mismatch")
    out = []
    for w, q in T._terms.items():
        r = Polynomial.zero(T.nvars)
        for alpha in monomials_up_to(T.nvars, min(g.degree(), q.degree())):
            dq = derivative(q, alpha)
            if dq.is_zero:
                continue
            weight = evaluate(derivative(g, alpha), w)
            if weight:
                r = r + dq.scale(weight / multifactorial(alpha))
        out.append((r, w))
    return ExpFunctional(T.nvars, out)


def fourier_borel(T: ExpFunctional) -> ExpPoly:
    """F(T)(z) = <T, exp(<z, .>)>; the term (Q, w) maps to Q(z) exp(<z, w>)."""
    return ExpPoly(T.nvars, [(q, w) for w, q in T._terms.items()])


def diagram_check(p: Polynomial, T: ExpFunctional) -> ExpPoly:
    """F(pT) - dp F(T); identically zero when the square commutes."""
    return fourier_borel(multiply(p, T)) - apply_dp(p, fourier_borel(T))


def annihilates_truncated_ideal(T: ExpFunctional, p: Polynomial, D: int) -> bool:
    """True iff T(p*m) = 0 for every monomial m with deg(p*m) <= D."""
    return ideal_witness(T, p, D) is None


def ideal_witness(T: ExpFunctional, p: Polynomial, D: int):
    """First monomial m (graded-lex) with T(p*m) != 0, or None."""
    m = p.degree()
    if D < m:
        raise ValueError(f"degree bound {D} is below deg p = {m}")
    for alpha in monomials_up_to(p.nvars, D - m):
        if apply(T, p.shift_monomial(alpha)):
            return alpha
    return None

