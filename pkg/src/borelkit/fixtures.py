"""Fixture polynomials and seeded random generators shared by suites, scripts and tests."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional

import numpy as np

from .expcalc import ExpPoly
from .functionals import ExpFunctional
from .gaussian import GaussianRational
from .polycore import Polynomial, associated, monomials_up_to

REDUCED = ("z1*z2", "z1^2+z2^2", "z1^2+z2^2+1", "z1^2+z2^2+z3^2", "z1+z2^3")
NON_REDUCED = ("z1^2", "z1^2*z2", "(z1+z2)^2*(z1-z2)")
# kernel-dimension grid: the dichotomy fixtures plus two more shapes
KERNEL_GRID = REDUCED + NON_REDUCED + ("z1*z2*z3-1", "z1^3-z2^2")
UNIVARIATE = ("z1", "z1^2", "z1^2-1", "z1^3-z1", "2*z1^2+i*z1+1", "z1^3+(1/2)")

# irreducible building blocks for constructed reducedness fixtures
IRREDUCIBLE = {
    1: ("z1", "z1-1", "z1+2", "z1+i"),
    2: ("z1^2+z2^3", "z1*z2-1", "z1^2+z2^2+1", "z1^3-z2^2"),
    3: ("z1^2+z2^2+z3^2-1", "z1*z2-z3", "z1*z2*z3-1", "z1^2+z2*z3"),
}


def poly(text: str, nvars: Optional[int] = None) -> Polynomial:
    return Polynomial.parse(text, nvars)


def nvars_of(text: str) -> int:
    return max(int(tok) for tok in re.findall(r"z(\d+)", text))


def rng(seed: int, *stream: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, *stream]))


def small_rational(g: np.random.Generator, num: int = 5, den: int = 3) -> Fraction:
    return Fraction(int(g.integers(-num, num + 1)), int(g.integers(1, den + 1)))


def small_gaussian(g: np.random.Generator, num: int = 5, den: int = 3, complex_prob: float = 0.5):
    real = small_rational(g, num, den)
    imag = small_rational(g, num, den) if g.random() < complex_prob else 0
    return GaussianRational(real, imag)


def random_polynomial(g: np.random.Generator, nvars: int, degree: int, max_terms: int = 6,
                      exact_degree: bool = True) -> Polynomial:
    """Sparse random polynomial; with ``exact_degree`` the total degree is exactly ``degree``."""
    mons = monomials_up_to(nvars, degree)
    while True:
        k = int(g.integers(1, max_terms + 1))
        picks = [mons[i] for i in g.choice(len(mons), size=min(k, len(mons)), replace=False)]
        if exact_degree:
            top = [a for a in mons if sum(a) == degree]
            picks.append(top[int(g.integers(len(top)))])
        terms = {}
        for a in picks:
            c = small_gaussian(g)
            while not c:
                c = small_gaussian(g)
            terms[a] = c
        p = Polynomial(nvars, terms)
        if not p.is_zero and (not exact_degree or p.degree() == degree):
            return p


def random_point(g: np.random.Generator, nvars: int):
    return tuple(small_gaussian(g, 3, 2) for _ in range(nvars))


def random_functional(g: np.random.Generator, nvars: int, max_points: int = 3,
                      max_degree: int = 4) -> ExpFunctional:
    k = int(g.integers(1, max_points + 1))
    terms = [(random_polynomial(g, nvars, int(g.integers(0, max_degree + 1)), max_terms=4),
              random_point(g, nvars)) for _ in range(k)]
    return ExpFunctional(nvars, terms)


def random_diagram_case(g: np.random.Generator):
    """(p, T) with n <= 3, deg p <= 5, <= 3 support points, deg Q <= 4."""
    n = int(g.integers(1, 4))
    p = random_polynomial(g, n, int(g.integers(1, 6)))
    return p, random_functional(g, n)


def rational_frequency(g: np.random.Generator, nvars: int, radius: float, den: int = 64):
    """A Gaussian-rational point of norm <= radius."""
    v = g.standard_normal(nvars) + 1j * g.standard_normal(nvars)
    v *= radius * g.random() / max(np.linalg.norm(v), 1e-300)
    # truncation toward zero never increases a component's modulus
    coords = [GaussianRational(Fraction(int(x.real * den), den), Fraction(int(x.imag * den), den))
              for x in v]
    return tuple(coords)


def random_exppoly(g: np.random.Generator, nvars: int, freq_radius: float, max_terms: int = 3,
                   max_degree: int = 2) -> ExpPoly:
    k = int(g.integers(1, max_terms + 1))
    terms = [(random_polynomial(g, nvars, int(g.integers(0, max_degree + 1)), max_terms=3),
              rational_frequency(g, nvars, freq_radius)) for _ in range(k)]
    f = ExpPoly(nvars, terms)
    return f if not f.is_zero else ExpPoly.from_polynomial(Polynomial.one(nvars))


def random_linear(g: np.random.Generator, nvars: int) -> Polynomial:
    while True:
        terms = {tuple(int(i == j) for i in range(nvars)): small_gaussian(g, 3, 2, 0.3)
                 for j in range(nvars)}
        terms[(0,) * nvars] = small_gaussian(g, 3, 2, 0.3)
        p = Polynomial(nvars, terms)
        if p.degree() == 1:
            return p


def distinct_factors(g: np.random.Generator, nvars: int, count: int, max_degree: int) -> list[Polynomial]:
    """Pairwise non-associated irreducible factors of total degree <= max_degree."""
    pool = [poly(t, nvars) for k in range(1, nvars + 1) for t in IRREDUCIBLE[k]]
    out: list[Polynomial] = []
    budget = max_degree
    for _ in range(50 * count):
        if len(out) == count:
            break
        f = random_linear(g, nvars) if g.random() < 0.5 else pool[int(g.integers(len(pool)))]
        if f.degree() <= budget and not any(associated(f, h) for h in out):
            out.append(f)
            budget -= f.degree()
    return out


def constructed_reducedness_case(g: np.random.Generator) -> dict:
    """Product of distinct irreducibles, with a repeated factor half the time.

    Returns p, the expected reducedness and the expected radical (up to a unit).
    """
    n = int(g.integers(1, 4))
    repeated = bool(g.random() < 0.5)
    while True:
        factors = distinct_factors(g, n, int(g.integers(1, 4)), 8)
        if not factors:
            continue
        mults = [1] * len(factors)
        if repeated:
            i = int(g.integers(len(factors)))
            mults[i] = int(g.integers(2, 4))
        if sum(f.degree() * m for f, m in zip(factors, mults)) <= 8:
            break
    p = Polynomial.one(n)
    radical = Polynomial.one(n)
    for f, m in zip(factors, mults):
        radical = radical * f
        for _ in range(m):
            p = p * f
    unit = small_gaussian(g)
    while not unit:
        unit = small_gaussian(g)
    return {"p": p.scale(unit), "reduced": not repeated, "radical": radical,
            "max_multiplicity": max(mults), "factors": factors, "multiplicities": mults}
