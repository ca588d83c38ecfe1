import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from borelkit import ExpPoly, GaussianRational, Polynomial
from borelkit import fixtures as fx
from borelkit.growthlab import (GrowthError, PreconditionError, cauchy_schwarz_gap, circle_min,
                                iterated_constant, lemma31_check, lemma32_check, lemma_constant,
                                polya_szego_radius, polya_szego_threshold, prop33_check,
                                univariate_coefficients)
from borelkit.suites import fixture_poly
from oracles import brute_circle_search


def P(text, n=None):
    return Polynomial.parse(text, n)


def exp1(w):
    return ExpPoly.exponential(tuple(GaussianRational.coerce(c) for c in w))


# -- minimum modulus --------------------------------------------------------------

def test_threshold_formula():
    assert polya_szego_threshold(1.0, 1, 4.0) == 2.0
    assert polya_szego_threshold(3.0, 2, 2.0) == 2 * 3.0 * (2.0 / 4) ** 2


def test_identity_polynomial_circles():
    cert = polya_szego_radius(P("z1", 1), 0, 4.0)
    # the minimum of |z| on |z| = rho is rho itself
    assert 2.0 <= cert.rho <= 4.0
    assert abs(cert.attained_min - cert.rho) < 1e-12
    assert cert.threshold == 2.0


def test_root_on_centre_against_brute_force():
    p = P("(z1-1)*(z1+1)", 1)
    coeffs = univariate_coefficients(p)
    cert = polya_szego_radius(p, 1.0, 1.0)
    assert 0 < cert.rho <= 1.0
    assert cert.revalidate(coeffs, 1.0)
    good = brute_circle_search(coeffs, 1.0, 1.0, cert.threshold)
    assert good, "oracle finds no certified radius"
    # the brute-force minimum on the returned circle agrees with the certificate
    theta = np.exp(2j * np.pi * np.arange(10_000) / 10_000)
    dense = np.abs(np.polynomial.polynomial.polyval(1.0 + cert.rho * theta, coeffs)).min()
    assert dense >= cert.threshold
    assert abs(dense - cert.attained_min) <= 1e-6


@given(st.sampled_from(fx.UNIVARIATE), st.floats(-2, 2), st.floats(-2, 2), st.floats(0.5, 4))
def test_radius_certificate_revalidates(text, x, y, r):
    p = P(text, 1)
    cert = polya_szego_radius(p, complex(x, y), r)
    assert 0 < cert.rho <= r
    assert cert.revalidate(univariate_coefficients(p), complex(x, y), density=10)


def test_circle_min_refinement_beats_grid():
    coeffs = univariate_coefficients(P("z1-(1/1+1/3i)", 1))
    exact = abs(abs(1 + 1j / 3) - 1.0)
    refined = circle_min(coeffs, 0, 1.0, 16)
    assert abs(refined - exact) < 1e-9


def test_radius_rejects_constants():
    with pytest.raises(ValueError):
        polya_szego_radius(P("3", 1), 0, 1)


# -- constants -----------------------------------------------------------------------

def test_constant_is_exact():
    assert lemma_constant(2, 4.0) == Fraction(1, 2)
    for d in range(1, 6):
        for r in (0.5, 0.7, 1.0, 3.3, 4.0):
            c = lemma_constant(d, r)
            assert c * 2 * Fraction(r) ** d == 4 ** d


def test_iterated_constant_follows_leading_coefficients():
    prod, degrees, consts, lead = iterated_constant(P("z1*z2"), 2.0)
    assert degrees == [1, 1] and consts == [1, 1] and prod == 1 and lead == 1.0
    prod, degrees, consts, lead = iterated_constant(P("3*z1^2+z2", 2), 1.0)
    # z2 has degree 1 with coefficient 1, then the constant 1 remains
    assert degrees == [1, 0] and lead == 1.0
    prod, degrees, consts, lead = iterated_constant(P("(2+i)*z1^2*z2^3 + z1", 2), 1.0)
    assert degrees == [3, 2] and abs(lead - math.sqrt(5)) < 1e-15
    assert prod == lemma_constant(3, 1.0) * lemma_constant(2, 1.0)


# -- lemma checks ------------------------------------------------------------------------

def test_lemma31_zero_function():
    cert = lemma31_check(P("z1^2-1", 1), 0.3, 1.0, 1.0, ExpPoly(1, []))
    assert not cert.violated and cert.attained == 0 and cert.constants["M"] == 0


@given(st.integers(0, 10 ** 6))
def test_lemma31_random_configurations(seed):
    g = fx.rng(seed)
    A, r = g.uniform(0.1, 2), g.uniform(0.5, 4)
    p = P(fx.UNIVARIATE[int(g.integers(len(fx.UNIVARIATE)))], 1)
    w = (complex(*g.uniform(-1, 1, 2)),)
    xi = complex(*g.uniform(-2, 2, 2))
    cert = lemma31_check(p, xi, r, A, exp1(w))
    assert not cert.violated and cert.max_slack > 0
    # direct evaluation oracle for the left-hand side
    a0 = abs(complex(p.leading_term()[1]))
    assert abs(cert.attained - a0 * abs(np.exp(xi * w[0]))) <= 1e-12 * max(1, cert.attained)


def test_manual_majorant_mode():
    p, f = P("z1", 1), exp1((0.5,))
    fitted = lemma31_check(p, 0.2, 1.0, 1.0, f).constants["M"]
    ok = lemma31_check(p, 0.2, 1.0, 1.0, f, M=2 * fitted)
    assert ok.constants["M"] == 2 * fitted and not ok.violated
    with pytest.raises(PreconditionError):
        lemma31_check(p, 0.2, 1.0, 1.0, f, M=fitted / 2)


def test_lemma32_reduces_to_lemma31_in_one_variable():
    p, f = P("2*z1^2 + i*z1 + 1", 1), exp1((0.25 - 0.5j,))
    for xi, r, A in [(0.3 + 0.1j, 1.0, 0.5), (-1.0, 2.5, 1.7), (1j, 0.5, 0.1)]:
        c1 = lemma31_check(p, xi, r, A, f, radial=24, angular=64)
        c2 = lemma32_check(p, [xi], r, A, f, radial=24, angular=64)
        assert c1.violated == c2.violated
        assert abs(c1.relative_slack - c2.relative_slack) <= 1e-12


@given(st.integers(0, 10 ** 6))
def test_lemma32_coordinate_cross(seed):
    g = fx.rng(seed)
    xi = g.uniform(-2, 2, 2) + 1j * g.uniform(-2, 2, 2)
    r, A = g.uniform(0.5, 4), g.uniform(0.1, 2)
    cert = lemma32_check(P("z1*z2"), xi, r, A, exp1((0, 1)))
    assert not cert.violated


def test_cauchy_schwarz_step():
    rng = np.random.default_rng(7)
    for _ in range(100):
        n = int(rng.integers(1, 7))
        xi = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        assert np.abs(xi).sum() <= math.sqrt(n) * np.linalg.norm(xi) + 1e-12
        assert cauchy_schwarz_gap(xi) >= -1e-12


# -- growth of F versus pF ---------------------------------------------------------------------

def test_prop33_exponential():
    p = P("z1^2+z2^2-1")
    cert = prop33_check(p, 1.0, exp1((0.5, 0.25j)), radii=32, angles=48)
    assert not cert.violated and cert.constants["M"] > 0


def test_prop33_zero_function():
    cert = prop33_check(P("z1*z2"), 1.0, ExpPoly(2, []), radii=16, angles=16)
    assert not cert.violated and cert.attained == 0 and cert.bound == 0


@pytest.mark.parametrize("statement", ["l31", "l32", "p33"])
def test_homogeneity(statement):
    lam = GaussianRational(Fraction(-3, 2), 2)
    f = ExpPoly.parse("[1+z1] * exp(<1/4>)", 1) if statement == "l31" else \
        ExpPoly.parse("[1+z1] * exp(<1/4, -1/8i>)", 2)
    scaled = ExpPoly(f.nvars, [(q.scale(lam), w) for q, w in f.terms()])
    if statement == "l31":
        run = lambda h: lemma31_check(P("z1^2-1", 1), 0.4, 1.0, 0.8, h)
    elif statement == "l32":
        run = lambda h: lemma32_check(P("z1*z2-1"), [0.4, -0.2j], 1.0, 0.8, h)
    else:
        run = lambda h: prop33_check(P("z1*z2-1"), 0.8, h, radii=24, angles=32)
    a, b = run(f), run(scaled)
    assert a.violated == b.violated
    assert abs(a.relative_slack - b.relative_slack) <= 1e-12
    assert abs(b.bound / a.bound - abs(complex(lam))) <= 1e-12


def test_overflow_is_reported():
    with pytest.raises(GrowthError):
        prop33_check(P("z1", 1), 0.1, exp1((0.09,)), R_max=1e5, radii=8, angles=8)


@given(st.integers(0, 10 ** 6), st.sampled_from(fx.REDUCED + fx.NON_REDUCED))
def test_prop33_never_falsified(seed, text):
    g = fx.rng(seed)
    p = fixture_poly(text)
    A, r = g.uniform(0.1, 2), g.uniform(0.5, 4)
    F = fx.random_exppoly(g, p.nvars, 0.9 * A)
    cert = prop33_check(p, A, F, r=r, radii=16, angles=24, cap=20_000, seed=seed)
    assert not cert.violated


def test_certificate_is_reproducible():
    F = ExpPoly.parse("[z1] * exp(<1/3, 1/5, 0>)", 3)
    p = P("z1^2+z2^2+z3^2")
    a = prop33_check(p, 1.0, F, radii=16, angles=16, seed=4)
    b = prop33_check(p, 1.0, F, radii=16, angles=16, seed=4)
    assert a.to_dict() == b.to_dict()
