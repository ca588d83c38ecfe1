import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from borelkit import Polynomial
from borelkit.dualitylab import (counterexample, dump_matrix, exp_span_rank, in_truncated_kernel,
                                 kernel_basis, nullstellensatz_shadow, operator_matrix, rational_point,
                                 scaled_taylor_matrix, variety_samples)
from borelkit.expcalc import apply_operator
from borelkit.gaussian import ONE, ZERO
from borelkit.polycore import associated, evaluate, monomials_up_to, num_monomials
from borelkit.suites import fixture_poly
from oracles import brute_kernel_dim, to_dict
from strategies import nonconstant_polys


def P(text, n=None):
    return Polynomial.parse(text, n)


def span(polys, n, D):
    """Row-space dimension of polynomials in P_<=D, computed exactly."""
    from borelkit.linalg import rank
    mons = monomials_up_to(n, D)
    return rank([[f.coefficient(a) for a in mons] for f in polys])


# -- exact kernel ------------------------------------------------------------------

def test_double_point_kernel():
    k = kernel_basis(P("z1^2", 1), 3)
    assert k.dim == 2
    assert span(list(k.basis) + [P("1", 1), P("z1", 1)], 1, 3) == 2


def test_coordinate_cross_kernel():
    k = kernel_basis(P("z1*z2"), 2)
    assert k.dim == 5
    expected = [P(t, 2) for t in ("1", "z1", "z2", "z1^2", "z2^2")]
    assert span(list(k.basis) + expected, 2, 2) == 5


def test_harmonic_kernel():
    k = kernel_basis(P("z1^2+z2^2"), 2)
    expected = [P(t, 2) for t in ("1", "z1", "z2", "z1*z2", "z1^2-z2^2")]
    assert k.dim == 5 and span(list(k.basis) + expected, 2, 2) == 5


@given(nonconstant_polys(2, 3, 4), st.integers(1, 5))
def test_kernel_dimension_formula_and_oracle(p, D):
    k = kernel_basis(p, D)
    n, m = p.nvars, p.degree()
    assert k.dim == num_monomials(n, D) - num_monomials(n, D - m)
    assert k.dim == brute_kernel_dim(to_dict(p), n, D)
    assert all(in_truncated_kernel(p, f, D) for f in k.basis)


@pytest.mark.parametrize("text", ["z1*z2", "z1^2+z2^2", "z1^2+z2^2+z3^2", "z1^2", "z1^2*z2",
                                  "(z1+z2)^2*(z1-z2)"])
def test_homogeneous_kernels_are_exact_solutions(text):
    p = fixture_poly(text)
    for D in range(2, 6):
        assert all(apply_operator(p, f).is_zero for f in kernel_basis(p, D).basis)


def test_operator_matrix_shape_and_dump(tmp_path):
    mat, rows, cols = operator_matrix(P("z1^2", 1), 3)
    assert (len(rows), len(cols)) == (2, 4)
    path = tmp_path / "m.txt"
    dump_matrix([[complex(x) for x in r] for r in mat], path)
    lines = path.read_text().splitlines()
    assert len(lines) == 2 and len(lines[0].split()) == 4


# -- exponential spans ----------------------------------------------------------------

def test_cone_saturates_with_twelve_samples():
    p = P("z1^2+z2^2")
    rep = exp_span_rank(p, 2, variety_samples(p, 12, seed=0))
    assert rep.numerical_rank == 5 == rep.kernel_dim
    assert rep.verdict == "saturates"


def test_double_line_is_deficient():
    p = P("z1^2", 2)
    rep = exp_span_rank(p, 2, variety_samples(p, 15, seed=0))
    assert (rep.numerical_rank, rep.kernel_dim, rep.verdict) == (3, 5, "deficient")


def test_linear_polynomial_rank_one():
    p = P("z1", 1)
    rep = exp_span_rank(p, 3, variety_samples(p, 1, seed=0))
    assert rep.numerical_rank == 1 == rep.kernel_dim


@pytest.mark.parametrize("text", ["z1*z2", "z1^2+z2^2+1", "z1+z2^3", "z1^2*z2"])
def test_sampled_exponentials_lie_in_kernel(text):
    p = fixture_poly(text)
    rep = exp_span_rank(p, 4, variety_samples(p, 20, seed=4))
    assert rep.kernel_residual <= 1e-8


def test_rank_monotone_in_nested_samples():
    p = P("z1^2+z2^2+z3^2")
    samples = variety_samples(p, 40, seed=1)
    ranks = [exp_span_rank(p, 3, samples[:k]).numerical_rank for k in range(1, 41, 3)]
    assert ranks == sorted(ranks)


def test_scaled_taylor_matrix_columns():
    mat = scaled_taylor_matrix([[1.0, 2.0]], 2)
    # 1, z2, z1, z2^2/sqrt2, z1 z2, z1^2/sqrt2 in graded-lex order of monomials_up_to
    mons = monomials_up_to(2, 2)
    for i, a in enumerate(mons):
        want = 2.0 ** a[1] / math.sqrt(math.prod(math.factorial(x) for x in a))
        assert abs(mat[i, 0] - want) < 1e-15


def test_unvalidated_samples_rejected():
    from borelkit.variety import VarietySample
    bad = VarietySample(point=(1.0, 1.0), residual=0.0, scale=1.0, seed=0)
    with pytest.raises(Exception):
        exp_span_rank(P("z1*z2"), 2, [bad])


# -- Nullstellensatz shadow -------------------------------------------------------------

def test_divisible_vanishing_function():
    p = P("z1^2+z2^2")
    f = p * P("z1+1", 2)
    v = nullstellensatz_shadow(p, f, variety_samples(p, 8, seed=0))
    assert v.status == "divisible" and v.quotient == P("z1+1", 2)


def test_division_gap_for_double_point():
    p, f = P("z1^2", 1), P("z1", 1)
    v = nullstellensatz_shadow(p, f, variety_samples(p, 1, seed=0))
    assert v.status == "division-gap" and v.vanishes and not v.p_reduced


def test_non_vanishing_function():
    p = P("z1*z2-1")
    v = nullstellensatz_shadow(p, P("z1", 2), variety_samples(p, 5, seed=0))
    assert v.status == "does-not-vanish" and v.quotient is None


# -- counterexample functional -------------------------------------------------------------

def test_double_point_functional_is_derivative_at_zero():
    ce = counterexample(P("z1^2", 1), 5)
    S = ce.functional
    assert S(P("1", 1)) == ZERO and S(P("z1", 1)) == ONE
    assert all(S(P(f"z1^{k}", 1)) == ZERO for k in range(2, 6))
    assert ce.verified


def test_explicit_point():
    ce = counterexample(P("z1^2*z2"), 6, v=(0, 5))
    assert ce.kills_ideal and ce.extends_point_map and ce.verified
    assert associated(ce.squarefree_part, P("z1*z2"))
    assert ce.point == (ZERO, 5)


@pytest.mark.parametrize("text", ["z1^2", "z1^2*z2", "(z1+z2)^2*(z1-z2)"])
def test_fixture_counterexamples(text):
    p = fixture_poly(text)
    ce = counterexample(p, 6)
    S, q = ce.functional, ce.squarefree_part
    for h in monomials_up_to(p.nvars, 6 - p.degree()):
        assert S(p.shift_monomial(h)) == ZERO
    assert S(q) == ONE
    assert evaluate(ce.repeated_part, ce.point) == ZERO


def test_reduced_polynomial_has_no_counterexample():
    with pytest.raises(ValueError, match="p is reduced"):
        counterexample(P("z1^2+z2^2"), 4)


def test_float_point_path():
    ce = counterexample(P("(z1+z2)^2*(z1-z2)"), 5, v=(0.5, -0.5))
    assert ce.verified and not ce.functional.exact and ce.max_defect < 1e-9


def test_rational_point_search():
    f = P("z1*z2 - 3*z1 + 2")
    v = rational_point(f)
    assert v is not None and evaluate(f, v) == ZERO
