import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from borelkit import Polynomial
from borelkit.variety import (SamplingError, VarietySample, certify, durand_kerner, random_line,
                              sample_line, sample_many, univariate_roots)


def P(text, n=None):
    return Polynomial.parse(text, n)


def test_root_finder_on_constructed_roots():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(100):
        d = int(rng.integers(1, 11))
        while True:
            roots = rng.uniform(-2, 2, d) + 1j * rng.uniform(-2, 2, d)
            gaps = np.abs(roots[:, None] - roots[None, :]) + np.eye(d)
            if gaps.min() > 0.1:
                break
        coeffs = np.polynomial.polynomial.polyfromroots(roots)
        found = univariate_roots(coeffs)
        for r in roots:
            worst = max(worst, np.min(np.abs(found - r)))
    assert worst <= 1e-8


def test_durand_kerner_degenerate_inputs():
    assert len(durand_kerner([3.0])) == 0
    np.testing.assert_allclose(durand_kerner([-2.0, 1.0]), [2.0])


def test_coordinate_cross_samples():
    for s in sample_many(P("z1*z2"), 5, seed=3):
        w = s.array
        assert min(abs(w[0]), abs(w[1])) <= 1e-8 * max(1.0, np.linalg.norm(w))


def test_sphere_rational_point_certifies_exactly():
    for n in (2, 3, 4):
        p = P("+".join(f"z{i}^2" for i in range(1, n + 1)) + "-1", n)
        s = certify(p, [1] + [0] * (n - 1))
        assert s.residual == 0.0


def test_double_line_samples():
    samples = sample_many(P("z1^2", 2), 6, seed=0)
    assert all(abs(s.point[0]) <= 1e-5 for s in samples)
    assert all(s.multiple for s in samples)


def test_count_and_distinctness():
    samples = sample_many(P("z1*z2"), 5, seed=11)
    assert len(samples) == 5
    pts = np.array([s.point for s in samples])
    d = np.abs(pts[:, None, :] - pts[None, :, :]).max(axis=2) + np.eye(5)
    assert d.min() > 1e-6


def test_determinism_and_seed_independence():
    p = P("z1^2+z2^2-1")
    assert sample_many(p, 6, seed=5) == sample_many(p, 6, seed=5)
    dirs = {tuple(np.round(random_line(3, s)[1], 12)) for s in range(50)}
    assert len(dirs) == 50


def test_samples_of_square_lie_on_same_variety():
    p = P("z1^2+z2^3-1")
    for s in sample_many(p * p, 6, seed=9):
        z = s.array
        res = abs(p.eval_many(z.reshape(1, -1))[0])
        assert res <= 1e-4 * s.scale


@given(st.integers(0, 2 ** 31), st.sampled_from(["z1*z2-1", "z1^3+z2^2+z3", "z1^2+z2^2+z3^2", "z1+z2^3"]))
def test_every_sample_satisfies_its_certificate(seed, text):
    p = P(text)
    for s in sample_line(p, seed):
        z = s.array
        res = abs(p.eval_many(z.reshape(1, -1))[0])
        tol = 1e-5 if s.multiple else 1e-10
        assert res <= tol * s.scale


def test_certificate_rejects_off_variety_points():
    with pytest.raises(SamplingError):
        certify(P("z1*z2-1"), [1.0, 1.5])


def test_constant_polynomial_rejected():
    with pytest.raises(ValueError):
        sample_line(P("3", 2), 0)


def test_univariate_variety_has_finitely_many_points():
    with pytest.raises(SamplingError):
        sample_many(P("z1^2-1", 1), 3, seed=0, max_lines=10)
    assert len(sample_many(P("z1^2-1", 1), 2, seed=0)) == 2


def test_sample_serialization_round_trip():
    s = sample_many(P("z1*z2-1"), 1, seed=0)[0]
    assert VarietySample.from_dict(s.to_dict()) == s
    assert set(s.to_dict()) == {"point", "residual", "scale", "seed", "multiple"}
