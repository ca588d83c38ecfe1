"""Sampled checks of the minimum-modulus and exponential-growth estimates.

Sup-norms over C^n are replaced by maxima over finite grids. Those are lower
bounds of the true suprema, so a reported violation is a falsification
alarm while a pass is evidence, not proof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .expcalc import ExpPoly
from .polycore import Polynomial, leading_coefficient

GOLDEN = (math.sqrt(5) - 1) / 2


class GrowthError(RuntimeError):
    """Search failure or numerical overflow."""


class PreconditionError(ValueError):
    """The growth hypothesis |p f| <= M exp(A|z|) failed on the sample set."""


def lemma_constant(d: int, r: float) -> Fraction:
    """c = 4^d / (2 r^d), exact in the binary value of r."""
    r = Fraction(r)
    return Fraction(4) ** d / (2 * r ** d)


def polya_szego_threshold(a0_abs: float, d: int, r: float) -> float:
    return 2 * a0_abs * (r / 4) ** d


def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class GrowthCertificate:
    statement: str  # lemma31 | lemma32 | prop33
    constants: dict
    samples_checked: int
    max_slack: float  # bound minus attained value (smallest margin over all checks)
    bound: float
    attained: float
    violated: bool
    witness: Optional[list] = None

    @property
    def relative_slack(self) -> float:
        return self.max_slack / self.bound if self.bound else 0.0

    def to_dict(self) -> dict:
        return {"statement": self.statement, "constants": self.constants,
                "samples_checked": self.samples_checked, "max_slack": self.max_slack,
                "relative_slack": self.relative_slack, "bound": self.bound,
                "attained": self.attained, "violated": self.violated, "witness": self.witness}


# -- minimum modulus on circles --------------------------------------------

def univariate_coefficients(p: Polynomial) -> np.ndarray:
    if p.nvars != 1:
        raise ValueError("expected a univariate polynomial")
    coeffs = np.zeros(p.degree() + 1, dtype=complex)
    for (k,), c in p.terms.items():
        coeffs[k] = complex(c)
    return coeffs


def _circle_values(coeffs, xi, rho, theta):
    return np.abs(np.polynomial.polynomial.polyval(xi + rho * np.exp(1j * theta), coeffs))


def circle_min(coeffs, xi: complex, rho: float, angles: int, rounds: int = 3, starts: int = 3) -> float:
    """min |p| on |z - xi| = rho: coarse grid, then golden-section refinement
    around the lowest grid points."""
    theta = 2 * np.pi * np.arange(angles) / angles
    vals = _circle_values(coeffs, xi, rho, theta)
    best = float(vals.min())
    h = 2 * np.pi / angles
    for k in np.argsort(vals)[:starts]:
        lo, hi = theta[k] - h, theta[k] + h
        for _ in range(rounds):
            # each round shrinks the bracket by golden-section steps
            for _ in range(20):
                m1 = hi - GOLDEN * (hi - lo)
                m2 = lo + GOLDEN * (hi - lo)
                v1, v2 = _circle_values(coeffs, xi, rho, np.array([m1, m2]))
                if v1 < v2:
                    hi = m2
                else:
                    lo = m1
            mid = 0.5 * (lo + hi)
            best = min(best, float(_circle_values(coeffs, xi, rho, np.array([mid]))[0]))
            lo, hi = mid - h / 4, mid + h / 4
    return best


@dataclass(frozen=True)
class RadiusCertificate:
    rho: float
    threshold: float
    attained_min: float
    angles: int
    degree: int
    a0_abs: float

    def revalidate(self, coeffs, xi: complex, density: int = 10) -> bool:
        n = self.angles * density
        theta = 2 * np.pi * np.arange(n) / n
        return float(_circle_values(coeffs, xi, self.rho, theta).min()) >= self.threshold

    def to_dict(self) -> dict:
        return {"rho": self.rho, "threshold": self.threshold, "attained_min": self.attained_min,
                "angles": self.angles, "degree": self.degree, "a0_abs": self.a0_abs}


def polya_szego_radius(p: Polynomial, xi: complex, r: float, radii: int = 64, angles: int = 512,
                       budget: int = 16) -> RadiusCertificate:
    """A radius 0 < rho <= r with |p| >= 2|a0|(r/4)^d on the whole circle |z - xi| = rho."""
    if p.is_zero or p.is_constant:
        raise ValueError("need a nonconstant univariate polynomial")
    if not r > 0:
        raise ValueError("r must be positive")
    coeffs = univariate_coefficients(p)
    d = len(coeffs) - 1
    a0 = abs(coeffs[-1])
    threshold = polya_szego_threshold(a0, d, r)
    xi = complex(xi)
    theta = 2 * np.pi * np.arange(angles) / angles

    def scan(candidates):
        pts = xi + candidates[:, None] * np.exp(1j * theta)[None, :]
        coarse = np.abs(np.polynomial.polynomial.polyval(pts, coeffs)).min(axis=1)
        best_seen = (0.0, float(candidates[0]))
        for idx in np.argsort(-coarse)[:budget]:
            rho = float(candidates[idx])
            m = circle_min(coeffs, xi, rho, angles)
            if m > best_seen[0]:
                best_seen = (m, rho)
            if m >= threshold:
                return RadiusCertificate(rho, threshold, m, angles, d, float(a0)), best_seen
        return None, best_seen

    cert, best = scan(r * np.geomspace(1e-3, 1.0, radii))
    if cert is None:
        cert, best2 = scan(r * np.linspace(1.0 / (4 * radii), 1.0, 4 * radii))
        best = max(best, best2)
    if cert is None:
        raise GrowthError(f"no certified circle: best min {best[0]:.3e} at rho={best[1]:.3e}, "
                          f"threshold {threshold:.3e}")
    return cert


# -- sample sets -------------------------------------------------------------

def disk_points(center: complex, r: float, radial: int = 24, angular: int = 64) -> np.ndarray:
    """Polar grid on the closed disk |z - center| <= r, boundary included."""
    rad = np.linspace(0.0, r, radial)
    theta = 2 * np.pi * np.arange(angular) / angular
    pts = center + (rad[1:, None] * np.exp(1j * theta)[None, :]).ravel()
    return np.concatenate([[center], pts])


def polydisk_points(center: Sequence[complex], r: float, radial: int = 4, angular: int = 12,
                    cap: int = 10 ** 6, seed: int = 0) -> np.ndarray:
    """Product of per-coordinate disk grids, subsampled (seeded) beyond ``cap`` points."""
    per = [disk_points(c, r, radial, angular) for c in center]
    total = math.prod(len(x) for x in per)
    if total <= cap:
        mesh = np.meshgrid(*per, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)
    rng = np.random.default_rng(seed)
    idx = [rng.integers(0, len(x), cap) for x in per]
    pts = np.stack([x[i] for x, i in zip(per, idx)], axis=1)
    corners = np.array([[c + r for c in center]], dtype=complex)
    return np.concatenate([np.array([list(center)], dtype=complex), corners, pts])


def radial_grid(nvars: int, R_max: float, radii: int = 64, angles: int = 128,
                cap: int = 10 ** 6, seed: int = 0) -> np.ndarray:
    """Points R*u with R geometric up to R_max (plus 0) and unit directions u.

    For one variable the directions are an equispaced phase grid. For n > 1
    there are min(angles^n, cap/radii) directions drawn as normalized complex
    Gaussian vectors from the seeded RNG.
    """
    rs = np.concatenate([[0.0], np.geomspace(R_max / 1000.0, R_max, radii)])
    if nvars == 1:
        dirs = np.exp(2j * np.pi * np.arange(angles) / angles).reshape(-1, 1)
    else:
        count = int(min(angles ** nvars, max(1, cap // len(rs))))
        rng = np.random.default_rng(seed)
        g = rng.standard_normal((count, nvars)) + 1j * rng.standard_normal((count, nvars))
        dirs = g / np.linalg.norm(g, axis=1, keepdims=True)
    return (rs[:, None, None] * dirs[None, :, :]).reshape(-1, nvars)


def _fit_or_check_M(p: Polynomial, f: ExpPoly, pts: np.ndarray, A: float, M: Optional[float]) -> float:
    weight = np.exp(-A * np.linalg.norm(pts, axis=1))
    vals = np.abs(p.eval_many(pts) * f.eval_many(pts)) * weight
    if not np.all(np.isfinite(vals)):
        raise GrowthError("overflow while sampling |p f|")
    fitted = float(vals.max())
    if M is None:
        return fitted
    if fitted > M * (1 + 1e-12):
        raise PreconditionError(f"|p f| exceeds M exp(A|z|) on the sample set (needs M >= {fitted:.6e})")
    return float(M)


# -- the three estimates -----------------------------------------------------

def lemma31_check(p: Polynomial, xi: complex, r: float, A: float, f: ExpPoly,
                  M: Optional[float] = None, radial: int = 24, angular: int = 64) -> GrowthCertificate:
    """|a0 f(xi)| <= c exp(A(|xi| + r)) M with c = 4^d / (2 r^d)."""
    if p.nvars != 1 or f.nvars != 1:
        raise ValueError("lemma31_check is univariate")
    if p.is_constant:
        raise ValueError("p must be nonconstant")
    d = p.degree()
    a0 = abs(complex(p.leading_term()[1]))
    pts = disk_points(complex(xi), r, radial, angular).reshape(-1, 1)
    M = _fit_or_check_M(p, f, pts, A, M)
    c = lemma_constant(d, r)
    lhs = a0 * float(abs(f.eval_many(np.array([[complex(xi)]]))[0]))
    rhs = float(c) * math.exp(A * (abs(complex(xi)) + r)) * M
    violated = bool(lhs > rhs)
    return GrowthCertificate(
        statement="lemma31",
        constants={"A": A, "r": r, "d": d, "c": _fmt(c), "c_float": float(c), "M": M, "a0_abs": a0},
        samples_checked=len(pts), max_slack=rhs - lhs, bound=rhs, attained=lhs, violated=violated,
        witness=[[complex(xi).real, complex(xi).imag]] if violated else None)


def iterated_constant(p: Polynomial, r: float) -> tuple[Fraction, list[int], list[Fraction], float]:
    """Variable-by-variable constant: eliminate z_n, ..., z_1 through leading coefficients.

    Returns (product of per-step c's, per-step degrees, per-step c's, |final leading constant|).
    A step with degree 0 contributes the factor 1.
    """
    current = p
    degrees, consts = [], []
    prod = Fraction(1)
    for k in reversed(range(p.nvars)):
        d = current.degree_in(k)
        c = lemma_constant(d, r) if d >= 1 else Fraction(1)
        degrees.append(d)
        consts.append(c)
        prod *= c
        current, _ = leading_coefficient(current, k)
    lead = abs(complex(current.constant_value()))
    return prod, degrees, consts, lead


def lemma32_check(p: Polynomial, xi: Sequence[complex], r: float, A: float, f: ExpPoly,
                  M: Optional[float] = None, radial: int = 4, angular: int = 12,
                  cap: int = 10 ** 6, seed: int = 0) -> GrowthCertificate:
    """|f(xi)| exp(-sqrt(n) A |xi|) <= c_hat exp(n r A) M on the polydisk of radius r."""
    n = p.nvars
    if f.nvars != n or len(xi) != n:
        raise ValueError("arity mismatch")
    if p.is_zero:
        raise ValueError("p must be nonzero")
    xi = np.array([complex(x) for x in xi])
    pts = polydisk_points(xi, r, radial, angular, cap=cap, seed=seed)
    M = _fit_or_check_M(p, f, pts, A, M)
    prod, degrees, consts, lead = iterated_constant(p, r)
    c_hat = float(prod) / lead
    norm_xi = float(np.linalg.norm(xi))
    lhs = float(abs(f.eval_many(xi.reshape(1, -1))[0])) * math.exp(-math.sqrt(n) * A * norm_xi)
    rhs = c_hat * math.exp(n * r * A) * M
    violated = bool(lhs > rhs)
    return GrowthCertificate(
        statement="lemma32",
        constants={"A": A, "r": r, "d": degrees, "c": [_fmt(c) for c in consts],
                   "c_product": _fmt(prod), "leading_abs": lead, "c_hat": c_hat, "M": M},
        samples_checked=len(pts), max_slack=rhs - lhs, bound=rhs, attained=lhs, violated=violated,
        witness=[[x.real, x.imag] for x in xi] if violated else None)


def prop33_check(p: Polynomial, A: float, F: ExpPoly, R_max: Optional[float] = None, r: float = 1.0,
                 radii: int = 64, angles: int = 128, cap: int = 10 ** 6, seed: int = 0) -> GrowthCertificate:
    """||F||_{sqrt(n) A} <= c_A ||pF||_A with c_A = c_hat exp(n r A), sup-norms on a grid."""
    n = p.nvars
    if F.nvars != n:
        raise ValueError("arity mismatch")
    if p.is_zero:
        raise ValueError("p must be nonzero")
    R_max = R_max if R_max is not None else 20.0 / A
    pts = radial_grid(n, R_max, radii, angles, cap=cap, seed=seed)
    norms = np.linalg.norm(pts, axis=1)
    with np.errstate(over="raise", invalid="raise"):
        try:
            Fv = F.eval_many(pts)
            lhs = float(np.max(np.abs(Fv) * np.exp(-math.sqrt(n) * A * norms)))
            pf_norm = float(np.max(np.abs(p.eval_many(pts) * Fv) * np.exp(-A * norms)))
        except FloatingPointError as exc:
            raise GrowthError(f"overflow on the grid up to R_max={R_max}; lower R_max or raise A") from exc
    if not (math.isfinite(lhs) and math.isfinite(pf_norm)):
        raise GrowthError(f"overflow on the grid up to R_max={R_max}; lower R_max or raise A")
    prod, degrees, consts, lead = iterated_constant(p, r)
    c_hat = float(prod) / lead
    c_A = c_hat * math.exp(n * r * A)
    rhs = c_A * pf_norm
    violated = bool(lhs > rhs)
    return GrowthCertificate(
        statement="prop33",
        constants={"A": A, "r": r, "d": degrees, "c": [_fmt(c) for c in consts],
                   "c_product": _fmt(prod), "leading_abs": lead, "c_hat": c_hat, "c_A": c_A,
                   "M": pf_norm, "R_max": R_max},
        samples_checked=len(pts), max_slack=rhs - lhs, bound=rhs, attained=lhs, violated=violated,
        witness=None)


def cauchy_schwarz_gap(xi: Sequence[complex]) -> float:
    """sqrt(n)|xi| - sum |xi_i| (never negative)."""
    x = np.abs(np.asarray(xi, dtype=complex))
    return float(math.sqrt(len(x)) * np.linalg.norm(x) - x.sum())


__all__ = ["GrowthCertificate", "RadiusCertificate", "GrowthError", "PreconditionError",
           "lemma_constant", "polya_szego_threshold", "polya_szego_radius", "circle_min",
           "lemma31_check", "lemma32_check", "prop33_check", "iterated_constant",
           "cauchy_schwarz_gap", "disk_points", "polydisk_points", "radial_grid"]
