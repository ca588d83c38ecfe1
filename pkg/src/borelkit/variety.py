"""Numerical points on V_p = {p = 0} from random complex line sections.

A line z = a + t b is drawn from a seeded RNG, p is restricted to it, the
univariate restriction is solved by Durand-Kerner iteration, and each root
is polished by Newton's method on t -> p(a + t b). Every returned sample
carries a residual certificate; points that fail it are dropped, never
returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .polycore import Polynomial, partial

DEFAULT_TOL_REL = 1e-10
DEDUP_RADIUS = 1e-6


class SamplingError(RuntimeError):
    pass


@dataclass(frozen=True)
class VarietySample:
    point: tuple
    residual: float
    scale: float
    seed: int
    multiple: bool = False

    def to_dict(self) -> dict:
        return {
            "point": [[float(c.real), float(c.imag)] for c in self.point],
            "residual": self.residual,
            "scale": self.scale,
            "seed": self.seed,
            "multiple": self.multiple,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VarietySample":
        return cls(point=tuple(complex(re, im) for re, im in d["point"]),
                   residual=float(d["residual"]), scale=float(d["scale"]),
                   seed=int(d["seed"]), multiple=bool(d.get("multiple", False)))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.point, dtype=complex)


# -- univariate root finding ---------------------------------------------

def durand_kerner(coeffs: Sequence[complex], max_iter: int = 1000, tol: float = 1e-15) -> np.ndarray:
    """All roots of sum_k coeffs[k] t^k (coefficients low degree first)."""
    c = np.trim_zeros(np.asarray(coeffs, dtype=complex), "b")
    d = len(c) - 1
    if d < 1:
        return np.zeros(0, dtype=complex)
    c = c / c[-1]
    # Fujiwara bound on root moduli sets the starting circle
    bound = 2 * max(abs(c[d - k]) ** (1.0 / k) for k in range(1, d + 1))
    bound = max(bound, 1e-3)
    angles = 2 * np.pi * np.arange(d) / d + 0.4
    z = bound * 0.5 * np.exp(1j * angles) * (1 + 0.05 * np.arange(d) / d)
    for _ in range(max_iter):
        vals = npoly.polyval(z, c)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        denom = np.prod(diff, axis=1)
        denom[denom == 0] = 1e-300
        step = vals / denom
        z = z - step
        if np.max(np.abs(step)) <= tol * max(1.0, np.max(np.abs(z))):
            break
    return z


def newton_polish(coeffs: Sequence[complex], roots: np.ndarray, steps: int = 8) -> np.ndarray:
    c = np.asarray(coeffs, dtype=complex)
    dc = npoly.polyder(c)
    out = np.array(roots, dtype=complex)
    for k in range(len(out)):
        t = out[k]
        best = abs(npoly.polyval(t, c))
        for _ in range(steps):
            der = npoly.polyval(t, dc)
            if der == 0:
                break
            cand = t - npoly.polyval(t, c) / der
            val = abs(npoly.polyval(cand, c))
            if not val < best:
                break
            t, best = cand, val
        out[k] = t
    return out


def univariate_roots(coeffs: Sequence[complex]) -> np.ndarray:
    """Durand-Kerner followed by per-root Newton polish."""
    return newton_polish(coeffs, durand_kerner(coeffs))


# -- line sections ---------------------------------------------------------

def _restrict_to_line(p: Polynomial, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Coefficients (low first) of t -> p(a + t b)."""
    out = np.zeros(p.degree() + 1, dtype=complex)
    for alpha, c in p.terms.items():
        term = np.array([complex(c)])
        for j, e in enumerate(alpha):
            if e:
                term = npoly.polymul(term, npoly.polypow([a[j], b[j]], e))
        out[: len(term)] += term
    return out


def _scale_at(p: Polynomial, z: np.ndarray) -> float:
    mags = p.monomial_magnitudes(z)
    return float(max(1.0, mags.max() if len(mags) else 0.0))


def certify(p: Polynomial, point: Sequence[complex], seed: int = -1,
            tol_rel: float = DEFAULT_TOL_REL, multiple: bool = False) -> VarietySample:
    """Validate a point of V_p; raises SamplingError when the residual is too large."""
    z = np.asarray(point, dtype=complex)
    residual = float(abs(p.eval_many(z.reshape(1, -1))[0]))
    scale = _scale_at(p, z)
    tol = math.sqrt(tol_rel) if multiple else tol_rel
    if not residual <= tol * scale:
        raise SamplingError(f"residual {residual:.3e} exceeds {tol:.1e} * scale {scale:.3e}")
    return VarietySample(point=tuple(complex(x) for x in z), residual=residual,
                         scale=scale, seed=seed, multiple=multiple)


def random_line(nvars: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((2, nvars)) + 1j * rng.standard_normal((2, nvars))
    a, b = g[0] / math.sqrt(2), g[1]
    return a, b / np.linalg.norm(b)


def sample_line(p: Polynomial, seed: int, tol_rel: float = DEFAULT_TOL_REL,
                max_retries: int = 16) -> list[VarietySample]:
    """Validated points of V_p on one random complex line (at most deg p of them)."""
    if p.is_constant:
        raise ValueError("V_p is empty or everything for constant p")
    grads = [partial(p, j) for j in range(p.nvars)]
    for attempt in range(max_retries):
        s = seed + attempt
        a, b = random_line(p.nvars, s)
        coeffs = _restrict_to_line(p, a, b)
        norm = np.max(np.abs(coeffs))
        if norm == 0 or np.max(np.abs(coeffs[1:])) <= 1e-12 * norm:
            continue  # p is numerically constant on this line
        roots = univariate_roots(coeffs)
        refined = (_refine(p, grads, a, b, t, s, tol_rel) for t in roots)
        return [r for r in refined if r is not None]
    raise SamplingError(f"no non-degenerate line within {max_retries} seeds from {seed}")


def _refine(p, grads, a, b, t, seed, tol_rel) -> Optional[VarietySample]:
    def phi(t):
        z = (a + t * b).reshape(1, -1)
        val = p.eval_many(z)[0]
        der = sum(g.eval_many(z)[0] * bj for g, bj in zip(grads, b))
        return val, der

    val, der = phi(t)
    for _ in range(12):
        if der == 0:
            break
        cand = t - val / der
        cval, cder = phi(cand)
        if not abs(cval) < abs(val):
            break
        t, val, der = cand, cval, cder
    z = a + t * b
    dscale = max(1.0, max((_scale_at(g, z) * abs(bj) for g, bj in zip(grads, b)), default=1.0))
    multiple = bool(abs(der) <= math.sqrt(tol_rel) * dscale)
    try:
        return certify(p, z, seed=seed, tol_rel=tol_rel, multiple=multiple)
    except SamplingError:
        return None


def line_seed(seed: int, line_index: int) -> int:
    """Derived seed of line ``line_index``; disjoint streams per (seed, index)."""
    return int(np.random.SeedSequence([seed, line_index]).generate_state(1)[0])


def sample_many(p: Polynomial, count: int, seed: int, tol_rel: float = DEFAULT_TOL_REL,
                max_lines: Optional[int] = None) -> list[VarietySample]:
    """``count`` validated, pairwise distinct (max-norm > 1e-6) points of V_p."""
    if count < 1:
        raise ValueError("count must be at least 1")
    max_lines = max_lines or 20 + 10 * count
    out: list[VarietySample] = []
    for line in range(max_lines):
        for s in sample_line(p, line_seed(seed, line), tol_rel=tol_rel):
            z = s.array
            if all(np.max(np.abs(z - o.array)) > DEDUP_RADIUS for o in out):
                out.append(s)
                if len(out) == count:
                    return out
    raise SamplingError(f"only {len(out)} of {count} samples validated after {max_lines} lines")
