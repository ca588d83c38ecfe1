"""Finite-degree experiments on ker dp, exponential spans and the non-reduced gap.

Degree-bounded kernel
    For a degree-m polynomial p the truncated operator
    f -> (p(d) f) restricted to degrees <= D - m maps P_{<=D} onto P_{<=D-m};
    its null space is the apolar complement of p * P_{<=D-m} under
    <g, f> = (g(d) f)(0). For homogeneous p it is exactly
    {f in P_{<=D} : p(d) f = 0}. The degree-D Taylor polynomial of every
    solution of p(d) F = 0 lies in it, in particular T_D exp(<w, .>) for w on V_p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .expcalc import apply_operator, truncate
from .gaussian import ONE, ZERO, GaussianRational, format_gaussian
from .linalg import nullspace, rref
from .polycore import (Polynomial, divide_exact, evaluate, format_monomial, monomials_up_to,
                       multifactorial, num_monomials)
from .reducedness import analyze
from .variety import VarietySample, certify, sample_many

RANK_TOL = 1e-8
VANISH_TOL = 1e-8


# -- exact kernel ------------------------------------------------------------

@dataclass(frozen=True)
class KernelResult:
    p: Polynomial
    D: int
    basis: tuple
    rank: int  # rank of the truncated operator matrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def predicted_dim(self) -> int:
        return num_monomials(self.p.nvars, self.D) - num_monomials(self.p.nvars, self.D - self.p.degree())

    def to_dict(self) -> dict:
        return {"p": str(self.p), "D": self.D, "kernel_dim": self.dim,
                "predicted_dim": self.predicted_dim, "operator_rank": self.rank,
                "basis": [str(f) for f in self.basis]}


def operator_matrix(p: Polynomial, D: int):
    """Matrix of f -> truncate(p(d) f, D - m) in grlex monomial bases."""
    n, m = p.nvars, p.degree()
    cols = monomials_up_to(n, D)
    rows = monomials_up_to(n, D - m)
    index = {beta: i for i, beta in enumerate(rows)}
    mat = [[ZERO] * len(cols) for _ in rows]
    for j, alpha in enumerate(cols):
        image = apply_operator(p, Polynomial.monomial(alpha))
        for beta, c in image.terms.items():
            i = index.get(beta)
            if i is not None:
                mat[i][j] = c
    return mat, rows, cols


def kernel_basis(p: Polynomial, D: int) -> KernelResult:
    """Exact basis of the degree-D kernel of dp."""
    if D < 0:
        raise ValueError("degree bound must be non-negative")
    if p.is_constant:
        raise ValueError("kernel_basis needs a nonconstant p")
    mat, _, cols = operator_matrix(p, D)
    vectors = nullspace(mat, len(cols))
    basis = tuple(Polynomial(p.nvars, {a: c for a, c in zip(cols, v) if c}) for v in vectors)
    op_rank = len(cols) - len(vectors)
    return KernelResult(p=p, D=D, basis=basis, rank=op_rank)


def in_truncated_kernel(p: Polynomial, f: Polynomial, D: int) -> bool:
    return truncate(apply_operator(p, f), D - p.degree()).is_zero


# -- exponential spans -------------------------------------------------------

@dataclass(frozen=True)
class RankReport:
    p: Polynomial
    D: int
    kernel_dim: int
    sample_count: int
    numerical_rank: int
    singular_values: tuple
    tolerance: float
    verdict: str
    kernel_residual: float = 0.0  # max relative distance of a column from the exact kernel

    def to_dict(self) -> dict:
        return {"p": str(self.p), "D": self.D, "kernel_dim": self.kernel_dim,
                "sample_count": self.sample_count, "numerical_rank": self.numerical_rank,
                "singular_values": [float(s) for s in self.singular_values],
                "tolerance": self.tolerance, "verdict": self.verdict,
                "kernel_residual": self.kernel_residual}


def scaled_taylor_matrix(points: Sequence[Sequence[complex]], D: int) -> np.ndarray:
    """Columns w^alpha / sqrt(alpha!) over |alpha| <= D: T_D exp(<w, .>) in the basis z^alpha/sqrt(alpha!)."""
    pts = np.asarray(points, dtype=complex)
    n = pts.shape[1]
    mons = monomials_up_to(n, D)
    mat = np.empty((len(mons), pts.shape[0]), dtype=complex)
    for i, alpha in enumerate(mons):
        col = np.ones(pts.shape[0], dtype=complex)
        for j, e in enumerate(alpha):
            if e:
                col = col * pts[:, j] ** e
        mat[i] = col / math.sqrt(multifactorial(alpha))
    return mat


def _kernel_frame(kernel: KernelResult) -> np.ndarray:
    """Orthonormal basis (columns) of the exact kernel in scaled coordinates."""
    mons = monomials_up_to(kernel.p.nvars, kernel.D)
    if not kernel.basis:
        return np.zeros((len(mons), 0), dtype=complex)
    vecs = np.array([[complex(f.coefficient(a)) * math.sqrt(multifactorial(a)) for a in mons]
                     for f in kernel.basis]).T
    q, _ = np.linalg.qr(vecs)
    return q


def exp_span_rank(p: Polynomial, D: int, samples: Sequence[VarietySample], tol: float = RANK_TOL,
                  required: Optional[int] = None, residual_tol: float = 1e-10,
                  kernel: Optional[KernelResult] = None) -> RankReport:
    """Numerical rank of the truncated exponentials e^{<z, w_k>} for sampled w_k on V_p."""
    if required is not None and len(samples) < required:
        raise ValueError(f"{len(samples)} samples given, {required} required")
    if not samples:
        raise ValueError("no samples")
    for s in samples:
        certify(p, s.point, seed=s.seed, tol_rel=residual_tol, multiple=s.multiple)
    kernel = kernel or kernel_basis(p, D)
    mat = scaled_taylor_matrix([s.point for s in samples], D)
    # unit columns: rank is unchanged, conditioning no longer favors large |w|
    mat = mat / np.linalg.norm(mat, axis=0)
    sv = np.linalg.svd(mat, compute_uv=False)
    nrank = int(np.sum(sv > tol * sv[0])) if sv[0] > 0 else 0
    frame = _kernel_frame(kernel)
    proj = mat - frame @ (frame.conj().T @ mat)
    rel = np.linalg.norm(proj, axis=0) / np.maximum(np.linalg.norm(mat, axis=0), 1e-300)
    return RankReport(p=p, D=D, kernel_dim=kernel.dim, sample_count=len(samples),
                      numerical_rank=nrank, singular_values=tuple(float(x) for x in sv),
                      tolerance=tol, verdict="saturates" if nrank == kernel.dim else "deficient",
                      kernel_residual=float(rel.max()))


def variety_samples(p: Polynomial, count: int, seed: int, tol_rel: float = 1e-10) -> list[VarietySample]:
    """Samples of V_p drawn through the squarefree part (same zero set, simple roots),
    then certified against p itself."""
    q = analyze(p).squarefree_part
    raw = sample_many(q, count, seed, tol_rel=tol_rel)
    return [certify(p, s.point, seed=s.seed, tol_rel=tol_rel) for s in raw]


# -- Nullstellensatz shadow --------------------------------------------------

@dataclass(frozen=True)
class NstVerdict:
    status: str  # does-not-vanish | divisible | division-gap | falsified
    vanishes: bool
    max_ratio: float
    p_reduced: bool
    quotient: Optional[Polynomial] = None

    @property
    def ok(self) -> bool:
        return self.status != "falsified"

    def to_dict(self) -> dict:
        return {"status": self.status, "vanishes": self.vanishes, "max_ratio": self.max_ratio,
                "p_reduced": self.p_reduced,
                "quotient": None if self.quotient is None else str(self.quotient)}


def nullstellensatz_shadow(p: Polynomial, f: Polynomial, samples: Sequence[VarietySample],
                           tol: float = VANISH_TOL) -> NstVerdict:
    """Sampled vanishing of f on V_p followed by exact division by p.

    For reduced p a vanishing f must be divisible; failure is reported as
    ``falsified``. For non-reduced p a vanishing f that p does not divide is
    the expected ``division-gap``.
    """
    if p.is_constant:
        raise ValueError("p must be nonconstant")
    if not samples:
        raise ValueError("no samples")
    pts = np.array([s.point for s in samples], dtype=complex)
    values = np.abs(f.eval_many(pts))
    scales = np.array([max(1.0, float(np.max(f.monomial_magnitudes(z)))) if not f.is_zero else 1.0
                       for z in pts])
    ratio = float(np.max(values / scales))
    reduced = analyze(p).is_reduced
    if ratio > tol:
        return NstVerdict("does-not-vanish", False, ratio, reduced)
    g = divide_exact(f, p)
    if g is not None:
        return NstVerdict("divisible", True, ratio, reduced, g)
    return NstVerdict("falsified" if reduced else "division-gap", True, ratio, reduced)


# -- counterexample functional -----------------------------------------------

@dataclass(frozen=True)
class FiniteFunctional:
    """A linear functional on P_{<=D}, given by its values on monomials."""

    nvars: int
    D: int
    values: dict = field(hash=False)

    def __post_init__(self):
        if set(self.values) != set(monomials_up_to(self.nvars, self.D)):
            raise ValueError("values must cover exactly the monomial basis of P_{<=D}")

    def __call__(self, f: Polynomial):
        if f.degree() > self.D:
            raise ValueError(f"degree {f.degree()} exceeds D = {self.D}")
        total = ZERO
        for alpha, c in f.terms.items():
            v = self.values[alpha]
            if v:
                total = total + c * v
        return total

    @property
    def exact(self) -> bool:
        return all(isinstance(v, GaussianRational) for v in self.values.values())

    def to_dict(self) -> dict:
        def fmt(v):
            if isinstance(v, GaussianRational):
                return format_gaussian(v)
            return [v.real, v.imag]
        out = {}
        for alpha in monomials_up_to(self.nvars, self.D):
            out[format_monomial(alpha) or "1"] = fmt(self.values[alpha])
        return {"nvars": self.nvars, "D": self.D, "values": out}


@dataclass(frozen=True)
class Counterexample:
    functional: FiniteFunctional
    squarefree_part: Polynomial
    repeated_part: Polynomial
    point: tuple
    kills_ideal: bool  # S(p*h) = 0 for all monomials h with deg(p h) <= D
    value_on_squarefree: object  # S(q); equals 1
    extends_point_map: bool  # S(q*h) = h(v) for all admissible h
    max_defect: float = 0.0  # only nonzero for a float point

    @property
    def verified(self) -> bool:
        one_ok = self.value_on_squarefree == ONE if self.functional.exact else \
            abs(complex(self.value_on_squarefree) - 1) <= 1e-9
        return self.kills_ideal and self.extends_point_map and one_ok

    def to_dict(self) -> dict:
        v = self.value_on_squarefree
        return {"verified": self.verified, "kills_ideal": self.kills_ideal,
                "value_on_squarefree": format_gaussian(v) if isinstance(v, GaussianRational) else [v.real, v.imag],
                "extends_point_map": self.extends_point_map,
                "squarefree_part": str(self.squarefree_part),
                "repeated_part": str(self.repeated_part),
                "point": [format_gaussian(c) if isinstance(c, GaussianRational) else [c.real, c.imag]
                          for c in self.point],
                "exact": self.functional.exact, "max_defect": self.max_defect,
                "functional": self.functional.to_dict()}


def rational_point(f: Polynomial, trials: Sequence[int] = (0, 1, 2, 3, -1, 5)) -> Optional[tuple]:
    """An exact point of V_f found by fixing all but one variable in which f is linear."""
    n = f.nvars
    for k in range(n):
        if f.degree_in(k) < 1:
            continue
        others = [j for j in range(n) if j != k]
        for values in _assignments(len(others), trials):
            point = [ZERO] * n
            for j, v in zip(others, values):
                point[j] = GaussianRational(v)
            restricted = _substitute_others(f, k, point)
            if restricted.get(1) and max(restricted) == 1:
                c0 = restricted.get(0, ZERO)
                point[k] = -c0 / restricted[1]
                if evaluate(f, point) == ZERO:
                    return tuple(point)
    return None


def _assignments(count: int, trials):
    if count == 0:
        yield ()
        return
    for v in trials:
        for rest in _assignments(count - 1, trials):
            yield (v,) + rest


def _substitute_others(f: Polynomial, k: int, point) -> dict:
    out: dict = {}
    for alpha, c in f.terms.items():
        v = c
        for j, e in enumerate(alpha):
            if j != k and e:
                v = v * point[j] ** e
        if v:
            out[alpha[k]] = out.get(alpha[k], ZERO) + v
    return {e: c for e, c in out.items() if c}


def counterexample(p: Polynomial, D: int, v: Optional[Sequence] = None) -> Counterexample:
    """Degree-D functional S with pS = 0 on P_{<=D} that is nonzero on the squarefree part q.

    S is fixed on q * P_{<=D-deg q} by S(q*h) = h(v) for a point v of V_{p/q}
    and set to zero on the monomials outside the leading-term ideal of q.
    """
    report = analyze(p)
    if report.is_reduced:
        raise ValueError("p is reduced: every functional with pS = 0 already annihilates all "
                         "polynomials vanishing on V_p, so no counterexample exists")
    q, rp = report.squarefree_part, report.repeated_part
    if D < p.degree():
        raise ValueError(f"degree bound {D} is below deg p = {p.degree()}")
    n = p.nvars
    if v is None:
        v = rational_point(rp)
        if v is None:
            raise ValueError("no exact point of V_{p/q} found; pass one explicitly")
    exact = all(isinstance(c, (GaussianRational, int)) or type(c).__name__ in ("Fraction", "mpq")
                for c in v)
    if exact:
        v = tuple(GaussianRational.coerce(c) for c in v)
        if evaluate(rp, v) != ZERO:
            raise ValueError("the given point is not on V_{p/q}")
    else:
        v = tuple(complex(c) for c in v)
        residual = abs(complex(evaluate(rp, v)))
        if residual > 1e-8 * max(1.0, float(np.max(rp.monomial_magnitudes(v)))):
            raise ValueError(f"the given point is not on V_{{p/q}} (residual {residual:.2e})")

    cols = sorted(monomials_up_to(n, D), key=lambda a: (sum(a), a), reverse=True)
    col_index = {a: i for i, a in enumerate(cols)}
    hs = monomials_up_to(n, D - q.degree())
    rows = []
    for h in hs:
        row = [ZERO] * (len(cols) + 1)
        for a, c in q.shift_monomial(h).terms.items():
            row[col_index[a]] = c
        row[-1] = evaluate(Polynomial.monomial(h), v)
        rows.append(row)
    reduced_rows, pivots = rref(rows, pivot_cols=len(cols))
    if len(pivots) != len(hs):  # pragma: no cover - multiplication by q is injective
        raise ArithmeticError("q * P_{<=D-deg q} lost dimension")
    values = {a: ZERO for a in cols}
    for row, pc in zip(reduced_rows, pivots):
        values[cols[pc]] = row[-1]
    S = FiniteFunctional(n, D, values)

    zero = ZERO if exact else 0j
    defect = 0.0
    kills = True
    for h in monomials_up_to(n, D - p.degree()):
        val = S(p.shift_monomial(h))
        if exact:
            kills = kills and val == zero
        else:
            defect = max(defect, abs(complex(val)))
    extends = True
    for h in hs:
        diff = S(q.shift_monomial(h)) - evaluate(Polynomial.monomial(h), v)
        if exact:
            extends = extends and diff == zero
        else:
            defect = max(defect, abs(complex(diff)))
    if not exact:
        kills = defect <= 1e-8
        extends = kills
    return Counterexample(functional=S, squarefree_part=q, repeated_part=rp, point=v,
                          kills_ideal=kills, value_on_squarefree=S(q),
                          extends_point_map=extends, max_defect=defect)


def dump_matrix(matrix, path) -> None:
    """Dense text dump: one row per line, entries ``re,im`` separated by spaces."""
    arr = np.asarray(matrix, dtype=complex)
    with open(path, "w") as fh:
        for row in arr:
            fh.write(" ".join(f"{x.real!r},{x.imag!r}" for x in row) + "\n")

