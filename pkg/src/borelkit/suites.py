"""Acceptance suites. Each returns a JSON-able report that depends only on its inputs.

Wall-clock times are deliberately left out of the reports so that two runs
with the same seed serialize identically.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional

from . import fixtures as fx
from .config import RunConfig
from .dualitylab import counterexample, exp_span_rank, kernel_basis, nullstellensatz_shadow, variety_samples
from .expcalc import apply_operator, truncate
from .functionals import diagram_check
from .growthlab import (GrowthError, univariate_coefficients, lemma31_check, lemma32_check, polya_szego_radius,
                        prop33_check)
from .polycore import Polynomial, associated, divide_exact, monomials_up_to, num_monomials
from .reducedness import analyze


def fixture_poly(text: str) -> Polynomial:
    """Fixtures live in at least two variables (z1^2 is the planar double line)."""
    return fx.poly(text, max(2, fx.nvars_of(text)))


def diagram_suite(count: int = 500, seed: int = 0) -> dict:
    g = fx.rng(seed, 1)
    failures = []
    for k in range(count):
        p, T = fx.random_diagram_case(g)
        residual = diagram_check(p, T)
        if not residual.is_zero:
            failures.append({"case": k, "p": str(p), "T": str(T), "residual": str(residual)})
    return {"criterion": 1, "name": "diagram", "cases": count, "exact_zero": count - len(failures),
            "failures": failures, "passed": not failures}


def reducedness_suite(count: int = 200, seed: int = 0) -> dict:
    g = fx.rng(seed, 2)
    failures = []
    reduced_cases = 0
    for k in range(count):
        case = fx.constructed_reducedness_case(g)
        p, rep = case["p"], analyze(case["p"])
        q = rep.squarefree_part
        checks = {
            "verdict": rep.is_reduced == case["reduced"],
            "radical": associated(q, case["radical"]),
            "q_divides_p": divide_exact(p, q) is not None,
            "p_divides_q_power": divide_exact(q ** case["max_multiplicity"], p) is not None,
            "product": q * rep.repeated_part == p,
        }
        reduced_cases += case["reduced"]
        if not all(checks.values()):
            failures.append({"case": k, "p": str(p), "checks": checks})
    return {"criterion": 2, "name": "reducedness", "cases": count, "reduced_cases": reduced_cases,
            "failures": failures, "passed": not failures}


def kernel_suite(degrees=range(2, 7), polys=fx.KERNEL_GRID) -> dict:
    rows = []
    ok = True
    for text in polys:
        p = fixture_poly(text)
        for D in degrees:
            kern = kernel_basis(p, D)
            n, m = p.nvars, p.degree()
            formula = num_monomials(n, D) - num_monomials(n, D - m)
            truncated = all(truncate(apply_operator(p, f), D - m).is_zero for f in kern.basis)
            # a homogeneous operator preserves degree, so the truncation is vacuous
            exact = all(apply_operator(p, f).is_zero for f in kern.basis) if p.is_homogeneous() else None
            good = kern.dim == formula and truncated and exact is not False
            ok = ok and good
            rows.append({"p": text, "nvars": n, "D": D, "kernel_dim": kern.dim, "formula": formula,
                         "annihilated_truncated": truncated, "annihilated_exact": exact, "ok": good})
    return {"criterion": 3, "name": "kernel", "rows": rows, "passed": ok}


def dichotomy_suite(degrees=(2, 3, 4), seed: int = 0, tol: float = 1e-8, residual_rel: float = 1e-10,
                    reduced=fx.REDUCED, non_reduced=fx.NON_REDUCED) -> dict:
    rows = []
    ok = True
    for text in tuple(reduced) + tuple(non_reduced):
        p = fixture_poly(text)
        is_red = text in reduced
        for D in degrees:
            kern = kernel_basis(p, D)
            samples = variety_samples(p, 3 * kern.dim, seed, tol_rel=residual_rel)
            rep = exp_span_rank(p, D, samples, tol=tol, kernel=kern)
            expected = "saturates" if is_red else "deficient"
            good = rep.verdict == expected
            if text == "z1^2":
                good = good and rep.numerical_rank == D + 1 and kern.dim == 2 * D + 1
            ok = ok and good
            rows.append({"p": text, "D": D, "kernel_dim": rep.kernel_dim,
                         "numerical_rank": rep.numerical_rank, "samples": rep.sample_count,
                         "verdict": rep.verdict, "expected": expected,
                         "smallest_kept_sv": _smallest_kept(rep), "ok": good})
    return {"criterion": 4, "name": "dichotomy", "rank_tol": tol, "rows": rows, "passed": ok}


def _smallest_kept(rep) -> Optional[float]:
    sv = rep.singular_values
    if not sv or not rep.numerical_rank:
        return None
    return float(sv[rep.numerical_rank - 1] / sv[0])


def counterexample_suite(D: int = 6, polys=fx.NON_REDUCED) -> dict:
    rows = []
    ok = True
    for text in polys:
        p = fixture_poly(text)
        ce = counterexample(p, D)
        S, q = ce.functional, ce.squarefree_part
        kills = all(not S(p.shift_monomial(h)) for h in _monomials(p.nvars, D - p.degree()))
        one = S(q) == 1
        good = bool(ce.verified and kills and one)
        ok = ok and good
        rows.append({"p": text, "D": D, "squarefree_part": str(q), "point": [str(c) for c in ce.point],
                     "kills_ideal": kills, "value_on_squarefree": str(S(q)), "ok": good})
    return {"criterion": 5, "name": "counterexample", "rows": rows, "passed": ok}


def _monomials(n, d):
    return monomials_up_to(n, d) if d >= 0 else []


def _exact_constant_ok(d: int, r: float, c_text: str) -> bool:
    # independent route: c * 2 r^d must equal 4^d as rationals
    num, den = (int(x) for x in c_text.split("/"))
    return Fraction(num, den) * 2 * Fraction(r) ** d == 4 ** d


def growth_suite(configs: int = 50, seed: int = 0, cfg: Optional[RunConfig] = None) -> dict:
    cfg = cfg or RunConfig(seed=seed)
    g = fx.rng(seed, 6)
    multi = fx.REDUCED + fx.NON_REDUCED
    out = {"lemma31": [], "lemma32": [], "prop33": []}
    violations = 0
    constants_ok = True
    ps_ok = True

    def draw():
        return float(g.uniform(0.1, 2.0)), float(g.uniform(0.5, 4.0))

    for k in range(configs):
        A, r = draw()
        text = fx.UNIVARIATE[k % len(fx.UNIVARIATE)]
        p = fx.poly(text, 1)
        xi = complex(*g.uniform(-2, 2, 2))
        f = fx.random_exppoly(g, 1, A)
        cert = lemma31_check(p, xi, r, A, f)
        c_ok = (_exact_constant_ok(p.degree(), r, cert.constants["c"])
                and float(Fraction(cert.constants["c"])) == cert.constants["c_float"])
        try:
            rc = polya_szego_radius(p, xi, r)
            ps = rc.revalidate(univariate_coefficients(p), xi) and 0 < rc.rho <= r
            rho = rc.rho
        except GrowthError:
            ps, rho = False, None
        violations += cert.violated
        constants_ok = constants_ok and c_ok
        ps_ok = ps_ok and ps
        out["lemma31"].append({"p": text, "A": A, "r": r, "xi": [xi.real, xi.imag],
                               "relative_slack": cert.relative_slack, "violated": cert.violated,
                               "c": cert.constants["c"], "constant_exact": c_ok,
                               "ps_rho": rho, "ps_certified": ps})

    for k in range(configs):
        A, r = draw()
        text = multi[k % len(multi)]
        p = fixture_poly(text)
        xi = g.uniform(-2, 2, p.nvars) + 1j * g.uniform(-2, 2, p.nvars)
        f = fx.random_exppoly(g, p.nvars, A)
        cert = lemma32_check(p, xi, r, A, f, seed=seed)
        c_ok = all(d == 0 and c == "1/1" or d >= 1 and _exact_constant_ok(d, r, c)
                   for d, c in zip(cert.constants["d"], cert.constants["c"]))
        violations += cert.violated
        constants_ok = constants_ok and c_ok
        out["lemma32"].append({"p": text, "A": A, "r": r, "relative_slack": cert.relative_slack,
                               "violated": cert.violated, "c_hat": cert.constants["c_hat"],
                               "constant_exact": c_ok})

    for k in range(configs):
        A, r = draw()
        text = multi[k % len(multi)]
        p = fixture_poly(text)
        F = fx.random_exppoly(g, p.nvars, 0.9 * A)
        cert = prop33_check(p, A, F, R_max=cfg.R_max, r=r, radii=cfg.radii, angles=cfg.angles, seed=seed)
        c_ok = all(d == 0 and c == "1/1" or d >= 1 and _exact_constant_ok(d, r, c)
                   for d, c in zip(cert.constants["d"], cert.constants["c"]))
        violations += cert.violated
        constants_ok = constants_ok and c_ok
        out["prop33"].append({"p": text, "A": A, "r": r, "relative_slack": cert.relative_slack,
                              "violated": cert.violated, "c_A": cert.constants["c_A"],
                              "constant_exact": c_ok})

    return {"criterion": 6, "name": "growth", "configs": configs, "violations": violations,
            "constants_exact": constants_ok, "polya_szego_certified": ps_ok,
            "min_relative_slack": {k: min(row["relative_slack"] for row in v) for k, v in out.items()},
            "cases": out, "passed": violations == 0 and constants_ok and ps_ok}


def nst_suite(count: int = 50, seed: int = 0, tol: float = 1e-8, residual_rel: float = 1e-10) -> dict:
    g = fx.rng(seed, 7)
    rows = []
    ok = True
    for k in range(count):
        if k % 2 == 0:
            text = fx.REDUCED[(k // 2) % len(fx.REDUCED)]
            p = fixture_poly(text)
        else:
            while True:
                case = fx.constructed_reducedness_case(g)
                if case["reduced"]:
                    break
            p = case["p"]
        gq = fx.random_polynomial(g, p.nvars, int(g.integers(0, 4)), max_terms=4)
        f = p * gq
        q = analyze(p).squarefree_part
        count_pts = 8 if p.nvars > 1 else q.degree()
        samples = variety_samples(p, count_pts, int(fx.rng(seed, 7, k).integers(2 ** 31)),
                                  tol_rel=residual_rel)
        verdict = nullstellensatz_shadow(p, f, samples, tol=tol)
        control = nullstellensatz_shadow(p, f + Polynomial.one(p.nvars), samples, tol=tol)
        good = (verdict.status == "divisible" and verdict.quotient == gq
                and control.status == "does-not-vanish")
        ok = ok and good
        rows.append({"p": str(p), "g": str(gq), "status": verdict.status,
                     "quotient_matches": verdict.quotient == gq, "control": control.status,
                     "max_ratio": verdict.max_ratio, "ok": good})
    p, f = fx.poly("z1^2", 1), fx.poly("z1", 1)
    gap = nullstellensatz_shadow(p, f, variety_samples(p, 1, seed), tol=tol)
    gap_ok = gap.status == "division-gap"
    return {"criterion": 7, "name": "nullstellensatz", "cases": rows,
            "canonical_gap": {"p": "z1^2", "f": "z1", **gap.to_dict()},
            "passed": ok and gap_ok}


SUITES: dict[int, Callable[..., dict]] = {
    1: diagram_suite,
    2: reducedness_suite,
    3: lambda seed=0: kernel_suite(),
    4: dichotomy_suite,
    5: lambda seed=0: counterexample_suite(),
    6: growth_suite,
    7: nst_suite,
}


def run_criterion(k: int, seed: int = 0) -> dict:
    return SUITES[k](seed=seed)


def run_all(seed: int = 0) -> list[dict]:
    return [run_criterion(k, seed) for k in sorted(SUITES)]


def quick_suites(seed: int = 0) -> list[dict]:
    """Reduced sizes of every suite, for the CLI selftest."""
    return [
        diagram_suite(50, seed),
        reducedness_suite(40, seed),
        kernel_suite(degrees=(2, 3, 4)),
        dichotomy_suite(degrees=(2, 3), seed=seed),
        counterexample_suite(D=5),
        growth_suite(configs=6, seed=seed, cfg=RunConfig(seed=seed, radii=24, angles=48)),
        nst_suite(10, seed),
    ]


def summarize(reports: list[dict]) -> dict:
    return {"passed": all(r["passed"] for r in reports),
            "criteria": {str(r["criterion"]): r["passed"] for r in reports}}


__all__ = ["diagram_suite", "reducedness_suite", "kernel_suite", "dichotomy_suite",
           "counterexample_suite", "growth_suite", "nst_suite", "run_criterion", "run_all",
           "quick_suites", "summarize", "fixture_poly", "SUITES"]
