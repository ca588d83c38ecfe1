"""Command-line entry point.

Exit codes: 0 when every assertion held, 1 when a mathematical assertion
failed, 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from datetime import datetime, timezone
from typing import Optional, Sequence

import numpy as np

from . import __version__
from . import suites
from .config import ConfigError, RunConfig, load_config
from .dualitylab import (counterexample, dump_matrix, exp_span_rank, kernel_basis, nullstellensatz_shadow,
                         operator_matrix, variety_samples)
from .expcalc import ExpPoly
from .functionals import ExpFunctional, diagram_check
from .growthlab import (GrowthError, PreconditionError, lemma31_check, lemma32_check, polya_szego_radius,
                        prop33_check, univariate_coefficients)
from .polycore import Polynomial
from .reducedness import analyze
from .textformat import ParseError, parse_scalar
from .variety import SamplingError, sample_many

EXIT_OK, EXIT_MATH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- parsing helpers ---------------------------------------------------------

def _poly(args, cfg: RunConfig, text: Optional[str] = None, flag: str = "-p/--poly") -> Polynomial:
    text = text if text is not None else args.poly
    if text is None:
        raise UsageError(f"{flag} is required")
    try:
        p = Polynomial.parse(text, args.nvars)
    except ParseError as exc:
        raise UsageError(f"cannot parse {flag}: {exc}") from None
    if p.nvars > cfg.nvars_max:
        raise UsageError(f"{p.nvars} variables exceed nvars_max = {cfg.nvars_max}")
    if p.degree() > cfg.deg_max:
        raise UsageError(f"degree {p.degree()} exceeds deg_max = {cfg.deg_max}")
    return p


def _degree(args, cfg: RunConfig, default: Optional[int] = None) -> int:
    D = args.degree if args.degree is not None else default
    if D is None:
        raise UsageError("-D/--degree is required")
    if not 0 <= D <= cfg.D_max:
        raise UsageError(f"degree bound {D} outside [0, D_max = {cfg.D_max}]")
    return D


def parse_complex_list(text: str) -> list[complex]:
    """Comma-separated coordinates: Python-style complex floats (``0.5-1.2i``, ``2j``)
    or the exact literal syntax (``(1/2+3/4i)``)."""
    out, pos = [], 0
    for piece in text.split(","):
        s = piece.strip()
        try:
            out.append(complex(s.replace(" ", "").replace("i", "j")))
        except ValueError:
            try:
                out.append(complex(parse_scalar(s)))
            except ParseError as exc:
                raise ParseError(f"bad coordinate: {exc.message}", text, pos + exc.pos) from None
        pos += len(piece) + 1
    return out


def _json_default(x):
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    return str(x)


# -- output ------------------------------------------------------------------

def _envelope(command: str, cfg: RunConfig, result: dict, ok: bool, timestamp: bool) -> dict:
    report = {"tool": "borelkit", "version": __version__, "command": command, "ok": ok,
              "config": cfg.to_dict(), "result": result}
    if timestamp:
        report["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return report


def _flatten(prefix: str, value, out: dict):
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(value, (list, tuple)) and not all(isinstance(v, (int, float, str)) for v in value):
        out[prefix] = json.dumps(value, default=_json_default)
    else:
        out[prefix] = value if not isinstance(value, (list, tuple)) else json.dumps(value, default=_json_default)


def _table(report: dict) -> tuple[list[str], list[dict]]:
    """CSV view: one row per entry of the first list of records, else one flattened row."""
    result = report["result"]
    for key in ("rows", "samples", "failures"):
        recs = result.get(key)
        if isinstance(recs, list) and recs and isinstance(recs[0], dict):
            rows = []
            for rec in recs:
                flat: dict = {}
                _flatten("", rec, flat)
                rows.append(flat)
            header = list(dict.fromkeys(k for r in rows for k in r))
            return header, rows
    flat: dict = {}
    _flatten("", {k: v for k, v in report.items() if k != "config"}, flat)
    return list(flat), [flat]


def render(report: dict, fmt: str, lines: Optional[list[dict]] = None) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, default=_json_default) + "\n"
    if fmt == "jsonl":
        if lines is not None:
            meta = {k: v for k, v in report.items() if k != "result"}
            body = [json.dumps({"meta": meta}, default=_json_default)]
            body += [json.dumps(rec, default=_json_default) for rec in lines]
            return "\n".join(body) + "\n"
        return json.dumps(report, default=_json_default) + "\n"
    header, rows = _table(report)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def write_atomic(path: str, text: str, append: bool = False) -> None:
    """Replace ``path`` through a temporary file in the same directory.

    In append mode the new text is added to the existing content and the
    result is swapped in the same way, so readers never see a partial line.
    """
    directory = os.path.dirname(os.path.abspath(path))
    if append and os.path.exists(path):
        with open(path) as fh:
            text = fh.read() + text
    fd, tmp = tempfile.mkstemp(prefix=".borelkit-", dir=directory)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- subcommands ---------------------------------------------------------------
# each returns (ok, result dict[, jsonl records])

def cmd_reduce_check(args, cfg):
    p = _poly(args, cfg)
    if p.is_constant:
        raise UsageError("reducedness needs a nonconstant polynomial")
    return True, analyze(p).to_dict()


def cmd_kernel_dim(args, cfg):
    p = _poly(args, cfg)
    D = _degree(args, cfg)
    if p.is_constant:
        raise UsageError("p must be nonconstant")
    kern = kernel_basis(p, D)
    if args.dump_matrix:
        dump_matrix([[complex(c) for c in row] for row in operator_matrix(p, D)[0]], args.dump_matrix)
    result = kern.to_dict()
    return kern.dim == kern.predicted_dim, result


def cmd_exp_rank(args, cfg):
    p = _poly(args, cfg)
    D = _degree(args, cfg, 3)
    if p.is_constant:
        raise UsageError("p must be nonconstant")
    kern = kernel_basis(p, D)
    count = args.samples or 3 * kern.dim
    try:
        samples = variety_samples(p, count, cfg.seed, tol_rel=cfg.residual_rel)
    except SamplingError as exc:
        return False, {"error": str(exc)}
    rep = exp_span_rank(p, D, samples, tol=cfg.rank_rel, kernel=kern, residual_tol=cfg.residual_rel)
    reduced = analyze(p).is_reduced
    result = rep.to_dict()
    result["p_reduced"] = reduced
    result["expected"] = "saturates" if reduced else "deficient"
    # sampled exponentials must lie in the exact kernel; anything else is a bug
    return rep.kernel_residual <= 1e-6, result


def cmd_diagram_check(args, cfg):
    if args.random:
        rep = suites.diagram_suite(args.random, cfg.seed)
        return rep["passed"], rep
    p = _poly(args, cfg)
    if args.functional is None:
        raise UsageError("-T/--functional is required unless --random is given")
    try:
        T = ExpFunctional.parse(args.functional, p.nvars)
    except ParseError as exc:
        raise UsageError(f"cannot parse -T/--functional: {exc}") from None
    residual = diagram_check(p, T)
    return residual.is_zero, {"p": str(p), "T": str(T), "residual": str(residual),
                              "exact_zero": residual.is_zero}


def cmd_growth_check(args, cfg):
    p = _poly(args, cfg)
    n = p.nvars
    if p.is_zero:
        raise UsageError("p must be nonzero")
    try:
        f = ExpPoly.parse(args.function, n) if args.function else ExpPoly.from_polynomial(Polynomial.one(n))
        xi = parse_complex_list(args.xi) if args.xi else [0j] * n
    except ParseError as exc:
        raise UsageError(str(exc)) from None
    if len(xi) != n:
        raise UsageError(f"--xi has {len(xi)} coordinates, expected {n}")
    if not args.A > 0 or not args.r > 0:
        raise UsageError("A and r must be positive")
    try:
        if args.statement == "l31":
            if n != 1:
                raise UsageError("l31 is univariate")
            if p.is_constant:
                raise UsageError("l31 needs a nonconstant polynomial")
            cert = lemma31_check(p, xi[0], args.r, args.A, f, M=args.M)
            result = cert.to_dict()
            try:
                rc = polya_szego_radius(p, xi[0], args.r)
                again = rc.revalidate(univariate_coefficients(p), xi[0])
                result["polya_szego"] = {**rc.to_dict(), "revalidated_10x": again}
                ok = not cert.violated and again
            except GrowthError as exc:
                result["polya_szego"] = {"error": str(exc)}
                ok = False
            return ok, result
        if args.statement == "l32":
            cert = lemma32_check(p, xi, args.r, args.A, f, M=args.M, seed=cfg.seed)
        else:
            cert = prop33_check(p, args.A, f, R_max=cfg.R_max, r=args.r, radii=cfg.radii,
                                angles=cfg.angles, seed=cfg.seed)
    except PreconditionError as exc:
        raise UsageError(f"precondition rejected: {exc}") from None
    except GrowthError as exc:
        raise UsageError(str(exc)) from None
    result = cert.to_dict()
    result["note"] = "sampled sup-norms are lower bounds: a violation falsifies, a pass is evidence"
    return not cert.violated, result


def cmd_counterexample(args, cfg):
    p = _poly(args, cfg)
    D = _degree(args, cfg, 6)
    point = None
    if args.point:
        try:
            point = [parse_scalar(s) for s in args.point.split(",")]
        except ParseError as exc:
            raise UsageError(f"cannot parse --point: {exc}") from None
    if p.is_constant:
        raise UsageError("p must be nonconstant")
    try:
        ce = counterexample(p, D, point)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return ce.verified, ce.to_dict()


def cmd_nst_shadow(args, cfg):
    p = _poly(args, cfg)
    if args.f is None:
        raise UsageError("-f is required")
    try:
        f = Polynomial.parse(args.f, p.nvars)
    except ParseError as exc:
        raise UsageError(f"cannot parse -f: {exc}") from None
    if p.is_constant:
        raise UsageError("p must be nonconstant")
    q = analyze(p).squarefree_part
    count = args.samples or (8 if p.nvars > 1 else q.degree())
    try:
        samples = variety_samples(p, count, cfg.seed, tol_rel=cfg.residual_rel)
    except SamplingError as exc:
        return False, {"error": str(exc)}
    verdict = nullstellensatz_shadow(p, f, samples, tol=cfg.eval_rel)
    result = {"p": str(p), "f": str(f), "samples": len(samples), **verdict.to_dict()}
    return verdict.ok, result


def cmd_sample_variety(args, cfg):
    p = _poly(args, cfg)
    if p.is_constant:
        raise UsageError("p must be nonconstant")
    try:
        samples = sample_many(p, args.samples or 10, cfg.seed, tol_rel=cfg.residual_rel)
    except SamplingError as exc:
        return False, {"error": str(exc)}, []
    recs = [s.to_dict() for s in samples]
    return True, {"p": str(p), "count": len(recs), "samples": recs}, recs


def cmd_selftest(args, cfg):
    reports = suites.run_all(cfg.seed) if args.full else suites.quick_suites(cfg.seed)
    summary = suites.summarize(reports)
    return summary["passed"], {**summary, "mode": "full" if args.full else "quick", "reports": reports}


COMMANDS = {
    "reduce-check": (cmd_reduce_check, "squarefree test and squarefree part"),
    "kernel-dim": (cmd_kernel_dim, "exact degree-bounded kernel of the operator p(d)"),
    "exp-rank": (cmd_exp_rank, "numerical rank of sampled exponentials on V_p"),
    "diagram-check": (cmd_diagram_check, "exact transform/multiplication commutation check"),
    "growth-check": (cmd_growth_check, "sampled minimum-modulus and growth estimates"),
    "counterexample": (cmd_counterexample, "functional separating the squarefree part (non-reduced p)"),
    "nst-shadow": (cmd_nst_shadow, "sampled vanishing followed by exact division"),
    "sample-variety": (cmd_sample_variety, "certified points of V_p, JSON lines"),
    "selftest": (cmd_selftest, "run the property suites"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", "--poly", help="polynomial, e.g. 'z1^2+z2^2-1'")
    common.add_argument("-n", "--nvars", type=int, help="number of variables (default: largest index used)")
    common.add_argument("-D", "--degree", type=int, help="degree bound")
    common.add_argument("--seed", type=int)
    common.add_argument("--samples", type=int, help="number of variety samples")
    common.add_argument("--tol-residual", type=float, dest="residual_rel")
    common.add_argument("--tol-rank", type=float, dest="rank_rel")
    common.add_argument("--tol-eval", type=float, dest="eval_rel")
    common.add_argument("--radii", type=int)
    common.add_argument("--angles", type=int)
    common.add_argument("--R-max", type=float, dest="R_max")
    common.add_argument("--config", help="flat 'key = value' config file")
    common.add_argument("--output", help="report path (default: stdout)")
    common.add_argument("--format", choices=("json", "jsonl", "csv"))
    common.add_argument("--no-timestamp", action="store_true", help="omit the timestamp field")

    parser = argparse.ArgumentParser(prog="borelkit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"borelkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {name: sub.add_parser(name, parents=[common], help=text, description=text)
            for name, (_, text) in COMMANDS.items()}
    subs["kernel-dim"].add_argument("--dump-matrix", metavar="PATH",
                                    help="write the operator matrix as dense text")
    subs["diagram-check"].add_argument("-T", "--functional", help="e.g. '[z1] @ (1,0) + [1] @ (0,i)'")
    subs["diagram-check"].add_argument("--random", type=int, metavar="N", help="N random cases")
    g = subs["growth-check"]
    g.add_argument("--statement", choices=("l31", "l32", "p33"), required=True)
    g.add_argument("-A", type=float, default=1.0, help="growth rate")
    g.add_argument("-r", type=float, default=1.0, help="disk / polydisk radius")
    g.add_argument("--xi", help="comma-separated centre coordinates")
    g.add_argument("-f", "--function", help="exponential-polynomial '[Q] * exp(<w>) + ...'")
    g.add_argument("--M", type=float, help="manual majorant (default: fitted)")
    subs["counterexample"].add_argument("--point", help="exact point of V_{p/q}, comma-separated")
    subs["nst-shadow"].add_argument("-f", help="polynomial tested for vanishing on V_p")
    subs["selftest"].add_argument("--full", action="store_true", help="full acceptance sizes")
    return parser


def effective_config(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    return cfg.replace(seed=args.seed, residual_rel=args.residual_rel, rank_rel=args.rank_rel,
                       eval_rel=args.eval_rel, radii=args.radii, angles=args.angles, R_max=args.R_max,
                       output=args.output, format=args.format)


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        cfg = effective_config(args)
        if args.command == "sample-variety" and args.format is None and cfg.format == "json":
            cfg = cfg.replace(format="jsonl")  # JSON lines unless --format says otherwise
        handler = COMMANDS[args.command][0]
        out = handler(args, cfg)
    except (UsageError, ConfigError) as exc:
        print(f"borelkit {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    ok, result = out[0], out[1]
    lines = out[2] if len(out) > 2 else None
    report = _envelope(args.command, cfg, result, bool(ok), not args.no_timestamp)
    text = render(report, cfg.format, lines)
    if cfg.output:
        write_atomic(cfg.output, text, append=cfg.format == "jsonl")
    else:
        stdout.write(text)
    return EXIT_OK if ok else EXIT_MATH


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
