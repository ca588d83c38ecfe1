"""Rank of sampled exponentials against the exact kernel dimension, over D.

Prints one row per (p, D): kernel dim, numerical rank, verdict and the
relative size of the smallest retained singular value (the rank margin).

    python3 scripts/dichotomy_sweep.py --D-max 6 --oversample 3 -p "z1^2+z2^2" -p "z1^2*z2"
"""

import argparse

from borelkit import fixtures as fx
from borelkit.config import RunConfig
from borelkit.dualitylab import exp_span_rank, kernel_basis, variety_samples
from borelkit.suites import fixture_poly


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("-p", action="append", help="polynomial (repeatable); default: the dichotomy fixtures")
    ap.add_argument("--D-max", type=int, default=5)
    ap.add_argument("--oversample", type=float, default=3.0)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = RunConfig(seed=args.seed)

    print(f"{'p':<22} {'D':>2} {'kernel':>6} {'rank':>5} {'margin':>9}  verdict")
    for text in args.p or (fx.REDUCED + fx.NON_REDUCED):
        p = fixture_poly(text)
        for D in range(1, args.D_max + 1):
            kern = kernel_basis(p, D)
            samples = variety_samples(p, int(args.oversample * kern.dim) + 1, cfg.seed,
                                      tol_rel=cfg.residual_rel)
            rep = exp_span_rank(p, D, samples, tol=cfg.rank_rel, kernel=kern)
            sv = rep.singular_values
            margin = sv[rep.numerical_rank - 1] / sv[0] if rep.numerical_rank else float("nan")
            print(f"{text:<22} {D:>2} {kern.dim:>6} {rep.numerical_rank:>5} {margin:9.2e}  {rep.verdict}")


if __name__ == "__main__":
    main()
