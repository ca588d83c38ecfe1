"""Squarefree (reduced) test and the split p = q * (p/q) with q the squarefree part."""

from __future__ import annotations

from dataclasses import dataclass

from .polycore import Polynomial, divide_exact, gcd_many, partial


@dataclass(frozen=True)
class ReducednessReport:
    is_reduced: bool
    squarefree_part: Polynomial
    repeated_part: Polynomial
    witness_gcd: Polynomial

    def to_dict(self) -> dict:
        return {
            "is_reduced": self.is_reduced,
            "squarefree_part": str(self.squarefree_part),
            "repeated_part": str(self.repeated_part),
            "witness_gcd": str(self.witness_gcd),
        }


def analyze(p: Polynomial) -> ReducednessReport:
    """Characteristic-zero criterion: p is reduced iff gcd(p, d1 p, ..., dn p) is constant.

    p / gcd is the product of the distinct irreducible factors of p; it is
    normalized to graded-lex leading coefficient 1. The repeated part absorbs
    the scalar, so squarefree_part * repeated_part == p exactly.
    """
    if p.is_zero or p.is_constant:
        raise ValueError("reducedness is only defined here for nonconstant polynomials")
    witness = gcd_many([p] + [partial(p, i) for i in range(p.nvars)])
    squarefree = divide_exact(p, witness).monic()
    repeated = divide_exact(p, squarefree)
    return ReducednessReport(
        is_reduced=witness.degree() == 0,
        squarefree_part=squarefree,
        repeated_part=repeated,
        witness_gcd=witness,
    )


def is_reduced(p: Polynomial) -> bool:
    return analyze(p).is_reduced
