"""Paired strategy comparison: exact binomial sign test and ratio tables."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class SignTestResult:
    n_less: int
    n_greater: int
    n_equal: int
    p_value: float
    corrected_p: float
    p_exact: Fraction
    significant_1e2: bool
    significant_1e4: bool
    all_equal: bool = False


def binomial_upper_tail(n: int, k: int) -> Fraction:
    """P(X >= k) for X ~ Binomial(n, 1/2), exact."""
    if k <= 0:
        return Fraction(1)
    if k > n:
        return Fraction(0)
    return Fraction(sum(math.comb(n, j) for j in range(k, n + 1)), 2**n)


def sign_test(
    costs_i, costs_j, correction_factor: int = 112
) -> SignTestResult:
    """One-sided sign test: is variant i better than variant j?

    Counts strict per-instance wins each way; ties are excluded from the
    trial count. The p-value is the exact upper tail of
    Binomial(n_less + n_greater, 0.5) at n_less, Bonferroni-corrected.
    """
    if len(costs_i) != len(costs_j):
        raise ValueError("paired samples must have equal length")
    if correction_factor < 1:
        raise ValueError("correction factor must be a positive integer")
    n_less = sum(1 for a, b in zip(costs_i, costs_j) if a < b)
    n_greater = sum(1 for a, b in zip(costs_i, costs_j) if a > b)
    n_equal = len(costs_i) - n_less - n_greater
    n = n_less + n_greater
    p_exact = binomial_upper_tail(n, n_less)  # n == 0 gives p = 1
    p = float(p_exact)
    corrected = min(1.0, p * correction_factor)
    return SignTestResult(
        n_less=n_less,
        n_greater=n_greater,
        n_equal=n_equal,
        p_value=p,
        corrected_p=corrected,
        p_exact=p_exact,
        significant_1e2=corrected < 1e-2,
        significant_1e4=corrected < 1e-4,
        all_equal=(n == 0),
    )


def quantile_ratio_table(costs_a, costs_b) -> list[tuple[float, float]]:
    """Sorted per-instance cost ratios a/b with their quantile positions.

    Pairs with zero denominator are excluded (reported via the skipped
    count on the returned list's diagnostics by the caller).
    """
    ratios = []
    skipped = 0
    for a, b in zip(costs_a, costs_b):
        if b == 0:
            skipped += 1
            continue
        ratios.append(float(Fraction(a) / Fraction(b)) if not isinstance(a, float) else a / b)
    ratios.sort()
    n = len(ratios)
    table = [((i + 1) / n, r) for i, r in enumerate(ratios)]
    if skipped:
        import logging

        logging.getLogger(__name__).warning(
            "quantile_ratio_table: excluded %d pairs with zero denominator", skipped
        )
    return table
