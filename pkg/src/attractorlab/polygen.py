"""Exact coefficient generation for partition and plane-partition polynomials.

F_n(x) = sum_k p_k(n) x^k, where p_k(n) counts partitions of n with exactly
k parts; Q_n(x) = sum_m q_m(n) x^m, where q_m(n) counts plane partitions of
n with trace m.  All coefficients are exact Python integers.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import mpmath as mp


class PolyKind(enum.Enum):
    PARTITION = "partition"
    PLANE_PARTITION = "plane"


@dataclass(frozen=True)
class ExactPolynomial:
    """Degree-n polynomial with exact nonnegative integer coefficients.

    coeffs[k] is the coefficient of x^k, k = 0..degree.
    """

    degree: int
    coeffs: tuple
    kind: PolyKind

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be >= 1")
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("coeffs must have degree+1 entries")

    def coefficient_sum(self) -> int:
        return sum(self.coeffs)

    def __call__(self, x):
        """Evaluate by Horner in whatever arithmetic x supports."""
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


@dataclass(frozen=True)
class DigitStats:
    max_digits: int
    argmax_index: int
    unimodal: bool


def partition_coeffs(n: int) -> ExactPolynomial:
    """Exact coefficients of F_n(x).

    Uses the parts-bounded partition table: p_k(n) equals the number of
    partitions of n-k into parts of size at most k, so one rolling row
    row[m] = p_{<=k}(m), updated in place for k = 1..n, yields every
    coefficient in O(n^2) big-integer additions and O(n) memory.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    row = [0] * (n + 1)
    row[0] = 1
    coeffs = [0] * (n + 1)
    for k in range(1, n + 1):
        # ascending m keeps the p_{<=k}(m-k) term at the current k
        for m in range(k, n + 1):
            row[m] += row[m - k]
        coeffs[k] = row[n - k]
    return ExactPolynomial(n, tuple(coeffs), PolyKind.PARTITION)


def partition_count(n: int) -> int:
    """p(n), computed as the coefficient sum of F_n."""
    return partition_coeffs(n).coefficient_sum()


def partition_count_table(nmax: int) -> list:
    """[p(0), p(1), ..., p(nmax)] in a single O(nmax^2) sweep.

    Batch companion to partition_count: p(n) = sum_k p_k(n) accumulated
    while the rolling parts-bounded row is built.
    """
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    row = [0] * (nmax + 1)
    row[0] = 1
    sums = [0] * (nmax + 1)
    sums[0] = 1
    for k in range(1, nmax + 1):
        for m in range(k, nmax + 1):
            row[m] += row[m - k]
        for n in range(k, nmax + 1):
            sums[n] += row[n - k]
    return sums


def pentagonal_count_table(nmax: int) -> list:
    """[p(0), ..., p(nmax)] from Euler's pentagonal-number recurrence.

    Independent of the parts-bounded table; used as a cross-check oracle.
    """
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    p = [0] * (nmax + 1)
    p[0] = 1
    for n in range(1, nmax + 1):
        total = 0
        j = 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > n:
                break
            sign = 1 if j % 2 == 1 else -1
            total += sign * p[n - g1]
            g2 = j * (3 * j + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            j += 1
        p[n] = total
    return p


def hardy_ramanujan_estimate(n: int, dps: int = 30):
    """Leading-order estimate (1/(4n*sqrt(3))) * exp(pi*sqrt(2n/3)) as mpf.

    The true p(n) equals this times 1 + O(1/sqrt(n)).
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    # enough working digits to hold the huge exponential exactly at dps
    work = dps + int(math.pi * math.sqrt(2 * n / 3) / math.log(10)) + 10
    with mp.workdps(work):
        nn = mp.mpf(n)
        val = mp.exp(mp.pi * mp.sqrt(2 * nn / 3)) / (4 * nn * mp.sqrt(3))
        return +val


def plane_partition_coeffs(n: int) -> ExactPolynomial:
    """Exact coefficients of Q_n(x), by expanding prod_k (1 - x u^k)^(-k).

    Factors with k > n cannot reach order u^n, so the product is truncated
    at k = n and every series at u^n.  Each factor is applied as k passes
    of the geometric factor (1 - x u^k)^(-1); an x-shifted in-place update
    keeps the arithmetic to exact integer lists.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    # series[m] = coefficient of u^m, itself an integer polynomial in x
    series: list[list[int]] = [[] for _ in range(n + 1)]
    series[0] = [1]
    for k in range(1, n + 1):
        for _ in range(k):
            for m in range(k, n + 1):
                low = series[m - k]
                if not low:
                    continue
                tgt = series[m]
                need = len(low) + 1
                if len(tgt) < need:
                    tgt.extend([0] * (need - len(tgt)))
                for j, cj in enumerate(low):
                    tgt[j + 1] += cj
    coeffs = series[n] + [0] * (n + 1 - len(series[n]))
    return ExactPolynomial(n, tuple(coeffs[: n + 1]), PolyKind.PLANE_PARTITION)


def digit_stats(p: ExactPolynomial) -> DigitStats:
    """Decimal-digit statistics of the coefficient sequence."""
    best = 0
    arg = 0
    for k, c in enumerate(p.coeffs):
        d = len(str(c)) if c > 0 else 0
        if d > best:
            best = d
            arg = k
    return DigitStats(max_digits=best, argmax_index=arg, unimodal=_is_unimodal(p.coeffs))


def _is_unimodal(coeffs: Sequence[int]) -> bool:
    """True if the nonzero coefficient run rises then falls (weakly)."""
    vals = [c for c in coeffs if c > 0]
    falling = False
    for a, b in zip(vals, vals[1:]):
        if b < a:
            falling = True
        elif b > a and falling:
            return False
    return True
