"""Independent brute-force oracles used to freeze expected values.

These deliberately avoid the library's recurrences: partitions are
enumerated as ascending compositions, plane partitions by recursive
row-stacking under the monotonicity constraints.
"""

from __future__ import annotations


def partitions_by_parts(n: int) -> dict:
    """{k: number of partitions of n with exactly k parts}, by enumeration."""
    counts: dict[int, int] = {}

    def walk(remaining, minimum, parts):
        if remaining == 0:
            counts[parts] = counts.get(parts, 0) + 1
            return
        a = minimum
        while a <= remaining:
            walk(remaining - a, a, parts + 1)
            a += 1

    walk(n, 1, 0)
    return counts


def partition_count_enum(n: int) -> int:
    return sum(partitions_by_parts(n).values())


def _rows_under(cap, budget):
    """All nonempty weakly decreasing rows with row[j] <= cap[j], sum <= budget."""
    out = []

    def fill(j, left, last, row):
        if row:
            out.append(list(row))
        if j >= len(cap) or left == 0:
            return
        top = min(cap[j], last, left)
        for v in range(top, 0, -1):
            row.append(v)
            fill(j + 1, left - v, v, row)
            row.pop()

    fill(0, budget, budget, [])
    return out


def plane_partitions_by_trace(n: int) -> dict:
    """{trace: count} over all plane partitions of n, by enumeration.

    A plane partition is a 2-D array of positive integers with weakly
    decreasing rows and columns; its trace is the diagonal sum.
    """
    counts: dict[int, int] = {}

    def rec(remaining, prev_row, depth, diag):
        if remaining == 0:
            counts[diag] = counts.get(diag, 0) + 1
            return
        for row in _rows_under(prev_row, remaining):
            s = sum(row)
            rec(remaining - s, row, depth + 1,
                diag + (row[depth + 1] if depth + 1 < len(row) else 0))

    for first in _rows_under([n] * n, n):
        s = sum(first)
        rec(n - s, first, 0, first[0])
    return counts
