"""Range-minimum queries over an LCP array, plus l-interval enumeration.

Queries use the 1-based indexing of LCP arrays: for a multiset of total
length n the entries sit at positions 1..n-1 and a query covers a half-open
range [i..j) with 1 <= i < j <= n.  Ties resolve to the leftmost position.

An l-interval [lo..hi) is a maximal run of suffix ranks whose interior LCP
minimum is l: entries strictly inside are >= l with minimum exactly l (OMEGA
for singletons and runs of identical suffixes) and the boundary entries are
< l or at the array ends.  These are exactly the intervals of suffixes
sharing a common prefix, which is what the inference algorithms split on.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cyclic import OMEGA


class RmqIndex:
    """Sparse table; O(n log n) build, O(1) leftmost-minimum queries."""

    __slots__ = ("n", "_table", "_log", "_values")

    def __init__(self, entries):
        # values[0] is padding so queries can use 1-based LCP positions
        values = [OMEGA] + list(entries)
        n = len(values)
        self.n = n
        log = [0] * (n + 1)
        for i in range(2, n + 1):
            log[i] = log[i >> 1] + 1
        self._log = log
        table = [list(range(n))]
        level = 0
        while (2 << level) <= n:
            prev = table[level]
            half = 1 << level
            row = []
            for i in range(n - (2 << level) + 1):
                a, b = prev[i], prev[i + half]
                row.append(a if values[a] <= values[b] else b)
            table.append(row)
            level += 1
        self._table = table
        self._values = values

    def query(self, i: int, j: int) -> int:
        """Position of the leftmost minimum in [i..j), 1-based."""
        if not 1 <= i < j <= self.n:
            raise ValueError(f"bad RMQ range [{i}..{j}) for n={self.n}")
        k = self._log[j - i]
        a = self._table[k][i]
        b = self._table[k][j - (1 << k)]
        return a if self._values[a] <= self._values[b] else b

    def value(self, pos: int):
        return self._values[pos]


def build_rmq(entries) -> RmqIndex:
    return RmqIndex(entries)


def rmq_query(idx: RmqIndex, i: int, j: int) -> int:
    return idx.query(i, j)


@dataclass(frozen=True)
class LInterval:
    lo: int
    hi: int
    value: "int | float"


def enumerate_l_intervals(entries) -> list[LInterval]:
    """All l-intervals of an LCP array, by recursive splitting at interior
    minima.  O(n) intervals total; depth-first order."""
    n = len(entries) + 1
    if n == 1:
        return [LInterval(0, 1, OMEGA)]
    idx = RmqIndex(entries)
    out = []
    stack = [(0, n)]
    while stack:
        lo, hi = stack.pop()
        if hi - lo == 1:
            out.append(LInterval(lo, hi, OMEGA))
            continue
        k = idx.query(lo + 1, hi)
        m = idx.value(k)
        out.append(LInterval(lo, hi, m))
        if m == OMEGA:
            continue
        cuts = [lo]
        while True:
            cuts.append(k)
            if k + 1 >= hi:
                break
            k2 = idx.query(k + 1, hi)
            if idx.value(k2) != m:
                break
            k = k2
        cuts.append(hi)
        for a, b in zip(cuts, cuts[1:]):
            stack.append((a, b))
    return out
