"""Inference of every binary BWT string whose cyclic LCP array matches.

Given an integer array L (entries >= 0 or OMEGA), infer() reconstructs a
string v over {a,b} such that the multiset ibwt(v) has LCP array L, plus a
set of disjoint swap intervals.  Exchanging the two halves of any subset of
the swap intervals gives another solution, and these 2^s strings are exactly
the BWTs of all multisets realizing L.

The recursion works on frames (x, ax, bx) of suffix-rank intervals: x is the
interval of suffixes starting with some string x, ax and bx the intervals for
ax and bx.  Splitting x at its interior LCP minimum separates the xa- and
xb-suffixes; comparing sub-LCPs (shifted by one) against the ax-interval
decides which side is preceded by a.  When both sides resolve at once and
both shifted comparisons hold, either orientation works and the frame records
a swap interval.  A final verification pass recomputes the LCP array of the
candidate, so malformed inputs are always rejected no matter how the
recursion resolved them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .cyclic import OMEGA, lcp_array_from_bwt
from .rmq import RmqIndex


class InvalidLcpArray(ValueError):
    """The input is not the LCP array of any binary cyclic multiset."""


class SwapInterval(NamedTuple):
    lo: int
    hi: int  # even length; halves swap as blocks

    @property
    def mid(self) -> int:
        return (self.lo + self.hi) // 2


class InferFrame(NamedTuple):
    ix: int
    jx: int
    iax: int
    jax: int
    ibx: int
    jbx: int


@dataclass
class InferStats:
    """Operation counts for the recursion, excluding RMQ build and the final
    verification pass."""

    frames: int = 0
    rmq_queries: int = 0
    compared: int = 0
    written: int = 0

    @property
    def total(self) -> int:
        return self.frames + self.rmq_queries + self.compared + self.written


@dataclass(frozen=True)
class InferenceResult:
    bwt: str
    swaps: tuple[SwapInterval, ...]

    @property
    def solution_count(self) -> int:
        # A single-letter string arises only from an all-OMEGA array, whose
        # full solution set is the two constant strings; everywhere else the
        # swap subsets give 2^s distinct strings.
        if len(set(self.bwt)) == 1:
            return 2
        return 1 << len(self.swaps)

    def rendered(self) -> str:
        """Bracket form, e.g. b[ab]bbaa: brackets mark swap intervals."""
        marks: dict[int, str] = {}
        for s in self.swaps:
            marks[s.lo] = marks.get(s.lo, "") + "["
            marks[s.hi] = "]" + marks.get(s.hi, "")
        out = []
        for i, c in enumerate(self.bwt):
            out.append(marks.get(i, ""))
            out.append(c)
        out.append(marks.get(len(self.bwt), ""))
        return "".join(out)


def infer(lcp, *, stats: InferStats | None = None, verify_result: bool = True) -> InferenceResult:
    """Reconstruct one solution plus its swap intervals; raises
    InvalidLcpArray when no binary multiset realizes the array."""
    entries = list(lcp)
    for x in entries:
        if x != OMEGA and not (isinstance(x, int) and x >= 0):
            raise ValueError(f"bad LCP entry: {x!r}")
    n = len(entries) + 1
    st = stats if stats is not None else InferStats()
    if n == 1:
        # empty array: the multiset {a} is the unique solution up to renaming
        return InferenceResult("a", ())
    L = [None] + entries
    idx = RmqIndex(entries)

    def query(i: int, j: int) -> int:
        st.rmq_queries += 1
        return idx.query(i, j)

    k = query(1, n)
    if L[k] != 0:
        if L[k] == OMEGA:
            return InferenceResult("a" * n, ())
        raise InvalidLcpArray("no zero entry and not all-equal")

    v: list[str | None] = [None] * n
    swaps: list[SwapInterval] = []

    def fill(lo: int, hi: int, c: str) -> None:
        st.written += hi - lo
        for i in range(lo, hi):
            v[i] = c

    def eq_shift(s1: int, e1: int, s2: int, e2: int) -> bool:
        # L[s1..e1) == 1 + L[s2..e2), elementwise (1 + OMEGA == OMEGA)
        if e1 - s1 != e2 - s2:
            return False
        st.compared += e1 - s1
        for t in range(e1 - s1):
            if L[s1 + t] != L[s2 + t] + 1:
                return False
        return True

    stack = [InferFrame(0, n, 0, k, k, n)]
    while stack:
        f = stack.pop()
        st.frames += 1
        if f.jx - f.ix < 2 or f.jax <= f.iax or f.jbx <= f.ibx:
            raise InvalidLcpArray("inconsistent interval split")
        kx = query(f.ix + 1, f.jx)
        mx = L[kx]
        if f.jax - f.iax == 1:
            kax, max_ = f.iax, OMEGA
        else:
            kax = query(f.iax + 1, f.jax)
            max_ = L[kax]
        if f.jbx - f.ibx == 1:
            kbx, mbx = f.ibx, OMEGA
        else:
            kbx = query(f.ibx + 1, f.jbx)
            mbx = L[kbx]

        if max_ > mx + 1 and mbx > mx + 1:
            if eq_shift(f.iax + 1, f.jax, f.ix + 1, kx):
                fill(f.ix, kx, "a")
                fill(kx, f.jx, "b")
                if eq_shift(f.iax + 1, f.jax, kx + 1, f.jx):
                    swaps.append(SwapInterval(f.ix, f.jx))
            else:
                fill(f.ix, kx, "b")
                fill(kx, f.jx, "a")
        elif max_ > mx + 1:
            if kbx - f.ibx == kx - f.ix:
                fill(f.ix, kx, "b")
                stack.append(InferFrame(kx, f.jx, f.iax, f.jax, kbx, f.jbx))
            else:
                fill(kx, f.jx, "b")
                stack.append(InferFrame(f.ix, kx, f.iax, f.jax, f.ibx, kbx))
        elif mbx > mx + 1:
            if kax - f.iax == kx - f.ix:
                fill(f.ix, kx, "a")
                stack.append(InferFrame(kx, f.jx, kax, f.jax, f.ibx, f.jbx))
            else:
                fill(kx, f.jx, "a")
                stack.append(InferFrame(f.ix, kx, f.iax, kax, f.ibx, f.jbx))
        else:
            stack.append(InferFrame(f.ix, kx, f.iax, kax, f.ibx, kbx))
            stack.append(InferFrame(kx, f.jx, kax, f.jax, kbx, f.jbx))

    if any(c is None for c in v):
        raise InvalidLcpArray("recursion left unassigned positions")
    candidate = "".join(v)  # type: ignore[arg-type]
    result = InferenceResult(candidate, tuple(sorted(swaps)))
    if verify_result and not verify(entries, candidate):
        raise InvalidLcpArray("candidate failed verification")
    return result


def verify(lcp, v: str) -> bool:
    """True when ibwt(v) realizes the array.  Always run on inferred output;
    the recursion alone can mis-resolve arrays outside the image."""
    entries = list(lcp)
    if len(v) != len(entries) + 1:
        raise ValueError(f"candidate length {len(v)}, array needs {len(entries) + 1}")
    return lcp_array_from_bwt(v) == entries


def apply_swap_mask(v: str, swaps) -> str:
    """Exchange the two halves of each given swap interval (disjoint)."""
    out = list(v)
    for s in swaps:
        lo, hi = s.lo, s.hi
        if (hi - lo) % 2:
            raise ValueError(f"odd swap interval [{lo}..{hi})")
        mid = (lo + hi) // 2
        out[lo:mid], out[mid:hi] = out[mid:hi], out[lo:mid]
    return "".join(out)


def enumerate_bwts(result: InferenceResult, limit: int | None = None):
    """All solution strings, mask subsets in lexicographic order over the
    swaps sorted by position.  Returns (strings, truncated).

    A single-letter base string means the array was all OMEGA; the solution
    set is then the two constant strings rather than a swap family.
    """
    if len(set(result.bwt)) == 1:
        n = len(result.bwt)
        full = ["a" * n, "b" * n]
        count = 2 if limit is None else min(2, limit)
        return full[:count], count < 2
    swaps = sorted(result.swaps)
    total = 1 << len(swaps)
    count = total if limit is None else min(total, limit)
    out = []
    for mask in range(count):
        chosen = [s for bit, s in enumerate(swaps) if mask >> (len(swaps) - 1 - bit) & 1]
        out.append(apply_swap_mask(result.bwt, chosen))
    return out, count < total
