"""Brute-force ground truth for every LCP array variant.

Variants are named by three axes: cyclic vs terminated vs open-ended
suffixes, and single string vs string set.  Cyclic suffixes are infinite
periodic strings; terminated strings get a unique '$' below 'a' (sets get
one distinct terminator per string, assigned in sorted order); open-ended
suffixes are the plain finite suffixes.

Terminated sets admit empty strings: an empty member still gets its own
terminator, whose suffix contributes exactly one leading zero to the joint
array.  Cyclic and open sets exclude them (an empty string has no cyclic
suffix, and in the open case it would pad solution tuples without changing
the array).

The solution enumerators are deliberately naive: they walk the whole
candidate universe and keep what matches.  Everything else in the package is
tested against them.
"""
from __future__ import annotations

import enum
import itertools
from concurrent.futures import ProcessPoolExecutor

from .cyclic import CyclicMultiset, alphabet, lcp_array, lcp_array_from_bwt, multiset_from_cyclic_words
from .errors import ResourceLimitError

ENUM_GUARD = 10**7

# terminator pool for sets: '$' sorts below letters, as do the others here
_TERMINATORS = "!\"#$%&'()*+,-./"


class Variant(enum.Enum):
    CYCLIC_SET = "cyclic-set"
    CYCLIC_SINGLE = "cyclic"
    TERMINATED_SINGLE = "terminated"
    OPEN_SINGLE = "open"
    TERMINATED_SET = "terminated-set"
    OPEN_SET = "open-set"

    @property
    def is_set(self) -> bool:
        return self in (Variant.CYCLIC_SET, Variant.TERMINATED_SET, Variant.OPEN_SET)


def _finite_suffix_lcp(suffixes: list[str]) -> list:
    suffixes = sorted(suffixes)
    out = []
    for prev, cur in zip(suffixes, suffixes[1:]):
        t = 0
        m = min(len(prev), len(cur))
        while t < m and prev[t] == cur[t]:
            t += 1
        out.append(t)
    return out


def _cyclic_multiset(words) -> CyclicMultiset:
    return multiset_from_cyclic_words(words)


def lcp_variant(value, variant: Variant) -> list:
    """LCP array of a string (single variants) or list of strings (sets)."""
    if variant.is_set:
        words = list(value)
        if not words:
            raise ValueError("set variants need a non-empty list of words")
        if variant is not Variant.TERMINATED_SET and any(not w for w in words):
            raise ValueError(f"{variant.value} does not admit empty words")
    else:
        if not isinstance(value, str) or not value:
            raise ValueError("single variants need a non-empty string")

    if variant is Variant.CYCLIC_SINGLE:
        return lcp_array(_cyclic_multiset([value]))
    if variant is Variant.CYCLIC_SET:
        return lcp_array(_cyclic_multiset(value))
    if variant is Variant.TERMINATED_SINGLE:
        s = value + "$"
        return _finite_suffix_lcp([s[i:] for i in range(len(s))])
    if variant is Variant.OPEN_SINGLE:
        return _finite_suffix_lcp([value[i:] for i in range(len(value))])
    if variant is Variant.TERMINATED_SET:
        words = sorted(words)
        if len(words) > len(_TERMINATORS):
            raise ValueError("too many strings for the terminator pool")
        cat = "".join(w + _TERMINATORS[i] for i, w in enumerate(words))
        return _finite_suffix_lcp([cat[i:] for i in range(len(cat))])
    if variant is Variant.OPEN_SET:
        sufs = [w[i:] for w in words for i in range(len(w))]
        return _finite_suffix_lcp(sufs)
    raise ValueError(f"unknown variant: {variant}")


def _strings(sigma: int, length: int):
    letters = alphabet(sigma)
    if length == 0:
        yield ""
        return
    for tup in itertools.product(letters, repeat=length):
        yield "".join(tup)


def _multisets(sigma: int, total: int, k: int):
    """k-tuples of non-empty strings with the given total length,
    nondecreasing by (length, lex) so each multiset appears once."""

    def rec(remaining: int, slots: int, floor):
        if slots == 0:
            if remaining == 0:
                yield ()
            return
        max_len = remaining - (slots - 1)
        for length in range(1, max_len + 1):
            for s in _strings(sigma, length):
                key = (length, s)
                if key < floor:
                    continue
                for rest in rec(remaining - length, slots - 1, key):
                    yield (s,) + rest

    yield from rec(total, k, (0, ""))


def _terminated_multisets(sigma: int, arr_len: int):
    """All multisets (empty strings allowed) whose joint terminated-set
    array has arr_len entries: letters t plus members k obey t+k = arr_len+1."""
    for k in range(1, min(arr_len + 1, len(_TERMINATORS)) + 1):
        t = arr_len + 1 - k
        if t == 0:
            yield ("",) * k
            continue
        for q in range(1, min(k, t) + 1):
            for tup in _multisets(sigma, t, q):
                yield ("",) * (k - q) + tup


def _count_universe(sigma: int, variant: Variant, arr_len: int) -> int:
    if variant in (Variant.CYCLIC_SET, Variant.CYCLIC_SINGLE, Variant.OPEN_SINGLE):
        return sigma ** (arr_len + 1)
    if variant is Variant.TERMINATED_SINGLE:
        return sigma**arr_len
    # sets: bounded by compositions x strings; use a loose upper bound
    total = arr_len + 1
    return (2 ** (total - 1)) * (sigma**total)


def brute_force_solutions(lcp, sigma: int, variant: Variant, *, guard: int = ENUM_GUARD, jobs: int = 1):
    """Exact solution set of an LCP array by exhaustive enumeration.

    Returns a set of strings for single variants (for CYCLIC_SET: the BWT
    strings, one per realizing multiset) and a set of sorted string tuples
    for the set variants.
    """
    target = list(lcp)
    arr_len = len(target)
    if _count_universe(sigma, variant, arr_len) > guard:
        raise ResourceLimitError(f"candidate universe exceeds guard {guard}", guard)

    if variant is Variant.CYCLIC_SET:
        # BWT strings are bijective with multisets, so scanning them covers
        # every multiset exactly once
        n = arr_len + 1
        if jobs > 1:
            return _scan_bwts_parallel(target, sigma, n, jobs)
        return {v for v in _strings(sigma, n) if lcp_array_from_bwt(v) == target}

    if variant in (Variant.CYCLIC_SINGLE, Variant.OPEN_SINGLE, Variant.TERMINATED_SINGLE):
        n = arr_len if variant is Variant.TERMINATED_SINGLE else arr_len + 1
        return {
            s
            for s in _strings(sigma, n)
            if lcp_variant(s, variant) == target
        }

    out = set()
    if variant is Variant.OPEN_SET:
        total = arr_len + 1
        candidates = (tup for k in range(1, total + 1) for tup in _multisets(sigma, total, k))
    else:
        candidates = _terminated_multisets(sigma, arr_len)
    for tup in candidates:
        if lcp_variant(list(tup), variant) == target:
            out.add(tuple(sorted(tup)))
    return out


def _bwt_chunk(args):
    prefix, rest, sigma, target = args
    hits = []
    for tail in _strings(sigma, rest):
        v = prefix + tail
        if lcp_array_from_bwt(v) == target:
            hits.append(v)
    return hits


def _scan_bwts_parallel(target, sigma: int, n: int, jobs: int):
    letters = alphabet(sigma)
    tasks = [(c, n - 1, sigma, target) for c in letters]
    out = set()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for hits in pool.map(_bwt_chunk, tasks):
            out.update(hits)
    return out


def oracle_table(max_n: int, sigma: int, variant: Variant, *, guard: int = ENUM_GUARD):
    """Map from LCP array (as tuple) to the full solution set, for every
    candidate size up to max_n (string length; total letters for cyclic and
    open sets; array length for terminated sets)."""
    table: dict[tuple, set] = {}

    def add(key, value):
        table.setdefault(tuple(key), set()).add(value)

    count = 0
    if variant is Variant.TERMINATED_SET:
        for arr_len in range(1, max_n + 1):
            for tup in _terminated_multisets(sigma, arr_len):
                count += 1
                if count > guard:
                    raise ResourceLimitError(f"oracle table exceeds guard {guard}", guard)
                add(lcp_variant(list(tup), variant), tuple(sorted(tup)))
    elif variant.is_set:
        for total in range(1, max_n + 1):
            for k in range(1, total + 1):
                for tup in _multisets(sigma, total, k):
                    count += 1
                    if count > guard:
                        raise ResourceLimitError(f"oracle table exceeds guard {guard}", guard)
                    add(lcp_variant(list(tup), variant), tuple(sorted(tup)))
    else:
        for n in range(1, max_n + 1):
            for s in _strings(sigma, n):
                count += 1
                if count > guard:
                    raise ResourceLimitError(f"oracle table exceeds guard {guard}", guard)
                add(lcp_variant(s, variant), s)
    return table
