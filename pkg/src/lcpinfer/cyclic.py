"""Cyclic strings, their suffix structure, and the BWT bijection.

Symbols are single characters ordered by their code point, rendered a < b < c
< ...; the terminator '$' sorts below 'a'.  A cyclic word is a primitive
string identified with all of its rotations and stored as the least rotation.
A cyclic suffix is the infinite periodic string read from a position of a
word, so identical positions in equal words give equal (infinite) suffixes
and their LCP is OMEGA.

The inverse BWT maps any string v to a multiset of primitive cyclic words via
the cycle decomposition of the standard permutation; bwt() inverts it.  This
is a bijection, which the oracle and the inference verifier both lean on.
"""
from __future__ import annotations

import functools
from typing import Iterable, NamedTuple

from ._kernels import lcp_from_bwt as _lcp_from_bwt_codes
from ._kernels import standard_permutation as _standard_permutation_codes

OMEGA = float("inf")

LcpEntry = "int | float"


def is_omega(x) -> bool:
    return x == OMEGA


def alphabet(sigma: int) -> str:
    """First sigma letters, 'a' upward."""
    if not 1 <= sigma <= 26:
        raise ValueError(f"alphabet size out of range: {sigma}")
    return "abcdefghijklmnopqrstuvwxyz"[:sigma]


def render_entry(x) -> str:
    return "w" if is_omega(x) else str(int(x))


def parse_entry(tok: str):
    if tok == "w":
        return OMEGA
    value = int(tok)
    if value < 0:
        raise ValueError(f"negative LCP entry: {tok}")
    return value


def render_lcp(entries) -> str:
    return " ".join(render_entry(x) for x in entries)


def parse_lcp(text: str):
    return [parse_entry(tok) for tok in text.split()]


def is_primitive(word: str) -> bool:
    if not word:
        return False
    return (word + word).find(word, 1) == len(word)


def canonical_rotation(word: str) -> str:
    """Least rotation of a primitive word; rejects non-primitive input."""
    if not is_primitive(word):
        raise ValueError(f"not a primitive word: {word!r}")
    doubled = word + word
    best = 0
    for i in range(1, len(word)):
        if doubled[i : i + len(word)] < doubled[best : best + len(word)]:
            best = i
    return doubled[best : best + len(word)]


class Position(NamedTuple):
    """A cyclic suffix: 1-based word index plus 0-based offset into the word."""

    word: int
    offset: int


class CyclicMultiset:
    """Multiset of cyclic words, each stored canonically, sorted."""

    __slots__ = ("words",)

    def __init__(self, words: Iterable[str]):
        self.words: tuple[str, ...] = tuple(sorted(canonical_rotation(w) for w in words))
        if not self.words:
            raise ValueError("empty multiset")

    @property
    def total(self) -> int:
        return sum(len(w) for w in self.words)

    def positions(self) -> list[Position]:
        return [
            Position(i, off)
            for i, w in enumerate(self.words, start=1)
            for off in range(len(w))
        ]

    def char(self, pos: Position) -> str:
        w = self.words[pos.word - 1]
        return w[pos.offset % len(w)]

    def char_before(self, pos: Position) -> str:
        w = self.words[pos.word - 1]
        return w[(pos.offset - 1) % len(w)]

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclicMultiset) and self.words == other.words

    def __hash__(self) -> int:
        return hash(self.words)

    def __repr__(self) -> str:
        return f"CyclicMultiset({list(self.words)!r})"


def _as_multiset(W) -> CyclicMultiset:
    return W if isinstance(W, CyclicMultiset) else CyclicMultiset(W)


def primitive_root(word: str) -> tuple[str, int]:
    """Shortest r and exponent e with word == r * e."""
    if not word:
        raise ValueError("empty word")
    period = (word + word).find(word, 1)
    return word[:period], len(word) // period


def multiset_from_cyclic_words(words) -> CyclicMultiset:
    """Multiset of the given cyclic words; a non-primitive word r^e has the
    same suffixes as e copies of r and is stored that way."""
    parts = []
    for w in words:
        root, e = primitive_root(w)
        parts.extend([root] * e)
    return CyclicMultiset(parts)


def standard_permutation(v: str) -> list[int]:
    """Psi: position i of sorted(v) maps to the matching occurrence in v."""
    if not v:
        raise ValueError("empty input")
    return _standard_permutation_codes([ord(c) for c in v])


def ibwt(v: str) -> CyclicMultiset:
    """Cycle decomposition of the standard permutation, one word per cycle."""
    if not v:
        raise ValueError("empty BWT")
    psi = standard_permutation(v)
    n = len(v)
    seen = [False] * n
    words = []
    for start in range(n):
        if seen[start]:
            continue
        chars = []
        x = start
        while not seen[x]:
            seen[x] = True
            chars.append(v[psi[x]])
            x = psi[x]
        words.append("".join(chars))
    return CyclicMultiset(words)


def compare_cyclic_suffixes(W, p: Position, q: Position) -> int:
    """-1/0/1 comparison of two infinite suffixes.

    Agreement over len(w_p)+len(w_q) symbols implies the suffixes are equal,
    so the walk always terminates.
    """
    W = _as_multiset(W)
    wp = W.words[p.word - 1]
    wq = W.words[q.word - 1]
    bound = len(wp) + len(wq)
    for t in range(bound):
        a = wp[(p.offset + t) % len(wp)]
        b = wq[(q.offset + t) % len(wq)]
        if a != b:
            return -1 if a < b else 1
    return 0


def lcp_of_pair(W, p: Position, q: Position):
    """Length of the common prefix of two suffixes; OMEGA when equal."""
    W = _as_multiset(W)
    wp = W.words[p.word - 1]
    wq = W.words[q.word - 1]
    bound = len(wp) + len(wq)
    for t in range(bound):
        if wp[(p.offset + t) % len(wp)] != wq[(q.offset + t) % len(wq)]:
            return t
    return OMEGA


def suffix_array_by_comparison(W) -> list[Position]:
    """Reference sort using pairwise suffix comparison; quadratic but obviously
    faithful to the definition."""
    W = _as_multiset(W)

    def cmp(p: Position, q: Position) -> int:
        c = compare_cyclic_suffixes(W, p, q)
        if c != 0:
            return c
        return -1 if p < q else (0 if p == q else 1)

    return sorted(W.positions(), key=functools.cmp_to_key(cmp))


def suffix_array(W) -> list[Position]:
    """All cyclic suffixes in nondecreasing order; equal suffixes tie-break
    by (word, offset).

    Rank doubling: after comparing prefixes of length >= |w_i| + |w_j| the
    order of two periodic suffixes is settled, so doubling up to 2 * total
    suffices and still-tied ranks mean genuinely equal suffixes.
    """
    W = _as_multiset(W)
    pos = W.positions()
    total = len(pos)
    starts = []
    acc = 0
    lengths = [len(w) for w in W.words]
    for ln in lengths:
        starts.append(acc)
        acc += ln

    def index(word: int, offset: int) -> int:
        return starts[word - 1] + offset

    rank = [ord(W.char(p)) for p in pos]
    shift = 1
    while shift < 2 * total:
        keys = []
        for p in pos:
            ln = lengths[p.word - 1]
            ahead = index(p.word, (p.offset + shift) % ln)
            keys.append((rank[index(p.word, p.offset)], rank[ahead]))
        order = sorted(range(total), key=keys.__getitem__)
        new_rank = [0] * total
        r = 0
        for t in range(1, total):
            if keys[order[t]] != keys[order[t - 1]]:
                r += 1
            new_rank[order[t]] = r
        rank = new_rank
        if r == total - 1:
            break
        shift *= 2
    return sorted(pos, key=lambda p: (rank[index(p.word, p.offset)], p))


def lcp_array(W) -> list:
    """LCP values of adjacent suffixes in suffix_array order (length n-1)."""
    W = _as_multiset(W)
    sa = suffix_array(W)
    return [lcp_of_pair(W, sa[i - 1], sa[i]) for i in range(1, len(sa))]


def bwt(W) -> str:
    """Characters preceding each suffix in suffix_array order."""
    W = _as_multiset(W)
    return "".join(W.char_before(p) for p in suffix_array(W))


def lcp_array_from_bwt(v: str) -> list:
    """lcp_array(ibwt(v)) computed without materializing the multiset."""
    raw = _lcp_from_bwt_codes([ord(c) for c in v])
    return [OMEGA if x < 0 else x for x in raw]


def suffix_via_psi(v: str, rank: int, length: int) -> str:
    """First `length` symbols of the rank-th sorted suffix of ibwt(v)."""
    n = len(v)
    if not 0 <= rank < n:
        raise ValueError(f"rank out of range: {rank}")
    psi = standard_permutation(v)
    vhat = "".join(sorted(v))
    out = []
    x = rank
    for _ in range(length):
        out.append(vhat[x])
        x = psi[x]
    return "".join(out)
