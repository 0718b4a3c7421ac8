"""Brute-force oracle tests: per-variant LCP computation, exhaustive solution
enumeration, and the oracle tables the other modules are checked against."""

import itertools
import random

import pytest

from lcpinfer.cyclic import OMEGA
from lcpinfer.errors import ResourceLimitError
from lcpinfer.oracle import Variant, brute_force_solutions, lcp_variant, oracle_table


def naive_suffix_lcp(suffixes):
    suffixes = sorted(suffixes)
    out = []
    for prev, cur in zip(suffixes, suffixes[1:]):
        t = 0
        while t < min(len(prev), len(cur)) and prev[t] == cur[t]:
            t += 1
        out.append(t)
    return out


def binary_strings(max_len):
    for n in range(1, max_len + 1):
        for bits in range(1 << n):
            yield "".join("ab"[bits >> t & 1] for t in range(n))


def test_lcp_variant_worked_rows():
    assert lcp_variant("aababa", Variant.TERMINATED_SINGLE) == [0, 1, 1, 3, 0, 2]
    assert lcp_variant("aababa", Variant.OPEN_SINGLE) == [1, 1, 3, 0, 2]
    assert lcp_variant("aababab", Variant.OPEN_SINGLE) == [1, 2, 4, 0, 1, 3]
    assert lcp_variant("aababa", Variant.CYCLIC_SINGLE) == [2, 1, 3, 0, 2]
    assert lcp_variant(["ab", "aab", "aab"], Variant.CYCLIC_SET) == [
        OMEGA, 1, OMEGA, 3, 0, OMEGA, 2,
    ]
    assert lcp_variant(["ab", "aab", "aab"], Variant.OPEN_SET) == [3, 1, 2, 2, 0, 1, 1]
    assert lcp_variant(["ab", "aab", "aab"], Variant.TERMINATED_SET) == [
        0, 0, 0, 3, 1, 2, 2, 0, 1, 1,
    ]


def test_lcp_variant_bad_inputs():
    with pytest.raises(ValueError):
        lcp_variant("", Variant.CYCLIC_SINGLE)
    with pytest.raises(ValueError):
        lcp_variant(3, Variant.OPEN_SINGLE)
    with pytest.raises(ValueError):
        lcp_variant([], Variant.OPEN_SET)
    with pytest.raises(ValueError):
        lcp_variant(["a", ""], Variant.OPEN_SET)
    with pytest.raises(ValueError):
        lcp_variant(["a", ""], Variant.CYCLIC_SET)


def test_terminated_set_admits_empty_words():
    assert lcp_variant(["", ""], Variant.TERMINATED_SET) == [0]
    assert lcp_variant(["", "a"], Variant.TERMINATED_SET) == [0, 0]
    assert lcp_variant(["a", "b"], Variant.TERMINATED_SET) == [0, 0, 0]


def test_terminated_prepends_zero_to_open():
    for s in binary_strings(8):
        want = [0] + lcp_variant(s, Variant.OPEN_SINGLE)
        assert lcp_variant(s, Variant.TERMINATED_SINGLE) == want


def test_terminated_set_equals_concatenation():
    # per-word suffixes with unique terminators give the same array as the
    # plain suffixes of the terminated concatenation
    pool = "!\"#$%&'()*+,-./"
    rng = random.Random(7)
    samples = [["", ""], ["", "a", "ab"], ["a", "b"], ["ab", "aab", "aab"]]
    for _ in range(40):
        k = rng.randint(1, 4)
        samples.append(
            ["".join(rng.choice("ab") for _ in range(rng.randint(0, 4))) for _ in range(k)]
        )
    for words in samples:
        words = sorted(words)
        sufs = []
        for i, w in enumerate(words):
            t = w + pool[i]
            sufs.extend(t[j:] for j in range(len(w) + 1))
        assert lcp_variant(words, Variant.TERMINATED_SET) == naive_suffix_lcp(sufs)


def test_brute_force_worked_rows():
    assert brute_force_solutions([1, 4, 0, 2, 1, 3], 2, Variant.CYCLIC_SET) == {
        "babbbaa",
        "bbabbaa",
    }
    assert brute_force_solutions([OMEGA, 0], 2, Variant.CYCLIC_SINGLE) == set()
    assert brute_force_solutions([OMEGA, 0], 2, Variant.CYCLIC_SET) == {"aab"}
    assert brute_force_solutions([1], 2, Variant.CYCLIC_SET) == set()


def test_brute_force_guard():
    with pytest.raises(ResourceLimitError) as err:
        brute_force_solutions([0] * 30, 2, Variant.CYCLIC_SET, guard=1000)
    assert err.value.cap == 1000


def test_brute_force_single_variants_round_trip():
    rng = random.Random(8)
    for variant in (Variant.CYCLIC_SINGLE, Variant.OPEN_SINGLE, Variant.TERMINATED_SINGLE):
        for _ in range(25):
            s = "".join(rng.choice("ab") for _ in range(rng.randint(1, 7)))
            target = lcp_variant(s, variant)
            sols = brute_force_solutions(target, 2, variant)
            assert s in sols
            for t in sols:
                assert lcp_variant(t, variant) == target


def test_brute_force_set_variants_round_trip():
    rng = random.Random(9)
    for variant in (Variant.OPEN_SET, Variant.TERMINATED_SET):
        seen = 0
        while seen < 15:
            k = rng.randint(1, 3)
            low = 0 if variant is Variant.TERMINATED_SET else 1
            words = tuple(
                sorted(
                    "".join(rng.choice("ab") for _ in range(rng.randint(low, 3)))
                    for _ in range(k)
                )
            )
            if sum(len(w) for w in words) > 6:
                continue
            seen += 1
            target = lcp_variant(list(words), variant)
            sols = brute_force_solutions(target, 2, variant)
            assert words in sols
            for tup in sols:
                assert lcp_variant(list(tup), variant) == target


def test_brute_force_parallel_matches_serial():
    target = [1, 4, 0, 2, 1, 3]
    serial = brute_force_solutions(target, 2, Variant.CYCLIC_SET)
    parallel = brute_force_solutions(target, 2, Variant.CYCLIC_SET, jobs=2)
    assert serial == parallel


def test_oracle_table_complete_and_consistent():
    table = oracle_table(4, 2, Variant.CYCLIC_SINGLE)
    everything = set(itertools.chain.from_iterable(table.values()))
    assert everything == set(binary_strings(4))
    for key, sols in table.items():
        assert {len(s) for s in sols} == {len(key) + 1}
        assert sols == brute_force_solutions(list(key), 2, Variant.CYCLIC_SINGLE)


def test_oracle_table_guard():
    with pytest.raises(ResourceLimitError):
        oracle_table(20, 2, Variant.CYCLIC_SINGLE, guard=100)
