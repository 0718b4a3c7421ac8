"""Reduction pipeline tests: circuit instances to binary cyclic multisets and
LCP arrays, BWT position graphs contracted back to circuit instances,
terminator insertion, swap-core identification, and the single-string
decision built on top of them."""

import random

import pytest

from lcpinfer import dfa
from lcpinfer.binary_infer import (
    InvalidLcpArray,
    SwapInterval,
    apply_swap_mask,
    infer,
    verify,
)
from lcpinfer.ccec import (
    CROSSING,
    CcecInstance,
    Edge,
    ResourceLimitError,
    from_cnf,
)
from lcpinfer.cyclic import (
    OMEGA,
    CyclicMultiset,
    bwt,
    ibwt,
    lcp_array,
    lcp_array_from_bwt,
    suffix_array,
)
from lcpinfer.reductions import (
    add_terminator,
    bwt_graph,
    ccec_to_lcp,
    ccec_to_multiset,
    graph_to_dot,
    list_swap_cores,
    sat_to_lcp,
    single_string_decide,
    variant_transform,
    vertex_strings,
)

FIG_LCP = [2, 5, 1, 4, 3, 4, 2, 0, 3, 2, 5, 3, 1]


def single_vertex_instance():
    # one vertex, both self-loops, initially crossing: a single 13-char word
    return CcecInstance(1, [Edge(1, 0, 1, 0), Edge(1, 1, 1, 1)], [[1]], {1: CROSSING})


def spell(W, pos, k):
    w = W.words[pos.word - 1]
    return "".join(w[(pos.offset + t) % len(w)] for t in range(k))


def cyclic_string_lcp(s):
    # suffix multiset of one cyclic string: e copies of its primitive root
    for d in range(1, len(s) + 1):
        if len(s) % d == 0 and s[:d] * (len(s) // d) == s:
            return lcp_array(CyclicMultiset([s[:d]] * (len(s) // d)))


def test_vertex_strings_worked_pair():
    assert vertex_strings(1, 1, 1) == ("babaaa", "bbabbaa")
    s1, s2 = vertex_strings(2, 3, 5)
    assert s1 == "b" + "aa" + "b" + "a" * 11
    assert s2 == "bb" + "aa" + "bb" + "a" * 10
    with pytest.raises(ValueError):
        vertex_strings(0, 1, 1)
    with pytest.raises(ValueError):
        vertex_strings(3, 1, 2)


def test_ccec_to_multiset_single_vertex():
    W = ccec_to_multiset(single_vertex_instance())
    assert W.words == ("aaabbabbaabab",)
    doubled = W.words[0] * 2
    # both vertex strings appear cyclically, first pass then second pass
    assert "babaaa" in doubled and "bbabbaa" in doubled


def test_ccec_to_multiset_total_length():
    for clauses in ([(1, 1, 1)], [(1, 2, -2)]):
        inst = from_cnf(clauses)
        W = ccec_to_multiset(inst)
        part_of = inst.partition_of()
        want = sum(
            len(s)
            for v in range(1, inst.n + 1)
            for s in vertex_strings(part_of[v], v, inst.m)
        )
        assert sum(len(w) for w in W.words) == want


def test_ccec_to_lcp_single_vertex():
    inst = single_vertex_instance()
    entries = ccec_to_lcp(inst)
    assert entries == [2, 3, 1, 3, 2, 4, 0, 3, 2, 3, 1, 3]
    assert verify(entries, bwt(ccec_to_multiset(inst)))


def test_ccec_to_lcp_partition_flips_are_swap_variants():
    # a whole-partition flip corresponds to swapping the ba^kb core interval
    # of the BWT: different multiset, identical LCP array
    inst = from_cnf([(1, 1, 1)])
    W = ccec_to_multiset(inst)
    base = ccec_to_lcp(inst)
    v = bwt(W)
    cores = {c.runs[0]: c for c in list_swap_cores(W) if c.form == "ba^kb"}
    assert set(cores) == set(range(1, inst.m + 1))
    for k in range(1, inst.m + 1):
        c = cores[k]
        Wp = ibwt(apply_swap_mask(v, [SwapInterval(c.lo, c.hi)]))
        assert sorted(Wp.words) != sorted(W.words)
        assert lcp_array(Wp) == base
    # tiny case where the flipped construction itself keeps the array: the
    # single vertex splits its one word into the two vertex strings
    sv = single_vertex_instance()
    straight = CcecInstance(1, sv.edges, [[1]], {1: 0})
    assert ccec_to_lcp(straight) == ccec_to_lcp(sv)
    assert ccec_to_multiset(straight).words != ccec_to_multiset(sv).words


def test_ccec_to_lcp_empty_rejected():
    with pytest.raises(ValueError):
        ccec_to_lcp(CcecInstance(0, [], [], {}))


def test_bwt_graph_worked_example():
    g = bwt_graph(infer(FIG_LCP))
    assert g.bwt == "babaabbbaaabaa"
    assert g.pairs == [(1, 2), (3, 5), (4, 6), (10, 11)]
    assert g.partitions == [[1], [2, 3], [4]]
    assert g.floating == []
    inst = g.instance
    assert inst.n == 4 and inst.m == 3
    assert {(e.src, e.src_port, e.dst, e.dst_port, e.label) for e in inst.edges} == {
        (1, 0, 2, 0, "a2"),
        (1, 1, 3, 0, "a3"),
        (2, 0, 1, 0, "a4b1a1"),
        (2, 1, 4, 0, "a6"),
        (3, 0, 1, 1, "a5b2"),
        (3, 1, 4, 1, "a7b5a8b6"),
        (4, 0, 2, 1, "b3"),
        (4, 1, 3, 1, "b4"),
    }
    assert g.edge_chars == {
        (1, 0): "a",
        (1, 1): "a",
        (2, 0): "aba",
        (2, 1): "a",
        (3, 0): "ab",
        (3, 1): "abab",
        (4, 0): "b",
        (4, 1): "b",
    }


def test_bwt_graph_edge_chars_cover_bwt():
    # contracted edges carry every character of the string exactly once
    for entries in (FIG_LCP, [1, 4, 0, 2, 1, 3]):
        g = bwt_graph(infer(entries))
        spelled = "".join(g.edge_chars.values())
        assert sorted(spelled) == sorted(g.bwt)


def test_bwt_graph_single_swap():
    g = bwt_graph(infer([1, 4, 0, 2, 1, 3]))
    assert g.bwt == "babbbaa"
    assert g.pairs == [(1, 2)]
    assert g.partitions == [[1]]
    assert g.instance.n == 1
    assert len(g.instance.edges) == 2
    assert g.floating == []


def test_bwt_graph_no_swaps():
    g = bwt_graph(infer([OMEGA, 0]))
    assert g.bwt == "aab"
    assert g.pairs == [] and g.instance is None
    assert sorted(w for _, w in g.floating) == ["a", "a", "b"]


def test_graph_to_dot_output():
    dot = graph_to_dot(bwt_graph(infer(FIG_LCP)))
    assert dot.startswith("digraph")
    assert 'v2 -> v1 [label="a4b1a1"' in dot
    dot2 = graph_to_dot(bwt_graph(infer([OMEGA, 0])))
    assert "shape=box" in dot2


def test_single_string_decide_examples():
    s = single_string_decide([1, 4, 0, 2, 1, 3])
    assert len(s) == 7 and cyclic_string_lcp(s) == [1, 4, 0, 2, 1, 3]
    assert single_string_decide([OMEGA, 0]) is None
    assert single_string_decide([OMEGA, OMEGA]) == "aaa"
    with pytest.raises(InvalidLcpArray):
        single_string_decide([1])


def test_single_string_decide_worked_graph():
    s = single_string_decide(FIG_LCP)
    assert len(s) == 14 and cyclic_string_lcp(s) == FIG_LCP


def test_single_string_decide_cap():
    with pytest.raises(ResourceLimitError) as err:
        single_string_decide(FIG_LCP, cap=4)
    assert err.value.cap == 4


def test_single_string_decide_matches_exhaustive():
    # ground truth: arrays realizable by one cyclic string vs by any multiset
    for n in range(1, 9):
        singles = set()
        arrays = {}
        for bits in range(1 << n):
            w = "".join("ab"[bits >> t & 1] for t in range(n))
            singles.add(tuple(cyclic_string_lcp(w)))
            v = w
            arrays.setdefault(tuple(lcp_array_from_bwt(v)), v)
        for entries in arrays:
            got = single_string_decide(list(entries))
            if got is None:
                assert entries not in singles
            else:
                assert entries in singles
                assert len(got) == n
                assert tuple(cyclic_string_lcp(got)) == entries


def test_add_terminator_single_vertex():
    W = ccec_to_multiset(single_vertex_instance())
    Wd = add_terminator(W, 1, 1)
    assert Wd.words == ("$aaabbabbaababaaaa",)
    assert sum(w.count("$") for w in Wd.words) == 1
    assert lcp_array(Wd) == [0, 1, 2, 3, 3, 2, 3, 1, 3, 2, 4, 0, 3, 2, 3, 1, 3]


def test_add_terminator_bad_inputs():
    with pytest.raises(ValueError):
        add_terminator(CyclicMultiset(["ab"]), 5, 5)  # no a^15 run
    with pytest.raises(ValueError):
        add_terminator(CyclicMultiset(["a"]), 1, 1)  # no b to bound a run
    with pytest.raises(ValueError):
        add_terminator(CyclicMultiset(["aab", "aab"]), 0, 1)  # run occurs twice
    with pytest.raises(ValueError):
        add_terminator(CyclicMultiset(["aaab"]), 0, 1)  # longer run present


def test_add_terminator_roundtrip():
    # every single-cycle solution of the terminated array collapses back to
    # a solution of the original array once the terminator block is removed
    inst = single_vertex_instance()
    W = ccec_to_multiset(inst)
    base = lcp_array(W)
    run = 1 + 2 * 1  # m + 2n
    Wd = add_terminator(W, 1, 1)
    sols, truncated = dfa.dfa_enumerate(dfa.build_dfa(lcp_array(Wd), 3))
    assert not truncated
    found = 0
    for v in sols:
        words = ibwt(v.translate(str.maketrans("abc", "$ab"))).words
        if len(words) != 1:
            continue
        found += 1
        w = words[0]
        assert w.count("$") == 1
        i = w.index("$")
        rot = w[i + 1:] + w[:i]
        trail = len(rot) - len(rot.rstrip("a"))
        take = min(run + 1, trail)
        core = rot[: len(rot) - take] if take else rot
        core = core[run + 1 - take:]
        assert len(core) == sum(len(x) for x in W.words)
        assert cyclic_string_lcp(core) == base
    assert found > 0


def test_swap_core_catalog_single_vertex():
    W = ccec_to_multiset(single_vertex_instance())
    cores = list_swap_cores(W)
    assert [(c.core, c.lo, c.hi, c.form, c.runs) for c in cores] == [
        ("aab", 1, 3, "a^hb", (2,)),
        ("aba", 3, 5, "a^kba^h", (1, 1)),
        ("abba", 5, 7, "a^kbba^h", (1, 1)),
        ("baa", 7, 9, "ba^h", (2,)),
        ("bab", 9, 11, "ba^kb", (1,)),
    ]
    assert [c.partition for c in cores] == [None, None, None, None, 1]
    # ba^{m+2n-1} occurs exactly twice
    long_run = [c for c in cores if c.core == "b" + "a" * 2]
    assert len(long_run) == 1 and long_run[0].hi - long_run[0].lo == 2


def test_swap_cores_partition_markers():
    # every partition k in [1..m] contributes the core ba^kb, and none beyond
    inst = from_cnf([(1, 1, 1)])
    cores = list_swap_cores(ccec_to_multiset(inst))
    marks = {c.runs[0] for c in cores if c.form == "ba^kb"}
    assert marks == set(range(1, inst.m + 1))


def brute_cores(W):
    sa = suffix_array(W)
    entries = lcp_array(W)
    n = len(sa)

    def occ(y):
        return sum(1 for p in sa if spell(W, p, len(y)) == y)

    out = set()
    for length in range(1, 2 * n + 1):
        spells = [spell(W, p, length) for p in sa]
        for x in set(spells):
            ranks = [r for r in range(n) if spells[r] == x]
            lo, hi = ranks[0], ranks[-1] + 1
            assert ranks == list(range(lo, hi))
            width = hi - lo
            if width < 2 or width % 2:
                continue
            mid = lo + width // 2
            if entries[lo:mid - 1] != entries[mid:hi - 1]:
                continue
            half = width // 2
            if (occ("a" + x + "a") == occ("b" + x + "b") == half) or (
                occ("a" + x + "b") == occ("b" + x + "a") == half
            ):
                out.add((x, lo, hi))
    return out


def test_swap_cores_match_brute_force():
    cases = [
        CyclicMultiset(["ab", "aab", "aab"]),
        ccec_to_multiset(single_vertex_instance()),
    ]
    rng = random.Random(20)
    while len(cases) < 8:
        w = "".join(rng.choice("ab") for _ in range(rng.randint(4, 12)))
        try:
            cases.append(CyclicMultiset([w]))
        except ValueError:
            continue
    for W in cases:
        got = {(c.core, c.lo, c.hi) for c in list_swap_cores(W)}
        assert got == brute_cores(W)
    assert list_swap_cores(CyclicMultiset(["ab", "aab", "aab"])) == []


def mask_cycle_signature(inst, bit_of_partition):
    # cycles-per-flip-mask table, bits translated through bit_of_partition
    from lcpinfer.ccec import cycles

    part_of = inst.partition_of()
    sig = {}
    for mask in range(1 << inst.m):
        state = {
            v: st ^ (mask >> bit_of_partition[part_of[v]] & 1)
            for v, st in inst.initial.items()
        }
        sig[mask] = len(cycles(inst, state))
    return sig


def test_roundtrip_partition_cores_reproduce_instance():
    # keeping only the ba^kb core swaps, the contracted position graph is the
    # original instance again: same size and identical cycle counts under
    # every flip mask, partitions matched through the core run lengths
    for inst in (
        single_vertex_instance(),
        from_cnf([(1, 1, 1)]),
        from_cnf([(1, 2, -2)]),
    ):
        W = ccec_to_multiset(inst)
        cores = sorted(
            (c for c in list_swap_cores(W) if c.form == "ba^kb"),
            key=lambda c: c.lo,
        )
        assert sorted(c.runs[0] for c in cores) == list(range(1, inst.m + 1))
        g = bwt_graph(bwt(W), swaps=[(c.lo, c.hi) for c in cores])
        got = g.instance
        assert got.n == inst.n and got.m == inst.m
        assert sorted(len(p) for p in got.partitions) == sorted(
            len(p) for p in inst.partitions
        )
        got_bits = {j: j - 1 for j in range(1, got.m + 1)}  # interval order
        inst_bits = {c.runs[0]: j for j, c in enumerate(cores)}
        assert mask_cycle_signature(got, got_bits) == mask_cycle_signature(
            inst, inst_bits
        )


def test_sat_to_lcp_decides_satisfiability():
    sat = [(1, 1, 1)]
    unsat = [(1, 1, 1), (-1, -1, -1)]
    entries = sat_to_lcp(sat)
    s = single_string_decide(entries)
    assert s is not None and cyclic_string_lcp(s) == entries
    assert single_string_decide(sat_to_lcp(unsat)) is None


def test_sat_to_lcp_always_inferable():
    # inference never fails on constructed arrays, satisfiable or not
    for clauses in ([(1, 1, 1)], [(1, 1, 1), (-1, -1, -1)]):
        result = infer(sat_to_lcp(clauses))
        assert verify(sat_to_lcp(clauses), result.bwt)
        assert result.swaps


def test_variant_transform_rows():
    assert variant_transform([0, 1, 1, 3, 0, 2], "BTSILA", "BOSILA") == [1, 1, 3, 0, 2]
    assert variant_transform([1, 1, 3, 0, 2], "BOSILA", "BTSILA") == [0, 1, 1, 3, 0, 2]
    assert variant_transform([1, 0, 2], "BTSILA", "BOSILA") is None
    assert variant_transform([0, 1, 0, 0, 2], "BTSILA", "TSILA") is None
    assert variant_transform([0, 1, 1, 3, 0, 2], "BTSILA", "TSILA") == [0, 1, 1, 3, 0, 2]
    assert variant_transform([0, 0, 1], "TSSILA", "OSSILA") == [1]
    assert variant_transform([1], "OSSILA", "TSSILA") == [0, 1]
    assert variant_transform([0, 1], "OSSILA", "TSSILA") is None
    with pytest.raises(ValueError):
        variant_transform([0, 1], "btsila", "bosila")


def test_variant_transform_roundtrip():
    pairs = [
        ("BTSILA", "BOSILA"),
        ("BTSILA", "TSILA"),
        ("TSILA", "OSILA"),
        ("TSILA", "TSSILA"),
        ("TSSILA", "OSSILA"),
        ("BTSILA", "BTSSILA"),
        ("BTSSILA", "BOSSILA"),
    ]
    rng = random.Random(21)
    samples = [[], [0], [0, 0, 1], [0, 1, 1, 3, 0, 2], [1, 1, 3, 0, 2]]
    for _ in range(60):
        samples.append([rng.choice([0, 0, 1, 2, 3, OMEGA]) for _ in range(rng.randint(0, 7))])
    for src, dst in pairs:
        for a in samples:
            out = variant_transform(a, src, dst)
            if out is not None:
                assert variant_transform(out, dst, src) is not None or out[:1] == [0]
            back = variant_transform(a, dst, src)
            if back is not None:
                # forward after reverse recovers the input exactly
                assert variant_transform(back, src, dst) == list(a)
