"""Bridges between Eulerian-cycle instances, LCP arrays, and problem variants.

Three constructions live here.  ccec_to_multiset turns a CCEC instance into a
set of binary cyclic words (two per vertex, spliced along the initial-state
cycles) whose LCP array has a swap in the BWT for every vertex partition, so
the instance is satisfiable exactly when some solution string is a single
cyclic string.  bwt_graph goes the other way: from an inferred BWT-with-swaps
it builds the position graph whose swap pairs merge into degree-(2,2)
vertices, contracts plain positions away, and yields a CCEC instance whose
partition flips range over exactly the solution strings; single_string_decide
searches it.  variant_transform applies the leading-zero equivalences that
move an array between the terminated/open and single/set problem variants.

list_swap_cores identifies every swap interval of a binary multiset directly
from the occurrence conditions, classifying each core string against the
catalogue of shapes that the constructed instances can produce.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from . import ccec as ccec_mod
from .binary_infer import InferenceResult, SwapInterval, apply_swap_mask, infer
from .ccec import STRAIGHT, CcecInstance, Edge
from .cyclic import (
    OMEGA,
    CyclicMultiset,
    bwt,
    ibwt,
    lcp_array,
    lcp_array_from_bwt,
    multiset_from_cyclic_words,
    standard_permutation,
)
from .errors import ResourceLimitError
from .rmq import RmqIndex


def vertex_strings(k: int, h: int, m: int) -> tuple[str, str]:
    """The two strings of a vertex: partition number k, vertex number h,
    partition count m.  Every a-run length m+2h or m+2h-1 is unique across
    vertices, and a^{m+2n} occurs exactly once overall."""
    if not (1 <= k <= m and h >= 1):
        raise ValueError(f"bad vertex string parameters k={k} h={h} m={m}")
    s1 = "b" + "a" * k + "b" + "a" * (m + 2 * h)
    s2 = "bb" + "a" * k + "bb" + "a" * (m + 2 * h - 1)
    return s1, s2


def ccec_to_multiset(instance: CcecInstance) -> CyclicMultiset:
    """One cyclic word per initial-state cycle, concatenating each visited
    vertex's strings; the first pass through a vertex uses its first string."""
    part_of = instance.partition_of()
    m = instance.m
    words = []
    seen_pass: dict[int, int] = {}
    for cycle in ccec_mod.cycles(instance, instance.initial):
        parts = []
        for eidx in cycle:
            vtx = instance.edges[eidx].dst
            passes = seen_pass.get(vtx, 0)
            seen_pass[vtx] = passes + 1
            parts.append(vertex_strings(part_of[vtx], vtx, m)[min(passes, 1)])
        words.append("".join(parts))
    return multiset_from_cyclic_words(words)


def ccec_to_lcp(instance: CcecInstance) -> list:
    return lcp_array(ccec_to_multiset(instance))


def sat_to_lcp(clauses) -> list:
    return ccec_to_lcp(ccec_mod.from_cnf(clauses))


def add_terminator(W: CyclicMultiset, m: int, n: int) -> CyclicMultiset:
    """Replace the unique longest a-run a^{m+2n} with a^{m+2n+1} $ a^{m+2n}.

    The run must occur exactly once across the multiset and be its strictly
    longest a-run; the result has a single '$', which sorts below 'a'.
    """
    run = m + 2 * n
    hits = []
    for wi, w in enumerate(W.words):
        if "b" not in w:
            raise ValueError("word without b cannot bound an a-run")
        # cyclic maximal runs: rotate to start at a b, then scan linearly
        rot = w.index("b")
        lin = w[rot:] + w[:rot]
        for match in re.finditer(r"a+", lin):
            span = match.end() - match.start()
            if span > run:
                raise ValueError(f"a-run longer than a^{run} present")
            if span == run:
                hits.append((wi, (match.start() + rot) % len(w)))
    if len(hits) != 1:
        raise ValueError(f"a^{run} occurs {len(hits)} times, need exactly 1")
    wi, start = hits[0]
    w = W.words[wi]
    lin = w[start:] + w[:start]
    replaced = "a" * (run + 1) + "$" + "a" * run + lin[run:]
    words = list(W.words)
    words[wi] = replaced
    return multiset_from_cyclic_words(words)


# --- swap-core identification ----------------------------------------------

_CORE_FORMS = (
    (re.compile(r"b(a+)b"), "ba^kb"),
    (re.compile(r"b(a+)"), "ba^h"),
    (re.compile(r"(a+)b"), "a^hb"),
    (re.compile(r"(a+)b(a+)"), "a^kba^h"),
    (re.compile(r"(a+)bb(a+)"), "a^kbba^h"),
    (re.compile(r"(a+)b(a+)b(a+)"), "a^kba^iba^h"),
    (re.compile(r"(a+)bb(a+)bb(a+)"), "a^kbba^ibba^h"),
)


def classify_core(x: str) -> tuple[str, tuple[int, ...]]:
    """Catalogue form of a core string plus its a-run lengths."""
    for rx, form in _CORE_FORMS:
        hit = rx.fullmatch(x)
        if hit:
            return form, tuple(len(g) for g in hit.groups())
    return "unclassified", ()


@dataclass(frozen=True)
class SwapCore:
    core: str
    lo: int
    hi: int  # the x-interval of the core, suffix ranks [lo..hi)
    form: str
    runs: tuple[int, ...]

    @property
    def partition(self) -> int | None:
        """Partition number for cores of shape ba^kb."""
        return self.runs[0] if self.form == "ba^kb" else None


def _x_interval_nodes(entries, idx: RmqIndex):
    """All x-interval ranges with their prefix-length window (low, high]:
    [lo..hi) is the x-interval of x exactly when low < |x| <= high."""
    n = len(entries) + 1
    out = []
    stack = [(0, n, 0)]
    while stack:
        lo, hi, low = stack.pop()
        if hi - lo < 2:
            continue
        k = idx.query(lo + 1, hi)
        m = idx.value(k)
        out.append((lo, hi, low, m))
        if m == OMEGA:
            continue  # equal suffixes: splitting yields only singletons
        cuts = [k]
        while cuts[-1] + 1 < hi and idx.value(idx.query(cuts[-1] + 1, hi)) == m:
            cuts.append(idx.query(cuts[-1] + 1, hi))
        edges = [lo] + cuts + [hi]
        for a, b in zip(edges, edges[1:]):
            stack.append((a, b, m))
    return out


def list_swap_cores(W: CyclicMultiset, max_core_len: int | None = None) -> list[SwapCore]:
    """Every string x whose x-interval [i..j) satisfies the two swap
    conditions: occ(axa)=occ(bxb)=occ(x)/2 or occ(axb)=occ(bxa)=occ(x)/2, and
    elementwise equality of the sub-LCPs on both sides of the midpoint.

    Core length is capped (default 2 * total): beyond that every suffix
    comparison has wrapped, so longer cores only repeat shorter ones' period.
    """
    v = bwt(W)
    n = len(v)
    entries = lcp_array_from_bwt(v)
    cap = max_core_len if max_core_len is not None else 2 * n
    if n < 2:
        return []
    idx = RmqIndex(entries)
    L = [None] + entries  # 1-based
    psi = standard_permutation(v)
    vhat = "".join(sorted(v))

    def spell(rank: int, length: int) -> str:
        out = []
        x = rank
        for _ in range(length):
            out.append(vhat[x])
            x = psi[x]
        return "".join(out)

    cores = []
    for lo, hi, low, high in _x_interval_nodes(entries, idx):
        width = hi - lo
        if width % 2:
            continue
        half = width // 2
        mid = lo + half
        if any(L[lo + 1 + r] != L[mid + 1 + r] for r in range(half - 1)):
            continue
        top = cap if high == OMEGA else min(int(high), cap)
        first = max(1, low + 1)
        if top < first:
            continue
        spelled = [spell(r, top + 1) for r in range(lo, hi)]
        prev = v[lo:hi]
        for ell in range(first, top + 1):
            occ_axa = occ_bxb = occ_axb = occ_bxa = 0
            for off in range(width):
                nxt = spelled[off][ell]
                if prev[off] == "a":
                    if nxt == "a":
                        occ_axa += 1
                    else:
                        occ_axb += 1
                elif nxt == "a":
                    occ_bxa += 1
                else:
                    occ_bxb += 1
            if (occ_axa == occ_bxb == half) or (occ_axb == occ_bxa == half):
                x = spelled[0][:ell]
                form, runs = classify_core(x)
                cores.append(SwapCore(x, lo, hi, form, runs))
    cores.sort(key=lambda c: (c.lo, len(c.core)))
    return cores


# --- BWT position graph and single-string decision --------------------------


@dataclass
class BwtGraph:
    """Position graph of a BWT-with-swaps, contracted to a CCEC instance.

    pairs[t] is the t-th swap pair (a-half position, b-half position); CCEC
    vertex t+1 is that merged pair.  partitions groups pair vertices by swap
    interval, in interval order.  floating lists the cycles of the unswapped
    string that contain no pair position; they stay separate cycles under
    every flip, so a single string needs them absent (or everything equal).
    """

    bwt: str
    swaps: tuple
    pairs: list
    partitions: list
    instance: CcecInstance | None
    floating: list  # (positions, spelled word) per untouched cycle
    edge_chars: dict  # (src, src_port) -> characters spelled along the walk


def _position_labels(v: str):
    vhat = sorted(v)
    counts: dict[str, int] = {}
    labels = []
    for c in vhat:
        counts[c] = counts.get(c, 0) + 1
        labels.append(f"{c}{counts[c]}")
    return "".join(vhat), labels


def bwt_graph(result: InferenceResult | str, swaps=None) -> BwtGraph:
    """Build the merged, contracted position graph for an inference result
    (or an explicit bwt/swap-list pair, to allow filtered swap subsets)."""
    if isinstance(result, InferenceResult):
        v, swap_list = result.bwt, sorted(result.swaps)
    else:
        v, swap_list = result, sorted(SwapInterval(*s) for s in (swaps or ()))
    n = len(v)
    last = 0
    for s in swap_list:
        if s.lo < last or (s.hi - s.lo) % 2 or s.hi > n:
            raise ValueError(f"swap intervals must be disjoint and even: {swap_list}")
        last = s.hi
    psi = standard_permutation(v)
    vhat, labels = _position_labels(v)

    pair_of: dict[int, tuple[int, int]] = {}
    pairs = []
    partitions = []
    for s in swap_list:
        ids = []
        half = (s.hi - s.lo) // 2
        for r in range(half):
            vid = len(pairs) + 1
            pairs.append((s.lo + r, s.lo + half + r))
            pair_of[s.lo + r] = (vid, 0)
            pair_of[s.lo + half + r] = (vid, 1)
            ids.append(vid)
        partitions.append(ids)

    visited = set(pair_of)
    instance = None
    edge_chars: dict[tuple[int, int], str] = {}
    if pairs:
        edges = []
        for vid, (pa, pb) in enumerate(pairs, start=1):
            for out_port, cur in ((0, pa), (1, pb)):
                labs = []
                spelled = []
                while True:
                    labs.append(labels[cur])
                    spelled.append(vhat[cur])
                    cur = psi[cur]
                    if cur in pair_of:
                        tvid, tport = pair_of[cur]
                        edges.append(Edge(vid, out_port, tvid, tport, "".join(labs)))
                        edge_chars[(vid, out_port)] = "".join(spelled)
                        break
                    visited.add(cur)
        instance = CcecInstance(
            n=len(pairs),
            edges=edges,
            partitions=partitions,
            initial={vid: STRAIGHT for vid in range(1, len(pairs) + 1)},
            labels={vid: f"{pa}/{pb}" for vid, (pa, pb) in enumerate(pairs, start=1)},
        )

    floating = []
    for start in range(n):
        if start in visited:
            continue
        cycle = []
        x = start
        while x not in visited:
            visited.add(x)
            cycle.append(x)
            x = psi[x]
        floating.append((cycle, "".join(vhat[p] for p in cycle)))
    return BwtGraph(v, tuple(swap_list), pairs, partitions, instance, floating, edge_chars)


def single_string_decide(lcp, cap: int = 1 << 20, jobs: int = 1) -> str | None:
    """A cyclic string whose LCP array equals the input, or None.

    Raises InvalidLcpArray when no binary multiset at all realizes the array,
    ResourceLimitError when 2^(number of swap intervals) exceeds cap.  The
    string may be a power u^e: its suffix multiset is then e copies of u.
    """
    result = infer(lcp)
    swaps = sorted(result.swaps)
    if not swaps:
        return _equal_words_string(result.bwt)
    if 1 << len(swaps) > cap:
        raise ResourceLimitError(f"2^{len(swaps)} swap masks exceed cap {cap}", cap)
    graph = bwt_graph(result)
    if not graph.floating:
        flips = ccec_mod.solve(graph.instance, cap=cap, jobs=jobs)
        if flips is not None:
            chosen = [swaps[k - 1] for k in flips]
            words = ibwt(apply_swap_mask(result.bwt, chosen)).words
            return words[0]
    return _equal_cycles_search(graph)


def _equal_words_string(v: str) -> str | None:
    words = ibwt(v).words
    if len(set(words)) == 1:
        return words[0] * len(words)
    return None


def _equal_cycles_search(graph: BwtGraph) -> str | None:
    """Masks whose cycles all spell the same word u give the power u^e; the
    contracted graph carries enough characters to spell every cycle.  Cycle
    lengths are compared before any word is assembled."""
    from .cyclic import canonical_rotation

    float_words = {canonical_rotation(w) for _, w in graph.floating}
    if len(float_words) > 1:
        return None
    target = next(iter(float_words)) if float_words else None

    inst = graph.instance
    edge_at = {}
    for idx, e in enumerate(inst.edges):
        edge_at[(e.src, e.src_port)] = idx
    chars = [graph.edge_chars[(e.src, e.src_port)] for e in inst.edges]
    nchars = [len(c) for c in chars]
    nedges = len(inst.edges)
    dstv = [e.dst for e in inst.edges]
    succ_keep = [edge_at[(e.dst, e.dst_port)] for e in inst.edges]
    succ_flip = [edge_at[(e.dst, e.dst_port ^ 1)] for e in inst.edges]
    part_of = inst.partition_of()
    verts = sorted(inst.initial)
    for mask in range(1 << inst.m):
        crossing = {
            v: inst.initial[v] ^ (mask >> (part_of[v] - 1) & 1) for v in verts
        }
        succ = [
            succ_flip[i] if crossing[dstv[i]] else succ_keep[i]
            for i in range(nedges)
        ]
        seen = bytearray(nedges)
        starts = []
        lens = []
        for s in range(nedges):
            if seen[s]:
                continue
            total = 0
            x = s
            while not seen[x]:
                seen[x] = 1
                total += nchars[x]
                x = succ[x]
            starts.append(s)
            lens.append(total)
        want = len(target) if target is not None else lens[0]
        if any(ln != want for ln in lens):
            continue
        words = set(float_words)
        for s in starts:
            parts = []
            x = s
            while True:
                parts.append(chars[x])
                x = succ[x]
                if x == s:
                    break
            words.add(canonical_rotation("".join(parts)))
            if len(words) > 1:
                break
        if len(words) == 1:
            return words.pop() * (len(graph.floating) + len(starts))
    return None


def graph_to_dot(graph: BwtGraph) -> str:
    lines = ["digraph bwt {"]
    for vid, (pa, pb) in enumerate(graph.pairs, start=1):
        lines.append(f'  v{vid} [label="{pa}/{pb}"];')
    if graph.instance is not None:
        for e in graph.instance.edges:
            lines.append(
                f'  v{e.src} -> v{e.dst} [label="{e.label}", taillabel="{e.src_port}", headlabel="{e.dst_port}"];'
            )
    for t, (cycle, word) in enumerate(graph.floating):
        lines.append(f'  f{t} [label="{word}", shape=box];')
    lines.append("}")
    return "\n".join(lines)


# --- problem-variant transforms ---------------------------------------------

# (strip mode, side condition) per ordered bullet pair; reverse direction
# prepends the stripped zeros back and must round-trip.
_BULLETS = {
    ("BTSILA", "BOSILA"): ("one", None),
    ("BTSILA", "TSILA"): ("none", "lead0_le1"),
    ("TSILA", "OSILA"): ("one", None),
    ("TSILA", "TSSILA"): ("none", None),
    ("TSSILA", "OSSILA"): ("all", None),
    ("BTSILA", "BTSSILA"): ("none", "lead0_le1"),
    ("BTSSILA", "BOSSILA"): ("all", "le1"),
}


def _zeros(entries) -> int:
    return sum(1 for x in entries if x == 0)


def variant_transform(lcp, src: str, dst: str):
    """Map an array between two problem variants along an equivalence bullet;
    None when the bullet's side conditions reject the instance."""
    entries = list(lcp)
    if (src, dst) in _BULLETS:
        mode, cond = _BULLETS[(src, dst)]
        forward = True
    elif (dst, src) in _BULLETS:
        mode, cond = _BULLETS[(dst, src)]
        forward = False
    else:
        raise ValueError(f"no transform between {src} and {dst}")

    if forward:
        if mode in ("one", "all") and not (entries and entries[0] == 0):
            return None
        if cond == "lead0_le1" and not (entries and entries[0] == 0 and _zeros(entries) <= 2):
            return None
        if mode == "one":
            out = entries[1:]
        elif mode == "all":
            out = entries[:]
            while out and out[0] == 0:
                out.pop(0)
        else:
            out = entries[:]
        if cond == "le1" and _zeros(out) > 1:
            return None
        return out
    # reverse: re-add zeros so the forward map recovers the input exactly
    if cond == "le1" and _zeros(entries) > 1:
        return None
    if cond == "lead0_le1" and not (entries and entries[0] == 0 and _zeros(entries) <= 2):
        return None
    if mode == "one":
        return [0] + entries
    if mode == "all":
        if entries and entries[0] == 0:
            return None  # stripping would remove more zeros than were added
        return [0] + entries
    return entries[:]
