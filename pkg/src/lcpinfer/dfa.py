"""Layered DFA accepting every BWT string consistent with a cyclic LCP array.

Works for any alphabet size.  The array is split at its zero entries into one
character interval per symbol; sigma defaults to zeros+1.  A prefix s is
summarized by its Parikh vector p (per-symbol counts) and a bit vector b
where b[c] tells how the next required pair value L_c[p_c] compares with the
minimum global entry seen since c's last occurrence: 0 means equal (a pair of
c's may close now), 1 means the required value is still below the running
minimum (c must wait).  A comparison the other way is a dead prefix and is
rejected outright, so stored b entries are only ever 0 or 1.

Two prefixes with equal (p, b) behave identically from here on, which makes
the state graph a DAG layered by prefix length with at most one accepting
state: p = full counts, b = all zeros (the boundary sentinels L[0] = -1 and
L[n] = L_c[count_c] = -2 force every count to completion exactly at depth n).
"""
from __future__ import annotations

from dataclasses import dataclass

from .cyclic import OMEGA, alphabet


@dataclass(frozen=True)
class CharacterArrays:
    """The padded global array plus one padded per-symbol array."""

    sigma: int
    n: int
    L: tuple  # L[0] = -1, real entries at 1..n-1, L[n] = -2
    per_char: tuple  # per_char[c][0] = -1, ..., per_char[c][count_c] = -2

    @property
    def counts(self) -> tuple:
        return tuple(len(a) - 1 for a in self.per_char)


def character_arrays(lcp, sigma: int | None = None) -> CharacterArrays:
    """Split an array at its zeros.  The zero count must be sigma - 1."""
    entries = list(lcp)
    n = len(entries) + 1
    zeros = [j for j, x in enumerate(entries, start=1) if x == 0]
    if sigma is None:
        sigma = len(zeros) + 1
    if len(zeros) != sigma - 1:
        raise ValueError(f"array has {len(zeros)} zeros, needs {sigma - 1} for sigma={sigma}")
    L = (-1, *entries, -2)
    bounds = [0] + zeros + [n]
    per_char = []
    for c in range(sigma):
        lo, hi = bounds[c], bounds[c + 1]
        per_char.append((-1, *(L[j] - 1 for j in range(lo + 1, hi)), -2))
    return CharacterArrays(sigma=sigma, n=n, L=L, per_char=tuple(per_char))


@dataclass(frozen=True)
class DfaState:
    p: tuple
    b: tuple

    @property
    def depth(self) -> int:
        return sum(self.p)


def initial_state(ca: CharacterArrays) -> DfaState:
    return DfaState((0,) * ca.sigma, (0,) * ca.sigma)


def final_state(ca: CharacterArrays) -> DfaState:
    return DfaState(ca.counts, (0,) * ca.sigma)


def extend_state(ca: CharacterArrays, state: DfaState, ci: int) -> DfaState | None:
    """Append symbol ci to a prefix in this state; None when inconsistent."""
    counts = ca.counts
    p, b = state.p, state.b
    if p[ci] >= counts[ci]:
        return None
    if b[ci] != 0:
        return None
    e = ca.L[state.depth + 1]
    nb = []
    for c in range(ca.sigma):
        if c == ci:
            req = ca.per_char[c][p[c] + 1]
            if req > e:
                return None
            nb.append(0 if req == e else 1)
        else:
            req = ca.per_char[c][p[c]]
            if req > e:
                return None
            nb.append(0 if req == e else b[c])
    np = tuple(x + 1 if c == ci else x for c, x in enumerate(p))
    return DfaState(np, tuple(nb))


@dataclass
class LcpDfa:
    ca: CharacterArrays
    states: list  # DfaState, layered by depth, initial first
    transitions: dict  # (state, ci) -> state, only states on accepting paths
    initial: DfaState
    final: DfaState | None  # None when the language is empty


def build_dfa(lcp, sigma: int | None = None) -> LcpDfa:
    """Layer-by-layer construction followed by backward pruning, keeping only
    states on a path from the initial state to the accepting state."""
    ca = character_arrays(lcp, sigma)
    init = initial_state(ca)
    layers = [{init}]
    edges: dict = {}
    for depth in range(ca.n):
        nxt = set()
        for st in layers[depth]:
            for ci in range(ca.sigma):
                st2 = extend_state(ca, st, ci)
                if st2 is not None:
                    edges[(st, ci)] = st2
                    nxt.add(st2)
        layers.append(nxt)
    fin = final_state(ca)
    if fin not in layers[ca.n]:
        return LcpDfa(ca=ca, states=[init], transitions={}, initial=init, final=None)
    # keep states that reach the accepting state
    alive = {fin}
    for depth in range(ca.n - 1, -1, -1):
        for st in layers[depth]:
            if any(edges.get((st, ci)) in alive for ci in range(ca.sigma)):
                alive.add(st)
    states = [st for layer in layers for st in sorted(layer & alive, key=lambda s: (s.p, s.b))]
    transitions = {k: v for k, v in edges.items() if k[0] in alive and v in alive}
    return LcpDfa(ca=ca, states=states, transitions=transitions, initial=init, final=fin)


def dfa_count(dfa: LcpDfa) -> int:
    """Number of accepted strings (paths from initial to final)."""
    if dfa.final is None:
        return 0
    paths = {dfa.initial: 1}
    for st in dfa.states:
        if st not in paths:
            continue
        for ci in range(dfa.ca.sigma):
            nxt = dfa.transitions.get((st, ci))
            if nxt is not None:
                paths[nxt] = paths.get(nxt, 0) + paths[st]
    return paths.get(dfa.final, 0)


def dfa_enumerate(dfa: LcpDfa, limit: int | None = None):
    """Accepted strings in lexicographic order; returns (strings, truncated)."""
    if dfa.final is None:
        return [], False
    letters = alphabet(dfa.ca.sigma)
    out: list[str] = []
    truncated = False

    def walk(st: DfaState, prefix: list) -> bool:
        nonlocal truncated
        if st == dfa.final:
            if limit is not None and len(out) >= limit:
                truncated = True
                return False
            out.append("".join(prefix))
            return True
        for ci in range(dfa.ca.sigma):
            nxt = dfa.transitions.get((st, ci))
            if nxt is not None:
                prefix.append(letters[ci])
                ok = walk(nxt, prefix)
                prefix.pop()
                if not ok:
                    return False
        return True

    walk(dfa.initial, [])
    return out, truncated


def dfa_accepts(dfa: LcpDfa, s: str) -> bool:
    if len(s) != dfa.ca.n or dfa.final is None:
        return False
    letters = alphabet(dfa.ca.sigma)
    st = dfa.initial
    for ch in s:
        ci = letters.find(ch)
        if ci < 0:
            return False
        st = dfa.transitions.get((st, ci))
        if st is None:
            return False
    return st == dfa.final


def is_prefix_consistent(s: str, lcp, sigma: int | None = None) -> bool:
    """Reference consistency check straight from the definitions, independent
    of the state machinery: every closed pair of equal symbols must hit its
    required value exactly, and every open pair must still be reachable."""
    ca = character_arrays(lcp, sigma)
    letters = alphabet(ca.sigma)
    if any(ch not in letters for ch in s):
        raise ValueError(f"symbol outside the {ca.sigma}-letter alphabet: {s!r}")
    if len(s) > ca.n:
        return False
    counts = ca.counts
    bounds = [0]
    for c in range(ca.sigma):
        bounds.append(bounds[-1] + counts[c])
    for c in range(ca.sigma):
        occ = [j for j, ch in enumerate(s) if ch == letters[c]]
        if len(occ) > counts[c]:
            return False
        ic = bounds[c]
        # closed pairs: i-th and (i+1)-th occurrence at 0-based h < k
        for i in range(1, len(occ)):
            h, k = occ[i - 1], occ[i]
            if ca.L[ic + i] != 1 + min(ca.L[j] for j in range(h + 1, k + 1)):
                return False
        # open pair against everything seen so far
        if len(occ) < counts[c]:
            last = occ[-1] if occ else -1
            m = min(ca.L[j] for j in range(last + 1, len(s) + 1))
            if ca.L[ic + len(occ)] > 1 + m:
                return False
    return True


def to_dot(dfa: LcpDfa) -> str:
    """Graphviz rendering; states labeled p|b, layered by depth."""
    letters = alphabet(dfa.ca.sigma)
    ids = {st: i for i, st in enumerate(dfa.states)}
    lines = ["digraph lcp_dfa {", "  rankdir=LR;"]
    for st, i in ids.items():
        shape = "doublecircle" if st == dfa.final else "circle"
        label = f"{list(st.p)}|{list(st.b)}"
        lines.append(f'  s{i} [label="{label}", shape={shape}];')
    for (st, ci), nxt in sorted(dfa.transitions.items(), key=lambda kv: (ids[kv[0][0]], kv[0][1])):
        lines.append(f'  s{ids[st]} -> s{ids[nxt]} [label="{letters[ci]}"];')
    lines.append("}")
    return "\n".join(lines)
