"""Coupling Constrained Eulerian Cycle instances and the 3-SAT reduction.

A CCEC instance is a directed multigraph where every vertex has two in-ports
(0 = top, 1 = bottom) and two out-ports.  A vertex state routes each in-port
to an out-port: Straight keeps the port index, Crossing flips it.  Vertices
are grouped into partitions that flip state together, and the question is
whether some set of partition flips applied to the initial state makes the
edge routing a single Eulerian cycle.

The 3-SAT reduction builds one 5-vertex gadget per clause (three vertices
labeled by the clause's literals interleaved with two free vertices) and one
4-vertex gadget per variable (three vertices carrying the variable and one
its negation), all strung on a main cycle that also passes a self-loop
vertex y.  A literal vertex is Straight exactly when its literal is false,
so flipping a variable's partition toggles the truth of every occurrence at
once.  With any all-false clause the gadget detaches a 7-edge side cycle;
with a true literal the free vertices can always reconnect it.  The variable
gadgets stay connected either way and exist to pad partitions, and y pads
the partition count while never disconnecting the main cycle in its initial
state.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import ResourceLimitError

STRAIGHT = 0
CROSSING = 1


class Edge(NamedTuple):
    src: int
    src_port: int
    dst: int
    dst_port: int
    label: str = ""


@dataclass
class CcecInstance:
    n: int  # vertices numbered 1..n
    edges: list
    partitions: list  # partitions[k-1] = list of vertex ids in partition k
    initial: dict  # vertex -> STRAIGHT | CROSSING
    labels: dict = field(default_factory=dict)  # vertex -> annotation

    def __post_init__(self):
        seen_out = set()
        seen_in = set()
        for e in self.edges:
            if not (1 <= e.src <= self.n and 1 <= e.dst <= self.n):
                raise ValueError(f"edge endpoint out of range: {e}")
            if (e.src, e.src_port) in seen_out or (e.dst, e.dst_port) in seen_in:
                raise ValueError(f"port used twice: {e}")
            seen_out.add((e.src, e.src_port))
            seen_in.add((e.dst, e.dst_port))
        want = {(v, p) for v in range(1, self.n + 1) for p in (0, 1)}
        if seen_out != want or seen_in != want:
            raise ValueError("every vertex needs exactly two in- and two out-edges")
        flat = sorted(v for part in self.partitions for v in part)
        if flat != list(range(1, self.n + 1)):
            raise ValueError("partitions must cover vertices 1..n exactly once")

    @property
    def m(self) -> int:
        return len(self.partitions)

    def partition_of(self) -> dict:
        out = {}
        for k, part in enumerate(self.partitions, start=1):
            for v in part:
                out[v] = k
        return out

    def state_after_flips(self, flips) -> dict:
        flips = set(flips)
        state = dict(self.initial)
        for k in flips:
            for v in self.partitions[k - 1]:
                state[v] ^= 1
        return state


def cycles(instance: CcecInstance, state: dict) -> list:
    """Cycle decomposition of the edge routing; each cycle is a list of edge
    indices in traversal order, cycles ordered by smallest contained edge."""
    edge_at = {}
    for idx, e in enumerate(instance.edges):
        edge_at[(e.src, e.src_port)] = idx
    succ = []
    for e in instance.edges:
        out_port = e.dst_port ^ state[e.dst]
        succ.append(edge_at[(e.dst, out_port)])
    seen = [False] * len(succ)
    out = []
    for start in range(len(succ)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = succ[x]
        out.append(cyc)
    return out


def is_eulerian(instance: CcecInstance, state: dict) -> bool:
    return len(cycles(instance, state)) == 1


def _count_cycles_fast(succ: list, scratch: list) -> int:
    for i in range(len(scratch)):
        scratch[i] = False
    count = 0
    for start in range(len(succ)):
        if scratch[start]:
            continue
        count += 1
        x = start
        while not scratch[x]:
            scratch[x] = True
            x = succ[x]
    return count


def solve(instance: CcecInstance, cap: int = 1 << 20, jobs: int = 1):
    """Smallest flip set (by mask order over partitions 1..m) whose state is
    a single Eulerian cycle, or None.  Raises when 2^m exceeds cap."""
    m = instance.m
    if 1 << m > cap:
        raise ResourceLimitError(f"2^{m} flip sets exceed cap {cap}", cap)
    edge_at = {}
    for idx, e in enumerate(instance.edges):
        edge_at[(e.src, e.src_port)] = idx
    part_of = instance.partition_of()
    # per-edge: index of routing vertex, its in-port, partition bit position
    dst_edge = [(e.dst, e.dst_port) for e in instance.edges]
    nedges = len(instance.edges)
    scratch = [False] * nedges
    base_bit = [instance.initial[v] for v in range(1, instance.n + 1)]
    if jobs > 1:
        return _solve_parallel(instance, cap, jobs)
    for mask in range(1 << m):
        succ = [0] * nedges
        for idx in range(nedges):
            v, port = dst_edge[idx]
            bit = base_bit[v - 1] ^ (mask >> (part_of[v] - 1) & 1)
            succ[idx] = edge_at[(v, port ^ bit)]
        if _count_cycles_fast(succ, scratch) == 1:
            return frozenset(k for k in range(1, m + 1) if mask >> (k - 1) & 1)
    return None


def _solve_range(args):
    instance, lo, hi = args
    edge_at = {}
    for idx, e in enumerate(instance.edges):
        edge_at[(e.src, e.src_port)] = idx
    part_of = instance.partition_of()
    dst_edge = [(e.dst, e.dst_port) for e in instance.edges]
    nedges = len(instance.edges)
    scratch = [False] * nedges
    base_bit = [instance.initial[v] for v in range(1, instance.n + 1)]
    for mask in range(lo, hi):
        succ = [0] * nedges
        for idx in range(nedges):
            v, port = dst_edge[idx]
            bit = base_bit[v - 1] ^ (mask >> (part_of[v] - 1) & 1)
            succ[idx] = edge_at[(v, port ^ bit)]
        if _count_cycles_fast(succ, scratch) == 1:
            return mask
    return None


def _solve_parallel(instance: CcecInstance, cap: int, jobs: int):
    from concurrent.futures import ProcessPoolExecutor

    m = instance.m
    total = 1 << m
    chunk = max(1, total // (jobs * 8))
    ranges = [(instance, lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
    best = None
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for hit in pool.map(_solve_range, ranges):
            if hit is not None:
                best = hit if best is None else min(best, hit)
                break  # ranges are scanned in ascending order
    if best is None:
        return None
    return frozenset(k for k in range(1, m + 1) if best >> (k - 1) & 1)


# --- 3-SAT reduction -------------------------------------------------------

Clause = "tuple[int, int, int]"  # DIMACS-style literals, var indices 1-based


def _lit_name(lit: int) -> str:
    return f"x{lit}" if lit > 0 else f"~x{-lit}"


def from_cnf(clauses) -> CcecInstance:
    """Build the CCEC instance of a 3-CNF formula.

    Vertex numbering: clause gadgets first (5 per clause), then one negated
    vertex per variable, then y, then the variable triples from the last
    variable up so that variable 1's triple holds the three biggest numbers
    with the middle vertex biggest.  Partition numbering: free vertices get
    1..2C, variable i gets m-i, y gets m.
    """
    clauses = [tuple(cl) for cl in clauses]
    if any(len(cl) != 3 or 0 in cl for cl in clauses):
        raise ValueError("every clause needs exactly three nonzero literals")
    variables = sorted({abs(l) for cl in clauses for l in cl})
    if variables and variables != list(range(1, len(variables) + 1)):
        raise ValueError("variables must be numbered 1..V without gaps")
    V = len(variables)
    C = len(clauses)
    n = 5 * C + 4 * V + 1
    m = 2 * C + V + 1

    y = 5 * C + V + 1
    neg_extra = {i: 5 * C + i for i in range(1, V + 1)}
    triple = {}
    for i in range(1, V + 1):
        top = n - 3 * (i - 1)
        triple[i] = (top - 2, top, top - 1)  # (first, middle, last)

    labels = {y: "y"}
    initial = {y: STRAIGHT}
    partitions = [[] for _ in range(m)]
    partitions[m - 1].append(y)

    def set_literal(vertex: int, lit: int) -> None:
        labels[vertex] = _lit_name(lit)
        # straight exactly when the literal is false under all-false
        initial[vertex] = STRAIGHT if lit > 0 else CROSSING
        partitions[m - abs(lit) - 1].append(vertex)

    edges = []

    def add(src, sp, dst, dp, label=""):
        edges.append(Edge(src, sp, dst, dp, label))

    units = []  # (entry_vertex, entry_port, exit_vertex, exit_port)
    for j, cl in enumerate(clauses):
        l1, f1, l2, f2, l3 = (5 * j + t for t in range(1, 6))
        for vtx, lit in ((l1, cl[0]), (l2, cl[1]), (l3, cl[2])):
            set_literal(vtx, lit)
        for t, vtx in enumerate((f1, f2)):
            labels[vtx] = "free"
            initial[vtx] = STRAIGHT
            partitions[2 * j + t].append(vtx)
        tag = f"c{j + 1}"
        add(l1, 0, f1, 1, tag)
        add(l1, 1, l2, 1, tag)
        add(f1, 1, l2, 0, tag)
        add(f1, 0, f2, 0, tag)
        add(l2, 0, f2, 1, tag)
        add(l2, 1, l3, 1, tag)
        add(f2, 1, l3, 0, tag)
        add(f2, 0, l1, 0, tag)
        add(l3, 0, f1, 0, tag)
        units.append((l1, 1, l3, 1))
    for i in range(1, V + 1):
        g1, g2, g3 = triple[i]
        g4 = neg_extra[i]
        set_literal(g1, i)
        set_literal(g2, i)
        set_literal(g3, i)
        set_literal(g4, -i)
        tag = f"v{i}"
        add(g1, 0, g2, 0, tag)
        add(g1, 1, g2, 1, tag)
        add(g2, 0, g3, 0, tag)
        add(g2, 1, g3, 1, tag)
        add(g3, 0, g4, 0, tag)
        add(g3, 1, g4, 1, tag)
        add(g4, 0, g1, 0, tag)
        units.append((g1, 1, g4, 1))
    add(y, 0, y, 1, "y-loop")
    units.append((y, 0, y, 1))

    for t, (entry_v, entry_p, _, _) in enumerate(units):
        _, _, exit_v, exit_p = units[t - 1]
        add(exit_v, exit_p, entry_v, entry_p, "main")

    return CcecInstance(n=n, edges=edges, partitions=partitions, initial=initial, labels=labels)


def assignment_flips(instance_or_m, true_vars) -> frozenset:
    """Flip set that makes exactly the given variables true (variable i's
    partition is m - i)."""
    m = instance_or_m.m if isinstance(instance_or_m, CcecInstance) else instance_or_m
    return frozenset(m - i for i in true_vars)


def parse_dimacs(text: str):
    """DIMACS CNF; clauses must have exactly three literals each."""
    clauses = []
    cur = []
    header = None
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad DIMACS header: {line}")
            header = (int(parts[2]), int(parts[3]))
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                if len(cur) != 3:
                    raise ValueError(f"clause with {len(cur)} literals (need 3): {cur}")
                clauses.append(tuple(cur))
                cur = []
            else:
                cur.append(lit)
    if cur:
        raise ValueError("unterminated clause at end of input")
    if header is not None and len(clauses) != header[1]:
        raise ValueError(f"header says {header[1]} clauses, found {len(clauses)}")
    return clauses


def brute_force_sat(clauses) -> "dict | None":
    """Smallest satisfying assignment in binary counting order, or None."""
    variables = sorted({abs(l) for cl in clauses for l in cl})
    for bits in range(1 << len(variables)):
        assign = {v: bool(bits >> i & 1) for i, v in enumerate(variables)}
        if all(any(assign[abs(l)] == (l > 0) for l in cl) for cl in clauses):
            return assign
    return None


def to_dot(instance: CcecInstance, state: dict | None = None) -> str:
    state = state if state is not None else instance.initial
    part_of = instance.partition_of()
    lines = ["digraph ccec {"]
    for v in range(1, instance.n + 1):
        tag = instance.labels.get(v, "")
        st = "S" if state[v] == STRAIGHT else "C"
        lines.append(f'  v{v} [label="{v}:{tag} p{part_of[v]} {st}"];')
    for e in instance.edges:
        lines.append(f'  v{e.src} -> v{e.dst} [label="{e.label}", taillabel="{e.src_port}", headlabel="{e.dst_port}"];')
    lines.append("}")
    return "\n".join(lines)
