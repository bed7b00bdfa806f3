"""Hamiltonian-cycle gadget reductions to perfect matching reconfiguration.

Both constructions produce an instance whose shortest reconfiguration has
length exactly two iff the source graph is Hamiltonian. Every vertex and edge
of the output carries a label naming the gadget it came from, e.g.
``("v", 3, 7)`` is vertex 7 of the gadget for source vertex 3 and
``("sub", 5, 2)`` is the subdivision vertex of source edge 5 next to vertex 2.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError
from .graph import Multigraph, ReconfigSequence, is_bipartite, is_simple_cycle
from .instances import SpmrInstance


@dataclass(frozen=True)
class PlanarHcInstance:
    """A 3-regular simple graph, optionally with a rotation system.

    ``rotation[v]`` lists the three edge ids at v in their cyclic order.
    """

    graph: Multigraph
    rotation: tuple | None = None

    def __post_init__(self):
        g = self.graph
        seen = set()
        for u, v in g.edges:
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InputError("graph must be simple")
            seen.add(key)
        if any(len(inc) != 3 for inc in g.incidence):
            raise InputError("graph is not 3-regular")
        if self.rotation is not None:
            rot = tuple(tuple(r) for r in self.rotation)
            if len(rot) != g.vertex_count:
                raise InputError("rotation system needs one entry per vertex")
            for v, r in enumerate(rot):
                if sorted(r) != sorted(e for e, _ in g.incidence[v]):
                    raise InputError(f"rotation at {v} does not list its incident edges")
            object.__setattr__(self, "rotation", rot)

    def edge_order(self, v: int) -> tuple:
        if self.rotation is not None:
            return self.rotation[v]
        return tuple(sorted(e for e, _ in self.graph.incidence[v]))


@dataclass(frozen=True)
class DirectedHcInstance:
    vertex_count: int
    arcs: tuple

    def __post_init__(self):
        arcs = tuple((int(u), int(v)) for u, v in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        outd = [0] * self.vertex_count
        ind = [0] * self.vertex_count
        for u, v in arcs:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count) or u == v:
                raise InputError(f"bad arc {u}->{v}")
            outd[u] += 1
            ind[v] += 1
        if len(set(arcs)) != len(arcs):
            raise InputError("repeated arc")
        if max(outd + ind, default=0) > 2:
            raise InputError("in-degree and out-degree must be at most two")


@dataclass
class Reduction:
    instance: SpmrInstance
    vertex_labels: tuple
    edge_labels: tuple
    source: object = field(repr=False, default=None)

    def __post_init__(self):
        self._vid = {lab: i for i, lab in enumerate(self.vertex_labels)}
        self._eid = {lab: i for i, lab in enumerate(self.edge_labels)}

    def vertex(self, *label) -> int:
        return self._vid[label]

    def edge(self, *label) -> int:
        return self._eid[label]


class _Builder:
    def __init__(self):
        self.vlabels = []
        self.vid = {}
        self.edges = []
        self.elabels = []

    def v(self, label) -> int:
        if label not in self.vid:
            self.vid[label] = len(self.vlabels)
            self.vlabels.append(label)
        return self.vid[label]

    def e(self, a, b, label) -> int:
        self.edges.append((self.v(a), self.v(b)))
        self.elabels.append(label)
        return len(self.edges) - 1


PLANAR_GADGET = ((1, 2), (2, 3), (3, 4), (4, 1), (4, 5), (5, 7), (3, 6), (6, 8))
PLANAR_M = ((1, 2), (3, 4), (5, 7), (6, 8))
PLANAR_N = ((1, 4), (2, 3), (5, 7), (6, 8))


def reduce_planar(hc: PlanarHcInstance) -> Reduction:
    """8-vertex gadget per vertex, every source edge subdivided twice.

    Gadget vertex 7 is wired to the subdivision vertices of the first two
    incident edges, vertex 8 to those of the last two.
    """
    h = hc.graph
    b = _Builder()
    m, n = [], []
    for v in range(h.vertex_count):
        for i in range(1, 9):
            b.v(("v", v, i))
        for i, j in PLANAR_GADGET:
            eid = b.e(("v", v, i), ("v", v, j), ("D", v, i, j))
            if (i, j) in PLANAR_M:
                m.append(eid)
            if (i, j) in PLANAR_N or (j, i) in PLANAR_N:
                n.append(eid)
    for e, (x, y) in enumerate(h.edges):
        eid = b.e(("sub", e, x), ("sub", e, y), ("mid", e))
        m.append(eid)
        n.append(eid)
    for v in range(h.vertex_count):
        e1, e2, e3 = hc.edge_order(v)
        for hub, es in ((7, (e1, e2)), (8, (e2, e3))):
            for e in es:
                b.e(("v", v, hub), ("sub", e, v), ("wire", v, hub, e))
    g = Multigraph(len(b.vlabels), tuple(b.edges))
    inst = SpmrInstance(g, m, n)
    return Reduction(inst, tuple(b.vlabels), tuple(b.elabels), hc)


BIP_GADGET = (("+", 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 2), (5, 6), (6, "-"))
BIP_M = (("+", 1), (2, 3), (4, 5), (6, "-"))
BIP_N = (("+", 1), (5, 2), (3, 4), (6, "-"))


def reduce_bipartite(dhc: DirectedHcInstance) -> Reduction:
    """Gadget on v+, v-, v1..v6 per vertex; arc u->v becomes the edge u- v+."""
    b = _Builder()
    m, n = [], []
    for v in range(dhc.vertex_count):
        for i in ("+", "-", 1, 2, 3, 4, 5, 6):
            b.v(("v", v, i))
        for i, j in BIP_GADGET:
            eid = b.e(("v", v, i), ("v", v, j), ("D", v, i, j))
            if (i, j) in BIP_M:
                m.append(eid)
            if (i, j) in BIP_N:
                n.append(eid)
    for a, (u, v) in enumerate(dhc.arcs):
        b.e(("v", u, "-"), ("v", v, "+"), ("arc", u, v))
    g = Multigraph(len(b.vlabels), tuple(b.edges))
    if not is_bipartite(g):
        raise AssertionError("gadget graph is not bipartite")
    return Reduction(SpmrInstance(g, m, n), tuple(b.vlabels), tuple(b.elabels), dhc)


def _check_hamiltonian(k: int, cycle, has_step) -> list:
    cyc = [int(v) for v in cycle]
    if len(cyc) > 1 and cyc[0] == cyc[-1]:
        cyc = cyc[:-1]
    if sorted(cyc) != list(range(k)):
        raise InputError("cycle does not visit every vertex exactly once")
    if k < 2:
        raise InputError("need at least two vertices")
    for i, u in enumerate(cyc):
        if not has_step(u, cyc[(i + 1) % k]):
            raise InputError(f"{u} -> {cyc[(i + 1) % k]} is not an edge")
    return cyc


def _planar_witness(red: Reduction, cycle) -> list:
    hc = red.source
    h = hc.graph
    edge_of = {}
    for e, (x, y) in enumerate(h.edges):
        edge_of[frozenset((x, y))] = e
    cyc = _check_hamiltonian(h.vertex_count, cycle, lambda u, v: frozenset((u, v)) in edge_of)
    if h.vertex_count < 3:
        raise InputError("a simple cycle needs three vertices")
    k = len(cyc)
    c1, c2 = set(), set()
    for i, v in enumerate(cyc):
        e_in = edge_of[frozenset((cyc[i - 1], v))]
        e_out = edge_of[frozenset((v, cyc[(i + 1) % k]))]
        order = hc.edge_order(v)
        lo, hi = sorted((e_in, e_out), key=order.index)
        wires = {red.edge("wire", v, 7, lo), red.edge("wire", v, 8, hi)}
        d = lambda i, j: red.edge("D", v, i, j)
        path1 = {d(5, 7), d(4, 5), d(3, 4), d(3, 6), d(6, 8)}
        path2 = {d(5, 7), d(4, 5), d(4, 1), d(1, 2), d(2, 3), d(3, 6), d(6, 8)}
        c1 |= wires | path1
        c2 |= wires | path2
        c1.add(red.edge("mid", e_out))
        c2.add(red.edge("mid", e_out))
    return [frozenset(c1), frozenset(c2)]


def _bipartite_witness(red: Reduction, cycle) -> list:
    dhc = red.source
    arcs = set(dhc.arcs)
    cyc = _check_hamiltonian(dhc.vertex_count, cycle, lambda u, v: (u, v) in arcs)
    k = len(cyc)
    c1, c2 = set(), set()
    for i, v in enumerate(cyc):
        d = lambda i, j: red.edge("D", v, i, j)
        arc = red.edge("arc", v, cyc[(i + 1) % k])
        c1 |= {d("+", 1), d(1, 2), d(2, 3), d(3, 4), d(4, 5), d(5, 6), d(6, "-"), arc}
        c2 |= {d("+", 1), d(1, 2), d(5, 2), d(5, 6), d(6, "-"), arc}
    return [frozenset(c1), frozenset(c2)]


def witness_sequence_from_hc(red: Reduction, cycle) -> ReconfigSequence:
    """The two-flip sequence induced by a Hamiltonian cycle, given as a vertex list.

    For the bipartite reduction the cycle is directed and follows the list order.
    """
    if isinstance(red.source, PlanarHcInstance):
        cycles = _planar_witness(red, cycle)
    elif isinstance(red.source, DirectedHcInstance):
        cycles = _bipartite_witness(red, cycle)
    else:
        raise InputError("unknown reduction source")
    inst = red.instance
    g = inst.graph
    for c in cycles:
        if not is_simple_cycle(g, c):
            raise InputError("supplied cycle does not induce a simple alternating cycle")
    seq = ReconfigSequence.from_cycles(g, inst.m, cycles)
    if seq.matchings[-1] != inst.n:
        raise AssertionError("witness does not end at the target matching")
    return seq


def gadget_cycles(red: Reduction) -> list:
    """Components of m ^ n; each one is a single gadget 4-cycle."""
    from .graph import symmetric_difference_cycles

    return symmetric_difference_cycles(red.instance.graph, red.instance.m, red.instance.n)
