"""Plain-text instance formats and the JSON result document.

Instance (0-based ids, one instance per file)::

    c comment
    p pmr <n> <m>
    e <u> <v>            # m lines, edge ids 0..m-1 in order
    m <k> <id> ...
    n <k> <id> ...
    o <v0> ... <v_r>     # optional outer cyclic order, one per component

Tree: ``p tree <n>`` then n-1 lines ``t <u> <v> <length> <d>`` with d = 1 for
deletable edges. Graph: ``p graph <n> <m>``, ``e <u> <v>`` lines and optional
rotation lines ``r <v> <e1> <e2> <e3>``. Digraph: ``p digraph <n> <m>`` and
``a <u> <v>`` lines.
"""
from __future__ import annotations

from .errors import InputError
from .graph import Multigraph
from .instances import SpmrInstance
from .msdd import MsddInstance
from .reductions import DirectedHcInstance, PlanarHcInstance


def _records(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        yield lineno, parts[0], parts[1:]


def _ints(lineno: int, fields) -> list:
    try:
        return [int(x) for x in fields]
    except ValueError:
        raise InputError(f"line {lineno}: expected integers, got {' '.join(fields)!r}") from None


def _header(text: str, kind: str, nfields: int):
    recs = list(_records(text))
    if not recs or recs[0][1] != "p" or not recs[0][2] or recs[0][2][0] != kind:
        raise InputError(f"missing 'p {kind}' header")
    lineno, _, fields = recs[0]
    vals = _ints(lineno, fields[1:])
    if len(vals) != nfields or any(x < 0 for x in vals):
        raise InputError(f"line {lineno}: malformed header")
    return vals, recs[1:]


def _edge(lineno, fields, n):
    if len(fields) != 2:
        raise InputError(f"line {lineno}: an edge needs two endpoints")
    u, v = _ints(lineno, fields)
    if not (0 <= u < n and 0 <= v < n) or u == v:
        raise InputError(f"line {lineno}: bad edge {u} {v}")
    return u, v


def parse_instance(text: str) -> SpmrInstance:
    (n, m_count), recs = _header(text, "pmr", 2)
    edges, mats, orders = [], {}, []
    for lineno, tag, fields in recs:
        if tag == "e":
            edges.append(_edge(lineno, fields, n))
        elif tag in ("m", "n"):
            vals = _ints(lineno, fields)
            if not vals or vals[0] != len(vals) - 1:
                raise InputError(f"line {lineno}: matching count does not match its ids")
            if tag in mats:
                raise InputError(f"line {lineno}: duplicate '{tag}' record")
            mats[tag] = vals[1:]
        elif tag == "o":
            orders.append(tuple(_ints(lineno, fields)))
        else:
            raise InputError(f"line {lineno}: unknown record {tag!r}")
    if len(edges) != m_count:
        raise InputError(f"header says {m_count} edges, found {len(edges)}")
    if set(mats) != {"m", "n"}:
        raise InputError("both 'm' and 'n' records are required")
    for tag, ids in mats.items():
        if any(not 0 <= e < m_count for e in ids) or len(set(ids)) != len(ids):
            raise InputError(f"matching {tag} has bad edge ids")
    seen = [v for o in orders for v in o]
    if len(seen) != len(set(seen)) or any(not 0 <= v < n for v in seen):
        raise InputError("outer orders must list distinct vertices")
    return SpmrInstance(Multigraph(n, tuple(edges)), mats["m"], mats["n"], tuple(orders))


def render_instance(inst: SpmrInstance, comment: str | None = None) -> str:
    g = inst.graph
    out = []
    if comment:
        out.extend(f"c {line}" for line in comment.splitlines())
    out.append(f"p pmr {g.vertex_count} {g.edge_count}")
    out.extend(f"e {u} {v}" for u, v in g.edges)
    for tag, mat in (("m", inst.m), ("n", inst.n)):
        out.append(" ".join([tag, str(len(mat))] + [str(e) for e in sorted(mat)]))
    for order in inst.outer_orders:
        out.append("o " + " ".join(map(str, order)))
    return "\n".join(out) + "\n"


def parse_tree(text: str) -> MsddInstance:
    (n,), recs = _header(text, "tree", 1)
    if n < 1:
        raise InputError("a tree needs at least one vertex")
    edges, lengths, deletable = [], [], set()
    for lineno, tag, fields in recs:
        if tag != "t":
            raise InputError(f"line {lineno}: unknown record {tag!r}")
        if len(fields) != 4:
            raise InputError(f"line {lineno}: expected 't u v length d'")
        u, v, length, d = _ints(lineno, fields)
        edges.append(_edge(lineno, [u, v], n))
        if length < 0 or d not in (0, 1):
            raise InputError(f"line {lineno}: length must be >= 0 and d in {{0, 1}}")
        if d:
            deletable.add(len(lengths))
        lengths.append(length)
    return MsddInstance(Multigraph(n, tuple(edges)), deletable, lengths)


def render_tree(inst: MsddInstance) -> str:
    t = inst.tree
    out = [f"p tree {t.vertex_count}"]
    for e, (u, v) in enumerate(t.edges):
        out.append(f"t {u} {v} {inst.lengths[e]} {int(e in inst.deletable)}")
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> PlanarHcInstance:
    (n, m_count), recs = _header(text, "graph", 2)
    edges, rotation = [], {}
    for lineno, tag, fields in recs:
        if tag == "e":
            edges.append(_edge(lineno, fields, n))
        elif tag == "r":
            vals = _ints(lineno, fields)
            if len(vals) != 4:
                raise InputError(f"line {lineno}: expected 'r v e1 e2 e3'")
            rotation[vals[0]] = tuple(vals[1:])
        else:
            raise InputError(f"line {lineno}: unknown record {tag!r}")
    if len(edges) != m_count:
        raise InputError(f"header says {m_count} edges, found {len(edges)}")
    rot = None
    if rotation:
        if set(rotation) != set(range(n)):
            raise InputError("a rotation system must cover every vertex")
        rot = tuple(rotation[v] for v in range(n))
    return PlanarHcInstance(Multigraph(n, tuple(edges)), rot)


def parse_digraph(text: str) -> DirectedHcInstance:
    (n, m_count), recs = _header(text, "digraph", 2)
    arcs = []
    for lineno, tag, fields in recs:
        if tag != "a":
            raise InputError(f"line {lineno}: unknown record {tag!r}")
        arcs.append(_edge(lineno, fields, n))
    if len(arcs) != m_count:
        raise InputError(f"header says {m_count} arcs, found {len(arcs)}")
    return DirectedHcInstance(n, tuple(arcs))


def result_document(report, timings: dict | None = None) -> dict:
    """JSON-ready summary of a SolveReport; cycles and matchings are sorted id lists."""
    blocks = [
        {
            "kind": b.kind,
            "vertices": list(b.vertices),
            "edges": list(b.edges),
            "opt": b.opt,
            "gap": b.gap,
            "chosen_F": list(b.chosen_F),
            "piece_gaps": list(b.piece_gaps),
        }
        for b in report.blocks
    ]
    seq = report.sequence
    return {
        "opt": report.opt,
        "blocks": blocks,
        "cycles": None if seq is None else [sorted(c) for c in seq.cycles],
        "matchings": None if seq is None else [sorted(x) for x in seq.matchings],
        "timings": dict(timings or {}),
    }
