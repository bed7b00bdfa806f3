"""Shortest perfect matching reconfiguration on outerplanar graphs.

Pipeline:

1. Discard edges no alternating cycle can ever use and split the rest into
   2-connected blocks; the optimum is the sum over blocks.
2. In a block with chords, build the weak dual with lengths and solve the
   min-sum diameter decomposition where only duals of chords in m & n may be
   cut. Half the optimum is the block's answer.
3. For the sequence: cut the block along the chosen chords, double every other
   m & n chord of a piece into an m-copy and an n-copy, and reduce the gap of
   each piece by exactly two per flip.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field

from .embedding import (
    OuterplaneEmbedding,
    build_dual,
    center_faces,
    cut_to_cycle,
    embedding_from_order,
    enumerate_faces,
    find_outer_order,
    gap,
    restrict_embedding,
    validate_embedding,
)
from .errors import DegenerateError, DomainError, InternalError, PreconditionError
from .graph import (
    Multigraph,
    ReconfigSequence,
    biconnected_components,
    is_alternating_cycle,
    subgraph,
    validate_perfect_matching,
)
from .instances import SpmrInstance
from .msdd import MsddInstance, solve_msdd

log = logging.getLogger(__name__)


@dataclass
class BlockReport:
    vertices: tuple
    edges: tuple
    kind: str  # "bridge", "cycle" or "outerplanar"
    opt: int
    gap: int | None = None
    chosen_F: tuple = ()
    piece_gaps: tuple = ()
    cycles: list = field(default_factory=list, repr=False)


@dataclass
class SolveReport:
    opt: int
    blocks: list
    sequence: ReconfigSequence | None = None


def _dump(emb: OuterplaneEmbedding, m, n) -> dict:
    return {
        "vertex_count": emb.graph.vertex_count,
        "edges": list(emb.graph.edges),
        "outer_order": list(emb.outer_order),
        "m": sorted(m),
        "n": sorted(n),
    }


def live_blocks(inst: SpmrInstance) -> list:
    """Blocks of the subgraph of edges that some alternating cycle may still use.

    A block whose matched edges miss one of its vertices w can never flip an
    edge at w (w's matched edge stays in another block), so those edges are
    dropped and the decomposition is repeated until it is stable.
    """
    g = inst.graph
    live = set(range(g.edge_count))
    while True:
        sub, _, emap = subgraph(g, live, vertex_order=range(g.vertex_count))
        blocks = [
            (vs, frozenset(emap[e] for e in es)) for vs, es in biconnected_components(sub)
        ]
        dead = set()
        for vs, es in blocks:
            cov_m = g.endpoints(es & inst.m)
            if cov_m != g.endpoints(es & inst.n):
                raise InternalError("m and n cover different vertices of a block")
            dead.update(e for e in es if not set(g.edges[e]) <= cov_m)
        if not dead:
            return sorted(blocks, key=lambda b: min(b[1]))
        live -= dead


def _hint_positions(inst: SpmrInstance) -> dict:
    pos = {}
    for ci, order in enumerate(inst.outer_orders):
        for i, v in enumerate(order):
            pos[v] = (ci, i)
    return pos


def _block_embedding(bg: Multigraph, vmap, hints: dict) -> OuterplaneEmbedding:
    keys = [hints.get(v) for v in vmap]
    if all(k is not None for k in keys) and len({k[0] for k in keys}) == 1:
        order = sorted(range(bg.vertex_count), key=lambda i: keys[i])
        try:
            emb = embedding_from_order(bg, order)
            if validate_embedding(emb):
                return emb
        except DomainError:
            pass
        log.info("outer order hint rejected for block %s; searching", vmap)
    return find_outer_order(bg)


def _substitute_parallel(emb: OuterplaneEmbedding, m: frozenset, n: frozenset):
    """H': each chord in m & n becomes an m-copy (the original id) plus a new n-copy."""
    g = emb.graph
    shared = [c for c in emb.chord_ids if c in m and c in n]
    edges = list(g.edges) + [g.edges[c] for c in shared]
    origin = list(range(g.edge_count)) + shared
    hg = Multigraph(g.vertex_count, tuple(edges))
    copies = range(g.edge_count, g.edge_count + len(shared))
    hemb = OuterplaneEmbedding(hg, emb.outer_order, emb.outer_edge_ids, tuple(emb.chord_ids) + tuple(copies))
    hm = frozenset(m)
    hn = (frozenset(n) - set(shared)) | frozenset(copies)
    return hemb, hm, hn, origin


def split_pieces(emb: OuterplaneEmbedding, cut_chords, faceset=None) -> list:
    """Cut the embedding along chords; returns [(piece embedding, edge map piece->emb)].

    Pieces are ordered by their smallest face id.
    """
    fs = faceset if faceset is not None else enumerate_faces(emb)
    cut = set(cut_chords)
    comp = {}
    for f in range(len(fs.faces)):
        if f in comp:
            continue
        comp[f] = f
        stack = [f]
        while stack:
            v = stack.pop()
            for face_e in fs.faces[v].edges:
                if face_e in cut or face_e not in fs.chord_faces:
                    continue
                for w in fs.chord_faces[face_e]:
                    if w not in comp:
                        comp[w] = f
                        stack.append(w)
    groups = {}
    for f, root in comp.items():
        groups.setdefault(root, []).append(f)
    out = []
    for root in sorted(groups):
        pedges = set()
        for f in groups[root]:
            pedges |= fs.faces[f].edges
        boundary = [e for e in emb.outer_edge_ids if e in pedges] + sorted(e for e in cut if e in pedges)
        out.append(restrict_embedding(emb, emb.graph.endpoints(pedges), boundary, pedges))
    return out


def _local(emap, s) -> frozenset:
    return frozenset(i for i, e in enumerate(emap) if e in s)


def _piece_gap(pemb: OuterplaneEmbedding, pm, pn) -> int:
    if not pemb.chord_ids:
        return 0 if pm == pn else 2
    return gap(build_dual(pemb, pm, pn))


def residual_gap(emb: OuterplaneEmbedding, m, n) -> int:
    """Sum of piece gaps after cutting along the chords in both m and n.

    Equals the gap when no chord is shared. Once a flip moves an n-chord into
    the current matching, the plain gap overcounts (that chord gets length two
    although it is already settled); cutting there restores an exact potential.
    """
    m, n = frozenset(m), frozenset(n)
    shared = [c for c in emb.chord_ids if c in m and c in n]
    if not shared:
        return _piece_gap(emb, m, n)
    return sum(_piece_gap(p, _local(pm, m), _local(pm, n)) for p, pm in split_pieces(emb, shared))


def one_flip_step(emb: OuterplaneEmbedding, m_cur, n, faceset=None) -> frozenset:
    """An m_cur-alternating cycle whose flip lowers the gap by exactly two.

    Requires that no chord lies in both matchings and that the gap is positive.
    The decrease is measured by residual_gap: the cycle may move a chord of n
    into the matching, and the plain gap would then count that chord twice.
    """
    g = emb.graph
    m_cur, n = frozenset(m_cur), frozenset(n)
    if any(c in m_cur and c in n for c in emb.chord_ids):
        raise PreconditionError("a chord lies in both matchings")
    fs = faceset if faceset is not None else enumerate_faces(emb)
    g0 = gap(build_dual(emb, m_cur, n, fs))
    if g0 <= 0:
        raise PreconditionError("matchings already coincide")
    if g0 % 2:
        raise InternalError("odd gap", dump=_dump(emb, m_cur, n))
    d = g0 // 2

    # drop chords outside both matchings
    keep = list(emb.outer_edge_ids) + [c for c in emb.chord_ids if c in m_cur or c in n]
    cur, emap = restrict_embedding(emb, emb.outer_order, emb.outer_edge_ids, keep)
    cm, cn = _local(emap, m_cur), _local(emap, n)
    while True:
        cfs = enumerate_faces(cur)
        if len(cfs) == 1:
            break
        dual = build_dual(cur, cm, cn, cfs)
        leaf = None
        for f in cfs.faces:
            nchords = sum(1 for e in f.edges if e in cfs.chord_faces)
            if nchords == 1 and dual.face_class.get(f.id) == 2:
                leaf = f
                break
        if leaf is None:
            break
        # peel the leaf face off; its chord becomes an outer edge
        (chord,) = [e for e in leaf.edges if e in cfs.chord_faces]
        rest = [e for e in range(cur.graph.edge_count) if e not in leaf.outer_edges]
        outer = [e for e in cur.outer_edge_ids if e not in leaf.outer_edges] + [chord]
        cur, emap2 = restrict_embedding(cur, cur.graph.endpoints(rest), outer, rest)
        emap = tuple(emap[e] for e in emap2)
        cm, cn = _local(emap, m_cur), _local(emap, n)

    if len(cfs) == 1:
        cyc_local = frozenset(range(cur.graph.edge_count))
    else:
        centers = center_faces(dual, d)
        if not centers:
            raise InternalError("no inner face within radius d", dump=_dump(emb, m_cur, n))
        r = centers[0]
        # closure of {r}: absorb across every cut chord that is not in m_cur
        xs = {r}
        stack = [r]
        while stack:
            v = stack.pop()
            for w, _, i in dual.adjacency[v]:
                ch = dual.edges[i].chord
                if ch is not None and ch not in cm and w not in xs:
                    xs.add(w)
                    stack.append(w)
        cyc_local = cut_to_cycle(dual, xs)
    cyc = frozenset(emap[e] for e in cyc_local)
    if not is_alternating_cycle(g, m_cur, cyc):
        raise InternalError("closure cycle is not alternating", dump=_dump(emb, m_cur, n))
    after = residual_gap(emb, m_cur ^ cyc, n)
    if after != g0 - 2:
        raise InternalError(f"flip changed gap {g0} -> {after}", dump=_dump(emb, m_cur, n))
    return cyc


def disjoint_case_sequence(emb: OuterplaneEmbedding, m, n) -> ReconfigSequence:
    """gap/2 flips from m to n, assuming no chord lies in both matchings.

    The residual gap drops by exactly two per flip (checked inside one_flip_step).

    After every flip the piece is cut along chords that became shared with n
    and each sub-piece is handled on its own.
    """
    g = emb.graph
    m, n = frozenset(m), frozenset(n)
    fs = enumerate_faces(emb)
    if len(fs) < 2:
        raise DegenerateError("chordless cycle; handle it directly")
    if any(c in m and c in n for c in emb.chord_ids):
        raise PreconditionError("a chord lies in both matchings")
    start_gap = potential = gap(build_dual(emb, m, n, fs))
    cur = m
    cycles = []
    stack = [(emb, tuple(range(g.edge_count)))]
    while stack:
        pemb, pmap = stack.pop()
        pm, pn = _local(pmap, cur), _local(pmap, n)
        if pm == pn:
            continue
        if not pemb.chord_ids:
            c = frozenset(pmap)
        else:
            c = frozenset(pmap[e] for e in one_flip_step(pemb, pm, pn))
        cur = cur ^ c
        cycles.append(c)
        after = residual_gap(emb, cur, n)
        if after != potential - 2:
            raise InternalError(f"flip changed residual gap {potential} -> {after}", dump=_dump(emb, m, n))
        potential = after
        pm = _local(pmap, cur)
        shared = [x for x in pemb.chord_ids if x in pm and x in pn]
        subs = split_pieces(pemb, shared) if shared else [(pemb, tuple(range(pemb.graph.edge_count)))]
        for sub, smap in reversed(subs):
            stack.append((sub, tuple(pmap[e] for e in smap)))
    if cur != n or 2 * len(cycles) != start_gap:
        raise InternalError(
            f"{len(cycles)} flips for gap {start_gap}", dump=_dump(emb, m, n)
        )
    return ReconfigSequence.from_cycles(g, m, cycles)


def _dual_tree(dual):
    tree = Multigraph(dual.node_count, tuple((d.u, d.v) for d in dual.edges))
    lengths = tuple(d.length for d in dual.edges)
    return tree, lengths


def _solve_block(emb: OuterplaneEmbedding, m, n, value_only: bool, domain: str) -> dict:
    fs = enumerate_faces(emb)
    dual = build_dual(emb, m, n, fs)
    block_gap = gap(dual)
    tree, lengths = _dual_tree(dual)
    shared = {c for c in emb.chord_ids if c in m and c in n}
    deletable = {i for i, d in enumerate(dual.edges) if d.chord in shared}
    sol = solve_msdd(MsddInstance(tree, deletable, lengths), domain=domain, reconstruct=not value_only)
    if sol.objective % 2:
        raise InternalError("odd decomposition objective", dump=_dump(emb, m, n))
    out = {"opt": sol.objective // 2, "gap": block_gap, "F": (), "piece_gaps": (), "cycles": []}
    if value_only:
        return out
    F = {dual.edges[i].chord for i in sol.deleted}
    out["F"] = tuple(sorted(F))

    piece_gaps = []
    cycles = []
    for pemb, pmap in split_pieces(emb, F, fs):
        pm = frozenset(i for i, e in enumerate(pmap) if e in m)
        pn = frozenset(i for i, e in enumerate(pmap) if e in n)
        hemb, hm, hn, origin = _substitute_parallel(pemb, pm, pn)
        hg = hemb.graph
        if not (validate_perfect_matching(hg, hm) and validate_perfect_matching(hg, hn)):
            raise InternalError("piece matchings are not perfect", dump=_dump(emb, m, n))
        piece_gaps.append(_piece_gap(hemb, hm, hn))
        if not hemb.chord_ids:
            piece_cycles = [frozenset(range(hg.edge_count))] if hm != hn else []
        else:
            piece_cycles = list(disjoint_case_sequence(hemb, hm, hn).cycles)
        for hc in piece_cycles:
            parity = Counter(origin[e] for e in hc)
            c = frozenset(pmap[e] for e, k in parity.items() if k % 2)
            if not c:
                log.warning("dropping identity flip on a doubled chord")
                continue
            cycles.append(c)
    if len(cycles) != out["opt"]:
        raise InternalError(
            f"sequence length {len(cycles)} != optimum {out['opt']}", dump=_dump(emb, m, n)
        )
    out["piece_gaps"] = tuple(piece_gaps)
    out["cycles"] = cycles
    return out


def _solve(inst: SpmrInstance, value_only: bool, domain: str) -> SolveReport:
    g = inst.graph
    hints = _hint_positions(inst)
    reports = []
    for vs, es in live_blocks(inst):
        if len(es) == 1:
            reports.append(BlockReport(tuple(sorted(vs)), tuple(sorted(es)), "bridge", 0))
            continue
        bg, vmap, emap = subgraph(g, es)
        bm = frozenset(i for i, e in enumerate(emap) if e in inst.m)
        bn = frozenset(i for i, e in enumerate(emap) if e in inst.n)
        emb = _block_embedding(bg, vmap, hints)
        rep = BlockReport(tuple(vmap), tuple(emap), "cycle", 0)
        if not emb.chord_ids:
            if bm != bn:
                rep.opt = 1
                rep.cycles = [frozenset(emap)]
        else:
            try:
                res = _solve_block(emb, bm, bn, value_only, domain)
            except InternalError as exc:
                if exc.dump is not None:
                    exc.dump["block_edges"] = list(emap)
                raise
            rep.kind = "outerplanar"
            rep.opt = res["opt"]
            rep.gap = res["gap"]
            rep.chosen_F = tuple(sorted(emap[c] for c in res["F"]))
            rep.piece_gaps = res["piece_gaps"]
            rep.cycles = [frozenset(emap[e] for e in c) for c in res["cycles"]]
        reports.append(rep)
    opt = sum(r.opt for r in reports)
    seq = None
    if not value_only:
        seq = ReconfigSequence.from_cycles(g, inst.m, [c for r in reports for c in r.cycles])
        if seq.matchings[-1] != inst.n:
            raise InternalError("sequence does not end at n")
    return SolveReport(opt, reports, seq)


def solve(inst: SpmrInstance, domain: str = "full", value_only: bool = False) -> SolveReport:
    """Optimum and, unless ``value_only``, an explicit shortest sequence."""
    return _solve(inst, value_only=value_only, domain=domain)


def opt_value_only(inst: SpmrInstance, domain: str = "restricted") -> int:
    return _solve(inst, value_only=True, domain=domain).opt


__all__ = [
    "BlockReport",
    "SolveReport",
    "disjoint_case_sequence",
    "live_blocks",
    "one_flip_step",
    "residual_gap",
    "split_pieces",
    "opt_value_only",
    "solve",
]
