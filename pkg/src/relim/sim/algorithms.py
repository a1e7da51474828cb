"""Deterministic maximal independent set algorithms on hypergraphs.

All algorithms simulate synchronous message passing sequentially; every
arbitrary choice is resolved by smallest id so repeated runs agree.  A
node's final state is either selected or excluded, and an excluded node
always holds a witness hyperedge whose other pins are all selected.
"""

from __future__ import annotations

from math import ceil, log2
from typing import Callable, Mapping

from .checker import check_solution
from .hypergraph import Hypergraph, HypergraphError
from .subroutines import (
    RoundTrace,
    conflict_adjacency,
    distance_marks,
    greedy_recolor,
    linial_coloring,
    ruling_set,
    virtual_graph,
)


def _completion_threat(h: Hypergraph, v: int, selected: set[int]) -> bool:
    """True when some hyperedge at v has every other pin selected, so v
    can never join (and simultaneously v is maximality-witnessed)."""
    for e in h.incident[v]:
        if all(u in selected for u in h.edges[e] if u != v):
            return True
    return False


def trivial_mis(h: Hypergraph) -> tuple[set[int], RoundTrace]:
    """Sweep the classes of a distance-2 coloring in ascending order and
    join greedily whenever no incident hyperedge is one pin away from
    completion."""
    colors, trace = linial_coloring(h, "nodes-dist2")
    selected: set[int] = set()
    for c in sorted(set(colors.values())):
        batch = sorted(v for v in h.nodes if colors[v] == c)
        for v in batch:
            if not _completion_threat(h, v, selected):
                selected.add(v)
        trace.tick(rounds=1, messages=sum(h.degree(v) for v in batch))
    trace.phases = len(set(colors.values()))
    trace.details["forced_out"] = sum(1 for pins in h.edges.values() if len(pins) == 1)
    return selected, trace


def slow_in_delta_mis(h: Hypergraph) -> tuple[set[int], RoundTrace]:
    """Phase-based MIS whose phase count depends on the degree and only
    logarithmically on the rank.

    Each phase pairs up the still-undecided pins of every hyperedge,
    colors the resulting virtual graph with degree+1 colors, and sweeps
    those classes with a join rule that demands a differently-colored
    undecided or excluded pin on every incident hyperedge.  The pairing
    guarantees that the undecided portion of some incident hyperedge at
    least halves for every node that stays undecided.
    """
    seed, trace = linial_coloring(h, "nodes-dist2")
    delta = max(1, h.max_degree)
    rank = max(2, h.max_rank)
    budget = 2 * delta * (ceil(log2(rank)) + 1)
    selected: set[int] = set()
    excluded: set[int] = set()
    active = set(h.nodes)
    phases = 0
    while active:
        if phases > 2 * budget:
            raise HypergraphError("phase budget exceeded, the halving argument broke")
        phases += 1
        before = {e: sum(1 for v in pins if v in active) for e, pins in h.edges.items()}
        vg = virtual_graph(h, active)
        colors, gtrace = greedy_recolor(vg, seed, delta + 1)
        trace.absorb(gtrace)
        for e, pins in h.edges.items():
            alive = [v for v in pins if v in active]
            for c in set(colors[v] for v in alive):
                same = sum(1 for v in alive if colors[v] == c)
                assert same <= ceil(len(alive) / 2), "virtual pairing left a color majority"
        for c in range(delta + 1):
            batch = sorted(v for v in active if colors[v] == c)
            if not batch:
                continue
            joins, exits = [], []
            for v in batch:
                if _completion_threat(h, v, selected):
                    exits.append(v)
                    continue
                ok = True
                for e in h.incident[v]:
                    if not any(
                        u != v
                        and u not in selected
                        and (u not in active or colors[u] != c)
                        for u in h.edges[e]
                    ):
                        ok = False
                        break
                if ok:
                    joins.append(v)
            selected.update(joins)
            excluded.update(exits)
            active.difference_update(joins)
            active.difference_update(exits)
            trace.tick(rounds=1, messages=sum(h.degree(v) for v in batch))
        for v in active:
            assert any(
                sum(1 for u in h.edges[e] if u in active) <= ceil(before[e] / 2)
                for e in h.incident[v]
            ), f"no incident hyperedge halved for node {v}"
    trace.phases = phases
    trace.details["phase_budget"] = budget
    trace.details["forced_out"] = sum(1 for pins in h.edges.values() if len(pins) == 1)
    return selected, trace


def _strip_rank_one(h: Hypergraph) -> tuple[set[int], dict[int, tuple[int, ...]]]:
    """Pins of rank-1 hyperedges can never be selected; drop them and
    every hyperedge touching them (such hyperedges can neither complete
    nor serve as a witness for anyone else)."""
    forced = {pins[0] for pins in h.edges.values() if len(pins) == 1}
    live = {
        e: pins
        for e, pins in h.edges.items()
        if len(pins) > 1 and not (set(pins) & forced)
    }
    return forced, live


def delta2_mis(
    h: Hypergraph, precoloring: Mapping[int, int] | None = None
) -> tuple[set[int], RoundTrace]:
    """MIS for maximum degree 2 via a ruling edge set on the virtual
    graph whose vertices are the hyperedges and whose edges are the
    degree-2 nodes."""
    if h.max_degree > 2:
        raise HypergraphError("this solver needs maximum degree at most 2")
    trace = RoundTrace()
    if precoloring is None:
        precoloring, ctrace = linial_coloring(h, "nodes-dist2")
        trace.absorb(ctrace)

    selected: set[int] = set()
    forced_out, live = _strip_rank_one(h)
    alive = set(h.nodes) - forced_out

    deg = {v: 0 for v in alive}
    for pins in live.values():
        for v in pins:
            deg[v] += 1
    isolated = {v for v in alive if deg[v] == 0}
    selected |= isolated
    aside = {v for v in alive if deg[v] == 1}
    core = alive - isolated - aside
    trace.tick(rounds=2, messages=len(h.nodes))

    ends: dict[int, tuple[int, int]] = {}
    for e, pins in live.items():
        for v in pins:
            if v in core:
                ends.setdefault(v, ())
                ends[v] = tuple(sorted(ends[v] + (e,)))
    assert all(len(pair) == 2 for pair in ends.values()), "core node without two hyperedges"

    # one representative per virtual edge slot; parallels return in the
    # selection rules but never into the ruling set
    rep_of_pair: dict[tuple[int, int], int] = {}
    for v in sorted(core):
        rep_of_pair.setdefault(ends[v], v)
    reps = set(rep_of_pair.values())
    # hyperedges whose pins are all set-asides sit isolated in the
    # hyperedge graph; they only matter for the add-back step
    g_vertices = {e for e in live if any(v in core for v in live[e])}
    vertex_adj: dict[int, set[int]] = {e: set() for e in g_vertices}
    pins_at: dict[int, list[int]] = {e: [] for e in g_vertices}
    for v in core:
        a, b = ends[v]
        pins_at[a].append(v)
        pins_at[b].append(v)
        if v in reps:
            vertex_adj[a].add(b)
            vertex_adj[b].add(a)
    line_adj: dict[int, set[int]] = {v: set() for v in reps}
    for e in g_vertices:
        here = [v for v in pins_at[e] if v in reps]
        for v in here:
            line_adj[v].update(u for u in here if u != v)

    rset, rtrace = ruling_set(line_adj, 2, {v: precoloring[v] for v in reps})
    trace.absorb(rtrace)
    endpoints0 = {e for v in rset for e in ends[v]}
    marks = distance_marks(vertex_adj, endpoints0, cap=3)
    assert all(m <= 2 for m in marks.values()), "a hyperedge escaped the ruling set radius"

    proposals: dict[int, list[int]] = {}
    for u in sorted(e for e in marks if marks[e] == 2):
        near = sorted(w for w in vertex_adj[u] if marks[w] == 1)
        assert near, "2-marked vertex lacks a 1-marked neighbor"
        proposals.setdefault(near[0], []).append(u)
    accepted = set()
    for w, us in sorted(proposals.items()):
        u = min(us)
        accepted.add(rep_of_pair[tuple(sorted((u, w)))])
    rset |= accepted
    endpoints1 = {e for v in rset for e in ends[v]}
    marks = distance_marks(vertex_adj, endpoints1, cap=3)
    assert all(m <= 1 for m in marks.values()), "re-marking left a 2-marked vertex"
    trace.tick(rounds=5, messages=2 * len(core))

    in_s = set(core) - rset
    removals = set()
    for u in sorted(e for e in marks if marks[e] == 1):
        candidates = [
            v
            for v in pins_at[u]
            if v in in_s and marks[ends[v][0] if ends[v][1] == u else ends[v][1]] == 0
        ]
        assert candidates, "1-marked vertex has no selected edge toward a 0-marked one"
        removals.add(min(candidates))
    in_s -= removals
    for v in sorted(rset):
        a, b = ends[v]
        if all(
            sum(1 for x in pins_at[e] if x not in in_s) >= 2 for e in (a, b)
        ):
            in_s.add(v)
    trace.tick(rounds=3, messages=2 * len(core))

    for e in g_vertices:
        inside = sum(1 for x in pins_at[e] if x in in_s)
        assert inside <= len(pins_at[e]) - 1, (
            f"hyperedge {e} has all its degree-2 nodes selected"
        )
    for v in core - in_s:
        assert any(
            all(x in in_s for x in pins_at[e] if x != v) for e in ends[v]
        ), f"unselected node {v} has no endpoint with everything else selected"

    selected |= in_s
    for e, pins in sorted(live.items()):
        waiting = sorted(v for v in pins if v in aside)
        if not waiting:
            continue
        others = [v for v in pins if v not in aside]
        if all(v in selected for v in others):
            selected.update(waiting[1:])
        else:
            selected.update(waiting)
    trace.tick(rounds=1, messages=len(aside))
    trace.phases = 1
    trace.details.update(
        {"forced_out": len(forced_out), "set_asides": len(aside), "core": len(core)}
    )
    return selected, trace


def indep_r_mis(
    h: Hypergraph, precoloring: Mapping[int, int] | None = None
) -> tuple[set[int], RoundTrace]:
    """Recursive MIS whose round structure depends on the degree and only
    iterated-logarithmically on the rank.

    A ruling node set induces hyperedge marks; sweeping mark values from
    high to low, the nodes seeing only the current mark join outright
    (with a completion guard) while the rest of the marked zone recurses
    one degree lower, bottoming out at the degree-2 solver.  A final
    sweep joins any node left without a completion witness, which keeps
    maximality on inputs beyond the degree-regular shape the recursion
    was designed around.
    """
    trace = RoundTrace()
    if precoloring is None:
        precoloring, ctrace = linial_coloring(h, "nodes-dist2")
        trace.absorb(ctrace)
    delta = h.max_degree
    if delta <= 2:
        selected, sub = delta2_mis(h, precoloring)
        trace.absorb(sub)
        trace.phases = sub.phases
        trace.details.update(sub.details)
        trace.details["depth"] = 0
        return selected, trace

    selected: set[int] = set()
    forced_out, live = _strip_rank_one(h)
    alive = set(h.nodes) - forced_out
    inc_live: dict[int, list[int]] = {v: [] for v in alive}
    for e, pins in live.items():
        for v in pins:
            inc_live[v].append(e)
    isolated = {v for v in alive if not inc_live[v]}
    selected |= isolated
    alive -= isolated

    adj = {v: set() for v in alive}
    for pins in live.values():
        for v in pins:
            adj[v].update(pins)
    for v in adj:
        adj[v].discard(v)

    rset, rtrace = ruling_set(adj, delta + 4, {v: precoloring[v] for v in alive})
    trace.absorb(rtrace)
    node_dist = distance_marks(adj, rset, cap=delta + 6)
    mark = {e: min(node_dist[v] for v in pins) for e, pins in live.items()}
    assert all(m <= delta + 4 for m in mark.values()), "hyperedge past the ruling radius"
    trace.details["mark_span"] = (
        (min(mark.values()), max(mark.values())) if mark else (0, 0)
    )

    active = set(alive)
    guard_hits = 0
    depth = 0
    for i in range(delta + 4, -1, -1):
        marked = [e for e, m in mark.items() if m == i]
        s_i = {v for v in active if any(mark[e] == i for e in inc_live[v])}
        x_i = {v for v in s_i if all(mark[e] == i for e in inc_live[v])}
        sub_nodes = s_i - x_i
        sub_edges = {}
        for e in marked:
            pins = tuple(v for v in live[e] if v in sub_nodes)
            if pins:
                sub_edges[e] = pins
        trace.tick(rounds=1, messages=len(s_i))
        if sub_nodes:
            inner = Hypergraph(sub_nodes, sub_edges)
            assert inner.max_degree <= delta - 1, "marked zone kept a full-degree node"
            got, subtrace = indep_r_mis(inner, {v: precoloring[v] for v in sub_nodes})
            trace.absorb(subtrace)
            depth = max(depth, 1 + subtrace.details.get("depth", 0))
            guard_hits += subtrace.details.get("guard_hits", 0)
            selected |= got
        for v in sorted(x_i):
            if _completion_threat(h, v, selected):
                guard_hits += 1
            else:
                selected.add(v)
        active -= s_i
        active = {v for v in active if not _completion_threat(h, v, selected)}
        trace.tick(rounds=1, messages=len(x_i))
    assert not active, "the marked sweep left undecided nodes"

    cleanup_joins = 0
    for v in sorted(alive - selected):
        if not _completion_threat(h, v, selected):
            selected.add(v)
            cleanup_joins += 1
    trace.tick(rounds=1, messages=len(alive))
    trace.phases = delta + 5
    trace.details.update(
        {
            "depth": depth,
            "guard_hits": guard_hits,
            "cleanup_joins": cleanup_joins,
            "forced_out": len(forced_out),
        }
    )
    assert depth <= max(0, delta - 2), "recursion went deeper than the degree allows"
    return selected, trace


def um_greedy_mis(
    h: Hypergraph, umcoloring: Mapping[int, int]
) -> tuple[set[int], RoundTrace]:
    """Greedy MIS over the classes of a unique-maximum coloring.

    The coloring property makes the unique largest-colored pin of every
    hyperedge decide strictly after all other pins, so simultaneous
    same-color joins can never complete a hyperedge.
    """
    report = check_solution(h, "unique-maximum", umcoloring)
    if not report.ok:
        raise HypergraphError(
            "coloring is not unique-maximum: " + "; ".join(report.violations)
        )
    trace = RoundTrace()
    selected: set[int] = set()
    decided_at: dict[int, int] = {}
    for c in sorted(set(umcoloring[v] for v in h.nodes)):
        batch = sorted(v for v in h.nodes if umcoloring[v] == c)
        joins = [v for v in batch if not _completion_threat(h, v, selected)]
        selected.update(joins)
        for v in batch:
            decided_at[v] = c
        trace.tick(rounds=1, messages=sum(h.degree(v) for v in batch))
    for e, pins in h.edges.items():
        top = max(umcoloring[v] for v in pins)
        last = [v for v in pins if umcoloring[v] == top]
        assert len(last) == 1 and all(
            decided_at[u] < decided_at[last[0]] for u in pins if u != last[0]
        ), f"hyperedge {e} did not decide its maximum-color pin last"
    trace.phases = len(set(umcoloring.values()))
    return selected, trace


def um_coloring_iterated(
    h: Hypergraph, mis_solver: Callable[[Hypergraph], set[int]] | None = None
) -> tuple[dict[int, int], RoundTrace]:
    """Build a unique-maximum coloring by repeatedly taking an MIS of the
    residual hypergraph and giving it the next color.

    Every uncolored node loses an incident hyperedge per iteration (its
    decline witness collapses to rank 1 and is dropped), so at most
    degree+1 classes appear.
    """
    if mis_solver is None:
        mis_solver = lambda sub: trivial_mis(sub)[0]
    trace = RoundTrace()
    delta = h.max_degree
    coloring: dict[int, int] = {}
    remaining = set(h.nodes)
    i = 0
    while remaining:
        i += 1
        if i > delta + 1:
            raise HypergraphError("unique-maximum construction exceeded degree+1 classes")
        live = {}
        for e, pins in h.edges.items():
            kept = tuple(v for v in pins if v in remaining)
            if len(kept) >= 2:
                live[e] = kept
        deg_before = {v: 0 for v in remaining}
        for pins in live.values():
            for v in pins:
                deg_before[v] += 1
        chosen = set(mis_solver(Hypergraph(remaining, live)))
        if not chosen & remaining:
            raise HypergraphError("the MIS subroutine made no progress")
        for v in chosen & remaining:
            coloring[v] = i
        remaining -= chosen
        deg_after = {v: 0 for v in remaining}
        for e, pins in live.items():
            kept = [v for v in pins if v in remaining]
            if len(kept) >= 2:
                for v in kept:
                    deg_after[v] += 1
        for v in remaining:
            assert deg_after[v] <= deg_before[v] - 1, (
                f"node {v} kept all its hyperedges through an iteration"
            )
        trace.tick(rounds=1, messages=len(remaining) + len(chosen))
    trace.phases = i
    trace.details["classes"] = i
    return coloring, trace
