"""Distributed subroutines: color reduction and ruling sets.

Everything here is a sequential simulation of a synchronous message
passing computation, so all tie-breaking is by smallest id and round
counts are recorded in a RoundTrace.  The subroutines are deliberately
simple; their round counts are reported as measured, and only output
correctness is asserted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .hypergraph import Hypergraph, HypergraphError


@dataclass
class RoundTrace:
    rounds: int = 0
    phases: int = 0
    messages: int = 0
    details: dict = field(default_factory=dict)

    def tick(self, rounds: int = 1, messages: int = 0) -> None:
        self.rounds += rounds
        self.messages += messages

    def absorb(self, other: "RoundTrace") -> None:
        self.rounds += other.rounds
        self.messages += other.messages


def conflict_adjacency(h: Hypergraph) -> dict[int, set[int]]:
    """Distance-2 adjacency on the bipartite representation: two nodes
    conflict when they share a hyperedge."""
    adj: dict[int, set[int]] = {v: set() for v in h.nodes}
    for pins in h.edges.values():
        for v in pins:
            adj[v].update(pins)
    for v in adj:
        adj[v].discard(v)
    return adj


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    f = 2
    while f * f <= q:
        if q % f == 0:
            return False
        f += 1
    return True


def _next_prime(lo: int) -> int:
    q = max(2, lo)
    while not _is_prime(q):
        q += 1
    return q


def _poly_digits(c: int, q: int, k: int) -> list[int]:
    digits = []
    for _ in range(k + 1):
        digits.append(c % q)
        c //= q
    return digits


def _ceil_root(m: int, p: int) -> int:
    x = max(1, round(m ** (1.0 / p)))
    while x**p >= m:
        x -= 1
    while (x + 1) ** p < m:
        x += 1
    return x + 1


def linial_coloring(
    adjacency_or_h, target: str = "nodes-dist2"
) -> tuple[dict[int, int], RoundTrace]:
    """Iterated polynomial color reduction on a conflict graph.

    Starting from the ids as colors, each round encodes a color as a
    degree-k polynomial over a prime field and evaluates it at a point
    that disagrees with every conflicting neighbor, squaring down the
    palette until no further reduction is possible.  The final palette is
    O(d^2) for conflict degree d, comfortably within 36*(delta*rank)^2
    on the hypergraph conflict graphs used here.
    """
    if isinstance(adjacency_or_h, Hypergraph):
        h = adjacency_or_h
        if target == "nodes-dist2":
            adj = conflict_adjacency(h)
        elif target == "virtual-graph":
            adj = virtual_graph(h, set(h.nodes))
        else:
            raise HypergraphError(f"unknown coloring target: {target!r}")
    else:
        adj = {v: set(nb) for v, nb in adjacency_or_h.items()}

    trace = RoundTrace()
    if not adj:
        return {}, trace
    colors = {v: v for v in adj}
    m = max(colors.values()) + 1
    d = max((len(nb) for nb in adj.values()), default=0)
    while True:
        best = None
        k = 1
        while k <= 64:
            lo = max(d * k + 1, _ceil_root(m, k + 1))
            q = _next_prime(lo)
            if best is None or q * q < best[1] * best[1]:
                best = (k, q)
            if (d * k + 1) ** 2 >= (best[1]) ** 2:
                break
            k += 1
        k, q = best
        if q * q >= m:
            break
        snapshot = dict(colors)
        for v in adj:
            digits = _poly_digits(snapshot[v], q, k)
            own = [sum(c * pow(x, j, q) for j, c in enumerate(digits)) % q for x in range(q)]
            bad = set()
            for u in adj[v]:
                du = _poly_digits(snapshot[u], q, k)
                for x in range(q):
                    if own[x] == sum(c * pow(x, j, q) for j, c in enumerate(du)) % q:
                        bad.add(x)
            x = next(x for x in range(q) if x not in bad)
            colors[v] = x * q + own[x]
        m = q * q
        trace.tick(rounds=1, messages=sum(len(nb) for nb in adj.values()))
    trace.details["palette"] = m
    return colors, trace


def virtual_graph(h: Hypergraph, active: set[int]) -> dict[int, set[int]]:
    """Pair up the active pins of every hyperedge by ascending id; the
    pairs become graph edges, giving every active node at most one
    virtual neighbor per incident hyperedge."""
    adj: dict[int, set[int]] = {v: set() for v in active}
    for pins in h.edges.values():
        alive = sorted(v for v in pins if v in active)
        for i in range(0, len(alive) - 1, 2):
            adj[alive[i]].add(alive[i + 1])
            adj[alive[i + 1]].add(alive[i])
    return adj


def greedy_recolor(
    adj: Mapping[int, set[int]], seed: Mapping[int, int], palette: int
) -> tuple[dict[int, int], RoundTrace]:
    """Reduce a proper seed coloring of a graph to ``palette`` colors by
    sweeping seed classes in ascending order; needs palette > max degree."""
    trace = RoundTrace()
    out: dict[int, int] = {}
    for c in sorted(set(seed[v] for v in adj)):
        batch = sorted(v for v in adj if seed[v] == c)
        for v in batch:
            taken = {out[u] for u in adj[v] if u in out}
            if {seed[u] for u in adj[v]} & {c}:
                raise HypergraphError("seed coloring is not proper on this graph")
            free = next(x for x in range(palette) if x not in taken)
            out[v] = free
        trace.tick(rounds=1, messages=sum(len(adj[v]) for v in batch))
    return out, trace


def _ball(adj: Mapping[int, set[int]], v: int, radius: int) -> set[int]:
    seen = {v}
    frontier = {v}
    for _ in range(radius):
        frontier = {u for w in frontier for u in adj[w]} - seen
        seen |= frontier
    return seen


def ruling_set(
    adj: Mapping[int, set[int]], radius: int, precoloring: Mapping[int, int]
) -> tuple[set[int], RoundTrace]:
    """Greedy ruling set on a conflict graph: sweep color classes in
    ascending order and select an element unless a selected one already
    sits within ``radius``.  Selected elements end up pairwise at distance
    > radius and every element has one within ``radius``; both properties
    are re-checked breadth-first before returning."""
    trace = RoundTrace()
    chosen: set[int] = set()
    for c in sorted(set(precoloring[v] for v in adj)):
        for v in sorted(u for u in adj if precoloring[u] == c):
            if not (_ball(adj, v, radius) & chosen):
                chosen.add(v)
        trace.tick(rounds=radius, messages=sum(len(nb) for nb in adj.values()))
    for v in sorted(chosen):
        near = _ball(adj, v, radius) & chosen
        assert near <= {v}, f"ruling set elements {v} and {near} too close"
    for v in adj:
        assert _ball(adj, v, radius) & chosen or v in chosen, f"{v} is not dominated"
    return chosen, trace


def distance_marks(
    adj: Mapping[int, set[int]], sources: set[int], cap: int
) -> dict[int, int]:
    """BFS distance from ``sources``, clipped at cap (unreached stays cap)."""
    marks = {v: cap for v in adj}
    frontier = sorted(sources)
    for v in frontier:
        marks[v] = 0
    dist = 0
    while frontier and dist < cap:
        dist += 1
        nxt = []
        for v in frontier:
            for u in adj[v]:
                if marks[u] > dist:
                    marks[u] = dist
                    nxt.append(u)
        frontier = sorted(set(nxt))
    return marks
