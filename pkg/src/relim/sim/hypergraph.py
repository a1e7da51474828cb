"""Hypergraph instances for the simulator.

A hypergraph is a set of integer node ids plus hyperedges, each a tuple of
distinct pins.  Port numbering is implicit in the stored order: the ports
of a node are its incident hyperedges sorted by id, and the ports of a
hyperedge are its pins in stored order.
"""

from __future__ import annotations

import json
import random
from typing import Iterable, Mapping


class HypergraphError(ValueError):
    pass


class Hypergraph:
    def __init__(self, nodes: Iterable[int], edges: Mapping[int, Iterable[int]]):
        self.nodes: tuple[int, ...] = tuple(sorted(set(int(v) for v in nodes)))
        self.edges: dict[int, tuple[int, ...]] = {}
        node_set = set(self.nodes)
        for eid, pins in sorted(edges.items()):
            pins = tuple(int(v) for v in pins)
            if not pins:
                raise HypergraphError(f"hyperedge {eid} has no pins")
            if len(set(pins)) != len(pins):
                raise HypergraphError(f"hyperedge {eid} repeats a pin")
            missing = set(pins) - node_set
            if missing:
                raise HypergraphError(f"hyperedge {eid} uses unknown nodes {sorted(missing)}")
            self.edges[int(eid)] = pins
        incident: dict[int, list[int]] = {v: [] for v in self.nodes}
        for eid, pins in self.edges.items():
            for v in pins:
                incident[v].append(eid)
        self.incident: dict[int, tuple[int, ...]] = {
            v: tuple(sorted(eids)) for v, eids in incident.items()
        }

    def degree(self, v: int) -> int:
        return len(self.incident[v])

    def rank(self, e: int) -> int:
        return len(self.edges[e])

    @property
    def max_degree(self) -> int:
        return max((len(x) for x in self.incident.values()), default=0)

    @property
    def max_rank(self) -> int:
        return max((len(x) for x in self.edges.values()), default=0)

    @property
    def pins(self) -> dict[int, tuple[int, ...]]:
        """Alias for `edges`, matching the interface labeling validators use."""
        return self.edges

    def incident_edges(self, v: int) -> tuple[int, ...]:
        return self.incident[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        out: set[int] = set()
        for e in self.incident[v]:
            out.update(self.edges[e])
        out.discard(v)
        return tuple(sorted(out))

    def incidence_pairs(self) -> list[tuple[int, int]]:
        """All (node, hyperedge) pairs, for the bipartite representation."""
        return [(v, e) for e, pins in sorted(self.edges.items()) for v in pins]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Hypergraph)
            and self.nodes == other.nodes
            and self.edges == other.edges
        )

    def __repr__(self) -> str:
        return f"Hypergraph({len(self.nodes)} nodes, {len(self.edges)} hyperedges)"

    def to_json(self) -> str:
        payload = {
            "nodes": list(self.nodes),
            "hyperedges": [
                {"id": eid, "pins": list(pins)} for eid, pins in sorted(self.edges.items())
            ],
        }
        return json.dumps(payload, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Hypergraph":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise HypergraphError(f"bad hypergraph JSON: {exc}") from exc
        if not isinstance(payload, dict) or "nodes" not in payload or "hyperedges" not in payload:
            raise HypergraphError("hypergraph JSON needs 'nodes' and 'hyperedges'")
        edges = {}
        for item in payload["hyperedges"]:
            edges[int(item["id"])] = [int(v) for v in item["pins"]]
        return cls(payload["nodes"], edges)


def generate_hypergraph(
    kind: str, n: int = 0, delta: int = 2, rank: int = 2, seed: int = 0,
    path: str | None = None,
) -> Hypergraph:
    """Deterministic instance generators.

    ``single-edge`` ignores n and emits one hyperedge on ``rank`` nodes.
    ``hypertree`` grows a linear hypertree (any two hyperedges share at
    most one node, bipartite representation is a tree) until n nodes
    exist.  ``random`` samples hyperedges of rank mostly 2..rank, with a
    small share of rank-1 edges, respecting the degree bound; parallel
    hyperedges can occur.  ``from-file`` loads the JSON at ``path``.
    """
    if kind == "from-file":
        if not path:
            raise HypergraphError("from-file needs a path")
        with open(path, "r", encoding="utf-8") as fh:
            return Hypergraph.from_json(fh.read())

    if kind == "single-edge":
        if rank < 1:
            raise HypergraphError("rank must be at least 1")
        return Hypergraph(range(1, rank + 1), {1: tuple(range(1, rank + 1))})

    if kind in ("hypertree", "linear-hypertree"):
        if rank < 2 or delta < 1:
            raise HypergraphError("hypertree needs rank >= 2 and delta >= 1")
        nodes = list(range(1, rank + 1))
        degree = {v: 1 for v in nodes}
        edges: dict[int, tuple[int, ...]] = {1: tuple(nodes)}
        eid, fresh_id = 2, rank + 1
        while len(nodes) < n:
            host = next((v for v in nodes if degree[v] < delta), None)
            if host is None:
                break
            fresh = list(range(fresh_id, fresh_id + rank - 1))
            fresh_id += rank - 1
            nodes.extend(fresh)
            degree.update({v: 1 for v in fresh})
            degree[host] += 1
            edges[eid] = (host, *fresh)
            eid += 1
        return Hypergraph(nodes, edges)

    if kind == "random":
        if n < 1 or delta < 1 or rank < 1:
            raise HypergraphError("random generation needs n, delta, rank >= 1")
        rng = random.Random(seed)
        nodes = list(range(1, n + 1))
        capacity = {v: delta for v in nodes}
        edges = {}
        eid = 1
        for _ in range(2 * n):
            pool = [v for v in nodes if capacity[v] > 0]
            if not pool:
                break
            k = 1 if (rank == 1 or rng.random() < 0.05) else rng.randint(2, rank)
            if k > len(pool):
                continue
            pins = rng.sample(pool, k)
            for v in pins:
                capacity[v] -= 1
            edges[eid] = tuple(pins)
            eid += 1
        return Hypergraph(nodes, edges)

    raise HypergraphError(f"unknown hypergraph kind: {kind!r}")
