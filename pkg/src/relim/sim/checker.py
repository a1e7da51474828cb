"""Stand-alone validation of hypergraph solutions.

Deliberately written from the problem definitions alone, with no shared
logic with the solvers it audits.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .hypergraph import Hypergraph, HypergraphError

KINDS = ("mis", "matching-maximal", "coloring", "colorful", "unique-maximum")


@dataclass
class CheckReport:
    """Outcome of validating one candidate solution."""

    ok: bool
    kind: str
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def __str__(self) -> str:
        head = f"{self.kind}: {'ok' if self.ok else 'FAILED'}"
        return "\n".join([head] + [f"  - {v}" for v in self.violations])


def _as_node_set(h, value):
    try:
        chosen = set(value)
    except TypeError as exc:
        raise HypergraphError("expected an iterable of node ids") from exc
    return chosen


def _as_node_coloring(h, value):
    if not hasattr(value, "keys"):
        raise HypergraphError("expected a mapping from node id to color")
    missing = [v for v in h.nodes if v not in value]
    if missing:
        raise HypergraphError(f"nodes without a color: {sorted(missing)[:5]}")
    return {v: int(value[v]) for v in h.nodes}


def check_solution(h: Hypergraph, kind: str, value) -> CheckReport:
    """Validate ``value`` as a solution of the given kind on ``h``.

    Kinds: ``mis`` (node set), ``matching-maximal`` (hyperedge id set),
    ``coloring`` / ``colorful`` / ``unique-maximum`` (node color maps).
    Every violation is itemized with the offending ids.
    """
    if kind not in KINDS:
        raise HypergraphError(f"unknown solution kind {kind!r}")
    violations: list[str] = []
    notes: list[str] = []

    if kind == "mis":
        chosen = _as_node_set(h, value)
        stray = chosen - set(h.nodes)
        if stray:
            violations.append(f"unknown node ids {sorted(stray)}")
        chosen &= set(h.nodes)
        for e, pins in h.edges.items():
            if all(v in chosen for v in pins):
                violations.append(
                    f"hyperedge {e} is fully selected: {sorted(pins)}"
                )
        for v in h.nodes:
            if v in chosen:
                continue
            witnessed = False
            for e in h.incident[v]:
                if all(u in chosen for u in h.edges[e] if u != v):
                    witnessed = True
                    break
            if not witnessed:
                violations.append(f"node {v} is out with no witness hyperedge")
        notes.append(f"{len(chosen)} of {len(h.nodes)} nodes selected")

    elif kind == "matching-maximal":
        try:
            picked = set(value)
        except TypeError as exc:
            raise HypergraphError("expected an iterable of hyperedge ids") from exc
        stray = picked - set(h.edges)
        if stray:
            violations.append(f"unknown hyperedge ids {sorted(stray)}")
        picked &= set(h.edges)
        used: dict[int, int] = {}
        for e in sorted(picked):
            for v in h.edges[e]:
                if v in used:
                    violations.append(
                        f"hyperedges {used[v]} and {e} share node {v}"
                    )
                else:
                    used[v] = e
        for e, pins in h.edges.items():
            if e not in picked and not any(v in used for v in pins):
                violations.append(f"hyperedge {e} is unmatched and undominated")
        notes.append(f"{len(picked)} hyperedges matched")

    else:
        coloring = _as_node_coloring(h, value)
        if kind == "coloring":
            for e, pins in h.edges.items():
                if len({coloring[v] for v in pins}) == 1:
                    violations.append(f"hyperedge {e} is monochromatic")
        elif kind == "colorful":
            for e, pins in h.edges.items():
                seen: dict[int, int] = {}
                for v in pins:
                    c = coloring[v]
                    if c in seen:
                        violations.append(
                            f"hyperedge {e} repeats color {c} on nodes {seen[c]} and {v}"
                        )
                    else:
                        seen[c] = v
        else:
            for e, pins in h.edges.items():
                top = max(coloring[v] for v in pins)
                holders = [v for v in pins if coloring[v] == top]
                if len(holders) != 1:
                    violations.append(
                        f"hyperedge {e} has maximum color {top} on nodes {sorted(holders)}"
                    )
        notes.append(f"{len(set(coloring.values()))} colors used")

    return CheckReport(ok=not violations, kind=kind, violations=violations, notes=notes)
