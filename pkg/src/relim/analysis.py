"""Comparisons between problems: relaxation, renaming, zero-round checks.

Also hosts the chain runner that alternates full round-elimination steps
with scripted relaxations and records verdicts for each link.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Mapping, Sequence

from .engine import full_step
from .problems import (
    Configuration,
    Constraint,
    Problem,
    ProblemError,
    ResourceCapError,
    parse_problem,
    render_problem,
)


def _match(sources: Sequence[frozenset], allowed: Sequence[frozenset]) -> list[int] | None:
    """Assign each source position a distinct target position it fits into.

    Classic augmenting-path matching on the fits-inside relation; returns
    the target index per source, or None.
    """
    k = len(sources)
    if k != len(allowed):
        return None
    edges = [
        [j for j, t in enumerate(allowed) if s <= t] for s in sources
    ]
    owner: list[int | None] = [None] * k
    matched = [-1] * k

    def augment(i: int, seen: set[int]) -> bool:
        for j in edges[i]:
            if j in seen:
                continue
            seen.add(j)
            if owner[j] is None or augment(owner[j], seen):
                owner[j] = i
                matched[i] = j
                return True
        return False

    for i in range(k):
        if not augment(i, set()):
            return None
    return matched


def is_relaxation_config(
    b: Sequence[Iterable], b2: Sequence[Iterable]
) -> bool:
    """Can b be turned into b2 by permuting positions and growing sets?"""
    src = [frozenset(x) for x in b]
    dst = [frozenset(x) for x in b2]
    return _match(src, dst) is not None


@dataclass
class RelaxationWitness:
    ok: bool
    matches: dict[tuple[str, Configuration], Configuration] = field(default_factory=dict)
    failure: tuple[str, Configuration] | None = None


def is_relaxation(
    p1: Problem, p2: Problem, label_map: Mapping[str, object]
) -> RelaxationWitness:
    """Is p2 at least as permissive as p1, position by position?

    `label_map` sends each label of p1 to a label of p2 or to a set of
    acceptable p2 labels.  Verdict is true when every configuration of p1
    (both sides) can be matched, after mapping, to some configuration of
    p2 of the same side.  The witness records one such match per
    configuration, or the first configuration with none.
    """
    for name in p1.labels:
        if name not in label_map:
            raise ProblemError(f"label map is not total: {name!r} missing")
    mapped: dict[int, frozenset[int]] = {}
    for name, target in label_map.items():
        targets = [target] if isinstance(target, str) else list(target)
        if not targets:
            raise ProblemError(f"label map sends {name!r} to nothing")
        mapped[p1.label_id(name)] = frozenset(p2.label_id(t) for t in targets)
    out = RelaxationWitness(True)
    for side, c1, c2 in (
        ("node", p1.node_constraint, p2.node_constraint),
        ("edge", p1.edge_constraint, p2.edge_constraint),
    ):
        if c1.arity != c2.arity:
            raise ProblemError(f"{side} arities differ: {c1.arity} vs {c2.arity}")
        targets = c2.sorted_configs()
        for cfg in c1.sorted_configs():
            eligible = [mapped[a] for a in cfg.word]
            hit = next(
                (t for t in targets if _match_map(eligible, t.word)), None
            )
            if hit is None:
                out.ok = False
                out.failure = (side, cfg)
                return out
            out.matches[(side, cfg)] = hit
    return out


def _match_map(eligible: list[frozenset[int]], word: tuple[int, ...]) -> bool:
    """Can each source position claim a distinct target position whose label
    it accepts?"""
    k = len(eligible)
    if k != len(word):
        return False
    owner: list[int | None] = [None] * k

    def augment(i: int, seen: set[int]) -> bool:
        for j in range(k):
            if word[j] not in eligible[i] or j in seen:
                continue
            seen.add(j)
            if owner[j] is None or augment(owner[j], seen):
                owner[j] = i
                return True
        return False

    return all(augment(i, set()) for i in range(k))


def merge_labels(p: Problem, groups: Sequence[Sequence[str]]) -> Problem:
    """Collapse each group of labels into its lexicographically smallest
    member; ungrouped labels stay themselves."""
    rep: dict[str, str] = {}
    for group in groups:
        if not group:
            raise ProblemError("empty merge group")
        names = sorted(group)
        for name in names:
            if name not in p.labels:
                raise ProblemError(f"unknown label {name!r}")
            if name in rep:
                raise ProblemError(f"label {name!r} appears in two merge groups")
            rep[name] = names[0]
    for name in p.labels:
        rep.setdefault(name, name)
    node = [[rep[p.labels[x]] for x in c.word] for c in p.node_constraint.configs]
    edge = [[rep[p.labels[x]] for x in c.word] for c in p.edge_constraint.configs]
    return Problem.make(node, edge, p.delta, p.rank)


def rename_labels(p: Problem, mapping: Mapping[str, str]) -> Problem:
    """Apply a bijective display renaming."""
    for name in p.labels:
        if name not in mapping:
            raise ProblemError(f"renaming is not total: {name!r} missing")
    values = [mapping[name] for name in p.labels]
    if len(set(values)) != len(values):
        raise ProblemError("renaming is not injective")
    node = [[mapping[p.labels[x]] for x in c.word] for c in p.node_constraint.configs]
    edge = [[mapping[p.labels[x]] for x in c.word] for c in p.edge_constraint.configs]
    return Problem.make(node, edge, p.delta, p.rank)


def _signature(p: Problem, a: int) -> tuple:
    sig = []
    for c in (p.node_constraint, p.edge_constraint):
        per_mult: dict[int, int] = {}
        partner: dict[tuple, int] = {}
        for cfg in c.configs:
            k = cfg.count(a)
            if k:
                per_mult[k] = per_mult.get(k, 0) + 1
                rest = tuple(
                    sorted(m for x, m in cfg.counts() if x != a)
                )
                partner[(k, rest)] = partner.get((k, rest), 0) + 1
        sig.append((tuple(sorted(per_mult.items())), tuple(sorted(partner.items()))))
    return tuple(sig)


def find_renaming_equivalence(p1: Problem, p2: Problem) -> dict[str, str] | None:
    """Search for a bijective renaming turning p1 into p2 exactly.

    Labels are first partitioned by occurrence signatures; the backtracking
    only tries signature-compatible assignments.
    """
    if len(p1.labels) != len(p2.labels):
        return None
    if (
        p1.delta != p2.delta
        or p1.rank != p2.rank
        or len(p1.node_constraint) != len(p2.node_constraint)
        or len(p1.edge_constraint) != len(p2.edge_constraint)
    ):
        return None
    n = len(p1.labels)
    sig1 = [_signature(p1, a) for a in range(n)]
    sig2 = [_signature(p2, a) for a in range(n)]
    if sorted(sig1) != sorted(sig2):
        return None
    candidates = [
        [b for b in range(n) if sig2[b] == sig1[a]] for a in range(n)
    ]
    order = sorted(range(n), key=lambda a: len(candidates[a]))
    assign: dict[int, int] = {}
    used: set[int] = set()

    node2 = p2.node_constraint.words()
    edge2 = p2.edge_constraint.words()

    def feasible() -> bool:
        # cheap partial check: fully-assigned configurations must map inside p2
        for words1, words2 in (
            (p1.node_constraint.words(), node2),
            (p1.edge_constraint.words(), edge2),
        ):
            for w in words1:
                if all(x in assign for x in w):
                    if tuple(sorted(assign[x] for x in w)) not in words2:
                        return False
        return True

    def search(i: int) -> dict[int, int] | None:
        if i == n:
            return dict(assign)
        a = order[i]
        for b in candidates[a]:
            if b in used:
                continue
            assign[a] = b
            used.add(b)
            if feasible():
                got = search(i + 1)
                if got is not None:
                    return got
            del assign[a]
            used.discard(b)
        return None

    got = search(0)
    if got is None:
        return None
    mapping = {p1.labels[a]: p2.labels[b] for a, b in got.items()}
    if rename_labels(p1, mapping) != p2:
        return None
    return mapping


def zero_round_solvable(p: Problem) -> tuple[bool, Configuration | None]:
    """Can identical deterministic nodes answer with no communication?

    True when some allowed node configuration c exists such that every
    size-rank multiset over the labels of c is an allowed edge
    configuration; the witness is the smallest such c.
    """
    edge_words = p.edge_constraint.words()
    for cfg in p.node_constraint.sorted_configs():
        support = sorted(set(cfg.word))
        if all(
            w in edge_words
            for w in combinations_with_replacement(support, p.rank)
        ):
            return True, cfg
    return False, None


# ---------------------------------------------------------------------------
# chains


@dataclass
class ChainStep:
    problem: Problem
    provenance: dict[str, tuple[tuple[str, ...], ...]] | None
    stepped: Problem | None
    relaxation_ok: bool | None
    zero_round: bool
    note: str = ""


@dataclass
class ChainReport:
    steps: list[ChainStep]
    stopped: str

    @property
    def verified_steps(self) -> int:
        return sum(1 for s in self.steps if s.relaxation_ok)


def apply_directive(p: Problem, directive: Mapping) -> tuple[Problem, dict[str, set[str]]]:
    """Run one relaxation script against a problem.

    Supported keys: `merge` (list of label groups), `rename` (bijection on
    displays), `add_node` / `add_edge` (configuration words to union in),
    `target` plus `map` (explicit goal problem text and a label map into
    it).  Returns the new problem and the induced label map from p's
    alphabet, for relaxation checking.
    """
    current: dict[str, str] = {name: name for name in p.labels}
    q = p
    if "merge" in directive:
        q = merge_labels(q, directive["merge"])
        rep: dict[str, str] = {}
        for group in directive["merge"]:
            names = sorted(group)
            for m in names:
                rep[m] = names[0]
        current = {orig: rep.get(cur, cur) for orig, cur in current.items()}
    if "rename" in directive:
        ren = directive["rename"]
        q = rename_labels(q, ren)
        current = {orig: ren[cur] for orig, cur in current.items()}
    for key in ("add_node", "add_edge"):
        if key in directive:
            node = [[q.labels[x] for x in c.word] for c in q.node_constraint.configs]
            edge = [[q.labels[x] for x in c.word] for c in q.edge_constraint.configs]
            (node if key == "add_node" else edge).extend(
                tuple(w) for w in directive[key]
            )
            q = Problem.make(node, edge, q.delta, q.rank)
    if "target" in directive:
        target = parse_problem(directive["target"])
        explicit = directive.get("map", {})
        current = {orig: explicit.get(cur, cur) for orig, cur in current.items()}
        q = target
    out: dict[str, set[str]] = {}
    for orig, cur in current.items():
        out[orig] = {cur} if isinstance(cur, str) else set(cur)
    return q, out


def run_chain(
    start: Problem,
    directives: Sequence[Mapping],
    max_steps: int | None = None,
    cap: int | None = None,
    jobs: int = 1,
) -> ChainReport:
    """Alternate full steps with scripted relaxations, verifying each link."""
    steps: list[ChainStep] = [
        ChainStep(start, None, None, None, zero_round_solvable(start)[0])
    ]
    stopped = "exhausted directives"
    if steps[0].zero_round:
        return ChainReport(steps, "start is zero-round solvable")
    count = 0
    for directive in directives:
        if max_steps is not None and count >= max_steps:
            stopped = "step cap reached"
            break
        count += 1
        try:
            stepped, provenance = full_step(steps[-1].problem, cap, jobs)
        except ResourceCapError as e:
            steps[-1].note = f"resource cap hit: {e.size_reached}"
            stopped = "resource cap"
            break
        relaxed, label_map = apply_directive(stepped, directive)
        witness = is_relaxation(stepped, relaxed, label_map)
        zr, _ = zero_round_solvable(relaxed)
        steps.append(ChainStep(relaxed, provenance, stepped, witness.ok, zr))
        if not witness.ok:
            stopped = "relaxation check failed"
            break
        if zr:
            stopped = "reached a zero-round solvable problem"
            break
    return ChainReport(steps, stopped)
