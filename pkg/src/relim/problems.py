"""Core data model for node-edge checkable labeling problems.

A problem is a finite label alphabet together with two constraints: one on
the label multiset around a node (arity = node degree) and one on the label
multiset along a hyperedge (arity = hyperedge rank).  Configurations are
multisets, stored canonically as sorted tuples of label ids.

Labels are interned: a problem keeps a tuple of display strings sorted
lexicographically, and every configuration refers to labels by index into
that tuple.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

DEFAULT_CONFIG_CAP = 5_000_000
CONFIG_CAP_ENV = "RELIM_MAX_CONFIGS"


def config_cap(explicit: int | None = None) -> int:
    """Resolve the active cap on enumerated configurations."""
    if explicit is not None:
        return explicit
    raw = os.environ.get(CONFIG_CAP_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ProblemError(f"bad {CONFIG_CAP_ENV} value: {raw!r}")
    return DEFAULT_CONFIG_CAP


class ProblemError(Exception):
    """Malformed problem input or misuse of the model API."""


class ResourceCapError(ProblemError):
    """An enumeration would exceed the configured configuration cap."""

    def __init__(self, message: str, size_reached: int):
        super().__init__(message)
        self.size_reached = size_reached


@dataclass(frozen=True, order=True)
class Configuration:
    """A multiset of labels, canonically a sorted tuple of label ids."""

    word: tuple[int, ...]

    @staticmethod
    def of(labels: Iterable[int]) -> "Configuration":
        return Configuration(tuple(sorted(labels)))

    @property
    def arity(self) -> int:
        return len(self.word)

    def counts(self) -> tuple[tuple[int, int], ...]:
        """Entries as (label id, multiplicity), ascending by id."""
        out: list[tuple[int, int]] = []
        for x in self.word:
            if out and out[-1][0] == x:
                out[-1] = (x, out[-1][1] + 1)
            else:
                out.append((x, 1))
        return tuple(out)

    def count(self, label: int) -> int:
        return self.word.count(label)

    def replace_one(self, a: int, b: int) -> "Configuration":
        """Copy with one occurrence of `a` replaced by `b`."""
        w = list(self.word)
        w.remove(a)
        w.append(b)
        return Configuration.of(w)


@dataclass(frozen=True)
class Constraint:
    """A set of same-arity configurations."""

    configs: frozenset[Configuration]
    arity: int

    def __post_init__(self):
        for c in self.configs:
            if c.arity != self.arity:
                raise ProblemError(
                    f"configuration {c.word} has arity {c.arity}, "
                    f"constraint expects {self.arity}"
                )
        if self.arity < 1:
            raise ProblemError("constraint arity must be at least 1")

    @staticmethod
    def of(words: Iterable[Iterable[int]], arity: int | None = None) -> "Constraint":
        cfgs = frozenset(Configuration.of(w) for w in words)
        if arity is None:
            if not cfgs:
                raise ProblemError("cannot infer arity of an empty constraint")
            arity = next(iter(cfgs)).arity
        return Constraint(cfgs, arity)

    def words(self) -> frozenset[tuple[int, ...]]:
        return frozenset(c.word for c in self.configs)

    def __contains__(self, item) -> bool:
        if isinstance(item, Configuration):
            return item in self.configs
        return Configuration.of(item) in self.configs

    def __len__(self) -> int:
        return len(self.configs)

    def sorted_configs(self) -> list[Configuration]:
        return sorted(self.configs)

    def labels_used(self) -> frozenset[int]:
        return frozenset(x for c in self.configs for x in c.word)


@dataclass(frozen=True)
class Problem:
    """An alphabet plus a node constraint (arity delta) and an edge
    constraint (arity rank)."""

    labels: tuple[str, ...]
    node_constraint: Constraint
    edge_constraint: Constraint

    def __post_init__(self):
        if not self.labels:
            raise ProblemError("a problem needs at least one label")
        if len(set(self.labels)) != len(self.labels):
            raise ProblemError("duplicate label display names")
        if list(self.labels) != sorted(self.labels):
            raise ProblemError("labels must be sorted lexicographically")
        for name in self.labels:
            if not name or re.search(r"[\s\[\]^#]", name):
                raise ProblemError(f"bad label display {name!r}")
        n = len(self.labels)
        used = self.node_constraint.labels_used() | self.edge_constraint.labels_used()
        for x in used:
            if not (0 <= x < n):
                raise ProblemError(f"label id {x} out of range")
        unused = set(range(n)) - used
        if unused:
            names = sorted(self.labels[i] for i in unused)
            raise ProblemError(f"labels never used in any configuration: {names}")

    @property
    def delta(self) -> int:
        return self.node_constraint.arity

    @property
    def rank(self) -> int:
        return self.edge_constraint.arity

    def label_id(self, display: str) -> int:
        try:
            return self.labels.index(display)
        except ValueError:
            raise ProblemError(f"unknown label {display!r}")

    def display(self, config: Configuration) -> str:
        return " ".join(self.labels[x] for x in config.word)

    @staticmethod
    def make(
        node_words: Iterable[Sequence[str]],
        edge_words: Iterable[Sequence[str]],
        delta: int | None = None,
        rank: int | None = None,
    ) -> "Problem":
        """Build a problem from configurations given as display-name words."""
        node_words = [tuple(w) for w in node_words]
        edge_words = [tuple(w) for w in edge_words]
        names = sorted({x for w in node_words + edge_words for x in w})
        if not names:
            raise ProblemError("no labels: both constraints are empty")
        idx = {s: i for i, s in enumerate(names)}
        nc = Constraint.of([[idx[x] for x in w] for w in node_words], delta)
        ec = Constraint.of([[idx[x] for x in w] for w in edge_words], rank)
        return Problem(tuple(names), nc, ec)


# ---------------------------------------------------------------------------
# text format


_TOKEN_RE = re.compile(r"(\[[^\]\[]*\]|[^\s\[\]^]+)(\^\S+)?|(\S)")
_EMPTY_RE = re.compile(r"^\(empty (\d+)\)$")


def _parse_line(line: str, lineno: int) -> list[tuple[tuple[str, ...], int]]:
    """One line pattern -> list of (label group, exponent)."""
    out: list[tuple[tuple[str, ...], int]] = []
    pos = 0
    for m in _TOKEN_RE.finditer(line):
        if line[pos : m.start()].strip():
            raise ProblemError(f"line {lineno}: cannot parse near {line[pos:]!r}")
        pos = m.end()
        if m.group(3) is not None:
            raise ProblemError(f"line {lineno}: stray {m.group(3)!r}")
        body, exp = m.group(1), m.group(2)
        k = 1
        if exp is not None:
            digits = exp[1:]
            if not digits.isdigit() or int(digits) < 1:
                raise ProblemError(f"line {lineno}: malformed exponent {exp!r}")
            k = int(digits)
        if body.startswith("["):
            members = tuple(sorted(set(body[1:-1].split())))
            if not members:
                raise ProblemError(f"line {lineno}: empty bracket group")
        else:
            members = (body,)
        out.append((members, k))
    if line[pos:].strip():
        raise ProblemError(f"line {lineno}: cannot parse near {line[pos:]!r}")
    if not out:
        raise ProblemError(f"line {lineno}: empty pattern")
    return out


def _expand_pattern(
    pattern: list[tuple[tuple[str, ...], int]], budget: list[int]
) -> list[tuple[str, ...]]:
    """All canonical words matching a line pattern."""
    words: list[tuple[str, ...]] = [()]
    for members, k in pattern:
        chunks = list(combinations_with_replacement(members, k))
        nxt = []
        for w in words:
            for ch in chunks:
                budget[0] -= 1
                if budget[0] < 0:
                    raise ResourceCapError(
                        "configuration expansion exceeds cap", budget[1]
                    )
                nxt.append(w + ch)
        words = nxt
    return [tuple(sorted(w)) for w in words]


def parse_problem(text: str, cap: int | None = None) -> Problem:
    """Parse the two-section text format.

    Sections are separated by a line consisting of `---`; `#` starts a
    comment; a token is a label, `[A B C]` allows any member of the group,
    and `^k` repeats the preceding token k times.
    """
    cap = config_cap(cap)
    sections: list[list[tuple[str, int]]] = [[]]
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "---":
            sections.append([])
            continue
        sections[-1].append((line, lineno))
    if len(sections) != 2:
        raise ProblemError(
            f"expected exactly 2 sections separated by ---, got {len(sections)}"
        )
    budget = [cap, cap]
    parsed: list[tuple[list[tuple[str, ...]], int | None]] = []
    for which, lines in zip(("node", "edge"), sections):
        if not lines:
            raise ProblemError(f"{which} section is empty")
        if len(lines) == 1 and (m := _EMPTY_RE.match(lines[0][0])):
            parsed.append(([], int(m.group(1))))
            continue
        words: list[tuple[str, ...]] = []
        arity: int | None = None
        for line, lineno in lines:
            pat = _parse_line(line, lineno)
            k = sum(c for _, c in pat)
            if arity is None:
                arity = k
            elif arity != k:
                raise ProblemError(
                    f"line {lineno}: arity {k} differs from {arity} "
                    f"earlier in the {which} section"
                )
            words.extend(_expand_pattern(pat, budget))
        parsed.append((words, arity))
    (node_words, delta), (edge_words, rank) = parsed
    return Problem.make(node_words, edge_words, delta, rank)


def _condense(constraint: Constraint, labels: tuple[str, ...]) -> list[str]:
    """Greedy refactor of a constraint into bracket-group lines."""
    remaining = set(constraint.words())
    full = set(remaining)
    lines = []
    while remaining:
        seed = min(remaining)
        groups: list[set[int]] = [{x} for x in seed]
        grown = True
        while grown:
            grown = False
            for i in range(len(groups)):
                for cand in range(len(labels)):
                    if cand in groups[i]:
                        continue
                    trial = [g if j != i else groups[i] | {cand} for j, g in enumerate(groups)]
                    prod = {()}
                    ok = True
                    for g in trial:
                        prod = {w + (x,) for w in prod for x in g}
                        if len(prod) > 4096:
                            ok = False
                            break
                    if ok and all(tuple(sorted(w)) in full for w in prod):
                        groups[i].add(cand)
                        grown = True
        covered = {()}
        for g in groups:
            covered = {w + (x,) for w in covered for x in g}
        remaining -= {tuple(sorted(w)) for w in covered}
        # collapse equal groups into exponents, positions ordered by content
        keyed = sorted(tuple(sorted(g)) for g in groups)
        parts = []
        run, count = keyed[0], 1
        for g in keyed[1:] + [None]:
            if g == run:
                count += 1
                continue
            body = labels[run[0]] if len(run) == 1 else "[" + " ".join(labels[x] for x in run) + "]"
            parts.append(body if count == 1 else f"{body}^{count}")
            run, count = g, 1
        lines.append(" ".join(parts))
    return lines


def render_problem(p: Problem, condensed: bool = False) -> str:
    """Inverse of parse_problem; deterministic for equal problems."""
    out: list[str] = []
    for c in (p.node_constraint, p.edge_constraint):
        if not c.configs:
            out.append(f"(empty {c.arity})")
        elif condensed:
            out.extend(_condense(c, p.labels))
        else:
            out.extend(p.display(cfg) for cfg in c.sorted_configs())
        out.append("---")
    out.pop()
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# labelings on concrete hypergraphs


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_labeling(
    p: Problem, h, labeling: Mapping[tuple[int, int], str]
) -> ValidationReport:
    """Check a per-incidence labeling of hypergraph `h` against `p`.

    `h` must expose `nodes` (iterable of ids), `pins` (mapping edge id ->
    list of node ids) and `incident_edges(v)`.  Nodes of degree below delta
    and hyperedges of rank below rank are unconstrained; the latter are
    recorded as notes.
    """
    report = ValidationReport()
    ids = {s: i for i, s in enumerate(p.labels)}
    for key, val in labeling.items():
        if val not in ids:
            raise ProblemError(f"labeling uses label {val!r} outside the alphabet")
        v, e = key
        if e not in h.pins or v not in h.pins[e]:
            raise ProblemError(f"labeling mentions missing incidence {key}")

    def lookup(v: int, e: int) -> int | None:
        try:
            return ids[labeling[(v, e)]]
        except KeyError:
            report.violations.append(f"incidence (node {v}, edge {e}) is unlabeled")
            return None

    for v in h.nodes:
        inc = h.incident_edges(v)
        if len(inc) < p.delta:
            continue
        if len(inc) > p.delta:
            report.violations.append(f"node {v} has degree {len(inc)} > {p.delta}")
            continue
        word = [lookup(v, e) for e in inc]
        if None in word:
            continue
        if Configuration.of(word) not in p.node_constraint:
            shown = " ".join(p.labels[x] for x in sorted(word))
            report.violations.append(f"node {v}: configuration {shown} not allowed")
    for e, pins in h.pins.items():
        if len(pins) < p.rank:
            report.notes.append(f"edge {e} has rank {len(pins)} < {p.rank}: unconstrained")
            continue
        if len(pins) > p.rank:
            report.violations.append(f"edge {e} has rank {len(pins)} > {p.rank}")
            continue
        word = [lookup(v, e) for v in pins]
        if None in word:
            continue
        if Configuration.of(word) not in p.edge_constraint:
            shown = " ".join(p.labels[x] for x in sorted(word))
            report.violations.append(f"edge {e}: configuration {shown} not allowed")
    return report
