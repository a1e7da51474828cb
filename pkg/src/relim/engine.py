"""Round elimination steps over interned problems.

The two half-steps are a universal quantifier (keep maximal set-configurations
whose full choice product stays inside the constraint) and an existential one
(keep set-configurations admitting at least one allowed choice).  A full step
runs both halves and re-interns the resulting set-of-set labels as fresh
opaque labels with a provenance map.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb

from .problems import (
    Configuration,
    Constraint,
    Problem,
    ProblemError,
    ResourceCapError,
    config_cap,
)

SUBSET_SCAN_LIMIT = 22


@dataclass(frozen=True)
class StrengthOrder:
    """Replacement preorder on label ids 0..n-1 relative to one constraint.

    a <= b means: in every allowed configuration, one occurrence of a can be
    swapped for b without leaving the constraint.
    """

    n: int
    up_masks: tuple[int, ...]  # up_masks[a] = bitmask of all b with a <= b

    def leq(self, a: int, b: int) -> bool:
        return bool(self.up_masks[a] >> b & 1)

    def up(self, a: int) -> int:
        return self.up_masks[a]


def strength_order(c: Constraint, n_labels: int | None = None) -> StrengthOrder:
    if n_labels is None:
        used = c.labels_used()
        n_labels = max(used) + 1 if used else 1
    words = c.words()
    by_label: dict[int, list[Configuration]] = {a: [] for a in range(n_labels)}
    for cfg in c.configs:
        for a in set(cfg.word):
            by_label[a].append(cfg)
    masks = []
    for a in range(n_labels):
        m = 0
        for b in range(n_labels):
            if all(cfg.replace_one(a, b).word in words for cfg in by_label[a]):
                m |= 1 << b
        masks.append(m)
    return StrengthOrder(n_labels, tuple(masks))


def successors(labels, order: StrengthOrder) -> frozenset[int]:
    """Upward closure of a set of labels under the strength preorder."""
    m = 0
    for a in labels:
        m |= order.up_masks[a]
    return frozenset(_bits(m))


@dataclass(frozen=True)
class Diagram:
    """Equal-strength classes plus Hasse edges (weaker class -> stronger)."""

    classes: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]


def diagram(order: StrengthOrder) -> Diagram:
    n = order.n
    rep: dict[int, int] = {}
    classes: list[list[int]] = []
    for a in range(n):
        for i, cls in enumerate(classes):
            b = cls[0]
            if order.leq(a, b) and order.leq(b, a):
                cls.append(a)
                rep[a] = i
                break
        else:
            rep[a] = len(classes)
            classes.append([a])
    k = len(classes)
    below = [[False] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            if i != j and order.leq(classes[i][0], classes[j][0]):
                below[i][j] = True
    edges = []
    for i in range(k):
        for j in range(k):
            if below[i][j] and not any(
                below[i][m] and below[m][j] for m in range(k)
            ):
                edges.append((i, j))
    return Diagram(
        tuple(tuple(sorted(cls)) for cls in classes),
        tuple(sorted(edges)),
    )


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _partials(words: frozenset[tuple[int, ...]], arity: int) -> list[frozenset]:
    """partials[k] = every sorted sub-multiset of size k of an allowed word."""
    out: list[frozenset] = [frozenset()] * (arity + 1)
    out[arity] = words
    level = words
    for k in range(arity - 1, -1, -1):
        nxt = set()
        for w in level:
            for i in range(len(w)):
                if i == 0 or w[i] != w[i - 1]:
                    nxt.add(w[:i] + w[i + 1 :])
        level = frozenset(nxt)
        out[k] = level
    return out


def _up_sets(order: StrengthOrder) -> list[int]:
    """All nonempty upward-closed label sets, as sorted bitmasks."""
    n = order.n
    if n > SUBSET_SCAN_LIMIT:
        raise ResourceCapError(
            f"alphabet of {n} labels is too large for the closed-set scan", 1 << n
        )
    out = []
    for mask in range(1, 1 << n):
        ok = True
        m = mask
        while m:
            low = m & -m
            a = low.bit_length() - 1
            if order.up_masks[a] & ~mask:
                ok = False
                break
            m ^= low
        if ok:
            out.append(mask)
    return out


def _valid_from(
    upsets: list[int],
    start: int,
    alive: frozenset[tuple[int, ...]],
    prefix: tuple[int, ...],
    arity: int,
    partials: list[frozenset],
) -> list[tuple[int, ...]]:
    d = len(prefix)
    if d == arity:
        return [prefix]
    found = []
    for i in range(start, len(upsets)):
        nxt = set()
        bad = False
        for w in alive:
            for x in _bits(upsets[i]):
                ext = tuple(sorted(w + (x,)))
                if ext not in partials[d + 1]:
                    bad = True
                    break
                nxt.add(ext)
            if bad:
                break
        if not bad:
            found.extend(
                _valid_from(upsets, i, frozenset(nxt), prefix + (i,), arity, partials)
            )
    return found


def _universal_chunk(args):
    upsets, first, arity, partials = args
    return _valid_from_first(upsets, first, arity, partials)


def _valid_from_first(upsets, first, arity, partials):
    alive = set()
    bad = False
    for x in _bits(upsets[first]):
        ext = (x,)
        if ext not in partials[1]:
            bad = True
            break
        alive.add(ext)
    if bad:
        return []
    return _valid_from(upsets, first, frozenset(alive), (first,), arity, partials)


def _dominated(v: tuple[int, ...], w: tuple[int, ...]) -> bool:
    """True if every set of v fits inside a distinct set of w."""
    r = len(v)
    used = [False] * r

    def match(i: int) -> bool:
        if i == r:
            return True
        for j in range(r):
            if not used[j] and v[i] & ~w[j] == 0:
                used[j] = True
                if match(i + 1):
                    return True
                used[j] = False
        return False

    return match(0)


def _maximal(configs: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    def weight(cfg):
        return sum(m.bit_count() for m in cfg)

    kept: list[tuple[int, ...]] = []
    for cfg in sorted(set(configs), key=lambda c: (-weight(c), c)):
        if not any(_dominated(cfg, k) for k in kept):
            kept.append(cfg)
    return kept


def apply_universal(
    c: Constraint,
    n_labels: int | None = None,
    cap: int | None = None,
    jobs: int = 1,
) -> tuple[tuple[tuple[int, ...], ...], Constraint]:
    """Universal half-step.

    Returns the fresh alphabet (each set-label a sorted tuple of input label
    ids) and the constraint over it: all maximal configurations of label sets
    whose full choice product stays inside `c`.  Only upward-closed sets can
    occur in a maximal configuration, so the search is restricted to those.
    """
    cap = config_cap(cap)
    order = strength_order(c, n_labels)
    upsets = _up_sets(order)
    arity = c.arity
    n_candidates = comb(len(upsets) + arity - 1, arity)
    if n_candidates > cap:
        raise ResourceCapError(
            "universal step would enumerate too many configurations", n_candidates
        )
    partials = _partials(c.words(), arity)
    if jobs > 1:
        chunks = [(upsets, i, arity, partials) for i in range(len(upsets))]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_universal_chunk, chunks, chunksize=4))
        valid = [cfg for part in results for cfg in part]
    else:
        valid = []
        for i in range(len(upsets)):
            valid.extend(_valid_from_first(upsets, i, arity, partials))
    maximal = _maximal([tuple(upsets[i] for i in cfg) for cfg in valid])
    sigma_masks = sorted(
        {m for cfg in maximal for m in cfg},
        key=lambda m: tuple(_bits(m)),
    )
    assert all(successors(_bits(m), order) == frozenset(_bits(m)) for m in sigma_masks)
    index = {m: i for i, m in enumerate(sigma_masks)}
    words = [tuple(sorted(index[m] for m in cfg)) for cfg in maximal]
    sigma = tuple(tuple(_bits(m)) for m in sigma_masks)
    return sigma, Constraint.of(words, arity)


def apply_existential(
    c: Constraint,
    sigma: tuple[tuple[int, ...], ...],
    arity: int,
    cap: int | None = None,
) -> tuple[Constraint, tuple[tuple[Configuration, tuple[int, ...]], ...]]:
    """Existential half-step over a fixed set-label alphabet.

    Keeps every configuration of set-labels from which some per-position
    choice lands in `c`; the found choice is returned as a witness
    certificate alongside each kept configuration.
    """
    cap = config_cap(cap)
    n_candidates = comb(len(sigma) + arity - 1, arity)
    if n_candidates > cap:
        raise ResourceCapError(
            "existential step would enumerate too many configurations", n_candidates
        )
    partials = _partials(c.words(), arity)
    kept = []
    witnesses = []
    for cand in combinations_with_replacement(range(len(sigma)), arity):
        choice = _choose(cand, sigma, partials, 0, ())
        if choice is not None:
            cfg = Configuration.of(cand)
            kept.append(cfg)
            witnesses.append((cfg, choice))
    return Constraint(frozenset(kept), arity), tuple(witnesses)


def _choose(cand, sigma, partials, d, picked):
    if d == len(cand):
        return picked
    for x in sigma[cand[d]]:
        ext = tuple(sorted(picked + (x,)))
        if ext in partials[d + 1]:
            got = _choose(cand, sigma, partials, d + 1, picked + (x,))
            if got is not None:
                return got
    return None


@dataclass(frozen=True)
class IntermediateProblem:
    """Result of one half-pair of round elimination, labels still set-valued.

    `sigma` holds set-labels as sorted tuples of ids into the base problem's
    alphabet; both constraints index into `sigma`.  `applied` records which
    side the universal quantifier hit.
    """

    base: object
    sigma: tuple[tuple[int, ...], ...]
    node_constraint: Constraint
    edge_constraint: Constraint
    witnesses: tuple[tuple[Configuration, tuple[int, ...]], ...]
    applied: str

    @property
    def delta(self) -> int:
        return self.node_constraint.arity

    @property
    def rank(self) -> int:
        return self.edge_constraint.arity

    def base_display(self, base_id: int) -> str:
        if isinstance(self.base, Problem):
            return self.base.labels[base_id]
        return self.base.label_display(base_id)

    def label_display(self, i: int) -> str:
        return "(" + " ".join(self.base_display(x) for x in self.sigma[i]) + ")"

    def check_witnesses(self) -> bool:
        target = (
            self.base.node_constraint
            if self.applied == "edge-universal"
            else self.base.edge_constraint
        )
        words = target.words()
        wit = dict(self.witnesses)
        side = (
            self.node_constraint
            if self.applied == "edge-universal"
            else self.edge_constraint
        )
        for cfg in side.configs:
            choice = wit.get(cfg)
            if choice is None:
                return False
            if tuple(sorted(choice)) not in words:
                return False
            pool = sorted(cfg.word)
            for idx, x in zip(pool, choice):
                if x not in self.sigma[idx]:
                    return False
        return True


def re_step(p: Problem, cap: int | None = None, jobs: int = 1) -> IntermediateProblem:
    """Universal quantifier on the edge side, existential on the node side."""
    sigma, edge_c = apply_universal(p.edge_constraint, len(p.labels), cap, jobs)
    node_c, wit = apply_existential(p.node_constraint, sigma, p.delta, cap)
    return IntermediateProblem(p, sigma, node_c, edge_c, wit, "edge-universal")


def rere_step(
    ip: IntermediateProblem, cap: int | None = None, jobs: int = 1
) -> IntermediateProblem:
    """Universal quantifier on the node side, existential on the edge side."""
    if ip.applied != "edge-universal":
        raise ProblemError("second half-pair expects an edge-universal input")
    sigma, node_c = apply_universal(
        ip.node_constraint, len(ip.sigma), cap, jobs
    )
    edge_c, wit = apply_existential(ip.edge_constraint, sigma, ip.rank, cap)
    return IntermediateProblem(ip, sigma, node_c, edge_c, wit, "node-universal")


def intern_step(
    ip2: IntermediateProblem,
) -> tuple[Problem, dict[str, tuple[tuple[str, ...], ...]]]:
    """Flatten a second-level intermediate problem into fresh opaque labels.

    Returns the interned problem and a provenance map from each fresh label
    to the set of base-alphabet label sets it stands for.
    """
    ip = ip2.base
    if not isinstance(ip, IntermediateProblem):
        raise ProblemError("interning expects two stacked half-pairs")
    n = len(ip2.sigma)
    width = len(str(n - 1)) if n > 1 else 1
    names = [f"L{str(i).zfill(width)}" for i in range(n)]
    provenance = {
        names[i]: tuple(
            tuple(ip.base_display(x) for x in ip.sigma[j]) for j in ip2.sigma[i]
        )
        for i in range(n)
    }
    node_words = [[names[i] for i in cfg.word] for cfg in ip2.node_constraint.configs]
    edge_words = [[names[i] for i in cfg.word] for cfg in ip2.edge_constraint.configs]
    out = Problem.make(node_words, edge_words, ip2.delta, ip2.rank)
    used = set(out.labels)
    provenance = {k: v for k, v in provenance.items() if k in used}
    return out, provenance


def full_step(
    p: Problem, cap: int | None = None, jobs: int = 1
) -> tuple[Problem, dict[str, tuple[tuple[str, ...], ...]]]:
    """Both half-pairs plus interning: one full round-elimination step."""
    return intern_step(rere_step(re_step(p, cap, jobs), cap, jobs))
