"""Built-in problem families and the two self-check pipelines.

The interesting families here are the hypergraph coloring fixed point
(running a full elimination step on it gives the same problem back up to
renaming) and the two-parameter obstruction family whose edge constraint
counts color-bearing labels against a budget vector; one full step plus a
relaxation bumps one budget entry, which is what the chain runner exploits.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations, combinations_with_replacement
from math import comb
from operator import and_
from typing import Iterable, Mapping, Sequence

from .analysis import _match_map, find_renaming_equivalence
from .engine import (
    apply_existential,
    full_step,
    intern_step,
    re_step,
    rere_step,
    strength_order,
    successors,
)
from .problems import (
    Configuration,
    Problem,
    ProblemError,
    ResourceCapError,
    config_cap,
    render_problem,
)


def mis_graph_problem(delta: int) -> Problem:
    """Maximal independent set on delta-regular graphs (rank 2).

    M marks a matched-into-the-set incidence, P a pointer to the reason a
    node stays out, O everything else.
    """
    if delta < 2:
        raise ProblemError("need delta >= 2")
    node = [["M"] * delta, ["P"] + ["O"] * (delta - 1)]
    edge = [["M", "P"], ["M", "O"], ["O", "O"]]
    return Problem.make(node, edge, delta, 2)


def plain_hypergraph_coloring(c: int, delta: int, rank: int) -> Problem:
    """Proper c-coloring: no hyperedge is monochromatic."""
    if c < 2:
        raise ProblemError("need at least 2 colors, else no edge is colorable")
    names = [str(i).zfill(len(str(c))) if c > 9 else str(i) for i in range(1, c + 1)]
    node = [[nm] * delta for nm in names]
    edge = [
        list(w)
        for w in combinations_with_replacement(names, rank)
        if len(set(w)) > 1
    ]
    return Problem.make(node, edge, delta, rank)


def colorful_coloring(c: int, delta: int, rank: int) -> Problem:
    """Strong coloring: all pins of a hyperedge get pairwise distinct colors."""
    if c < rank:
        raise ProblemError(f"need at least {rank} colors for rank {rank}")
    names = [str(i).zfill(len(str(c))) if c > 9 else str(i) for i in range(1, c + 1)]
    node = [[nm] * delta for nm in names]
    edge = [list(w) for w in combinations(names, rank)]
    return Problem.make(node, edge, delta, rank)


def _set_name(members: Iterable[int]) -> str:
    return "l{" + ",".join(str(i) for i in sorted(members)) + "}"


_SET_NAME_RE = _re.compile(r"^l\{([0-9,]*)\}$")


def _parse_set_name(name: str) -> frozenset[int] | None:
    m = _SET_NAME_RE.match(name)
    if not m:
        return None
    body = m.group(1)
    return frozenset(int(x) for x in body.split(",")) if body else frozenset()


def coloring_fixed_point(delta: int, rank: int, cap: int | None = None) -> Problem:
    """The coloring problem closed under one full elimination step.

    Labels are all subsets of the delta color slots, read as "the colors my
    node still keeps away from this hyperedge".  A hyperedge is happy when
    no color survives on all of its pins.
    """
    if delta < 2 or rank < 2:
        raise ProblemError("need delta >= 2 and rank >= 2")
    colors = list(range(1, delta + 1))
    subsets = [
        frozenset(cc) for k in range(delta + 1) for cc in combinations(colors, k)
    ]
    size = comb(len(subsets) + rank - 1, rank)
    if size > config_cap(cap):
        raise ResourceCapError("alphabet too large for the requested cap", size)
    empty = _set_name(())
    node = [
        [_set_name(C)] * (delta - len(C) + 1) + [empty] * (len(C) - 1)
        for C in subsets
        if C
    ]
    edge = []
    for combo in combinations_with_replacement(subsets, rank):
        if all(any(i not in Cj for Cj in combo) for i in colors):
            edge.append([_set_name(C) for C in combo])
    return Problem.make(node, edge, delta, rank)


def fixed_point_edge_allows(delta: int, sets: Sequence[Iterable[int]]) -> bool:
    """Independent membership test for the fixed point edge constraint:
    the intersection of all kept-color sets must be empty."""
    masks = []
    for S in sets:
        m = 0
        for i in S:
            if not (1 <= i <= delta):
                raise ProblemError(f"color {i} out of range 1..{delta}")
            m |= 1 << i
        masks.append(m)
    return reduce(and_, masks, (1 << (delta + 1)) - 2) == 0


# ---------------------------------------------------------------------------
# the budgeted obstruction family


def _check_pi_args(z: Sequence[int], s: int, delta: int, rank: int) -> tuple[int, ...]:
    z = tuple(int(x) for x in z)
    k = len(z)
    if delta < 3 or rank < 3:
        raise ProblemError("family needs delta >= 3 and rank >= 3")
    if not (2 <= k <= delta - 1):
        raise ProblemError(f"budget vector length {k} outside 2..{delta - 1}")
    if any(x < 0 or x > rank - 1 for x in z):
        raise ProblemError(f"budget entries must lie in 0..{rank - 1}: {z}")
    if not (1 <= s <= k):
        raise ProblemError(f"pointer color {s} outside 1..{k}")
    return z


def pi_family(
    z: Sequence[int], s: int, delta: int, rank: int, cap: int | None = None
) -> Problem:
    """The budgeted family: entry i of z caps how many pins of a hyperedge
    may carry color i, with D charged against entry s."""
    z = _check_pi_args(z, s, delta, rank)
    k = len(z)
    csets = [
        frozenset(cc)
        for j in range(1, k + 1)
        for cc in combinations(range(1, k + 1), j)
    ]
    names = ["D", "M", "P", "U", "X"] + [_set_name(C) for C in csets]
    size = comb(len(names) + rank - 1, rank)
    if size > config_cap(cap):
        raise ResourceCapError("alphabet too large for the requested cap", size)
    node = [["M"] * delta, ["P"] + ["U"] * (delta - 1), ["D"] * (delta - 1) + ["X"]]
    for C in csets:
        node.append([_set_name(C)] * (delta - len(C) + 1) + ["U"] * (len(C) - 1))
    member = {nm: _parse_set_name(nm) for nm in names}
    edge = []
    for combo in combinations_with_replacement(names, rank):
        counts: dict[str, int] = {}
        for nm in combo:
            counts[nm] = counts.get(nm, 0) + 1
        if _pi_edge_counts_ok(counts, z, s, member):
            edge.append(list(combo))
    return Problem.make(node, edge, delta, rank)


def _pi_edge_counts_ok(
    counts: Mapping[str, int],
    z: tuple[int, ...],
    s: int,
    member: Mapping[str, frozenset[int] | None],
) -> bool:
    cd = counts.get("D", 0)
    cm = counts.get("M", 0)
    if cm == 1 and cd == 0:
        return True
    if counts.get("X", 0) >= 1 and cd + cm <= 1:
        return True
    if counts.get("P", 0) or cd + cm > 1:
        return False
    for i in range(1, len(z) + 1):
        hit = sum(
            c for nm, c in counts.items() if member.get(nm) and i in member[nm]
        )
        if i == s:
            hit += cd
        if hit > z[i - 1]:
            return False
    return True


def pi_edge_allows(z: Sequence[int], s: int, labels: Sequence[str]) -> bool:
    """Independent, index-quantified membership test for the family's edge
    constraint, evaluated on an ordered label tuple."""
    z = tuple(z)
    seq = list(labels)
    r = len(seq)
    heavy = {"D", "M"}
    for j in range(r):
        if seq[j] == "M" and all(
            seq[t] not in heavy for t in range(r) if t != j
        ):
            return True
    for j in range(r):
        if seq[j] != "X":
            continue
        for jp in range(r):
            if jp != j and all(
                seq[t] not in heavy for t in range(r) if t not in (j, jp)
            ):
                return True
    if any(L == "P" for L in seq):
        return False
    if sum(1 for L in seq if L in heavy) > 1:
        return False
    for i in range(1, len(z) + 1):
        cnt = 0
        for L in seq:
            C = _parse_set_name(L)
            if C is not None and i in C:
                cnt += 1
            elif L == "D" and i == s:
                cnt += 1
        if cnt > z[i - 1]:
            return False
    return True


# ---------------------------------------------------------------------------
# colorful -> fixed point conversion


def color_groups(delta: int, rank: int) -> dict[int, int]:
    """Partition colors 1..delta*(rank-1) into delta blocks of rank-1."""
    out = {}
    for c in range(1, delta * (rank - 1) + 1):
        out[c] = (c - 1) // (rank - 1) + 1
    return out


def colorful_to_plain_map(
    delta: int, rank: int, h, coloring: Mapping[int, int]
) -> dict[tuple[int, int], str]:
    """Turn a delta*(rank-1)-colorful coloring into an incidence labeling
    of the fixed point problem by grouping colors into delta blocks."""
    groups = color_groups(delta, rank)
    out: dict[tuple[int, int], str] = {}
    for v in h.nodes:
        c = coloring.get(v)
        if c not in groups:
            raise ProblemError(f"node {v} has no color in 1..{delta * (rank - 1)}")
        name = _set_name({groups[c]})
        for e in h.incident_edges(v):
            out[(v, e)] = name
    return out


# ---------------------------------------------------------------------------
# self-check pipelines


def verify_fixed_point(
    delta: int, rank: int, cap: int | None = None, jobs: int = 1
) -> tuple[bool, dict[str, str] | None]:
    """Run one full step on the coloring fixed point and search for a
    renaming back onto it."""
    p = coloring_fixed_point(delta, rank, cap)
    stepped, _provenance = full_step(p, cap, jobs)
    mapping = find_renaming_equivalence(stepped, p)
    return mapping is not None, mapping


@dataclass
class OneStepReport:
    ok: bool
    checks: list[tuple[str, bool, str]] = field(default_factory=list)
    target: Problem | None = None
    renamed: Problem | None = None
    label_map: dict[str, list[str]] = field(default_factory=dict)

    def record(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append((name, passed, detail))
        if not passed:
            self.ok = False
        return passed


def verify_onestep(
    z: Sequence[int],
    s: int,
    q: int,
    delta: int,
    rank: int,
    cap: int | None = None,
    jobs: int = 1,
) -> OneStepReport:
    """Certify one budget bump: a full elimination step on the family at
    (z, s) relaxes onto the family at (z + e_q, q).

    The relaxation target is built from explicit closures of the stepped
    label order; its edge side is computed twice (choice search against the
    stepped edge constraint, and the closed-form counting conditions) and
    the two must agree before the renamed result is compared with the
    family member.
    """
    rep = OneStepReport(True)
    z = _check_pi_args(z, s, delta, rank)
    if q == s or not (1 <= q <= len(z)):
        raise ProblemError(f"bump color {q} must differ from {s} and lie in range")
    if z[q - 1] > rank - 2:
        raise ProblemError(f"budget entry {q} is already at its ceiling")
    if min(z) < 1:
        # with a zero entry the color never occurs in a hard-condition
        # configuration, extra strength relations appear, and the closure
        # family below stops being distinct; the certification needs
        # every budget entry to be at least 1
        raise ProblemError(f"step certification needs positive budgets: {z}")
    zp = tuple(x + 1 if i == q - 1 else x for i, x in enumerate(z))
    target = pi_family(zp, q, delta, rank, cap)
    rep.target = target

    p = pi_family(z, s, delta, rank, cap)
    base_id = {nm: i for i, nm in enumerate(p.labels)}
    order_e = strength_order(p.edge_constraint, len(p.labels))

    def up_of(*names: str) -> frozenset[int]:
        return successors([base_id[nm] for nm in names], order_e)

    s_name = _set_name({s})
    plain = [nm for nm in p.labels if nm not in ("D", "M")]
    bra = {nm: up_of(nm) for nm in plain}
    bra_p = {
        nm: up_of(nm, "D" if order_e.leq(base_id[nm], base_id[s_name]) else "M")
        for nm in plain
    }

    ip = re_step(p, cap, jobs)
    sig_index = {frozenset(t): i for i, t in enumerate(ip.sigma)}
    rep.record(
        "stepped alphabet is the plain/primed closure family",
        len(ip.sigma) == 2 * len(plain)
        and all(v in sig_index for v in bra.values())
        and all(v in sig_index for v in bra_p.values())
        and len({*bra.values(), *bra_p.values()}) == 2 * len(plain),
        f"{len(ip.sigma)} stepped labels",
    )
    if not rep.ok:
        return rep

    ip2 = rere_step(ip, cap, jobs)
    order_n = strength_order(ip.node_constraint, len(ip.sigma))

    def gen2(ids: Iterable[int]) -> frozenset[int]:
        return successors(ids, order_n)

    k = len(z)
    csets = [
        frozenset(cc)
        for j in range(1, k + 1)
        for cc in combinations(range(1, k + 1), j)
    ]
    star: dict[str, frozenset[int]] = {
        "M": gen2([sig_index[bra_p["X"]]]),
        "P": gen2([sig_index[bra["P"]]]),
        "U": gen2([sig_index[bra["U"]]]),
        "D": gen2([sig_index[bra_p["U"]]]),
        "X": gen2([sig_index[bra["X"]]]),
    }
    for C in csets:
        nm = _set_name(C)
        if q not in C:
            star[nm] = gen2([sig_index[bra[nm]]])
        else:
            Cm = C - {q}
            second = bra_p["U"] if not Cm else bra_p[_set_name(Cm)]
            star[nm] = gen2([sig_index[bra[nm]], sig_index[second]])
    rep.record(
        "relaxation alphabet has full size and distinct members",
        len(star) == len(p.labels) and len(set(star.values())) == len(star),
        f"{len(star)} members",
    )
    if not rep.ok:
        return rep

    star_names = sorted(star)
    star_id = {nm: i for i, nm in enumerate(star_names)}
    star_sets = tuple(tuple(sorted(star[nm])) for nm in star_names)

    node_words = [["M"] * delta, ["P"] + ["U"] * (delta - 1), ["D"] * (delta - 1) + ["X"]]
    for C in csets:
        node_words.append(
            [_set_name(C)] * (delta - len(C) + 1) + ["U"] * (len(C) - 1)
        )

    edge_a, _wit = apply_existential(ip.edge_constraint, star_sets, rank, cap)
    words_a = {
        tuple(sorted(star_names[x] for x in cfg.word)) for cfg in edge_a.configs
    }

    member = {nm: _parse_set_name(nm) for nm in star_names}
    words_b = set()
    for combo in combinations_with_replacement(star_names, rank):
        counts: dict[str, int] = {}
        for nm in combo:
            counts[nm] = counts.get(nm, 0) + 1
        if _pi_edge_counts_ok(counts, zp, q, member):
            words_b.add(tuple(sorted(combo)))
    agree = words_a == words_b
    rep.record(
        "choice search and counting conditions give the same edge side",
        agree,
        f"{len(words_a)} vs {len(words_b)} configurations",
    )

    interned, _prov = intern_step(ip2)
    embeds: dict[str, list[str]] = {}
    all_embed = True
    for i, member_set in enumerate(ip2.sigma):
        fits = sorted(nm for nm in star_names if set(member_set) <= star[nm])
        embeds[interned.labels[i]] = fits
        if not fits:
            all_embed = False
    rep.label_map = embeds
    rep.record(
        "every stepped label fits inside a relaxation label",
        all_embed,
        f"{len(ip2.sigma)} stepped labels",
    )

    def relaxes(cfgs: Iterable[Configuration], side_words: set[tuple[str, ...]]) -> bool:
        targets = [tuple(star_id[nm] for nm in w) for w in sorted(side_words)]
        for cfg in cfgs:
            eligible = [
                frozenset(
                    star_id[nm]
                    for nm in star_names
                    if set(ip2.sigma[x]) <= star[nm]
                )
                for x in cfg.word
            ]
            if not any(_match_map(eligible, t) for t in targets):
                return False
        return True

    words_n = {tuple(sorted(w)) for w in (tuple(w) for w in node_words)}
    rep.record(
        "stepped node side relaxes into the target node side",
        relaxes(ip2.node_constraint.configs, words_n),
    )
    rep.record(
        "stepped edge side relaxes into the target edge side",
        relaxes(ip2.edge_constraint.configs, words_a),
    )

    renamed = Problem.make(node_words, [list(w) for w in sorted(words_a)], delta, rank)
    rep.renamed = renamed
    rep.record(
        "renamed relaxation equals the bumped family member",
        renamed == target,
        "",
    )
    return rep


def onestep_directive(
    z: Sequence[int], s: int, q: int, delta: int, rank: int,
    cap: int | None = None, jobs: int = 1,
) -> dict:
    """Replayable relaxation script for one budget bump, keyed by the
    deterministic interned label names of the stepped problem."""
    rep = verify_onestep(z, s, q, delta, rank, cap, jobs)
    if not rep.ok:
        failed = [name for name, passed, _ in rep.checks if not passed]
        raise ProblemError(f"step does not certify: {failed}")
    return {
        "target": render_problem(rep.target),
        "map": {nm: fits for nm, fits in rep.label_map.items()},
    }
