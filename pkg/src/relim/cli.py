"""Command line interface.

Problems stream through stdin/stdout as plain renderings so subcommands
compose by piping.  Diagnostics and the resolved configuration of every
run go to stderr, keeping stdout clean for the next pipe stage.

Exit codes: 0 when the command's verdict or check passed, 1 when it
computed fine but the verdict is negative, 2 for usage or input errors,
3 when a resource cap was exceeded.
"""

from __future__ import annotations

import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import click

from . import (
    ProblemError,
    ResourceCapError,
    apply_directive,
    coloring_fixed_point,
    colorful_coloring,
    diagram,
    find_renaming_equivalence,
    full_step,
    is_relaxation,
    merge_labels,
    mis_graph_problem,
    parse_problem,
    pi_family,
    plain_hypergraph_coloring,
    re_step,
    rename_labels,
    render_problem,
    rere_step,
    run_chain,
    strength_order,
    verify_fixed_point,
    verify_onestep,
    zero_round_solvable,
)
from .sim import (
    Hypergraph,
    check_solution,
    delta2_mis,
    generate_hypergraph,
    indep_r_mis,
    slow_in_delta_mis,
    trivial_mis,
    um_coloring_iterated,
    um_greedy_mis,
)
from .sim.hypergraph import HypergraphError

EXIT_VERDICT_FALSE = 1
EXIT_USAGE = 2
EXIT_CAP = 3

ENV_CAP = "RELIM_MAX_CONFIGS"


def _default_cap(cap: int | None) -> int | None:
    if cap is not None:
        return cap
    raw = os.environ.get(ENV_CAP)
    return int(raw) if raw else None


def _announce(ctx: click.Context, **settings) -> None:
    """Print the resolved configuration of this run to stderr."""
    pairs = " ".join(f"{k}={v}" for k, v in settings.items() if v is not None)
    click.echo(f"[{ctx.command_path}] {pairs}", err=True)


def _read_problem(source: str, cap: int | None):
    if source == "-":
        text = sys.stdin.read()
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    return parse_problem(text, cap=cap)


def _problem_json(p) -> dict:
    return {
        "labels": list(p.labels),
        "delta": p.delta,
        "rank": p.rank,
        "node": sorted(
            [
                [p.labels[i] for i in cfg.word]
                for cfg in p.node_constraint.configs
            ]
        ),
        "edge": sorted(
            [
                [p.labels[i] for i in cfg.word]
                for cfg in p.edge_constraint.configs
            ]
        ),
    }


def _emit_problem(p, as_json: bool, condensed: bool = False) -> None:
    if as_json:
        click.echo(json.dumps(_problem_json(p), indent=2, sort_keys=True))
    else:
        click.echo(render_problem(p, condensed=condensed), nl=False)


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _guarded(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except ResourceCapError as exc:
        _fail(str(exc), EXIT_CAP)
    except (ProblemError, HypergraphError, OSError, json.JSONDecodeError) as exc:
        _fail(str(exc), EXIT_USAGE)


@click.group()
def main() -> None:
    """Round elimination workbench and hypergraph simulator."""


# ---------------------------------------------------------------- problem


@main.group()
def problem() -> None:
    """Parse and pretty-print labeling problems."""


@problem.command("parse")
@click.argument("source", default="-")
@click.option("--cap", type=int, default=None, help="configuration cap")
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def problem_parse(ctx, source, cap, as_json):
    """Validate a problem and echo its canonical rendering."""
    cap = _default_cap(cap)
    _announce(ctx, source=source, cap=cap)
    p = _guarded(_read_problem, source, cap)
    _emit_problem(p, as_json)


@problem.command("render")
@click.argument("source", default="-")
@click.option("--cap", type=int, default=None)
@click.option("--plain", is_flag=True, help="one configuration per line")
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def problem_render(ctx, source, cap, plain, as_json):
    """Pretty-print a problem in condensed power notation."""
    cap = _default_cap(cap)
    _announce(ctx, source=source, cap=cap)
    p = _guarded(_read_problem, source, cap)
    _emit_problem(p, as_json, condensed=not plain)


# --------------------------------------------------------------------- re


@main.group()
def re() -> None:
    """Round elimination steps."""


def _set_word(ip, cfg) -> str:
    return " ".join(
        "[" + " ".join(ip.base.labels[i] for i in ip.sigma[s]) + "]"
        for s in cfg.word
    )


@re.command("step")
@click.argument("source", default="-")
@click.option("--cap", type=int, default=None)
@click.option("--jobs", type=int, default=1)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def re_step_cmd(ctx, source, cap, jobs, as_json):
    """One universal half-step; prints the set-labeled intermediate."""
    cap = _default_cap(cap)
    _announce(ctx, source=source, cap=cap, jobs=jobs)
    p = _guarded(_read_problem, source, cap)
    ip = _guarded(re_step, p, cap=cap, jobs=jobs)
    if as_json:
        payload = {
            "applied": ip.applied,
            "sigma": [[p.labels[i] for i in s] for s in ip.sigma],
            "node": sorted(_set_word(ip, c) for c in ip.node_constraint.configs),
            "edge": sorted(_set_word(ip, c) for c in ip.edge_constraint.configs),
        }
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
        return
    click.echo(f"# {ip.applied}", err=True)
    for cfg in sorted(ip.edge_constraint.configs, key=lambda c: c.word):
        click.echo(_set_word(ip, cfg))
    click.echo("---")
    for cfg in sorted(ip.node_constraint.configs, key=lambda c: c.word):
        click.echo(_set_word(ip, cfg))


@re.command("fullstep")
@click.argument("source", default="-")
@click.option("--cap", type=int, default=None)
@click.option("--jobs", type=int, default=1)
@click.option("--provenance", is_flag=True, help="print label origins to stderr")
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def re_fullstep(ctx, source, cap, jobs, provenance, as_json):
    """Full round elimination step with interned label names."""
    cap = _default_cap(cap)
    _announce(ctx, source=source, cap=cap, jobs=jobs)
    p = _guarded(_read_problem, source, cap)
    stepped, prov = _guarded(full_step, p, cap=cap, jobs=jobs)
    if provenance:
        for name in stepped.labels:
            sets = ", ".join("{" + " ".join(s) + "}" for s in prov[name])
            click.echo(f"# {name} = {sets}", err=True)
    if as_json:
        payload = _problem_json(stepped)
        payload["provenance"] = {
            name: [list(s) for s in sets] for name, sets in prov.items()
        }
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        _emit_problem(stepped, False)


@re.command("diagram")
@click.argument("source", default="-")
@click.option("--side", type=click.Choice(["node", "edge"]), default="edge")
@click.option("--cap", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def re_diagram(ctx, source, side, cap, as_json):
    """Strength diagram of one side, printed as cover arrows."""
    cap = _default_cap(cap)
    _announce(ctx, source=source, side=side, cap=cap)
    p = _guarded(_read_problem, source, cap)
    constraint = p.node_constraint if side == "node" else p.edge_constraint
    order = _guarded(strength_order, constraint, len(p.labels))
    d = diagram(order)
    classes = [[p.labels[i] for i in cls] for cls in d.classes]
    arrows = [
        (" ".join(classes[a]), " ".join(classes[b])) for a, b in d.edges
    ]
    if as_json:
        click.echo(
            json.dumps(
                {"side": side, "classes": classes, "edges": arrows},
                indent=2,
                sort_keys=True,
            )
        )
        return
    for cls in classes:
        click.echo("class: " + " ".join(cls))
    for a, b in arrows:
        click.echo(f"{a} -> {b}")


# ---------------------------------------------------------------- analyze


@main.group()
def analyze() -> None:
    """Zero-round tests, relaxations, equivalences, chains."""


@analyze.command("zeroround")
@click.argument("source", default="-")
@click.option("--cap", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def analyze_zeroround(ctx, source, cap, as_json):
    """Exit 0 iff the problem is solvable with no communication."""
    cap = _default_cap(cap)
    _announce(ctx, source=source, cap=cap)
    p = _guarded(_read_problem, source, cap)
    solvable, witness = _guarded(zero_round_solvable, p)
    shown = (
        " ".join(p.labels[i] for i in witness.word) if witness is not None else None
    )
    if as_json:
        click.echo(json.dumps({"solvable": solvable, "witness": shown}))
    else:
        click.echo(f"zero-round solvable: {solvable}")
        if shown:
            click.echo(f"witness: {shown}")
    sys.exit(0 if solvable else EXIT_VERDICT_FALSE)


@analyze.command("relaxation")
@click.argument("first")
@click.argument("second")
@click.option("--map", "map_text", required=True, help="JSON label map or @file")
@click.option("--cap", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def analyze_relaxation(ctx, first, second, map_text, cap, as_json):
    """Exit 0 iff FIRST relaxes to SECOND under the given label map."""
    cap = _default_cap(cap)
    _announce(ctx, first=first, second=second, cap=cap)
    if map_text.startswith("@"):
        map_text = _guarded(lambda: open(map_text[1:], encoding="utf-8").read())
    mapping = _guarded(json.loads, map_text)
    p1 = _guarded(_read_problem, first, cap)
    p2 = _guarded(_read_problem, second, cap)
    witness = _guarded(is_relaxation, p1, p2, mapping)
    if as_json:
        click.echo(
            json.dumps(
                {"ok": witness.ok, "failure": witness.failure}, sort_keys=True
            )
        )
    else:
        click.echo(f"relaxation: {witness.ok}")
        if not witness.ok:
            click.echo(f"failure: {witness.failure}")
    sys.exit(0 if witness.ok else EXIT_VERDICT_FALSE)


@analyze.command("equiv")
@click.argument("first")
@click.argument("second")
@click.option("--cap", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def analyze_equiv(ctx, first, second, cap, as_json):
    """Exit 0 iff the problems agree up to a label renaming."""
    cap = _default_cap(cap)
    _announce(ctx, first=first, second=second, cap=cap)
    p1 = _guarded(_read_problem, first, cap)
    p2 = _guarded(_read_problem, second, cap)
    mapping = _guarded(find_renaming_equivalence, p1, p2)
    if as_json:
        click.echo(json.dumps({"equivalent": mapping is not None, "map": mapping}))
    elif mapping is None:
        click.echo("not equivalent")
    else:
        for k in sorted(mapping):
            click.echo(f"{k} -> {mapping[k]}")
    sys.exit(0 if mapping is not None else EXIT_VERDICT_FALSE)


@analyze.command("chain")
@click.argument("source", default="-")
@click.option("--directives", "directives_path", required=True, type=click.Path(exists=True))
@click.option("--max-steps", type=int, default=None)
@click.option("--cap", type=int, default=None)
@click.option("--jobs", type=int, default=1)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def analyze_chain(ctx, source, directives_path, max_steps, cap, jobs, as_json):
    """Step-and-relax chain driven by a JSON directive list."""
    cap = _default_cap(cap)
    _announce(ctx, source=source, directives=directives_path, cap=cap, jobs=jobs)
    p = _guarded(_read_problem, source, cap)
    with open(directives_path, encoding="utf-8") as fh:
        directives = _guarded(json.load, fh)
    report = _guarded(run_chain, p, directives, max_steps=max_steps, cap=cap, jobs=jobs)
    ok = all(s.relaxation_ok in (True, None) for s in report.steps)
    if as_json:
        payload = {
            "stopped": report.stopped,
            "steps": [
                {
                    "problem": render_problem(s.problem),
                    "relaxation_ok": s.relaxation_ok,
                    "zero_round": s.zero_round,
                    "note": s.note,
                }
                for s in report.steps
            ],
        }
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for i, s in enumerate(report.steps):
            click.echo(
                f"step {i}: labels={len(s.problem.labels)}"
                f" relaxation_ok={s.relaxation_ok} zero_round={s.zero_round}"
                + (f" note={s.note}" if s.note else "")
            )
        click.echo(f"stopped: {report.stopped}")
    sys.exit(0 if ok else EXIT_VERDICT_FALSE)


# ----------------------------------------------------------------- family


@main.group()
def family() -> None:
    """Built-in problem generators."""


@family.command("mis")
@click.option("--delta", type=int, required=True)
@click.option("--condensed", is_flag=True)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def family_mis(ctx, delta, condensed, as_json):
    """Maximal independent set, stated on regular graphs."""
    _announce(ctx, delta=delta)
    p = _guarded(mis_graph_problem, delta)
    _emit_problem(p, as_json, condensed=condensed)


@family.command("coloring")
@click.option("--colors", type=int, required=True)
@click.option("--delta", type=int, required=True)
@click.option("--rank", type=int, required=True)
@click.option("--cap", type=int, default=None)
@click.option("--condensed", is_flag=True)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def family_coloring(ctx, colors, delta, rank, cap, condensed, as_json):
    """Plain hypergraph coloring with the given palette."""
    cap = _default_cap(cap)
    _announce(ctx, colors=colors, delta=delta, rank=rank, cap=cap)
    p = _guarded(plain_hypergraph_coloring, colors, delta, rank)
    _emit_problem(p, as_json, condensed=condensed)


@family.command("colorful")
@click.option("--colors", type=int, required=True)
@click.option("--delta", type=int, required=True)
@click.option("--rank", type=int, required=True)
@click.option("--cap", type=int, default=None)
@click.option("--condensed", is_flag=True)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def family_colorful(ctx, colors, delta, rank, cap, condensed, as_json):
    """Colorful coloring: every hyperedge sees pairwise distinct colors."""
    cap = _default_cap(cap)
    _announce(ctx, colors=colors, delta=delta, rank=rank, cap=cap)
    p = _guarded(colorful_coloring, colors, delta, rank)
    _emit_problem(p, as_json, condensed=condensed)


@family.command("fixedpoint")
@click.option("--delta", type=int, required=True)
@click.option("--rank", type=int, required=True)
@click.option("--cap", type=int, default=None)
@click.option("--condensed", is_flag=True)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def family_fixedpoint(ctx, delta, rank, cap, condensed, as_json):
    """The set-closed coloring problem that full steps map to itself."""
    cap = _default_cap(cap)
    _announce(ctx, delta=delta, rank=rank, cap=cap)
    p = _guarded(coloring_fixed_point, delta, rank, cap=cap)
    _emit_problem(p, as_json, condensed=condensed)


@family.command("pi")
@click.option("--z", "z_text", required=True, help="comma separated budgets, e.g. 1,1")
@click.option("--s", "s_param", type=int, required=True)
@click.option("--delta", type=int, required=True)
@click.option("--rank", type=int, required=True)
@click.option("--cap", type=int, default=None)
@click.option("--condensed", is_flag=True)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def family_pi(ctx, z_text, s_param, delta, rank, cap, condensed, as_json):
    """Budgeted intermediate problem of the lower-bound chain."""
    cap = _default_cap(cap)
    _announce(ctx, z=z_text, s=s_param, delta=delta, rank=rank, cap=cap)
    try:
        z = tuple(int(part) for part in z_text.split(","))
    except ValueError:
        _fail(f"cannot parse budgets from {z_text!r}", EXIT_USAGE)
    p = _guarded(pi_family, z, s_param, delta, rank, cap=cap)
    _emit_problem(p, as_json, condensed=condensed)


# ----------------------------------------------------------------- verify


@main.group()
def verify() -> None:
    """Certified checks of the fixed point and the chain step."""


@verify.command("fixedpoint")
@click.option("--delta", type=int, required=True)
@click.option("--rank", type=int, required=True)
@click.option("--cap", type=int, default=None)
@click.option("--jobs", type=int, default=1)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def verify_fixedpoint_cmd(ctx, delta, rank, cap, jobs, as_json):
    """Exit 0 iff one full step maps the fixed point onto itself."""
    cap = _default_cap(cap)
    _announce(ctx, delta=delta, rank=rank, cap=cap, jobs=jobs)
    ok, mapping = _guarded(verify_fixed_point, delta, rank, cap=cap, jobs=jobs)
    if as_json:
        click.echo(json.dumps({"ok": ok, "map": mapping}, sort_keys=True))
    else:
        click.echo(f"fixed point verified: {ok}")
        if mapping:
            for k in sorted(mapping):
                click.echo(f"{k} -> {mapping[k]}")
    sys.exit(0 if ok else EXIT_VERDICT_FALSE)


@verify.command("onestep")
@click.option("--z", "z_text", required=True)
@click.option("--s", "s_param", type=int, required=True)
@click.option("--q", "q_param", type=int, required=True)
@click.option("--delta", type=int, required=True)
@click.option("--rank", type=int, required=True)
@click.option("--cap", type=int, default=None)
@click.option("--jobs", type=int, default=1)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def verify_onestep_cmd(ctx, z_text, s_param, q_param, delta, rank, cap, jobs, as_json):
    """Exit 0 iff one full step plus renaming lands on the bumped family member."""
    cap = _default_cap(cap)
    _announce(ctx, z=z_text, s=s_param, q=q_param, delta=delta, rank=rank, cap=cap, jobs=jobs)
    try:
        z = tuple(int(part) for part in z_text.split(","))
    except ValueError:
        _fail(f"cannot parse budgets from {z_text!r}", EXIT_USAGE)
    report = _guarded(verify_onestep, z, s_param, q_param, delta, rank, cap=cap, jobs=jobs)
    if as_json:
        click.echo(
            json.dumps(
                {
                    "ok": report.ok,
                    "checks": [
                        {"name": n, "passed": okc, "note": note}
                        for n, okc, note in report.checks
                    ],
                },
                indent=2,
                sort_keys=True,
            )
        )
    else:
        for name, okc, note in report.checks:
            suffix = f" ({note})" if note else ""
            click.echo(f"{'PASS' if okc else 'FAIL'} {name}{suffix}")
        click.echo(f"one-step verified: {report.ok}")
    sys.exit(0 if report.ok else EXIT_VERDICT_FALSE)


# -------------------------------------------------------------------- sim


@main.group()
def sim() -> None:
    """Hypergraph generation and synchronous simulations."""


_ALGORITHMS = {
    "trivial": trivial_mis,
    "slowdelta": slow_in_delta_mis,
    "delta2": delta2_mis,
    "indep-r": indep_r_mis,
}


@sim.command("gen")
@click.option("--kind", type=click.Choice(["random", "linear-hypertree", "hypertree", "single-edge"]), default="random")
@click.option("--n", type=int, default=50)
@click.option("--delta", type=int, default=2)
@click.option("--rank", type=int, default=2)
@click.option("--seed", type=int, default=0)
@click.option("--out", type=click.Path(), default=None, help="write here instead of stdout")
@click.pass_context
def sim_gen(ctx, kind, n, delta, rank, seed, out):
    """Emit a generated hypergraph as JSON."""
    _announce(ctx, kind=kind, n=n, delta=delta, rank=rank, seed=seed)
    h = _guarded(generate_hypergraph, kind, n=n, delta=delta, rank=rank, seed=seed)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(h.to_json())
        click.echo(f"wrote {out}", err=True)
    else:
        click.echo(h.to_json())


@sim.command("run")
@click.option("--alg", type=click.Choice([*_ALGORITHMS, "um-greedy", "um-build"]), required=True)
@click.option("--infile", "--in", "infile", type=click.Path(exists=True), default=None, help="hypergraph JSON file")
@click.option("--gen", "gen_kind", type=click.Choice(["random", "linear-hypertree", "hypertree", "single-edge"]), default=None)
@click.option("--n", type=int, default=50)
@click.option("--delta", type=int, default=2)
@click.option("--rank", type=int, default=2)
@click.option("--seed", type=int, default=0)
@click.option("--count", type=int, default=1, help="run this many consecutive seeds")
@click.option("--jobs", type=int, default=1)
@click.option("--check/--no-check", default=False)
@click.option("--trace", "trace_path", type=click.Path(), default="sim-trace.json")
@click.option("--coloring", "coloring_path", type=click.Path(exists=True), default=None, help="unique-maximum coloring JSON for um-greedy")
@click.pass_context
def sim_run(ctx, alg, infile, gen_kind, n, delta, rank, seed, count, jobs, check, trace_path, coloring_path):
    """Run one algorithm; exit 0 iff every requested check passed."""
    _announce(
        ctx, alg=alg, infile=infile, gen=gen_kind, n=n, delta=delta, rank=rank,
        seed=seed, count=count, jobs=jobs, check=check, trace=trace_path,
    )
    if infile is None and gen_kind is None:
        _fail("need --infile or --gen", EXIT_USAGE)

    def load(run_seed: int) -> Hypergraph:
        if infile is not None:
            return generate_hypergraph("from-file", path=infile)
        return generate_hypergraph(gen_kind, n=n, delta=delta, rank=rank, seed=run_seed)

    def one(run_seed: int) -> dict:
        h = load(run_seed)
        if alg == "um-build":
            coloring, trace = um_coloring_iterated(h)
            ok = check_solution(h, "unique-maximum", coloring).ok if check else None
            return {
                "seed": run_seed, "algorithm": alg, "check": ok,
                "coloring": {str(v): c for v, c in sorted(coloring.items())},
                "classes": trace.details.get("classes"),
                "trace": {"rounds": trace.rounds, "phases": trace.phases,
                          "messages": trace.messages, "details": trace.details},
            }
        if alg == "um-greedy":
            if coloring_path:
                with open(coloring_path, encoding="utf-8") as fh:
                    raw = json.load(fh)
                coloring = {int(v): int(c) for v, c in raw["coloring"].items()}
            else:
                coloring, _ = um_coloring_iterated(h)
            selected, trace = um_greedy_mis(h, coloring)
        else:
            selected, trace = _ALGORITHMS[alg](h)
        ok = check_solution(h, "mis", selected).ok if check else None
        return {
            "seed": run_seed, "algorithm": alg, "check": ok,
            "selected": sorted(selected),
            "trace": {"rounds": trace.rounds, "phases": trace.phases,
                      "messages": trace.messages, "details": trace.details},
        }

    seeds = [seed + i for i in range(count)]
    try:
        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(one, seeds))
        else:
            results = [one(s) for s in seeds]
    except ResourceCapError as exc:
        _fail(str(exc), EXIT_CAP)
    except (ProblemError, HypergraphError, OSError, json.JSONDecodeError) as exc:
        _fail(str(exc), EXIT_USAGE)

    payload = results[0] if count == 1 else {"runs": results}
    with open(trace_path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
    for r in results:
        line = f"seed {r['seed']}: "
        if "selected" in r:
            line += f"{len(r['selected'])} selected"
        else:
            line += f"{r['classes']} classes"
        if check:
            line += f", check {'ok' if r['check'] else 'FAILED'}"
        click.echo(line)
    click.echo(f"trace written to {trace_path}", err=True)
    if check and not all(r["check"] for r in results):
        sys.exit(EXIT_VERDICT_FALSE)


# ------------------------------------------------------------------ serve


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8008, show_default=True)
@click.pass_context
def serve(ctx, host, port):
    """Start the local HTTP service for the explorer."""
    _announce(ctx, host=host, port=port)
    import uvicorn

    from .server import create_app

    uvicorn.run(create_app(), host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
