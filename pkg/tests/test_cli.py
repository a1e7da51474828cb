"""Command line tests.

Each subcommand is driven through click's runner; two tests run the real
executable so the stdin/stdout piping contract is exercised end to end.
The stepped-matching golden below is the same frozen value the engine
suite checks, so the command line output is pinned to the library's.
"""

import json
import subprocess

from click.testing import CliRunner

from relim import mis_graph_problem, render_problem
from relim.cli import main
from relim.families import onestep_directive, pi_family

MIS_TEXT = "M M M\nO O P\n---\nM O\nM P\nO O\n"

STEPPED_MIS = (
    "L0 L0 L0\n"
    "L1 L2 L2\n"
    "L3 L3 L5\n"
    "L4 L4 L4\n"
    "---\n"
    "L0 L1\n"
    "L0 L3\n"
    "L0 L4\n"
    "L0 L5\n"
    "L1 L1\n"
    "L1 L3\n"
    "L1 L4\n"
    "L1 L5\n"
    "L2 L3\n"
    "L3 L3\n"
    "L3 L4\n"
)

# the universal half-step on the matching problem, set groups spelled out
RE_STEP_MIS = (
    "[M] [O P]\n"
    "[M O] [O]\n"
    "---\n"
    "[M] [M] [M]\n"
    "[M] [M] [M O]\n"
    "[M] [M O] [M O]\n"
    "[M O] [M O] [M O]\n"
    "[M O] [M O] [O P]\n"
    "[M O] [O] [O P]\n"
    "[M O] [O P] [O P]\n"
    "[O] [O] [O P]\n"
    "[O] [O P] [O P]\n"
    "[O P] [O P] [O P]\n"
)

runner = CliRunner()


def invoke(*args, input=None, env=None):
    return runner.invoke(main, list(args), input=input, env=env)


# ------------------------------------------------------------ family, parse


def test_family_mis_prints_canonical_text():
    res = invoke("family", "mis", "--delta", "3")
    assert res.exit_code == 0
    assert res.stdout == MIS_TEXT == render_problem(mis_graph_problem(3))


def test_family_mis_condensed():
    res = invoke("family", "mis", "--delta", "3", "--condensed")
    assert res.exit_code == 0
    assert res.stdout == "M^3\nO^2 P\n---\n[M O] O\nM [O P]\n"


def test_parse_normalizes_word_and_line_order():
    scrambled = "P O O\nM M M\n---\nO M\nO O\nP M\n"
    res = invoke("problem", "parse", "-", input=scrambled)
    assert res.exit_code == 0
    assert res.stdout == MIS_TEXT


def test_parse_json_shape():
    res = invoke("problem", "parse", "-", "--json", input=MIS_TEXT)
    data = json.loads(res.stdout)
    assert data["labels"] == ["M", "O", "P"]
    assert data["delta"] == 3 and data["rank"] == 2
    assert ["M", "M", "M"] in data["node"]
    assert data["edge"] == [["M", "O"], ["M", "P"], ["O", "O"]]


def test_render_condensed_parses_back_to_same_problem():
    condensed = invoke("problem", "render", "-", input=MIS_TEXT).stdout
    assert "^" in condensed
    res = invoke("problem", "parse", "-", input=condensed)
    assert res.stdout == MIS_TEXT


def test_resolved_settings_go_to_stderr():
    res = invoke("family", "mis", "--delta", "3")
    assert "family mis" in res.stderr and "delta=3" in res.stderr
    assert "delta=3" not in res.stdout


# -------------------------------------------------------------------- steps


def test_fullstep_from_stdin_matches_frozen_value():
    res = invoke("re", "fullstep", "-", input=MIS_TEXT)
    assert res.exit_code == 0
    assert res.stdout == STEPPED_MIS


def test_pipe_between_processes_reproduces_the_golden():
    proc = subprocess.run(
        "relim family mis --delta 3 | relim re fullstep -",
        shell=True,
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout == STEPPED_MIS


def test_verdict_exit_code_survives_the_executable_boundary():
    proc = subprocess.run(
        ["relim", "analyze", "zeroround", "-"],
        input=MIS_TEXT,
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1


def test_fullstep_provenance_listing_on_stderr():
    res = invoke("re", "fullstep", "-", "--provenance", input=MIS_TEXT)
    assert res.stdout == STEPPED_MIS
    assert "# L0 = {M}, {M O}" in res.stderr
    assert "# L5 = {O P}" in res.stderr


def test_fullstep_json_carries_provenance():
    res = invoke("re", "fullstep", "-", "--json", input=MIS_TEXT)
    data = json.loads(res.stdout)
    assert data["labels"] == ["L0", "L1", "L2", "L3", "L4", "L5"]
    assert data["provenance"]["L5"] == [["O", "P"]]
    assert data["provenance"]["L3"] == [["M", "O"], ["O"], ["O", "P"]]


def test_half_step_prints_frozen_set_rendering():
    res = invoke("re", "step", "-", input=MIS_TEXT)
    assert res.exit_code == 0
    assert res.stdout == RE_STEP_MIS
    assert "# edge-universal" in res.stderr


def test_half_step_json():
    res = invoke("re", "step", "-", "--json", input=MIS_TEXT)
    data = json.loads(res.stdout)
    assert data["applied"] == "edge-universal"
    assert ["M", "O"] in data["sigma"]
    assert "[M] [O P]" in data["edge"]


def test_diagram_edge_side_has_one_cover_arrow():
    res = invoke("re", "diagram", "-", "--side", "edge", input=MIS_TEXT)
    assert res.stdout == "class: M\nclass: O\nclass: P\nP -> O\n"


def test_diagram_node_side_is_an_antichain():
    res = invoke("re", "diagram", "-", "--side", "node", input=MIS_TEXT)
    assert res.stdout == "class: M\nclass: O\nclass: P\n"


def test_diagram_json():
    res = invoke("re", "diagram", "-", "--side", "edge", "--json", input=MIS_TEXT)
    data = json.loads(res.stdout)
    assert data["side"] == "edge"
    assert data["classes"] == [["M"], ["O"], ["P"]]
    assert data["edges"] == [["P", "O"]]


# ------------------------------------------------------------------ analyze


def test_zeroround_verdicts_and_exit_codes():
    res = invoke("analyze", "zeroround", "-", input=MIS_TEXT)
    assert res.exit_code == 1
    assert "zero-round solvable: False" in res.stdout
    res = invoke("analyze", "zeroround", "-", input="A A A\n---\nA A\n")
    assert res.exit_code == 0
    assert "witness: A A A" in res.stdout


def test_zeroround_json():
    res = invoke("analyze", "zeroround", "-", "--json", input="A A A\n---\nA A\n")
    assert json.loads(res.stdout) == {"solvable": True, "witness": "A A A"}


def test_equiv_of_a_problem_with_itself(tmp_path):
    f = tmp_path / "mis.txt"
    f.write_text(MIS_TEXT)
    res = invoke("analyze", "equiv", str(f), str(f))
    assert res.exit_code == 0
    assert res.stdout == "M -> M\nO -> O\nP -> P\n"


def test_equiv_negative_exit(tmp_path):
    f = tmp_path / "mis.txt"
    f.write_text(MIS_TEXT)
    g = tmp_path / "other.txt"
    g.write_text("A A A\n---\nA A\n")
    res = invoke("analyze", "equiv", str(f), str(g))
    assert res.exit_code == 1
    assert "not equivalent" in res.stdout


def test_relaxation_under_identity_map(tmp_path):
    f = tmp_path / "mis.txt"
    f.write_text(MIS_TEXT)
    mapping = '{"M": ["M"], "O": ["O"], "P": ["P"]}'
    res = invoke("analyze", "relaxation", str(f), str(f), "--map", mapping)
    assert res.exit_code == 0
    assert "relaxation: True" in res.stdout


def test_chain_runs_a_verified_step(tmp_path):
    start = render_problem(pi_family((1, 1), 2, 3, 3))
    directives = tmp_path / "directives.json"
    directives.write_text(json.dumps([onestep_directive((1, 1), 2, 1, 3, 3)]))
    res = invoke(
        "analyze", "chain", "-", "--directives", str(directives), input=start
    )
    assert res.exit_code == 0
    assert "relaxation_ok=True" in res.stdout
    assert "stopped: exhausted directives" in res.stdout


# ------------------------------------------------------------------- verify


def test_verify_fixedpoint_command():
    res = invoke("verify", "fixedpoint", "--delta", "2", "--rank", "2")
    assert res.exit_code == 0
    lines = res.stdout.splitlines()
    assert lines[0] == "fixed point verified: True"
    assert len(lines) == 5 and all("->" in line for line in lines[1:])


def test_verify_onestep_command():
    res = invoke(
        "verify", "onestep", "--z", "1,1", "--s", "1", "--q", "2",
        "--delta", "3", "--rank", "3",
    )
    assert res.exit_code == 0
    lines = res.stdout.splitlines()
    assert lines[-1] == "one-step verified: True"
    assert all(line.startswith("PASS") for line in lines[:-1])


# -------------------------------------------------------------- exit codes


def test_missing_input_file_is_a_usage_error():
    res = invoke("problem", "parse", "/no/such/file.txt")
    assert res.exit_code == 2
    assert res.stderr.rstrip().splitlines()[-1].startswith("error:")


def test_malformed_problem_is_a_usage_error():
    res = invoke("problem", "parse", "-", input="this is not a problem")
    assert res.exit_code == 2


def test_bad_budget_string_is_a_usage_error():
    res = invoke(
        "family", "pi", "--z", "one,two", "--s", "1", "--delta", "3", "--rank", "3"
    )
    assert res.exit_code == 2
    assert "cannot parse budgets" in res.stderr


def test_unknown_subcommand_is_a_usage_error():
    res = invoke("frobnicate")
    assert res.exit_code == 2


def test_cap_from_environment_exits_three():
    res = invoke(
        "family", "fixedpoint", "--delta", "3", "--rank", "3",
        env={"RELIM_MAX_CONFIGS": "3"},
    )
    assert res.exit_code == 3
    assert "alphabet too large" in res.stderr


def test_cap_flag_on_fullstep_exits_three():
    res = invoke("re", "fullstep", "-", "--cap", "2", input=MIS_TEXT)
    assert res.exit_code == 3


# ----------------------------------------------------------------- sim


class TestSimCommands:
    def test_gen_is_deterministic_and_valid_json(self):
        args = (
            "sim", "gen", "--kind", "random", "--n", "30",
            "--delta", "3", "--rank", "3", "--seed", "7",
        )
        first, second = invoke(*args), invoke(*args)
        assert first.exit_code == 0
        assert first.stdout == second.stdout
        data = json.loads(first.stdout)
        assert set(data) == {"nodes", "hyperedges"}

    def test_gen_out_file_round_trips_through_run(self, tmp_path):
        hfile = tmp_path / "h.json"
        res = invoke(
            "sim", "gen", "--kind", "hypertree", "--n", "40", "--delta", "3",
            "--rank", "3", "--seed", "4", "--out", str(hfile),
        )
        assert res.exit_code == 0 and hfile.exists()
        trace = tmp_path / "trace.json"
        res = invoke(
            "sim", "run", "--alg", "slowdelta", "--infile", str(hfile),
            "--check", "--trace", str(trace),
        )
        assert res.exit_code == 0
        assert "check ok" in res.stdout

    def test_run_writes_a_trace_file(self, tmp_path):
        trace = tmp_path / "trace.json"
        res = invoke(
            "sim", "run", "--alg", "trivial", "--gen", "random", "--n", "40",
            "--delta", "3", "--rank", "3", "--seed", "1",
            "--check", "--trace", str(trace),
        )
        assert res.exit_code == 0
        data = json.loads(trace.read_text())
        assert set(data) == {"algorithm", "check", "seed", "selected", "trace"}
        assert data["check"] is True
        assert data["trace"]["rounds"] > 0


    def test_run_count_batches_runs(self, tmp_path):
        trace = tmp_path / "trace.json"
        res = invoke(
            "sim", "run", "--alg", "trivial", "--gen", "random", "--n", "25",
            "--delta", "2", "--rank", "4", "--seed", "5", "--count", "3",
            "--check", "--trace", str(trace),
        )
        assert res.exit_code == 0
        runs = json.loads(trace.read_text())["runs"]
        assert [r["seed"] for r in runs] == [5, 6, 7]
        assert res.stdout.count("check ok") == 3

    def test_run_without_a_source_is_a_usage_error(self):
        res = invoke("sim", "run", "--alg", "trivial")
        assert res.exit_code == 2
        assert "need --infile or --gen" in res.stderr

    def test_degree_precondition_failure_is_a_usage_error(self, tmp_path):
        hfile = tmp_path / "deg3.json"
        hfile.write_text(json.dumps({
            "nodes": [1, 2, 3, 4],
            "hyperedges": [
                {"id": 1, "pins": [1, 2]},
                {"id": 2, "pins": [1, 3]},
                {"id": 3, "pins": [1, 4]},
            ],
        }))
        res = invoke("sim", "run", "--alg", "delta2", "--infile", str(hfile))
        assert res.exit_code == 2

    def test_um_build_feeds_um_greedy(self, tmp_path):
        built = tmp_path / "built.json"
        res = invoke(
            "sim", "run", "--alg", "um-build", "--gen", "random", "--n", "40",
            "--delta", "3", "--rank", "3", "--seed", "2",
            "--check", "--trace", str(built),
        )
        assert res.exit_code == 0
        assert json.loads(built.read_text())["classes"] <= 4
        trace = tmp_path / "greedy.json"
        res = invoke(
            "sim", "run", "--alg", "um-greedy", "--gen", "random", "--n", "40",
            "--delta", "3", "--rank", "3", "--seed", "2",
            "--coloring", str(built), "--check", "--trace", str(trace),
        )
        assert res.exit_code == 0
        assert "check ok" in res.stdout
