"""HTTP service tests.

The app is exercised in process through the ASGI test client.  Problems
are addressed by content handle, so equal problems must collapse onto the
same handle no matter which route produced them, and every route's output
is pinned to the library.  One golden test checks the step route against
the command line byte for byte, since the two interfaces must never
disagree on a rendering.
"""

import json

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from relim import (
    coloring_fixed_point,
    full_step,
    mis_graph_problem,
    parse_problem,
    render_problem,
)
from relim.cli import main as cli_main
from relim.server import create_app, problem_handle

MIS_TEXT = "M M M\nO O P\n---\nM O\nM P\nO O\n"


@pytest.fixture()
def client():
    with TestClient(create_app()) as c:
        yield c


def post_mis(client) -> str:
    res = client.post("/problems", json={"text": MIS_TEXT})
    assert res.status_code == 200
    return res.json()["handle"]


def test_post_problem_returns_content_handle(client):
    res = client.post("/problems", json={"text": MIS_TEXT})
    body = res.json()
    assert body["handle"] == problem_handle(mis_graph_problem(3))
    assert body["labels"] == ["M", "O", "P"]
    assert body["delta"] == 3 and body["rank"] == 2
    assert body["render"] == MIS_TEXT


def test_equal_problems_collapse_to_one_handle(client):
    scrambled = "P O O\nM M M\n---\nO M\nP M\nO O\n"
    h1 = post_mis(client)
    h2 = client.post("/problems", json={"text": scrambled}).json()["handle"]
    assert h1 == h2


def test_get_problem_and_condensed_render(client):
    h = post_mis(client)
    assert client.get(f"/problems/{h}").json()["render"] == MIS_TEXT
    condensed = client.get(f"/problems/{h}", params={"condensed": True})
    assert condensed.json()["render"] == "M^3\nO^2 P\n---\n[M O] O\nM [O P]\n"


def test_unknown_handle_is_404(client):
    assert client.get("/problems/feedfeedfeedfeed").status_code == 404


def test_step_route_matches_library_and_cli_bytes(client):
    h = post_mis(client)
    body = client.post(f"/problems/{h}/step").json()
    stepped, prov = full_step(mis_graph_problem(3))
    assert body["render"] == render_problem(stepped)
    assert body["handle"] == problem_handle(stepped)
    assert body["provenance"] == {
        name: [list(s) for s in sets] for name, sets in prov.items()
    }
    cli = CliRunner().invoke(cli_main, ["re", "fullstep", "-"], input=MIS_TEXT)
    assert cli.exit_code == 0
    assert body["render"] == cli.stdout


def test_half_step_route(client):
    h = post_mis(client)
    body = client.post(f"/problems/{h}/re").json()
    assert body["applied"] == "edge-universal"
    assert ["M", "O"] in body["sigma"]
    assert [["M"], ["O", "P"]] in body["edge"]
    assert len(body["node"]) == 10


def test_diagram_route_edge_side(client):
    h = post_mis(client)
    body = client.get(f"/problems/{h}/diagram", params={"side": "edge"}).json()
    assert body["classes"] == [["M"], ["O"], ["P"]]
    assert body["edges"] == [[["P"], ["O"]]]


def test_diagram_rejects_bad_side(client):
    h = post_mis(client)
    res = client.get(f"/problems/{h}/diagram", params={"side": "sideways"})
    assert res.status_code == 422


def test_merge_and_rename_routes(client):
    h = post_mis(client)
    merged = client.post(
        f"/problems/{h}/merge", json={"groups": [["M"], ["O", "P"]]}
    ).json()
    assert merged["labels"] == ["M", "O"]
    renamed = client.post(
        f"/problems/{merged['handle']}/rename", json={"map": {"M": "x", "O": "y"}}
    ).json()
    assert renamed["labels"] == ["x", "y"]
    assert renamed["handle"] != merged["handle"]


def test_rename_back_returns_the_original_handle(client):
    h = post_mis(client)
    away = client.post(
        f"/problems/{h}/rename", json={"map": {"M": "A", "O": "B", "P": "C"}}
    ).json()["handle"]
    assert away != h
    back = client.post(
        f"/problems/{away}/rename", json={"map": {"A": "M", "B": "O", "C": "P"}}
    ).json()["handle"]
    assert back == h


def test_history_is_append_only_across_routes(client):
    h = post_mis(client)
    away = client.post(
        f"/problems/{h}/rename", json={"map": {"M": "A", "O": "B", "P": "C"}}
    ).json()["handle"]
    client.post(
        f"/problems/{away}/rename", json={"map": {"A": "M", "B": "O", "C": "P"}}
    )
    origins = client.get(f"/problems/{h}/history").json()["origins"]
    assert {"action": "parse"} in origins
    assert {"action": "rename", "parent": away,
            "map": {"A": "M", "B": "O", "C": "P"}} in origins


def test_duplicate_posts_do_not_grow_history(client):
    h = post_mis(client)
    post_mis(client)
    origins = client.get(f"/problems/{h}/history").json()["origins"]
    assert origins == [{"action": "parse"}]


def test_zeroround_route(client):
    h = post_mis(client)
    body = client.get(f"/problems/{h}/zeroround").json()
    assert body == {"handle": h, "solvable": False, "witness": None}
    easy = client.post("/problems", json={"text": "A A A\n---\nA A\n"}).json()
    body = client.get(f"/problems/{easy['handle']}/zeroround").json()
    assert body["solvable"] is True and body["witness"] == ["A", "A", "A"]


def test_malformed_text_is_400_with_detail(client):
    res = client.post("/problems", json={"text": "not a problem"})
    assert res.status_code == 400
    assert "detail" in res.json()


def test_bad_merge_is_400(client):
    h = post_mis(client)
    res = client.post(f"/problems/{h}/merge", json={"groups": [["M", "Q"]]})
    assert res.status_code == 400
    assert "unknown label" in res.json()["detail"]
    res = client.post(f"/problems/{h}/merge", json={"groups": [["M"], ["M", "O"]]})
    assert res.status_code == 400


def test_cap_overflow_is_409_with_size(client):
    h = post_mis(client)
    res = client.post(f"/problems/{h}/step", params={"cap": 2})
    assert res.status_code == 409
    body = res.json()
    assert body["size"] > 2
    assert "detail" in body


def test_verify_fixedpoint_route(client):
    res = client.post("/verify/fixedpoint", json={"delta": 2, "rank": 2})
    body = res.json()
    assert body["ok"] is True
    assert len(body["map"]) == 4
    member = coloring_fixed_point(2, 2)
    assert body["problem"] == render_problem(member)


def test_verify_onestep_route(client):
    res = client.post(
        "/verify/onestep",
        json={"z": [1, 1], "s": 1, "q": 2, "delta": 3, "rank": 3},
    )
    body = res.json()
    assert body["ok"] is True
    assert all(check["passed"] for check in body["checks"])
    parse_problem(body["target"])


def test_replaying_recorded_history_rebuilds_the_same_handles(client):
    """A fresh service fed the same actions lands on the same handles."""
    h = post_mis(client)
    stepped = client.post(f"/problems/{h}/step").json()["handle"]
    merged = client.post(
        f"/problems/{stepped}/merge",
        json={"groups": [["L0", "L1"], ["L2", "L3", "L4", "L5"]]},
    ).json()["handle"]

    with TestClient(create_app()) as fresh:
        h2 = fresh.post("/problems", json={"text": MIS_TEXT}).json()["handle"]
        stepped2 = fresh.post(f"/problems/{h2}/step").json()["handle"]
        merged2 = fresh.post(
            f"/problems/{stepped2}/merge",
            json={"groups": [["L0", "L1"], ["L2", "L3", "L4", "L5"]]},
        ).json()["handle"]
    assert (h, stepped, merged) == (h2, stepped2, merged2)
