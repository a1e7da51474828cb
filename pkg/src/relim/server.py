"""Local HTTP service for interactive exploration.

Every stored problem is addressed by a content handle: the first sixteen
hex digits of the SHA-256 of its canonical rendering.  Identical problems
therefore collapse onto one handle, and the history of how each handle
was produced forms a shareable graph.  All computation is pure; the
handle store is the only shared state.
"""

from __future__ import annotations

import hashlib
import threading
from typing import Optional

from fastapi import FastAPI, HTTPException, Query
from pydantic import BaseModel

from . import (
    Problem,
    ProblemError,
    ResourceCapError,
    coloring_fixed_point,
    diagram,
    full_step,
    merge_labels,
    parse_problem,
    re_step,
    rename_labels,
    render_problem,
    strength_order,
    verify_fixed_point,
    verify_onestep,
    zero_round_solvable,
)


class TextIn(BaseModel):
    text: str
    cap: Optional[int] = None


class MergeIn(BaseModel):
    groups: list[list[str]]


class RenameIn(BaseModel):
    map: dict[str, str]


class FixedPointIn(BaseModel):
    delta: int
    rank: int
    cap: Optional[int] = None


class OneStepIn(BaseModel):
    z: list[int]
    s: int
    q: int
    delta: int
    rank: int
    cap: Optional[int] = None


def problem_handle(p: Problem) -> str:
    return hashlib.sha256(render_problem(p).encode()).hexdigest()[:16]


class HandleStore:
    """Append-only problem store keyed by content handle."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._problems: dict[str, Problem] = {}
        self._origins: dict[str, list[dict]] = {}

    def put(self, p: Problem, action: dict) -> str:
        handle = problem_handle(p)
        with self._lock:
            self._problems.setdefault(handle, p)
            origins = self._origins.setdefault(handle, [])
            if action not in origins:
                origins.append(action)
        return handle

    def get(self, handle: str) -> Problem:
        try:
            return self._problems[handle]
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown handle {handle}")

    def origins(self, handle: str) -> list[dict]:
        self.get(handle)
        return list(self._origins.get(handle, []))


def _problem_payload(store: HandleStore, handle: str, condensed: bool = False) -> dict:
    p = store.get(handle)
    return {
        "handle": handle,
        "labels": list(p.labels),
        "delta": p.delta,
        "rank": p.rank,
        "render": render_problem(p, condensed=condensed),
    }


def create_app() -> FastAPI:
    app = FastAPI(title="round elimination explorer service")
    # The browser client is served separately (or opened from disk), so the
    # API must answer cross-origin requests from any local page.
    from fastapi.middleware.cors import CORSMiddleware

    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = HandleStore()

    @app.exception_handler(ProblemError)
    async def _problem_error(request, exc: ProblemError):
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(ResourceCapError)
    async def _cap_error(request, exc: ResourceCapError):
        from fastapi.responses import JSONResponse

        return JSONResponse(
            status_code=409,
            content={"detail": str(exc), "size": exc.size_reached},
        )

    @app.post("/problems")
    def post_problem(body: TextIn):
        p = parse_problem(body.text, cap=body.cap)
        handle = store.put(p, {"action": "parse"})
        return _problem_payload(store, handle)

    @app.get("/problems/{handle}")
    def get_problem(handle: str, condensed: bool = False):
        return _problem_payload(store, handle, condensed=condensed)

    @app.post("/problems/{handle}/step")
    def post_step(handle: str, cap: Optional[int] = None, jobs: int = 1):
        p = store.get(handle)
        stepped, prov = full_step(p, cap=cap, jobs=jobs)
        new_handle = store.put(
            stepped, {"action": "step", "parent": handle}
        )
        payload = _problem_payload(store, new_handle)
        payload["provenance"] = {
            name: [list(s) for s in sets] for name, sets in prov.items()
        }
        return payload

    @app.post("/problems/{handle}/re")
    def post_re(handle: str, cap: Optional[int] = None, jobs: int = 1):
        p = store.get(handle)
        ip = re_step(p, cap=cap, jobs=jobs)

        def words(constraint):
            return sorted(
                [
                    [[p.labels[i] for i in ip.sigma[s]] for s in cfg.word]
                    for cfg in constraint.configs
                ]
            )

        return {
            "handle": handle,
            "applied": ip.applied,
            "sigma": [[p.labels[i] for i in s] for s in ip.sigma],
            "node": words(ip.node_constraint),
            "edge": words(ip.edge_constraint),
        }

    @app.get("/problems/{handle}/diagram")
    def get_diagram(handle: str, side: str = Query("edge", pattern="^(node|edge)$")):
        p = store.get(handle)
        constraint = p.node_constraint if side == "node" else p.edge_constraint
        d = diagram(strength_order(constraint, len(p.labels)))
        classes = [[p.labels[i] for i in cls] for cls in d.classes]
        return {
            "handle": handle,
            "side": side,
            "classes": classes,
            "edges": [[classes[a], classes[b]] for a, b in d.edges],
        }

    @app.post("/problems/{handle}/merge")
    def post_merge(handle: str, body: MergeIn):
        p = store.get(handle)
        merged = merge_labels(p, body.groups)
        new_handle = store.put(
            merged, {"action": "merge", "parent": handle, "groups": body.groups}
        )
        return _problem_payload(store, new_handle)

    @app.post("/problems/{handle}/rename")
    def post_rename(handle: str, body: RenameIn):
        p = store.get(handle)
        renamed = rename_labels(p, body.map)
        new_handle = store.put(
            renamed, {"action": "rename", "parent": handle, "map": body.map}
        )
        return _problem_payload(store, new_handle)

    @app.get("/problems/{handle}/zeroround")
    def get_zeroround(handle: str):
        p = store.get(handle)
        solvable, witness = zero_round_solvable(p)
        return {
            "handle": handle,
            "solvable": solvable,
            "witness": (
                [p.labels[i] for i in witness.word] if witness is not None else None
            ),
        }

    @app.get("/problems/{handle}/history")
    def get_history(handle: str):
        return {"handle": handle, "origins": store.origins(handle)}

    @app.post("/verify/fixedpoint")
    def post_verify_fixedpoint(body: FixedPointIn):
        ok, mapping = verify_fixed_point(body.delta, body.rank, cap=body.cap)
        member = coloring_fixed_point(body.delta, body.rank)
        return {"ok": ok, "map": mapping, "problem": render_problem(member)}

    @app.post("/verify/onestep")
    def post_verify_onestep(body: OneStepIn):
        report = verify_onestep(
            tuple(body.z), body.s, body.q, body.delta, body.rank, cap=body.cap
        )
        return {
            "ok": report.ok,
            "checks": [
                {"name": name, "passed": passed, "note": note}
                for name, passed, note in report.checks
            ],
            "target": render_problem(report.target) if report.target else None,
        }

    return app
