"""HTTP facade over one immutable loaded model.

The network, framework and descriptor are loaded once at startup and never
mutated, so concurrent requests share a read-only snapshot and any two
identical requests return identical bodies.  Errors surface as HTTP 400
with a machine-readable ``error`` field; unknown routes are 404.
"""

from __future__ import annotations

from typing import Any, Mapping

from fastapi import Body, FastAPI, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .errors import DriftnetError
from .jsonio import assessment_from_dict
from .learning import BAND_LABELS
from .maturity import CELLS, DriftFactorSpec, MaturityFramework, cell_name, parse_question_key
from .network import Network
from .simulation import maturity_sweep, model_roles, rank_actions, what_if

DEFAULT_PORT = 8348

REQUEST_SCHEMAS: dict[str, Any] = {
    "assessment": {
        "type": "object",
        "properties": {
            "assessor": {"type": "string"},
            "date": {"type": "string"},
            "answers": {
                "type": "object",
                "description": "question key (e.g. MR.Social.LV3) -> Yes|No",
                "additionalProperties": {"enum": ["Yes", "No"]},
            },
        },
    },
    "whatif_response": {
        "type": "object",
        "properties": {
            "overcost": {"type": "object", "description": "band -> probability, sums to 1"},
            "drift_risks": {"type": "object", "description": "drift id -> P(drift true)"},
            "evidence": {"type": "object", "description": "node id -> clamped state"},
        },
    },
    "sweep_response": {
        "type": "object",
        "properties": {
            "mode": {"enum": ["cumulative", "exclusive"]},
            "rows": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "level": {"type": "integer"},
                        "overcost": {"type": "object"},
                        "drift_risks": {"type": "object"},
                    },
                },
            },
        },
    },
    "rank_response": {
        "type": "object",
        "properties": {
            "actions": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {"question": {"type": "string"}, "delta": {"type": "number"}},
                },
            }
        },
    },
}


def build_descriptor(
    net: Network,
    framework: MaturityFramework,
    drifts: tuple[DriftFactorSpec, ...] | None,
    provenance: Mapping[str, Any] | None,
) -> dict:
    roles = model_roles(net)
    questions = {}
    for node in roles.maturity:
        cell, domain, level = parse_question_key(node)
        questions[node] = framework.question(cell, domain, level)
    by_id = {d.id: d for d in (drifts or ())}
    catalogue = []
    for drift_id in roles.drifts:
        spec = by_id.get(drift_id)
        parents = net.parents_of(drift_id)
        cell, domain, _ = parse_question_key(parents[0])
        catalogue.append(
            {
                "id": drift_id,
                "label": spec.label if spec else "",
                "cell": cell,
                "domain": domain,
            }
        )
    return {
        "cells": [
            {"cell": c, "chronology": cell_name(c)[0], "invariant": cell_name(c)[1]}
            for c in CELLS
        ],
        "domains": list(framework.domains),
        "levels": framework.levels,
        "questions": questions,
        "drift_factors": catalogue,
        "bands": list(BAND_LABELS),
        "target": roles.target,
        "provenance": dict(provenance or {}),
        "schemas": REQUEST_SCHEMAS,
    }


def create_app(
    net: Network,
    framework: MaturityFramework,
    drifts: tuple[DriftFactorSpec, ...] | None = None,
    provenance: Mapping[str, Any] | None = None,
    cors_origins: tuple[str, ...] = ("*",),
) -> FastAPI:
    app = FastAPI(title="driftnet", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["GET", "POST"],
        allow_headers=["*"],
    )
    descriptor = build_descriptor(net, framework, drifts, provenance)

    @app.exception_handler(DriftnetError)
    async def _driftnet_error(_request, exc: DriftnetError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.get("/model")
    async def get_model():
        return descriptor

    @app.post("/whatif")
    async def post_whatif(body: dict = Body(...)):
        assessment = assessment_from_dict(body)
        # no framework here: answer keys must match the descriptor's
        # questions exactly, anything else is an unknown question
        result = what_if(net, assessment)
        return result.as_dict()

    @app.get("/sweep")
    async def get_sweep(mode: str = Query("cumulative")):
        table = maturity_sweep(net, mode=mode)
        rows = [
            {"level": level, "overcost": dist.as_dict(), "drift_risks": risks}
            for level, dist, risks in zip(table.levels, table.rows, table.drift_risks)
        ]
        return {"mode": mode, "rows": rows}

    @app.post("/rank")
    async def post_rank(body: dict = Body(...)):
        assessment = assessment_from_dict(body)
        ranked = rank_actions(net, assessment)
        return {"actions": [{"question": q, "delta": d} for q, d in ranked]}

    return app


def serve(
    net: Network,
    framework: MaturityFramework,
    drifts: tuple[DriftFactorSpec, ...] | None = None,
    port: int = DEFAULT_PORT,
    host: str = "127.0.0.1",
    provenance: Mapping[str, Any] | None = None,
    cors_origins: tuple[str, ...] = ("*",),
) -> None:
    import uvicorn

    app = create_app(net, framework, drifts, provenance, cors_origins)
    uvicorn.run(app, host=host, port=port, log_level="info")
