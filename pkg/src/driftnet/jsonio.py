"""JSON file formats for networks, learned models, frameworks and assessments.

All documents are UTF-8 JSON.  On load, CPT rows whose sum deviates from 1
by more than 1e-9 but at most 1e-6 are renormalized (text-format rounding);
larger deviations are rejected as format errors rather than silently fixed.
"""

from __future__ import annotations

import json
import os
from typing import Any

import numpy as np

from .errors import FormatError, InputError
from .learning import BAND_LABELS, NaiveBayesModel
from .maturity import (
    AggregationWeights,
    Assessment,
    DriftFactorSpec,
    MaturityFramework,
    parse_question_key,
)
from .network import Cpt, Network, Variable

RENORMALIZE_TOL = 1e-6
ROW_SUM_TOL = 1e-9


def _load_json(source: str | os.PathLike) -> Any:
    with open(source, "r", encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{source}: not valid JSON ({exc})") from None


def _dump_json(doc: Any, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _renormalize_rows(rows: list[list[float]], child: str) -> np.ndarray:
    table = np.asarray(rows, dtype=np.float64)
    if table.ndim != 2:
        raise FormatError(f"CPT rows for {child!r} must form a rectangular table")
    for i, row in enumerate(table):
        s = float(row.sum())
        if abs(s - 1.0) <= ROW_SUM_TOL:
            continue
        if abs(s - 1.0) <= RENORMALIZE_TOL and s > 0:
            table[i] = row / s
        else:
            raise FormatError(f"CPT row {i} of {child!r} sums to {s:.12g}")
    return table


def network_to_dict(net: Network) -> dict:
    return {
        "variables": [{"id": v.id, "states": list(v.states)} for v in net.variables],
        "cpts": [
            {
                "child": c.child,
                "parents": list(c.parents),
                "rows": [[float(x) for x in row] for row in c.table],
            }
            for c in net.cpts
        ],
    }


def network_from_dict(doc: dict) -> Network:
    try:
        variables = tuple(
            Variable(v["id"], tuple(v["states"])) for v in doc["variables"]
        )
        cpts = tuple(
            Cpt(c["child"], tuple(c["parents"]), _renormalize_rows(c["rows"], c["child"]))
            for c in doc["cpts"]
        )
        return Network(variables, cpts)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"network document is missing required keys ({exc})") from None
    except InputError as exc:
        raise FormatError(str(exc)) from None


def load_network(path: str | os.PathLike) -> Network:
    return network_from_dict(_load_json(path))


def save_network(net: Network, path: str | os.PathLike) -> None:
    _dump_json(network_to_dict(net), path)


def model_to_dict(model: NaiveBayesModel) -> dict:
    return {
        "bands": list(BAND_LABELS),
        "alpha": model.alpha,
        "granularity": model.granularity,
        "prior": {b: float(p) for b, p in zip(BAND_LABELS, model.prior)},
        "conditionals": {
            d: {b: float(p) for b, p in zip(BAND_LABELS, model.conditionals[i])}
            for i, d in enumerate(model.drift_ids)
        },
    }


def model_from_dict(doc: dict) -> NaiveBayesModel:
    try:
        bands = tuple(doc["bands"])
        if bands != BAND_LABELS:
            raise FormatError(f"model bands {bands} do not match {BAND_LABELS}")
        drift_ids = tuple(doc["conditionals"].keys())
        prior = np.array([doc["prior"][b] for b in BAND_LABELS])
        cond = np.array([[doc["conditionals"][d][b] for b in BAND_LABELS] for d in drift_ids])
        return NaiveBayesModel(
            drift_ids, prior, cond, float(doc["alpha"]), doc.get("granularity", "event")
        )
    except (KeyError, TypeError) as exc:
        raise FormatError(f"model document is missing required keys ({exc})") from None
    except InputError as exc:
        raise FormatError(str(exc)) from None


def load_model(path: str | os.PathLike) -> NaiveBayesModel:
    return model_from_dict(_load_json(path))


def save_model(model: NaiveBayesModel, path: str | os.PathLike) -> None:
    _dump_json(model_to_dict(model), path)


def bundle_to_dict(
    framework: MaturityFramework,
    weights: AggregationWeights,
    drifts: tuple[DriftFactorSpec, ...],
    include_questions: bool = False,
) -> dict:
    doc: dict = {
        "framework": {"domains": list(framework.domains), "levels": framework.levels},
        "weights": list(weights.weights),
        "drift_factors": [
            {"id": d.id, "label": d.label, "cell": d.cell, "domain": d.domain}
            for d in drifts
        ],
    }
    if include_questions:
        doc["framework"]["questions"] = {
            f"{c}.{dom}.LV{lvl}": text
            for (c, dom, lvl), text in framework.questions.items()
        }
    return doc


def bundle_from_dict(doc: dict) -> tuple[MaturityFramework, AggregationWeights, tuple[DriftFactorSpec, ...]]:
    try:
        fw_doc = doc["framework"]
        questions = {}
        for key, text in fw_doc.get("questions", {}).items():
            questions[parse_question_key(key)] = text
        framework = MaturityFramework(
            tuple(fw_doc.get("domains", [])) or MaturityFramework().domains,
            int(fw_doc.get("levels", 5)),
            questions,
        )
        weights = AggregationWeights(tuple(doc["weights"]))
        drifts = tuple(
            DriftFactorSpec(d["id"], d["label"], d["cell"], d["domain"])
            for d in doc["drift_factors"]
        )
    except (KeyError, TypeError) as exc:
        raise FormatError(f"framework document is missing required keys ({exc})") from None
    except InputError as exc:
        raise FormatError(str(exc)) from None
    for d in drifts:
        if d.domain not in framework.domains:
            raise FormatError(f"drift {d.id!r} uses unknown domain {d.domain!r}")
    return framework, weights, drifts


def load_bundle(path: str | os.PathLike):
    return bundle_from_dict(_load_json(path))


def assessment_to_dict(assessment: Assessment) -> dict:
    return {
        "assessor": assessment.assessor,
        "date": assessment.date,
        "answers": {
            f"{c}.{d}.LV{lvl}": v for (c, d, lvl), v in sorted(assessment.answers.items())
        },
    }


def assessment_from_dict(doc: dict) -> Assessment:
    try:
        answers = {parse_question_key(k): v for k, v in doc.get("answers", {}).items()}
        return Assessment(answers, doc.get("assessor", ""), doc.get("date", ""))
    except (AttributeError, TypeError) as exc:
        raise FormatError(f"assessment document malformed ({exc})") from None
    except InputError as exc:
        raise FormatError(str(exc)) from None


def load_assessment(path: str | os.PathLike) -> Assessment:
    return assessment_from_dict(_load_json(path))
