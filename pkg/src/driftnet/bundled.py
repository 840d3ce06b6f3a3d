"""Bundled default configuration: framework, weights, drift catalogue, and
the planted model behind the synthetic-event generator.

Everything here is editable configuration, not ground truth: the drift
catalogue and its cell/domain mapping describe one offshore-projects study
and are meant to be replaced per organization via ``--framework``.
"""

from __future__ import annotations

from importlib import resources

from .jsonio import bundle_from_dict, model_from_dict
from .learning import NaiveBayesModel, compile_target_cpt, generate_synthetic_events, ingest_events, learn_naive_bayes
from .maturity import AggregationWeights, DriftFactorSpec, MaturityFramework, build_network
from .network import Network

import json


def _read_data(name: str) -> dict:
    return json.loads(resources.files("driftnet.data").joinpath(name).read_text("utf-8"))


def default_bundle() -> tuple[MaturityFramework, AggregationWeights, tuple[DriftFactorSpec, ...]]:
    """The default framework, aggregation weights and drift catalogue."""
    return bundle_from_dict(_read_data("default_model.json"))


def planted_model() -> NaiveBayesModel:
    """The model the synthetic-event generator samples from."""
    return model_from_dict(_read_data("planted_model.json"))


def drift_labels() -> dict[str, str]:
    _, _, drifts = default_bundle()
    return {d.id: d.label for d in drifts}


def demo_network(seed: int = 42, n_projects: int = 15, n_events: int = 459, alpha: float = 1.0) -> Network:
    """End-to-end default pipeline: generate events, learn, compile, build."""
    import io

    framework, weights, drifts = default_bundle()
    csv_text = generate_synthetic_events(
        seed, n_projects=n_projects, n_events=n_events, model=planted_model(), labels=drift_labels()
    )
    result = ingest_events(io.StringIO(csv_text), [d.id for d in drifts])
    model = learn_naive_bayes(result.records, [d.id for d in drifts], alpha=alpha)
    target = compile_target_cpt(model, model.drift_ids)
    return build_network(framework, list(drifts), weights, target)
