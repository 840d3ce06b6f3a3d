"""Acceptance suite: one test per release criterion, at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS/FAIL line per
criterion.
"""

import io
import itertools
import json
import subprocess
import sys
import time
from contextlib import contextmanager

import numpy as np
import pytest

from driftnet.bundled import default_bundle, drift_labels, planted_model
from driftnet.canonical import basic_trio, random_network
from driftnet.inference import posterior
from driftnet.learning import (
    compile_target_cpt,
    generate_synthetic_events,
    ingest_events,
    learn_naive_bayes,
)
from driftnet.maturity import AggregationWeights, drift_cpt_from_weights
from driftnet.network import brute_force_posterior
from driftnet.simulation import maturity_sweep


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"[FAIL] {name}", flush=True)
        raise
    print(f"[PASS] {name}", flush=True)


REFERENCE_WEIGHTS = (0.05, 0.10, 0.15, 0.30, 0.40)

# Both 16-configuration blocks of the published drift CPT (P(True) per
# configuration, levels enumerated highest-fastest; the P rows are the
# oracle, not the table's Y/N header).
REFERENCE_P_TRUE = (
    1.00, 0.60, 0.70, 0.30, 0.85, 0.45, 0.55, 0.15,
    0.90, 0.50, 0.60, 0.20, 0.75, 0.35, 0.45, 0.05,
    0.95, 0.55, 0.65, 0.25, 0.80, 0.40, 0.50, 0.10,
    0.85, 0.45, 0.55, 0.15, 0.70, 0.30, 0.40, 0.00,
)


def test_reference_table_reproduction():
    with criterion("drift CPT reproduces all 32 reference values exactly (<1 ms)"):
        weights = AggregationWeights(REFERENCE_WEIGHTS)
        drift_cpt_from_weights(weights)  # warm-up outside the timed call
        start = time.perf_counter()
        cpt = drift_cpt_from_weights(weights)
        elapsed = time.perf_counter() - start
        assert cpt.table.shape == (32, 2)
        for idx, p_true in enumerate(REFERENCE_P_TRUE):
            assert abs(cpt.table[idx, 0] - p_true) <= 1e-12
            assert abs(cpt.table[idx, 1] - (1.0 - p_true)) <= 1e-12
        assert elapsed < 1e-3, f"took {elapsed * 1e3:.3f} ms"


def test_oracle_equivalence_on_200_random_networks():
    with criterion("posterior matches brute-force oracle on 200 random networks (<30 s)"):
        rng = np.random.default_rng(20260808)
        start = time.perf_counter()
        worst = 0.0
        for _ in range(200):
            net = random_network(rng, int(rng.integers(3, 13)))
            ids = list(net.variable_ids())
            query = ids[int(rng.integers(len(ids)))]
            others = [v for v in ids if v != query]
            n_ev = int(rng.integers(0, min(4, len(others)) + 1))
            picked = list(rng.choice(others, size=n_ev, replace=False)) if n_ev else []
            evidence = {v: ("T", "F")[int(rng.integers(2))] for v in picked}
            fast = posterior(net, query, evidence)
            oracle = brute_force_posterior(net, query, evidence)
            worst = max(worst, float(np.max(np.abs(fast.probabilities - oracle.probabilities))))
        elapsed = time.perf_counter() - start
        assert worst < 1e-9, f"L-infinity deviation {worst:.3e}"
        assert elapsed < 30.0, f"took {elapsed:.1f} s"


def test_bayes_identity_on_canonical_networks():
    with criterion("Bayes identity holds on the three canonical networks (1e-9)"):
        for name, net in basic_trio().items():
            for h_var, e_var in itertools.permutations(("X", "Y", "Z"), 2):
                for h in ("T", "F"):
                    for v in ("T", "F"):
                        p_h = brute_force_posterior(net, h_var).prob(h)
                        p_e = brute_force_posterior(net, e_var).prob(v)
                        p_h_e = brute_force_posterior(net, h_var, {e_var: v}).prob(h)
                        p_e_h = brute_force_posterior(net, e_var, {h_var: h}).prob(v)
                        assert abs(p_h_e * p_e - p_e_h * p_h) <= 1e-9, (name, h_var, e_var)


def test_drift_monotonicity():
    with criterion("all 80 adjacent drift-CPT configurations are monotone"):
        cpt = drift_cpt_from_weights(AggregationWeights(REFERENCE_WEIGHTS))
        pairs = 0
        for idx in range(32):
            for pos in range(5):
                bit = 1 << (4 - pos)
                if idx & bit:
                    continue
                assert cpt.table[idx | bit, 0] <= cpt.table[idx, 0] + 1e-15
                pairs += 1
        assert pairs == 80


def test_sixteen_thousand_row_compile():
    with criterion("14 drift factors compile to 16384 normalized rows (<1 s)"):
        model = planted_model()
        assert len(model.drift_ids) == 14
        start = time.perf_counter()
        cpt = compile_target_cpt(model, model.drift_ids)
        elapsed = time.perf_counter() - start
        assert cpt.n_rows == 16384
        assert np.allclose(cpt.table.sum(axis=1), 1.0, atol=1e-9)
        assert elapsed < 1.0, f"took {elapsed:.2f} s"


def test_learning_recovery():
    with criterion("10k sampled events recover the planted model within 0.03"):
        planted = planted_model()
        text = generate_synthetic_events(4242, n_projects=15, n_events=10_000, model=planted)
        records = ingest_events(io.StringIO(text), planted.drift_ids).records
        learned = learn_naive_bayes(records, planted.drift_ids, alpha=1.0)
        assert float(np.max(np.abs(learned.prior - planted.prior))) < 0.03
        assert float(np.max(np.abs(learned.conditionals - planted.conditionals))) < 0.03


def test_end_to_end_qualitative_sweep(built_network):
    with criterion("cumulative sweep: worst band shrinks with maturity, drifts monotone"):
        table = maturity_sweep(built_network, mode="cumulative")
        p100 = {level: dist.prob("P_100") for level, dist in zip(table.levels, table.rows)}
        assert p100[5] < p100[1], f"P_100 at level 5 ({p100[5]:.3f}) !< level 1 ({p100[1]:.3f})"
        for drift in table.drift_risks[0]:
            risks = [row[drift] for row in table.drift_risks]
            for later, earlier in zip(risks[1:], risks):
                assert later <= earlier + 1e-12


def _run_cli(args, cwd):
    proc = subprocess.run(
        [sys.executable, "-m", "driftnet.cli", *args],
        capture_output=True,
        cwd=cwd,
        check=True,
    )
    return proc.stdout


def test_cli_determinism(tmp_path):
    with criterion("every CLI subcommand is byte-identical across two seeded runs"):
        recorded = []
        for run in ("one", "two"):
            base = tmp_path / run
            base.mkdir()
            events = base / "events.csv"
            model = base / "model.json"
            network = base / "network.json"
            assessment = base / "assessment.json"
            sweep_csv = base / "sweep.csv"
            infer_out = base / "whatif.json"
            rank_out = base / "rank.json"
            xml_out = base / "net.xmlbif"
            assessment.write_text(json.dumps(
                {"answers": {"MR.Contract.LV1": "Yes", "PA.Results.LV2": "No"}}
            ))

            chunks = [
                _run_cli(["gen", "--out", str(events), "--seed", "42"], base),
                _run_cli(["learn", "--events", str(events), "--out", str(model)], base),
                _run_cli(["build", "--model", str(model), "--out", str(network)], base),
                _run_cli(["validate", "--network", str(network)], base),
                _run_cli(
                    ["infer", "--network", str(network), "--assessment", str(assessment),
                     "--out", str(infer_out)], base,
                ),
                _run_cli(["sweep", "--network", str(network), "--out", str(sweep_csv)], base),
                _run_cli(
                    ["rank", "--network", str(network), "--assessment", str(assessment),
                     "--out", str(rank_out)], base,
                ),
                _run_cli(["export-xmlbif", "--network", str(network), "--out", str(xml_out)], base),
            ]
            for path in (events, model, network, infer_out, sweep_csv, rank_out, xml_out):
                chunks.append(path.read_bytes())
            # stdout of validate includes the absolute path; normalize per run
            recorded.append([c.replace(str(base).encode(), b"<base>") for c in chunks])
        assert recorded[0] == recorded[1]
