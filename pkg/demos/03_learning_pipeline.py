"""The full data path: synthetic events -> learned model -> assembled network.

A seed-pinned generator stands in for a confidential project-loss database
(459 events across 15 projects).  Losses are normalized to percent of
project cost, binned into four overcost bands, fed to a Laplace-smoothed
naive-Bayes learner, and the learned model is inverted into the 16384-row
CPT of the overcost node, which the network builder wires under the 14
drift factors.
"""

import io

from driftnet import (
    bin_overcost,
    build_network,
    compile_target_cpt,
    ingest_events,
    learn_naive_bayes,
    normalize_loss,
    validate_network,
)
from driftnet.bundled import default_bundle, drift_labels
from driftnet.jsonio import save_model, save_network
from driftnet.learning import generate_synthetic_events
from driftnet.xmlbif import save_xmlbif

framework, weights, drifts = default_bundle()
catalogue = [d.id for d in drifts]
print(f"drift catalogue: {len(catalogue)} factors, e.g. 1.2 = {drift_labels()['1.2']}")

csv_text = generate_synthetic_events(seed=42, n_projects=15, n_events=459, labels=drift_labels())
result = ingest_events(io.StringIO(csv_text), catalogue)
print(f"ingested {len(result.records)} events, {len(result.rejects)} rejected")

sample = result.records[0]
pct = normalize_loss(sample)
print(f"first event: loss {sample.loss:,.0f} on a {sample.project_cost:,.0f} project "
      f"-> {pct:.2f}% -> band {bin_overcost(pct).value}")

model = learn_naive_bayes(result.records, catalogue, alpha=1.0)
print("\nlearned band prior:")
for band, p in zip(("P_1", "P_1_10", "P_10_100", "P_100"), model.prior):
    print(f"  {band:<9} {p:.3f}")

target = compile_target_cpt(model, model.drift_ids)
print(f"\ncompiled target CPT: {target.n_rows} rows x {target.n_columns} bands")

net = build_network(framework, list(drifts), weights, target)
print(f"assembled network: {len(net.variables)} nodes, valid = {validate_network(net).ok}")

save_model(model, "model.json")
save_network(net, "network.json")
save_xmlbif(net, "network.xmlbif")
print("\nwrote model.json, network.json and network.xmlbif")
