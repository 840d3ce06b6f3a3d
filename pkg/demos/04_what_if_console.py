"""Decision support: what-if queries, the maturity sweep, and next actions.

Starting from the default end-to-end network, this script answers the three
questions a project manager keeps asking: where does my overcost risk stand
under the current assessment, how would it move if the whole organization
reached level k, and which single practice should we fix next?
"""

from driftnet import Assessment, maturity_sweep, rank_actions, what_if
from driftnet.bundled import default_bundle, demo_network

framework, _, _ = default_bundle()
net = demo_network(seed=42)

# a partial assessment: contract monitoring is solid, tender estimation weak
assessment = Assessment({
    ("MR", "Contract", 1): "Yes",
    ("MR", "Contract", 2): "Yes",
    ("MR", "Contract", 3): "Yes",
    ("PA", "Results", 1): "Yes",
    ("PA", "Results", 2): "No",
})

result = what_if(net, assessment, framework)
print("overcost bands under the current assessment:")
for band, p in result.overcost.as_dict().items():
    print(f"  {band:<9} {p:6.1%}")

risky = sorted(result.drift_risks.items(), key=lambda kv: -kv[1])[:3]
print("\nhighest drift risks:")
for drift, risk in risky:
    print(f"  {drift:<4} {risk:6.1%}")

print("\nmaturity sweep (cumulative: all levels <= k achieved):")
table = maturity_sweep(net, mode="cumulative")
print(table.render())

print("\ntop next actions (decrease in P(overcost >= 10%)):")
for question, delta in rank_actions(net, assessment, framework)[:5]:
    print(f"  {question:<22} -{delta:.4f}")
