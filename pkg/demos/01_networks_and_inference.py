"""Walk through the core network types and both inference directions.

The three smallest interesting network shapes (a causal chain, a common
cause, a common effect) are built with explicit CPTs, validated, and then
queried top-down (prediction) and backwards (diagnosis).  Every answer from
the variable-elimination engine is cross-checked against the exhaustive
enumeration oracle.
"""

from driftnet import brute_force_posterior, joint_probability, posterior, validate_network
from driftnet.canonical import basic_trio, causal_chain

net = causal_chain()
print("causal chain X -> Y -> Z")
print("validation:", validate_network(net))

# the joint probability of a full assignment is the chain-rule product
p_ttt = joint_probability(net, {"X": "T", "Y": "T", "Z": "T"})
print(f"P(X=T, Y=T, Z=T) = 0.5 * 0.8 * 0.7 = {p_ttt:.4f}")

# prediction: probability of the effect given the cause
prediction = posterior(net, "Z", {"X": "T"})
print("P(Z | X=T)      =", prediction.as_dict())

# diagnosis: probability of the cause given the observed effect
diagnosis = posterior(net, "X", {"Z": "T"})
print("P(X | Z=T)      =", diagnosis.as_dict())

# the engine agrees with brute-force enumeration on every query
for name, example in basic_trio().items():
    for query in ("X", "Y", "Z"):
        fast = posterior(example, query, {"Z": "T"} if query != "Z" else {})
        slow = brute_force_posterior(example, query, {"Z": "T"} if query != "Z" else {})
        gap = max(abs(a - b) for a, b in zip(fast.probabilities, slow.probabilities))
        assert gap < 1e-9
    print(f"{name}: engine matches the enumeration oracle")
