"""Show how aggregation weights turn into a drift-factor CPT.

Each maturity level carries a weight: the probability of avoiding the drift
once that level is reached.  For any combination of achieved levels, the
avoidance probabilities simply add up, so the whole 32-row CPT of a drift
node follows from five numbers an expert can actually estimate.
"""

from driftnet import AggregationWeights, drift_cpt_from_weights

weights = AggregationWeights((0.05, 0.10, 0.15, 0.30, 0.40))
print("per-level avoidance weights:", weights.weights, "\n")

cpt = drift_cpt_from_weights(weights)

print("cfg  LV1 LV2 LV3 LV4 LV5   P(True)  P(False)")
for idx in range(32):
    bits = [(idx >> (4 - pos)) & 1 for pos in range(5)]
    answers = "   ".join("Y" if b else "N" for b in bits)
    print(f"{idx:>3}  {answers}   {cpt.table[idx, 0]:>7.2f}  {cpt.table[idx, 1]:>8.2f}")

print("\nreading the table:")
print(" - nothing achieved (cfg 0): the drift is certain")
print(" - only the top level (cfg 1): P(True) drops to 0.60")
print(" - everything achieved (cfg 31): the drift is impossible")
print(" - flipping any single level No->Yes never increases P(True)")

# sub-unit weights deliberately leave an irreducible risk floor
import warnings

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    floor = AggregationWeights((0.05, 0.05, 0.10, 0.20, 0.30))
residual = drift_cpt_from_weights(floor)
print(f"\nwith weights summing to 0.70, full maturity still leaves "
      f"P(True) = {residual.table[-1, 0]:.2f}")
