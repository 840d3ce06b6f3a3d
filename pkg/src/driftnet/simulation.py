"""What-if queries, maturity sweeps and next-action ranking.

These operations work on networks assembled by
:func:`driftnet.maturity.build_network`: maturity roots feed drift nodes,
which feed a single target node.  Roles are recovered structurally (roots
are maturity nodes, their children are drifts, the drifts' child is the
target), so a network round-tripped through a file keeps working.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import InputError
from .inference import posterior
from .maturity import (
    CELLS,
    Assessment,
    MaturityFramework,
    assessment_to_evidence,
    parse_question_key,
    question_key,
)
from .network import Distribution, Evidence, Network

TAIL_BANDS = ("P_10_100", "P_100")


@dataclass(frozen=True)
class ModelRoles:
    """Node ids of each layer in a built maturity network."""

    maturity: tuple[str, ...]
    drifts: tuple[str, ...]
    target: str

    def level_of(self, node: str) -> int:
        return parse_question_key(node)[2]


def model_roles(net: Network) -> ModelRoles:
    """Classify nodes of a maturity network by their structural layer."""
    roots = set(net.roots())
    drifts = []
    targets = []
    for v in net.variables:
        parents = net.parents_of(v.id)
        if not parents:
            continue
        if all(p in roots for p in parents):
            drifts.append(v.id)
        else:
            targets.append(v.id)
    if len(targets) != 1:
        raise InputError("network does not look like a built maturity network (no unique target)")
    drift_set = set(drifts)
    target = targets[0]
    if any(p not in drift_set for p in net.parents_of(target)):
        raise InputError("target node has a parent that is not a drift node")
    maturity = tuple(sorted(roots))
    for node in maturity:
        cell, _, _ = parse_question_key(node)
        if cell not in CELLS:
            raise InputError(f"root node {node!r} does not follow the maturity naming scheme")
    return ModelRoles(maturity, tuple(drifts), target)


@dataclass(frozen=True)
class WhatIfResult:
    """Posterior overcost bands and per-drift risks under one assessment."""

    overcost: Distribution
    drift_risks: dict[str, float]
    evidence: Evidence

    def as_dict(self) -> dict:
        return {
            "overcost": self.overcost.as_dict(),
            "drift_risks": dict(self.drift_risks),
            "evidence": dict(self.evidence.bindings),
        }


def _assessment_evidence(
    net: Network,
    roles: ModelRoles,
    assessment: Assessment,
    framework: MaturityFramework | None,
) -> Evidence:
    """Validate the assessment and keep only bindings on nodes in the net.

    With a framework, answers are checked against the question grid;
    without one, every answered question must name a maturity node of the
    network.  Answers on framework questions that no drift references have
    no node to bind and are dropped (they cannot influence the target).
    """
    if framework is not None:
        ev = assessment_to_evidence(framework, assessment)
        return Evidence({k: v for k, v in ev.items() if net.has_variable(k)})
    bindings: dict[str, str] = {}
    present = set(roles.maturity)
    for (cell, domain, level), value in assessment.answers.items():
        node = question_key(cell, domain, level)
        if node not in present:
            raise InputError(f"unknown question {node!r}")
        bindings[node] = value
    return Evidence(bindings)


def what_if(
    net: Network,
    assessment: Assessment,
    framework: MaturityFramework | None = None,
) -> WhatIfResult:
    """Overcost distribution and drift risks under the given answers."""
    roles = model_roles(net)
    evidence = _assessment_evidence(net, roles, assessment, framework)
    overcost = posterior(net, roles.target, evidence)
    drift_risks = {
        d: posterior(net, d, evidence).prob("True") for d in roles.drifts
    }
    return WhatIfResult(overcost, drift_risks, evidence)


@dataclass(frozen=True)
class SweepTable:
    """Overcost distribution per achieved maturity level (0 = none)."""

    levels: tuple[int, ...]
    rows: tuple[Distribution, ...]
    drift_risks: tuple[dict[str, float], ...]

    def to_csv(self) -> str:
        header = "level," + ",".join(b.lower() for b in self.rows[0].states)
        lines = [header]
        for level, dist in zip(self.levels, self.rows):
            lines.append(f"{level}," + ",".join(repr(float(p)) for p in dist.probabilities))
        return "\n".join(lines) + "\n"

    def render(self) -> str:
        bands = self.rows[0].states
        widths = [max(8, len(b) + 2) for b in bands]
        out = ["level  " + "".join(b.rjust(w) for b, w in zip(bands, widths))]
        for level, dist in zip(self.levels, self.rows):
            cells = "".join(f"{float(p):.4f}".rjust(w) for p, w in zip(dist.probabilities, widths))
            out.append(f"{level:<5d}  {cells}")
        return "\n".join(out)


def sweep_evidence(roles: ModelRoles, level: int, mode: str = "cumulative") -> Evidence:
    """Evidence clamping every maturity node for one sweep step.

    Cumulative mode marks every level up to and including ``level`` as
    achieved; exclusive mode marks only ``level`` itself (0 = none at all).
    """
    if mode not in ("cumulative", "exclusive"):
        raise InputError(f"sweep mode must be 'cumulative' or 'exclusive', got {mode!r}")
    bindings = {}
    for node in roles.maturity:
        node_level = roles.level_of(node)
        if mode == "cumulative":
            achieved = node_level <= level
        else:
            achieved = node_level == level
        bindings[node] = "Yes" if achieved else "No"
    return Evidence(bindings)


def maturity_sweep(net: Network, mode: str = "cumulative") -> SweepTable:
    """Overcost posterior at each uniform maturity level from 0 to the top."""
    roles = model_roles(net)
    max_level = max(roles.level_of(n) for n in roles.maturity)
    levels = tuple(range(0, max_level + 1))
    rows = []
    risks = []
    for level in levels:
        ev = sweep_evidence(roles, level, mode)
        rows.append(posterior(net, roles.target, ev))
        risks.append({d: posterior(net, d, ev).prob("True") for d in roles.drifts})
    return SweepTable(levels, tuple(rows), tuple(risks))


def tail_risk(dist: Distribution) -> float:
    """Probability mass in the two worst overcost bands."""
    return sum(dist.prob(b) for b in TAIL_BANDS if b in dist.states)


def rank_actions(
    net: Network,
    assessment: Assessment,
    framework: MaturityFramework | None = None,
) -> list[tuple[str, float]]:
    """Rank unanswered/No questions by how much flipping them to Yes helps.

    For each candidate the tail risk (mass in the two worst bands) is
    recomputed with that single answer set to Yes; results are sorted by
    risk decrease, largest first, ties by question key.
    """
    roles = model_roles(net)
    base_evidence = _assessment_evidence(net, roles, assessment, framework)
    base = tail_risk(posterior(net, roles.target, base_evidence))

    ranked: list[tuple[str, float]] = []
    for node in roles.maturity:
        if base_evidence.get(node) == "Yes":
            continue
        flipped = dict(base_evidence.bindings)
        flipped[node] = "Yes"
        improved = tail_risk(posterior(net, roles.target, Evidence(flipped)))
        ranked.append((node, base - improved))
    ranked.sort(key=lambda item: (-item[1], item[0]))
    return ranked
