"""Maturity assessment framework and drift-factor network assembly.

The framework crosses three project chronologies (Prepare, Monitor,
Valorize) with three practice invariants (Actions, Resources, Frequency)
into nine cells (PA..VF), each assessed per organizational domain through
five yes/no maturity-level questions.  Every maturity level is a binary
network node; a drift factor is a binary synthetic node whose CPT derives
from per-level aggregation weights: the probability of avoiding the drift
is the sum of the weights of the levels answered Yes.

Node-id scheme (a stable contract used by simulation and the HTTP API):
maturity nodes are named ``<cell>.<domain>.LV<level>`` (also the question
key, e.g. ``MR.Social.LV3``); drift nodes carry their catalogue id
(e.g. ``1.2``); the target node keeps the id of the compiled CPT's child.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import InputError
from .network import Cpt, Evidence, Network, Variable, validate_network

CHRONOLOGIES = ("Prepare", "Monitor", "Valorize")
INVARIANTS = ("Actions", "Resources", "Frequency")
CELLS = ("PA", "PR", "PF", "MA", "MR", "MF", "VA", "VR", "VF")
DEFAULT_DOMAINS = ("Social", "Contract", "Interface", "Results")
DEFAULT_LEVELS = 5

MATURITY_STATES = ("No", "Yes")   # state 0 = practice absent
DRIFT_STATES = ("True", "False")  # state 0 = drift occurs

_CELL_NAMES = {
    f"{c[0]}{i[0]}": (c, i) for c in CHRONOLOGIES for i in INVARIANTS
}


def cell_name(cell: str) -> tuple[str, str]:
    """Expand a two-letter cell code into (chronology, invariant)."""
    try:
        return _CELL_NAMES[cell]
    except KeyError:
        raise InputError(f"unknown cell code {cell!r}") from None


def question_key(cell: str, domain: str, level: int) -> str:
    return f"{cell}.{domain}.LV{level}"


def parse_question_key(key: str) -> tuple[str, str, int]:
    parts = key.split(".")
    if len(parts) != 3 or not parts[2].startswith("LV"):
        raise InputError(f"malformed question key {key!r}")
    try:
        level = int(parts[2][2:])
    except ValueError:
        raise InputError(f"malformed question key {key!r}") from None
    return parts[0], parts[1], level


def _default_question(cell: str, domain: str, level: int) -> str:
    chronology, invariant = cell_name(cell)
    return (
        f"Level {level}: is the {invariant.lower()} practice of the "
        f"{chronology.lower()} phase established for the {domain.lower()} domain?"
    )


@dataclass(frozen=True)
class MaturityFramework:
    """The nine-cell assessment grid with per-domain level questions.

    ``questions`` maps (cell, domain, level) to the question text; the
    default constructor fills any missing entry from a template so a
    framework file only needs to override the wording it cares about.
    """

    domains: tuple[str, ...] = DEFAULT_DOMAINS
    levels: int = DEFAULT_LEVELS
    questions: Mapping[tuple[str, str, int], str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "domains", tuple(self.domains))
        if len(set(self.domains)) != len(self.domains) or not self.domains:
            raise InputError("framework domains must be a non-empty list of distinct names")
        if self.levels < 1:
            raise InputError("framework needs at least one maturity level")
        filled: dict[tuple[str, str, int], str] = {}
        for cell in CELLS:
            for domain in self.domains:
                for level in range(1, self.levels + 1):
                    key = (cell, domain, level)
                    filled[key] = self.questions.get(key) or _default_question(*key)
        for key in self.questions:
            if key not in filled:
                raise InputError(f"question {key} is outside the framework grid")
        object.__setattr__(self, "questions", filled)

    def question(self, cell: str, domain: str, level: int) -> str:
        try:
            return self.questions[(cell, domain, level)]
        except KeyError:
            raise InputError(f"unknown question ({cell}, {domain}, LV{level})") from None

    def has_question(self, cell: str, domain: str, level: int) -> bool:
        return (cell, domain, level) in self.questions


@dataclass(frozen=True)
class AggregationWeights:
    """Per-level probabilities of avoiding a drift once that level is reached.

    Weights must lie in [0,1] and may sum to at most 1; a sum below 1 leaves
    a residual drift floor even at full maturity and is allowed with a
    warning.
    """

    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        weights = tuple(float(w) for w in self.weights)
        object.__setattr__(self, "weights", weights)
        if any(w < 0.0 or w > 1.0 for w in weights):
            raise InputError("aggregation weights must lie in [0,1]")
        total = sum(weights)
        if total > 1.0 + 1e-9:
            raise InputError(f"aggregation weights sum to {total:.12g} > 1")
        if total < 1.0 - 1e-9:
            warnings.warn(
                f"aggregation weights sum to {total:.12g}; the residual "
                f"{1.0 - total:.12g} acts as an irreducible drift floor",
                stacklevel=2,
            )

    @property
    def levels(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class DriftFactorSpec:
    """One drift cause, mapped to the framework cell and domain that govern it."""

    id: str
    label: str
    cell: str
    domain: str

    def __post_init__(self) -> None:
        cell_name(self.cell)


@dataclass(frozen=True)
class Assessment:
    """A (possibly partial) set of Yes/No answers to framework questions."""

    answers: Mapping[tuple[str, str, int], str] = field(default_factory=dict)
    assessor: str = ""
    date: str = ""

    def __post_init__(self) -> None:
        answers = dict(self.answers)
        for key, value in answers.items():
            if value not in MATURITY_STATES:
                raise InputError(f"answer for {key} must be Yes or No, got {value!r}")
        object.__setattr__(self, "answers", answers)

    def __len__(self) -> int:
        return len(self.answers)


def drift_cpt_from_weights(
    weights: AggregationWeights,
    child: str = "drift",
    parents: tuple[str, ...] | None = None,
) -> Cpt:
    """Build a drift-factor CPT from aggregation weights.

    One binary row per configuration of the level parents, enumerated with
    the highest level varying fastest.  For a configuration with answer set
    S of levels at Yes: P(False) = sum of the weights of S and
    P(True) = 1 - P(False); with weights summing to 1 this forces
    P(True)=0 at full maturity and P(True)=1 at none.
    """
    n = weights.levels
    if parents is None:
        parents = tuple(f"LV{k}" for k in range(1, n + 1))
    if len(parents) != n:
        raise InputError(f"{len(parents)} parents for {n} weights")

    rows = np.empty((2 ** n, 2), dtype=np.float64)
    for idx in range(2 ** n):
        avoided = 0.0
        for pos in range(n):
            # bit of parent `pos` (level pos+1); last parent varies fastest
            if (idx >> (n - 1 - pos)) & 1:
                avoided += weights.weights[pos]
        rows[idx, 0] = 1.0 - avoided  # drift True
        rows[idx, 1] = avoided        # drift False
    return Cpt(child, parents, rows)


def maturity_parents(spec: DriftFactorSpec, levels: int) -> tuple[str, ...]:
    return tuple(question_key(spec.cell, spec.domain, k) for k in range(1, levels + 1))


def build_network(
    framework: MaturityFramework,
    drifts: list[DriftFactorSpec] | tuple[DriftFactorSpec, ...],
    weights: AggregationWeights,
    target: Cpt,
    target_states: tuple[str, ...] | None = None,
) -> Network:
    """Assemble the full maturity -> drift -> target network.

    Maturity nodes are keyed by (cell, domain, level) and shared among drift
    factors mapped to the same cell and domain, so one assessment answer
    constrains every drift it governs.  Maturity roots carry uniform priors;
    each drift node gets the weights-derived CPT over its five level
    parents; the target node takes the supplied CPT, whose parents must be
    exactly the drift ids in the listed order.
    """
    if weights.levels != framework.levels:
        raise InputError(
            f"weights cover {weights.levels} levels but the framework defines {framework.levels}"
        )
    seen: set[str] = set()
    for spec in drifts:
        if spec.id in seen:
            raise InputError(f"duplicate drift factor id {spec.id!r}")
        seen.add(spec.id)
        if spec.domain not in framework.domains:
            raise InputError(
                f"drift {spec.id!r} references domain {spec.domain!r} not in the framework"
            )
    expected_parents = tuple(spec.id for spec in drifts)
    if target.parents != expected_parents:
        raise InputError(
            "target CPT parents must be exactly the drift ids in catalogue order"
        )
    if target_states is None:
        from .learning import BAND_LABELS

        target_states = BAND_LABELS
    if target.child in seen:
        raise InputError(f"target id {target.child!r} collides with a drift id")

    # deterministic node order: maturity cells by grid position, then drifts,
    # then the target
    referenced = sorted(
        {(spec.cell, spec.domain) for spec in drifts},
        key=lambda cd: (CELLS.index(cd[0]), framework.domains.index(cd[1])),
    )
    variables: list[Variable] = []
    cpts: list[Cpt] = []
    uniform = np.array([[0.5, 0.5]])
    for cell, domain in referenced:
        for level in range(1, framework.levels + 1):
            node = question_key(cell, domain, level)
            variables.append(Variable(node, MATURITY_STATES))
            cpts.append(Cpt(node, (), uniform))

    for spec in drifts:
        variables.append(Variable(spec.id, DRIFT_STATES))
        cpts.append(
            drift_cpt_from_weights(weights, child=spec.id, parents=maturity_parents(spec, framework.levels))
        )

    variables.append(Variable(target.child, target_states))
    cpts.append(target)

    net = Network(tuple(variables), tuple(cpts))
    report = validate_network(net)
    if not report.ok:
        raise InputError(f"assembled network is invalid:\n{report}")
    return net


def assessment_to_evidence(framework: MaturityFramework, assessment: Assessment) -> Evidence:
    """Turn answered questions into evidence on their maturity nodes.

    Unanswered questions yield no binding; an answer to a question outside
    the framework is an error.
    """
    bindings: dict[str, str] = {}
    for (cell, domain, level), value in assessment.answers.items():
        if not framework.has_question(cell, domain, level):
            raise InputError(f"unknown question ({cell}, {domain}, LV{level})")
        bindings[question_key(cell, domain, level)] = value
    return Evidence(bindings)
