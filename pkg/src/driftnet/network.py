"""Discrete Bayesian-network representation, validation and enumeration oracle.

A network is a directed acyclic graph of categorical variables, each owning
exactly one conditional probability table (CPT).  CPT rows are indexed by
mixed-radix enumeration of the parent states with the LAST listed parent
varying fastest; columns follow the child's state order.  A valid row sums
to 1 within ``ROW_SUM_TOL``.

All types here are immutable after construction and safe to share across
concurrent readers.  ``brute_force_posterior`` is the exhaustive-enumeration
oracle used to verify the variable-elimination engine; it deliberately stays
independent of the factor machinery in :mod:`driftnet.inference`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping

import numpy as np

from .errors import ImpossibleEvidenceError, InputError, StateSpaceError

ROW_SUM_TOL = 1e-9

# Hard cap on joint configurations the enumeration oracle will visit.
MAX_ORACLE_CONFIGURATIONS = 2 ** 24

CATEGORY_CYCLE = "cycle"
CATEGORY_MISSING_CPT = "missing CPT"
CATEGORY_ROW_SUM = "row-sum"
CATEGORY_DIMENSION = "dimension mismatch"
CATEGORY_DANGLING_PARENT = "dangling parent"


def mixed_radix_index(digits: tuple[int, ...], radices: tuple[int, ...]) -> int:
    """Flat index of a digit vector, last digit varying fastest."""
    idx = 0
    for digit, radix in zip(digits, radices):
        idx = idx * radix + digit
    return idx


def enumerate_configurations(radices: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Yield digit vectors in mixed-radix order (last digit fastest)."""
    return itertools.product(*(range(r) for r in radices))


@dataclass(frozen=True)
class Variable:
    """A named categorical variable with a fixed, ordered state list.

    The state order is set at construction and defines CPT column order
    everywhere this variable appears.
    """

    id: str
    states: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        if len(self.states) < 2:
            raise InputError(f"variable {self.id!r} needs at least 2 states")
        if len(set(self.states)) != len(self.states):
            raise InputError(f"variable {self.id!r} has duplicate state labels")

    @property
    def cardinality(self) -> int:
        return len(self.states)

    def state_index(self, state: str) -> int:
        try:
            return self.states.index(state)
        except ValueError:
            raise InputError(f"{state!r} is not a state of variable {self.id!r}") from None


@dataclass(frozen=True, eq=False)
class Cpt:
    """Conditional probability table for one child variable.

    ``table`` holds one row per parent configuration and one column per child
    state.  Construction only enforces that the table is a rectangular 2-D
    array; probabilistic and dimensional soundness are reported (not raised)
    by :func:`validate_network`, so that diagnostics can describe broken
    inputs instead of refusing to represent them.
    """

    child: str
    parents: tuple[str, ...]
    table: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "parents", tuple(self.parents))
        table = np.asarray(self.table, dtype=np.float64)
        if table.ndim != 2:
            raise InputError(f"CPT for {self.child!r} must be a 2-D table")
        table = np.ascontiguousarray(table)
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    @property
    def n_rows(self) -> int:
        return self.table.shape[0]

    @property
    def n_columns(self) -> int:
        return self.table.shape[1]


@dataclass(frozen=True)
class Evidence:
    """Observed states clamped into the network before inference.

    At most one binding per variable (enforced by the mapping container).
    Bindings are validated against a concrete network by the operations that
    consume them.
    """

    bindings: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "bindings", dict(self.bindings))

    def __contains__(self, variable: str) -> bool:
        return variable in self.bindings

    def __len__(self) -> int:
        return len(self.bindings)

    def __getitem__(self, variable: str) -> str:
        return self.bindings[variable]

    def items(self):
        return self.bindings.items()

    def get(self, variable: str, default=None):
        return self.bindings.get(variable, default)


def as_evidence(evidence: Evidence | Mapping[str, str] | None) -> Evidence:
    """Coerce a plain mapping (or None) into an :class:`Evidence`."""
    if evidence is None:
        return Evidence({})
    if isinstance(evidence, Evidence):
        return evidence
    return Evidence(evidence)


@dataclass(frozen=True, eq=False)
class Distribution:
    """A normalized probability distribution over one variable's states."""

    variable: str
    states: tuple[str, ...]
    probabilities: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        probs = np.asarray(self.probabilities, dtype=np.float64)
        if probs.shape != (len(self.states),):
            raise InputError(
                f"distribution over {self.variable!r} needs one value per state"
            )
        if np.any(probs < -ROW_SUM_TOL) or np.any(probs > 1 + ROW_SUM_TOL):
            raise InputError(f"distribution over {self.variable!r} has values outside [0,1]")
        if abs(float(probs.sum()) - 1.0) > ROW_SUM_TOL:
            raise InputError(f"distribution over {self.variable!r} does not sum to 1")
        probs = np.ascontiguousarray(probs)
        probs.setflags(write=False)
        object.__setattr__(self, "probabilities", probs)

    def prob(self, state: str) -> float:
        return float(self.probabilities[self.states.index(state)])

    def as_dict(self) -> dict[str, float]:
        return {s: float(p) for s, p in zip(self.states, self.probabilities)}


@dataclass(frozen=True)
class Violation:
    """One validation finding: which variable, what category, and details."""

    variable: str
    category: str
    message: str

    def __str__(self) -> str:
        return f"[{self.category}] {self.variable}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __iter__(self) -> Iterator[Violation]:
        return iter(self.violations)

    def __len__(self) -> int:
        return len(self.violations)

    def categories(self) -> set[str]:
        return {v.category for v in self.violations}

    def __str__(self) -> str:
        if self.ok:
            return "network is valid"
        return "\n".join(str(v) for v in self.violations)


@dataclass(frozen=True, eq=False)
class Network:
    """A collection of variables and one CPT per variable.

    Construction rejects duplicate variable ids and duplicate CPTs outright
    (the object would be ambiguous); every other defect is representable and
    reported by :func:`validate_network`.
    """

    variables: tuple[Variable, ...]
    cpts: tuple[Cpt, ...]
    _var_map: dict[str, Variable] = field(init=False, repr=False, compare=False)
    _cpt_map: dict[str, Cpt] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "cpts", tuple(self.cpts))
        var_map: dict[str, Variable] = {}
        for v in self.variables:
            if v.id in var_map:
                raise InputError(f"duplicate variable id {v.id!r}")
            var_map[v.id] = v
        cpt_map: dict[str, Cpt] = {}
        for c in self.cpts:
            if c.child in cpt_map:
                raise InputError(f"duplicate CPT for variable {c.child!r}")
            cpt_map[c.child] = c
        object.__setattr__(self, "_var_map", var_map)
        object.__setattr__(self, "_cpt_map", cpt_map)

    def variable(self, var_id: str) -> Variable:
        try:
            return self._var_map[var_id]
        except KeyError:
            raise InputError(f"unknown variable {var_id!r}") from None

    def cpt(self, var_id: str) -> Cpt:
        try:
            return self._cpt_map[var_id]
        except KeyError:
            raise InputError(f"variable {var_id!r} has no CPT") from None

    def has_variable(self, var_id: str) -> bool:
        return var_id in self._var_map

    def parents_of(self, var_id: str) -> tuple[str, ...]:
        cpt = self._cpt_map.get(var_id)
        return cpt.parents if cpt is not None else ()

    def variable_ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.variables)

    def roots(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.variables if not self.parents_of(v.id))

    def topological_order(self) -> tuple[str, ...]:
        """Parents-before-children order; raises on cycles."""
        in_deg = {v.id: 0 for v in self.variables}
        children: dict[str, list[str]] = {v.id: [] for v in self.variables}
        for c in self.cpts:
            for p in c.parents:
                if p in in_deg and c.child in in_deg:
                    in_deg[c.child] += 1
                    children[p].append(c.child)
        ready = sorted(v for v, d in in_deg.items() if d == 0)
        order: list[str] = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for ch in children[v]:
                in_deg[ch] -= 1
                if in_deg[ch] == 0:
                    # keep the order deterministic under equal readiness
                    ready.append(ch)
                    ready.sort()
        if len(order) != len(self.variables):
            raise InputError("network contains a cycle")
        return tuple(order)

    def joint_size(self) -> int:
        size = 1
        for v in self.variables:
            size *= v.cardinality
        return size


def validate_network(net: Network) -> ValidationReport:
    """Collect every structural and probabilistic violation in ``net``.

    An empty report means the network is a well-formed DAG whose CPTs have
    the right shape, entries in [0,1] and rows summing to 1 within
    ``ROW_SUM_TOL``.
    """
    violations: list[Violation] = []
    known = {v.id for v in net.variables}

    for v in net.variables:
        if v.id not in net._cpt_map:
            violations.append(Violation(v.id, CATEGORY_MISSING_CPT, "no CPT defined"))

    for cpt in net.cpts:
        if cpt.child not in known:
            violations.append(
                Violation(cpt.child, CATEGORY_DANGLING_PARENT, "CPT child is not a declared variable")
            )
            continue
        missing = [p for p in cpt.parents if p not in known]
        for p in missing:
            violations.append(
                Violation(cpt.child, CATEGORY_DANGLING_PARENT, f"parent {p!r} is not a declared variable")
            )
        child = net.variable(cpt.child)
        if cpt.n_columns != child.cardinality:
            violations.append(
                Violation(
                    cpt.child,
                    CATEGORY_DIMENSION,
                    f"{cpt.n_columns} columns for {child.cardinality} child states",
                )
            )
        if not missing:
            expected_rows = 1
            for p in cpt.parents:
                expected_rows *= net.variable(p).cardinality
            if cpt.n_rows != expected_rows:
                violations.append(
                    Violation(
                        cpt.child,
                        CATEGORY_DIMENSION,
                        f"{cpt.n_rows} rows for {expected_rows} parent configurations",
                    )
                )
        out_of_range = np.any((cpt.table < 0.0) | (cpt.table > 1.0), axis=1)
        sums = cpt.table.sum(axis=1)
        for i in np.nonzero(out_of_range)[0]:
            violations.append(
                Violation(cpt.child, CATEGORY_ROW_SUM, f"row {i} has entries outside [0,1]")
            )
        for i in np.nonzero(~out_of_range & (np.abs(sums - 1.0) > ROW_SUM_TOL))[0]:
            violations.append(
                Violation(cpt.child, CATEGORY_ROW_SUM, f"row {i} sums to {sums[i]:.12g}")
            )

    # Cycle detection over edges among declared variables only.
    in_deg = {v: 0 for v in known}
    children: dict[str, list[str]] = {v: [] for v in known}
    for cpt in net.cpts:
        if cpt.child not in known:
            continue
        for p in cpt.parents:
            if p in known:
                in_deg[cpt.child] += 1
                children[p].append(cpt.child)
    ready = [v for v, d in in_deg.items() if d == 0]
    removed = 0
    while ready:
        v = ready.pop()
        removed += 1
        for ch in children[v]:
            in_deg[ch] -= 1
            if in_deg[ch] == 0:
                ready.append(ch)
    if removed != len(known):
        for v in sorted(v for v, d in in_deg.items() if d > 0):
            violations.append(Violation(v, CATEGORY_CYCLE, "variable lies on a directed cycle"))

    return ValidationReport(tuple(violations))


def _assignment_indices(net: Network, assignment: Mapping[str, str]) -> dict[str, int]:
    indices: dict[str, int] = {}
    for var_id, state in assignment.items():
        var = net.variable(var_id)
        indices[var_id] = var.state_index(state)
    return indices


def joint_probability(net: Network, assignment: Mapping[str, str]) -> float:
    """Chain-rule product of the CPT entries selected by a full assignment."""
    indices = _assignment_indices(net, assignment)
    for v in net.variables:
        if v.id not in indices:
            raise InputError(f"assignment does not bind variable {v.id!r}")
    prob = 1.0
    for v in net.variables:
        cpt = net.cpt(v.id)
        radices = tuple(net.variable(p).cardinality for p in cpt.parents)
        digits = tuple(indices[p] for p in cpt.parents)
        row = mixed_radix_index(digits, radices)
        prob *= float(cpt.table[row, indices[v.id]])
    return prob


def brute_force_posterior(
    net: Network,
    query: str,
    evidence: Evidence | Mapping[str, str] | None = None,
) -> Distribution:
    """Exact posterior by exhaustive enumeration of the joint distribution.

    This is the testing oracle: it sums :func:`joint_probability` over every
    full assignment consistent with the evidence and normalizes per query
    state.  It refuses joint state spaces above ``MAX_ORACLE_CONFIGURATIONS``.
    """
    ev = as_evidence(evidence)
    query_var = net.variable(query)
    if query in ev:
        raise InputError(f"query variable {query!r} is bound in the evidence")
    for var_id, state in ev.items():
        net.variable(var_id).state_index(state)  # raises on unknown var/state

    if net.joint_size() > MAX_ORACLE_CONFIGURATIONS:
        raise StateSpaceError(
            f"joint state space of {net.joint_size()} configurations exceeds "
            f"the oracle cap of {MAX_ORACLE_CONFIGURATIONS}"
        )

    free_vars = [v for v in net.variables if v.id not in ev]
    fixed = {var_id: state for var_id, state in ev.items()}
    sums = np.zeros(query_var.cardinality, dtype=np.float64)
    for combo in itertools.product(*(v.states for v in free_vars)):
        assignment = dict(fixed)
        assignment.update({v.id: s for v, s in zip(free_vars, combo)})
        sums[query_var.state_index(assignment[query])] += joint_probability(net, assignment)

    total = float(sums.sum())
    if total == 0.0:
        raise ImpossibleEvidenceError("evidence has probability 0 under the model")
    return Distribution(query, query_var.states, sums / total)
