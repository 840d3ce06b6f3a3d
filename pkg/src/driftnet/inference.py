"""Exact posterior computation by factor-based variable elimination.

Factors are dense non-negative tables over an ordered variable scope; the
value array has one axis per scope variable, so the flat C-order layout is
the mixed-radix enumeration of scope states with the last variable varying
fastest.  Both query directions (prediction down the arcs, diagnosis against
them) are the same ``posterior`` call with different query/evidence roles.

Elimination order is greedy min-fill over the moralized graph with evidence
variables removed; ties break lexicographically so runs are reproducible
bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import ImpossibleEvidenceError, InputError
from .network import (
    Cpt,
    Distribution,
    Evidence,
    Network,
    as_evidence,
)


@dataclass(frozen=True, eq=False)
class Factor:
    """An unnormalized table over an ordered scope of variables.

    ``values`` carries one axis per scope variable (axis order = scope
    order); ``states`` keeps each scope variable's state labels so that
    operations can check alignment.
    """

    scope: tuple[str, ...]
    states: tuple[tuple[str, ...], ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "scope", tuple(self.scope))
        object.__setattr__(self, "states", tuple(tuple(s) for s in self.states))
        values = np.asarray(self.values, dtype=np.float64)
        if len(self.scope) != len(self.states):
            raise InputError("factor scope and state lists disagree in length")
        if len(set(self.scope)) != len(self.scope):
            raise InputError("factor scope contains a repeated variable")
        expected = tuple(len(s) for s in self.states)
        if values.shape != expected:
            raise InputError(f"factor values have shape {values.shape}, expected {expected}")
        if np.any(values < 0.0):
            raise InputError("factor values must be non-negative")
        values = values.copy(order="C")  # keeps 0-d scalars 0-d
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def states_of(self, variable: str) -> tuple[str, ...]:
        return self.states[self.scope.index(variable)]

    def total_mass(self) -> float:
        return float(self.values.sum())


def factor_from_cpt(net: Network, cpt: Cpt) -> Factor:
    """View a CPT as a factor over (parents..., child)."""
    scope = cpt.parents + (cpt.child,)
    states = tuple(net.variable(v).states for v in scope)
    shape = tuple(len(s) for s in states)
    return Factor(scope, states, cpt.table.reshape(shape))


def factor_product(a: Factor, b: Factor) -> Factor:
    """Pointwise product over the union scope (a's variables first)."""
    for v in a.scope:
        if v in b.scope and a.states_of(v) != b.states_of(v):
            raise InputError(f"factors disagree on the states of {v!r}")
    scope = a.scope + tuple(v for v in b.scope if v not in a.scope)
    states = a.states + tuple(b.states[b.scope.index(v)] for v in scope[len(a.scope):])

    def aligned(f: Factor) -> np.ndarray:
        extra = len(scope) - len(f.scope)
        arr = f.values.reshape(f.values.shape + (1,) * extra)
        destinations = [scope.index(v) for v in f.scope]
        return np.moveaxis(arr, range(len(f.scope)), destinations)

    return Factor(scope, states, aligned(a) * aligned(b))


def factor_marginalize(f: Factor, variable: str) -> Factor:
    """Sum the named variable out of the factor; total mass is preserved."""
    if variable not in f.scope:
        raise InputError(f"{variable!r} is not in the factor scope")
    axis = f.scope.index(variable)
    scope = f.scope[:axis] + f.scope[axis + 1:]
    states = f.states[:axis] + f.states[axis + 1:]
    return Factor(scope, states, f.values.sum(axis=axis))


def factor_reduce(f: Factor, evidence: Evidence | Mapping[str, str] | None) -> Factor:
    """Slice the factor down to the rows consistent with the evidence.

    Evidence variables outside the scope are ignored; evidence variables in
    the scope are removed from it.
    """
    ev = as_evidence(evidence)
    scope = list(f.scope)
    states = list(f.states)
    values = f.values
    for variable, state in ev.items():
        if variable not in scope:
            continue
        axis = scope.index(variable)
        try:
            idx = states[axis].index(state)
        except ValueError:
            raise InputError(f"{state!r} is not a state of variable {variable!r}") from None
        values = np.take(values, idx, axis=axis)
        del scope[axis]
        del states[axis]
    return Factor(tuple(scope), tuple(states), values)


@dataclass(frozen=True)
class EliminationPlan:
    """The sequence of variables to sum out for one query."""

    order: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", tuple(self.order))
        if len(set(self.order)) != len(self.order):
            raise InputError("elimination order repeats a variable")


def _moral_graph(net: Network) -> dict[str, set[str]]:
    adj: dict[str, set[str]] = {v.id: set() for v in net.variables}
    for cpt in net.cpts:
        family = [p for p in cpt.parents if p in adj]
        if cpt.child in adj:
            family.append(cpt.child)
        for i, u in enumerate(family):
            for w in family[i + 1:]:
                if u != w:
                    adj[u].add(w)
                    adj[w].add(u)
    return adj


def _fill_count(adj: dict[str, set[str]], v: str) -> int:
    neighbors = sorted(adj[v])
    count = 0
    for i, u in enumerate(neighbors):
        for w in neighbors[i + 1:]:
            if w not in adj[u]:
                count += 1
    return count


def elimination_order(
    net: Network,
    query: str,
    evidence: Evidence | Mapping[str, str] | None = None,
) -> EliminationPlan:
    """Greedy min-fill order over the moral graph, evidence pre-removed.

    The query variable stays in the graph (its edges count toward fill) but
    is never eliminated.  Ties break on the lexicographically smallest id.
    """
    ev = as_evidence(evidence)
    net.variable(query)
    adj = _moral_graph(net)
    for variable in ev.bindings:
        if variable in adj:
            for u in adj[variable]:
                adj[u].discard(variable)
            del adj[variable]

    order: list[str] = []
    candidates = sorted(v for v in adj if v != query)
    while candidates:
        best = min(candidates, key=lambda v: (_fill_count(adj, v), v))
        # connect the eliminated variable's neighborhood
        neighbors = sorted(adj[best])
        for i, u in enumerate(neighbors):
            for w in neighbors[i + 1:]:
                adj[u].add(w)
                adj[w].add(u)
        for u in neighbors:
            adj[u].discard(best)
        del adj[best]
        order.append(best)
        candidates.remove(best)
    return EliminationPlan(tuple(order))


def _check_plan(net: Network, query: str, ev: Evidence, plan: EliminationPlan) -> None:
    expected = {v.id for v in net.variables} - {query} - set(ev.bindings)
    got = set(plan.order)
    if query in got:
        raise InputError("elimination plan includes the query variable")
    if got & set(ev.bindings):
        raise InputError("elimination plan includes an evidence variable")
    if got != expected:
        raise InputError("elimination plan must cover every other variable exactly once")


def posterior(
    net: Network,
    query: str,
    evidence: Evidence | Mapping[str, str] | None = None,
    plan: EliminationPlan | None = None,
) -> Distribution:
    """Exact posterior P(query | evidence) by variable elimination.

    Matches :func:`driftnet.network.brute_force_posterior` to 1e-9 on any
    network small enough for the oracle.  Evidence with probability zero
    raises :class:`ImpossibleEvidenceError`.
    """
    ev = as_evidence(evidence)
    query_var = net.variable(query)
    if query in ev:
        raise InputError(f"query variable {query!r} is bound in the evidence")
    for var_id, state in ev.items():
        net.variable(var_id).state_index(state)

    if plan is None:
        plan = elimination_order(net, query, ev)
    else:
        _check_plan(net, query, ev, plan)

    scalar = 1.0
    factors: list[Factor] = []
    for cpt in net.cpts:
        reduced = factor_reduce(factor_from_cpt(net, cpt), ev)
        if reduced.scope:
            factors.append(reduced)
        else:
            scalar *= float(reduced.values)

    for variable in plan.order:
        related = [f for f in factors if variable in f.scope]
        if not related:
            continue
        product = related[0]
        for f in related[1:]:
            product = factor_product(product, f)
        summed = factor_marginalize(product, variable)
        factors = [f for f in factors if variable not in f.scope]
        if summed.scope:
            factors.append(summed)
        else:
            scalar *= float(summed.values)

    result = np.ones(query_var.cardinality, dtype=np.float64) * scalar
    for f in factors:
        if f.scope != (query,):
            raise InputError(f"factor over {f.scope} survived elimination")
        result = result * f.values

    total = float(result.sum())
    if total == 0.0:
        raise ImpossibleEvidenceError("evidence has probability 0 under the model")
    return Distribution(query, query_var.states, result / total)
