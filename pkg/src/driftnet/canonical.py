"""Canonical three-node networks and a seeded random-network generator.

The causal chain, common cause and common effect are the three basic DAG
shapes; they double as fixtures for the Bayes-identity and oracle checks.
All variables are binary with states ("T", "F").
"""

from __future__ import annotations

import numpy as np

from .network import Cpt, Network, Variable

TF = ("T", "F")


def _var(name: str) -> Variable:
    return Variable(name, TF)


def _prior(name: str, p_true: float) -> Cpt:
    return Cpt(name, (), np.array([[p_true, 1 - p_true]]))


def causal_chain(
    p_x: float = 0.5,
    p_y_given_x: tuple[float, float] = (0.8, 0.2),
    p_z_given_y: tuple[float, float] = (0.7, 0.3),
) -> Network:
    """X -> Y -> Z.  Conditional tuples give P(child=T | parent=T/F)."""
    return Network(
        (_var("X"), _var("Y"), _var("Z")),
        (
            _prior("X", p_x),
            Cpt("Y", ("X",), np.array([[p_y_given_x[0], 1 - p_y_given_x[0]],
                                       [p_y_given_x[1], 1 - p_y_given_x[1]]])),
            Cpt("Z", ("Y",), np.array([[p_z_given_y[0], 1 - p_z_given_y[0]],
                                       [p_z_given_y[1], 1 - p_z_given_y[1]]])),
        ),
    )


def common_cause(
    p_y: float = 0.4,
    p_x_given_y: tuple[float, float] = (0.9, 0.3),
    p_z_given_y: tuple[float, float] = (0.6, 0.1),
) -> Network:
    """X <- Y -> Z."""
    return Network(
        (_var("X"), _var("Y"), _var("Z")),
        (
            _prior("Y", p_y),
            Cpt("X", ("Y",), np.array([[p_x_given_y[0], 1 - p_x_given_y[0]],
                                       [p_x_given_y[1], 1 - p_x_given_y[1]]])),
            Cpt("Z", ("Y",), np.array([[p_z_given_y[0], 1 - p_z_given_y[0]],
                                       [p_z_given_y[1], 1 - p_z_given_y[1]]])),
        ),
    )


def common_effect(
    p_x: float = 0.3,
    p_y: float = 0.6,
    p_z_given_xy: tuple[float, float, float, float] = (0.95, 0.7, 0.5, 0.05),
) -> Network:
    """X -> Z <- Y.  The conditional tuple covers (TT, TF, FT, FF)."""
    rows = np.array([[p, 1 - p] for p in p_z_given_xy])
    return Network(
        (_var("X"), _var("Y"), _var("Z")),
        (_prior("X", p_x), _prior("Y", p_y), Cpt("Z", ("X", "Y"), rows)),
    )


def basic_trio() -> dict[str, Network]:
    return {
        "causal_chain": causal_chain(),
        "common_cause": common_cause(),
        "common_effect": common_effect(),
    }


def random_network(rng: np.random.Generator, n_vars: int, edge_prob: float = 0.3) -> Network:
    """A random DAG of binary variables with Dirichlet-ish random CPT rows.

    Edges only point from earlier to later ids, so the result is acyclic by
    construction; rows are renormalized uniforms, bounded away from 0 to keep
    random evidence possible.
    """
    names = [f"N{i:02d}" for i in range(n_vars)]
    variables = tuple(_var(n) for n in names)
    cpts = []
    for j, name in enumerate(names):
        parents = tuple(names[i] for i in range(j) if rng.random() < edge_prob)
        raw = rng.uniform(0.05, 1.0, size=(2 ** len(parents), 2))
        cpts.append(Cpt(name, parents, raw / raw.sum(axis=1, keepdims=True)))
    return Network(variables, tuple(cpts))
