"""driftnet: discrete Bayesian networks linking project-management maturity
to the probability of project cost overrun.

The package provides a generic exact-inference engine (``network``,
``inference``), the maturity/drift-factor model construction rules
(``maturity``), data-driven learning of the overcost node (``learning``),
decision-support queries (``simulation``), file formats (``jsonio``,
``xmlbif``), and a CLI plus HTTP facade (``cli``, ``server``).
"""

from .errors import (
    DegenerateDataError,
    DriftnetError,
    FormatError,
    ImpossibleEvidenceError,
    InputError,
    StateSpaceError,
)
from .network import (
    Cpt,
    Distribution,
    Evidence,
    Network,
    ValidationReport,
    Variable,
    Violation,
    brute_force_posterior,
    joint_probability,
    validate_network,
)
from .inference import (
    EliminationPlan,
    Factor,
    elimination_order,
    factor_marginalize,
    factor_product,
    factor_reduce,
    posterior,
)
from .maturity import (
    AggregationWeights,
    Assessment,
    DriftFactorSpec,
    MaturityFramework,
    assessment_to_evidence,
    build_network,
    drift_cpt_from_weights,
)
from .learning import (
    EventRecord,
    NaiveBayesModel,
    OvercostBand,
    bin_overcost,
    compile_target_cpt,
    generate_synthetic_events,
    ingest_events,
    learn_naive_bayes,
    normalize_loss,
)
from .simulation import (
    SweepTable,
    WhatIfResult,
    maturity_sweep,
    model_roles,
    rank_actions,
    what_if,
)

__version__ = "0.1.0"

__all__ = [
    "AggregationWeights",
    "Assessment",
    "Cpt",
    "DegenerateDataError",
    "Distribution",
    "DriftFactorSpec",
    "DriftnetError",
    "EliminationPlan",
    "Evidence",
    "EventRecord",
    "Factor",
    "FormatError",
    "ImpossibleEvidenceError",
    "InputError",
    "MaturityFramework",
    "NaiveBayesModel",
    "Network",
    "OvercostBand",
    "StateSpaceError",
    "SweepTable",
    "ValidationReport",
    "Variable",
    "Violation",
    "WhatIfResult",
    "assessment_to_evidence",
    "bin_overcost",
    "brute_force_posterior",
    "build_network",
    "compile_target_cpt",
    "drift_cpt_from_weights",
    "elimination_order",
    "factor_marginalize",
    "factor_product",
    "factor_reduce",
    "generate_synthetic_events",
    "ingest_events",
    "joint_probability",
    "learn_naive_bayes",
    "maturity_sweep",
    "model_roles",
    "normalize_loss",
    "posterior",
    "rank_actions",
    "validate_network",
    "what_if",
]
