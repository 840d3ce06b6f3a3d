"""Overcost event ingestion, naive-Bayes learning and target-CPT compilation.

Loss events are normalized to percent of project cost and binned into four
overcost bands (<1%, 1-10%, 10-100%, >100%).  A naive-Bayes model over the
bands with one binary feature per drift factor is learned from the events
and then inverted, row by row over all drift configurations, into the CPT
of the target node so the overcost variable becomes a child of the drift
factors.  A seed-deterministic synthetic-event generator stands in for the
confidential project database.
"""

from __future__ import annotations

import csv
import enum
import io
import os
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DegenerateDataError, FormatError, InputError
from .network import Cpt

BAND_LABELS = ("P_1", "P_1_10", "P_10_100", "P_100")

EVENT_HEADER = ("project_id", "description", "drift_id", "loss", "project_cost")


class OvercostBand(str, enum.Enum):
    """The four normalized-loss bands, ordered from mildest to worst."""

    P_1 = "P_1"
    P_1_10 = "P_1_10"
    P_10_100 = "P_10_100"
    P_100 = "P_100"

    @property
    def index(self) -> int:
        return BAND_LABELS.index(self.value)


@dataclass(frozen=True)
class EventRecord:
    """One loss event: which project, which drift, how much money."""

    project_id: str
    description: str
    drift_id: str
    loss: float
    project_cost: float

    def __post_init__(self) -> None:
        if self.project_cost <= 0:
            raise InputError("nonpositive project cost")
        if self.loss < 0:
            raise InputError("negative loss")


def normalize_loss(record: EventRecord) -> float:
    """Loss as percent of project cost."""
    return 100.0 * record.loss / record.project_cost


def bin_overcost(loss_pct: float) -> OvercostBand:
    """Bin a percent loss into its band; bands are left-closed/right-open."""
    if loss_pct < 0:
        raise InputError("loss percentage must be non-negative")
    if loss_pct < 1.0:
        return OvercostBand.P_1
    if loss_pct < 10.0:
        return OvercostBand.P_1_10
    if loss_pct < 100.0:
        return OvercostBand.P_10_100
    return OvercostBand.P_100


@dataclass(frozen=True)
class RejectedRow:
    line: int
    reason: str
    raw: str


@dataclass(frozen=True)
class IngestResult:
    records: tuple[EventRecord, ...]
    rejects: tuple[RejectedRow, ...]

    def rejects_report(self) -> str:
        return "\n".join(f"line {r.line}: {r.reason}: {r.raw}" for r in self.rejects)


def ingest_events(
    source: str | os.PathLike | io.TextIOBase,
    catalogue: Sequence[str] | None = None,
) -> IngestResult:
    """Parse an event CSV, collecting malformed rows instead of failing.

    The header must match ``project_id,description,drift_id,loss,project_cost``
    exactly (a mismatch is a format error).  Rows that cannot be parsed or
    violate the record invariants land in the rejects report with their line
    number; when a drift catalogue is given, rows naming unknown drifts are
    rejected too.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, "r", encoding="utf-8", newline="") as fh:
            return ingest_events(fh, catalogue)

    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise FormatError("event file is empty") from None
    if tuple(h.strip() for h in header) != EVENT_HEADER:
        raise FormatError(
            f"event file header {header} does not match {','.join(EVENT_HEADER)}"
        )

    known = set(catalogue) if catalogue is not None else None
    records: list[EventRecord] = []
    rejects: list[RejectedRow] = []
    for row in reader:
        line = reader.line_num
        raw = ",".join(row)
        if not row:
            continue
        if len(row) != len(EVENT_HEADER):
            rejects.append(RejectedRow(line, f"expected {len(EVENT_HEADER)} fields, got {len(row)}", raw))
            continue
        project_id, description, drift_id, loss_text, cost_text = row
        try:
            loss = float(loss_text)
            cost = float(cost_text)
        except ValueError:
            rejects.append(RejectedRow(line, "loss and project_cost must be numbers", raw))
            continue
        if cost <= 0:
            rejects.append(RejectedRow(line, "nonpositive project cost", raw))
            continue
        if loss < 0:
            rejects.append(RejectedRow(line, "negative loss", raw))
            continue
        if known is not None and drift_id not in known:
            rejects.append(RejectedRow(line, f"unknown drift id {drift_id!r}", raw))
            continue
        records.append(EventRecord(project_id, description, drift_id, loss, cost))
    return IngestResult(tuple(records), tuple(rejects))


@dataclass(frozen=True, eq=False)
class NaiveBayesModel:
    """Band prior and per-drift presence conditionals, with the smoothing used.

    ``conditionals[i, b]`` is P(drift i present | band b); drift order
    follows ``drift_ids`` and band order follows ``BAND_LABELS``.
    """

    drift_ids: tuple[str, ...]
    prior: np.ndarray
    conditionals: np.ndarray
    alpha: float
    granularity: str = "event"

    def __post_init__(self) -> None:
        object.__setattr__(self, "drift_ids", tuple(self.drift_ids))
        prior = np.ascontiguousarray(np.asarray(self.prior, dtype=np.float64))
        cond = np.ascontiguousarray(np.asarray(self.conditionals, dtype=np.float64))
        if prior.shape != (len(BAND_LABELS),):
            raise InputError("prior needs one probability per band")
        if abs(float(prior.sum()) - 1.0) > 1e-9 or np.any(prior < 0):
            raise InputError("prior must be a distribution over the bands")
        if cond.shape != (len(self.drift_ids), len(BAND_LABELS)):
            raise InputError("conditionals need one row per drift and one column per band")
        if np.any(cond < 0) or np.any(cond > 1):
            raise InputError("conditional probabilities must lie in [0,1]")
        prior.setflags(write=False)
        cond.setflags(write=False)
        object.__setattr__(self, "prior", prior)
        object.__setattr__(self, "conditionals", cond)

    def conditional(self, drift_id: str) -> np.ndarray:
        try:
            return self.conditionals[self.drift_ids.index(drift_id)]
        except ValueError:
            raise InputError(f"model has no drift {drift_id!r}") from None


def _project_instances(
    records: Sequence[EventRecord], catalogue: Sequence[str]
) -> list[tuple[OvercostBand, set[str]]]:
    by_project: dict[str, list[EventRecord]] = {}
    for r in records:
        by_project.setdefault(r.project_id, []).append(r)
    instances = []
    for project_id, rows in by_project.items():
        costs = {r.project_cost for r in rows}
        if len(costs) > 1:
            raise InputError(f"project {project_id!r} has inconsistent project costs")
        total_pct = 100.0 * sum(r.loss for r in rows) / rows[0].project_cost
        instances.append((bin_overcost(total_pct), {r.drift_id for r in rows}))
    return instances


def learn_naive_bayes(
    records: Sequence[EventRecord],
    catalogue: Sequence[str],
    alpha: float = 1.0,
    granularity: str = "event",
) -> NaiveBayesModel:
    """Laplace-smoothed naive Bayes over the overcost bands.

    With event granularity each event is one training instance whose class
    is the band of its own normalized loss and whose feature vector is 1
    for the event's drift and 0 elsewhere.  With project granularity each
    project is one instance: class = band of the project's total overrun,
    features = the drifts that occurred at least once.
    """
    drift_ids = tuple(catalogue)
    if not drift_ids or len(set(drift_ids)) != len(drift_ids):
        raise InputError("drift catalogue must be a non-empty list of distinct ids")
    if alpha < 0:
        raise InputError("smoothing pseudo-count must be non-negative")
    if granularity not in ("event", "project"):
        raise InputError(f"granularity must be 'event' or 'project', got {granularity!r}")
    if not records and alpha == 0:
        raise DegenerateDataError("no training data and no smoothing to fall back on")
    unknown = sorted({r.drift_id for r in records} - set(drift_ids))
    if unknown:
        raise InputError(f"events reference drifts outside the catalogue: {unknown}")

    n_bands = len(BAND_LABELS)
    n_drifts = len(drift_ids)
    drift_index = {d: i for i, d in enumerate(drift_ids)}
    band_counts = np.zeros(n_bands)
    presence = np.zeros((n_drifts, n_bands))

    if granularity == "event":
        for r in records:
            b = bin_overcost(normalize_loss(r)).index
            band_counts[b] += 1
            presence[drift_index[r.drift_id], b] += 1
    else:
        for band, drifts in _project_instances(records, drift_ids):
            band_counts[band.index] += 1
            for d in drifts:
                presence[drift_index[d], band.index] += 1

    total = band_counts.sum()
    prior = (band_counts + alpha) / (total + alpha * n_bands)
    denom = band_counts + 2.0 * alpha
    # an unsmoothed empty band has no presence evidence either: conditional 0
    conditionals = (presence + alpha) / np.where(denom > 0, denom, 1.0)
    return NaiveBayesModel(drift_ids, prior, conditionals, alpha, granularity)


def compile_target_cpt(
    model: NaiveBayesModel,
    drift_ids: Sequence[str],
    child: str = "overcost",
) -> Cpt:
    """Invert the naive-Bayes model into the target node's CPT.

    For each of the 2**n drift configurations the row is proportional to
    prior(band) times the product over drifts of the conditional (drift
    present) or its complement (absent), normalized per row.  Row order is
    mixed-radix over the parents with the last drift varying fastest; the
    parent state order is (True, False).  A configuration with zero mass
    under the model falls back to a uniform row.
    """
    ids = tuple(drift_ids)
    n = len(ids)
    cond = np.vstack([model.conditional(d) for d in ids]) if n else np.zeros((0, len(BAND_LABELS)))
    n_rows = 2 ** n
    scores = np.tile(model.prior, (n_rows, 1))
    row_idx = np.arange(n_rows)
    for i in range(n):
        # parent i's state digit; digit 0 = "True" (drift present)
        digit = (row_idx >> (n - 1 - i)) & 1
        present = (digit == 0)[:, None]
        scores *= np.where(present, cond[i][None, :], 1.0 - cond[i][None, :])
    totals = scores.sum(axis=1, keepdims=True)
    zero = (totals == 0.0).ravel()
    if np.any(zero):
        scores[zero] = 1.0 / len(BAND_LABELS)
        totals[zero] = 1.0
    return Cpt(child, ids, scores / totals)


DEFAULT_BAND_RANGES: dict[str, tuple[float, float]] = {
    "P_1": (0.0, 1.0),
    "P_1_10": (1.0, 10.0),
    "P_10_100": (10.0, 100.0),
    "P_100": (100.0, 250.0),
}

DEFAULT_SEED = 42


def generate_synthetic_events(
    seed: int,
    n_projects: int = 15,
    n_events: int = 459,
    model: NaiveBayesModel | None = None,
    labels: Mapping[str, str] | None = None,
    band_ranges: Mapping[str, tuple[float, float]] | None = None,
) -> str:
    """Deterministically sample an event CSV from a planted model.

    Each event draws its band from the model prior and its single drift from
    the band's conditionals renormalized over the catalogue (one drift per
    event, mirroring the real data's shape); the loss percentage is uniform
    inside the band's range, kept off the edges so rounding the money amount
    to cents cannot change the band.  Same seed, same bytes.
    """
    if n_events < 1:
        raise InputError("need at least one event")
    if n_projects < 1:
        raise InputError("need at least one project")
    if model is None:
        from .bundled import planted_model

        model = planted_model()
    ranges = dict(DEFAULT_BAND_RANGES)
    if band_ranges:
        ranges.update(band_ranges)
    for band, (lo, hi) in ranges.items():
        if not (0 <= lo < hi):
            raise InputError(f"bad loss range for {band}: [{lo}, {hi})")

    rng = np.random.default_rng(seed)
    project_ids = [f"P{i + 1:02d}" for i in range(n_projects)]
    costs = rng.integers(2, 21, size=n_projects) * 1_000_000

    per_band = model.conditionals.T.copy()  # band -> per-drift weights
    for b in range(per_band.shape[0]):
        total = per_band[b].sum()
        per_band[b] = per_band[b] / total if total > 0 else 1.0 / per_band.shape[1]

    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(EVENT_HEADER)
    n_bands = len(BAND_LABELS)
    for _ in range(n_events):
        band = int(rng.choice(n_bands, p=model.prior))
        drift = int(rng.choice(len(model.drift_ids), p=per_band[band]))
        project = int(rng.integers(0, n_projects))
        lo, hi = ranges[BAND_LABELS[band]]
        width = hi - lo
        pct = float(rng.uniform(lo + 0.01 * width, hi - 0.01 * width))
        loss = round(pct / 100.0 * costs[project], 2)
        drift_id = model.drift_ids[drift]
        description = (labels or {}).get(drift_id, f"synthetic {drift_id} event")
        writer.writerow([project_ids[project], description, drift_id, f"{loss:.2f}", int(costs[project])])
    return out.getvalue()
