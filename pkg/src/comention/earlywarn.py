"""Early-warning model estimation and preference-weighted evaluation.

An evaluator with preference ``mu`` between missing events and issuing
false alarms turns predicted probabilities into signals at a threshold and
scores the resulting contingency counts with the loss

    L(mu) = mu * T1 * P1 + (1 - mu) * T2 * P2

where T1/T2 are type I/II error rates and P1/P2 the unconditional class
frequencies. Absolute Usefulness is the gain over the best trivial policy,
min(mu * P1, (1 - mu) * P2) - L; relative Usefulness expresses that gain as
a share of its maximum.
"""

from __future__ import annotations

import csv
import datetime as _dt
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import scipy.linalg

from .corpus import Period

__all__ = [
    "PanelObservation",
    "Preferences",
    "ContingencyCounts",
    "EvalOutcome",
    "LogitFit",
    "OlsFit",
    "label_pre_distress",
    "fit_logit",
    "fit_ols",
    "contingency",
    "loss",
    "usefulness",
    "optimize_threshold",
    "evaluate",
    "auc",
    "load_panel_csv",
    "load_events_csv",
]


@dataclass(frozen=True)
class PanelObservation:
    """One entity-period row: named features and a binary distress label."""

    entity: str
    period: Period
    features: dict[str, float]
    label: int = 0

    def __post_init__(self) -> None:
        if self.label not in (0, 1):
            raise ValueError("label must be 0 or 1")


@dataclass(frozen=True)
class Preferences:
    """Relative preference mu between missed events and false alarms."""

    mu: float = 0.9

    def __post_init__(self) -> None:
        if not 0.0 <= self.mu <= 1.0:
            raise ValueError("mu must lie in [0, 1]")


@dataclass(frozen=True)
class ContingencyCounts:
    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    @property
    def t1(self) -> float:
        """Share of missed events among events."""
        if self.tp + self.fn == 0:
            raise ValueError("no positive observations; T1 undefined")
        return self.fn / (self.tp + self.fn)

    @property
    def t2(self) -> float:
        """Share of false alarms among tranquil observations."""
        if self.fp + self.tn == 0:
            raise ValueError("no negative observations; T2 undefined")
        return self.fp / (self.fp + self.tn)

    @property
    def p1(self) -> float:
        return (self.tp + self.fn) / self.total

    @property
    def p2(self) -> float:
        return (self.fp + self.tn) / self.total


@dataclass(frozen=True)
class EvalOutcome:
    """Evaluation of one model at one threshold."""

    threshold: float
    counts: ContingencyCounts
    t1: float
    t2: float
    p1: float
    p2: float
    loss: float
    ua: float
    ur: float | None
    auc: float


def _month_index(period: Period) -> int:
    return period.start_month_index()


def label_pre_distress(
    events: dict[str, list],
    panel: list[PanelObservation],
    horizon_months: int = 24,
    keep_post: bool = False,
) -> list[PanelObservation]:
    """Label observations that fall within ``horizon_months`` before an event.

    ``events`` maps entity label to a list of event dates (datetime.date) or
    event periods. An observation is positive when its period starts
    strictly before the event period and within the horizon. Observations
    at or after an entity's first event are dropped unless ``keep_post`` is
    set (then they stay, labeled by any later event windows).
    """
    if horizon_months <= 0:
        raise ValueError("horizon must be positive")
    panel_entities = {obs.entity for obs in panel}
    event_months: dict[str, list[int]] = {}
    for entity, dates in events.items():
        if entity not in panel_entities:
            raise ValueError(f"distress event for unknown entity {entity!r}")
        months = []
        for when in dates:
            if isinstance(when, Period):
                months.append(_month_index(when))
            else:
                kind = panel[0].period.kind if panel else "quarter"
                ordinal = {
                    "quarter": (when.month - 1) // 3 + 1,
                    "month": when.month,
                    "year": 1,
                }.get(kind, 1)
                months.append(_month_index(Period(kind, when.year, ordinal)))
        event_months[entity] = sorted(months)

    labeled: list[PanelObservation] = []
    for obs in panel:
        months = event_months.get(obs.entity, [])
        m = _month_index(obs.period)
        if months and not keep_post and m >= months[0]:
            continue
        positive = any(0 < event - m <= horizon_months for event in months)
        if keep_post and any(event == m for event in months):
            continue  # the distress period itself is never part of the panel
        labeled.append(
            PanelObservation(obs.entity, obs.period, obs.features, int(positive))
        )
    return labeled


def _design(panel: list[PanelObservation], features: list[str]) -> tuple[np.ndarray, np.ndarray]:
    rows = []
    for obs in panel:
        try:
            rows.append([obs.features[name] for name in features])
        except KeyError as exc:
            raise ValueError(f"missing feature column {exc.args[0]!r}") from None
    x = np.column_stack([np.ones(len(panel)), np.array(rows, dtype=float)])
    y = np.array([obs.label for obs in panel], dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("non-finite feature values")
    return x, y


@dataclass(frozen=True)
class LogitFit:
    features: tuple[str, ...]
    coefficients: np.ndarray = field(repr=False)  # intercept first
    probabilities: np.ndarray = field(repr=False)
    converged: bool
    separation: bool
    iterations: int
    log_likelihood: float

    def coefficient(self, name: str) -> float:
        if name == "intercept":
            return float(self.coefficients[0])
        return float(self.coefficients[1 + self.features.index(name)])


def fit_logit(
    panel: list[PanelObservation],
    features: list[str],
    max_iterations: int = 100,
    tolerance: float = 1e-8,
) -> LogitFit:
    """Maximum-likelihood logistic regression via iteratively reweighted LS.

    The intercept is always included. Exactly-zero feature columns are
    tolerated (their coefficient stays 0 under the minimum-norm step);
    genuinely collinear designs are an error. Perfect separation is
    detected, warned about, and flagged on the result.
    """
    x, y = _design(panel, features)
    if y.sum() == 0 or y.sum() == len(y):
        raise ValueError("need at least one positive and one negative label")
    nonzero = [
        i for i in range(1, x.shape[1]) if not np.allclose(x[:, i], 0.0)
    ]
    core = x[:, [0] + nonzero]
    if np.linalg.matrix_rank(core) < core.shape[1]:
        raise ValueError("singular design matrix: collinear feature columns")

    beta = np.zeros(x.shape[1])
    converged = False
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        eta = np.clip(x @ beta, -500, 500)
        p = 1.0 / (1.0 + np.exp(-eta))
        weight = np.clip(p * (1.0 - p), 1e-12, None)
        hessian = x.T @ (x * weight[:, None])
        gradient = x.T @ (y - p)
        step, *_ = np.linalg.lstsq(hessian, gradient, rcond=None)
        beta = beta + step
        if np.abs(step).max() < tolerance:
            converged = True
            break

    eta = x @ beta
    p = 1.0 / (1.0 + np.exp(-np.clip(eta, -500, 500)))
    margin = (2 * y - 1) * eta
    separation = bool(not converged and margin.min() > 0)
    if separation:
        warnings.warn(
            "perfect separation detected; coefficients are not identified",
            RuntimeWarning,
            stacklevel=2,
        )
    ll = float(y @ eta - np.logaddexp(0.0, eta).sum())
    return LogitFit(
        features=tuple(features),
        coefficients=beta,
        probabilities=p,
        converged=converged,
        separation=separation,
        iterations=iterations,
        log_likelihood=ll,
    )


@dataclass(frozen=True)
class OlsFit:
    features: tuple[str, ...]
    coefficients: np.ndarray = field(repr=False)  # intercept first
    r_squared: float
    robust_se: np.ndarray = field(repr=False)

    def coefficient(self, name: str) -> float:
        if name == "intercept":
            return float(self.coefficients[0])
        return float(self.coefficients[1 + self.features.index(name)])


def fit_ols(
    panel: list[PanelObservation],
    target: str,
    features: list[str],
) -> OlsFit:
    """Ordinary least squares with R^2 and HC1 heteroskedasticity-robust SEs.

    Solved through a pivoted QR factorization; rank deficiency raises an
    error naming the collinear columns.
    """
    x, _ = _design(panel, features)
    if any(target not in obs.features for obs in panel):
        raise ValueError(f"missing feature column {target!r}")
    y = np.array([obs.features[target] for obs in panel], dtype=float)
    n, k = x.shape
    if n <= k:
        raise ValueError("need more observations than parameters")
    q, r, pivots = scipy.linalg.qr(x, mode="economic", pivoting=True)
    diag = np.abs(np.diagonal(r))
    rank_tol = diag.max() * max(n, k) * np.finfo(float).eps
    deficient = diag <= rank_tol
    if deficient.any():
        names = ["intercept"] + list(features)
        bad = sorted(names[pivots[i]] for i in np.nonzero(deficient)[0])
        raise ValueError(f"rank-deficient design: collinear columns {bad}")
    beta_pivoted = scipy.linalg.solve_triangular(r, q.T @ y)
    beta = np.empty(k)
    beta[pivots] = beta_pivoted
    fitted = x @ beta
    resid = y - fitted
    ss_res = float(resid @ resid)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r_squared = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    xtx_inv = np.linalg.inv(x.T @ x)
    meat = x.T @ (x * (resid**2)[:, None])
    cov = xtx_inv @ meat @ xtx_inv * (n / (n - k))
    return OlsFit(
        features=tuple(features),
        coefficients=beta,
        r_squared=r_squared,
        robust_se=np.sqrt(np.diagonal(cov)),
    )


def contingency(
    probabilities: np.ndarray, labels: np.ndarray, threshold: float
) -> ContingencyCounts:
    """Tally signals (p > threshold) against outcomes."""
    p = np.asarray(probabilities, dtype=float)
    y = np.asarray(labels)
    if np.any((p < 0) | (p > 1)):
        raise ValueError("probabilities must lie in [0, 1]")
    if not 0.0 <= threshold <= 1.0:
        raise ValueError("threshold must lie in [0, 1]")
    signal = p > threshold
    positive = y == 1
    return ContingencyCounts(
        tp=int(np.sum(signal & positive)),
        fp=int(np.sum(signal & ~positive)),
        fn=int(np.sum(~signal & positive)),
        tn=int(np.sum(~signal & ~positive)),
    )


def loss(counts: ContingencyCounts, prefs: Preferences) -> float:
    """Preference-weighted loss over the contingency counts."""
    return prefs.mu * counts.t1 * counts.p1 + (1 - prefs.mu) * counts.t2 * counts.p2


def usefulness(
    counts: ContingencyCounts, prefs: Preferences
) -> tuple[float, float | None]:
    """Absolute and relative Usefulness; Ur is None when no gain is possible."""
    benchmark = min(prefs.mu * counts.p1, (1 - prefs.mu) * counts.p2)
    ua = benchmark - loss(counts, prefs)
    ur = ua / benchmark if benchmark > 0 else None
    return ua, ur


def _candidate_thresholds(probabilities: np.ndarray) -> list[float]:
    distinct = np.unique(probabilities)
    midpoints = ((distinct[:-1] + distinct[1:]) / 2.0).tolist()
    return [0.0] + midpoints + [1.0]


def optimize_threshold(
    probabilities: np.ndarray, labels: np.ndarray, prefs: Preferences
) -> float:
    """Threshold minimizing the loss; ties resolve to the larger threshold.

    The loss is piecewise constant in the threshold, so scanning midpoints
    between consecutive distinct probabilities (plus the endpoints) covers
    every achievable contingency table.
    """
    best_threshold = None
    best_loss = math.inf
    for candidate in _candidate_thresholds(np.asarray(probabilities, dtype=float)):
        value = loss(contingency(probabilities, labels, candidate), prefs)
        if value < best_loss or (value == best_loss and candidate > best_threshold):
            best_threshold = candidate
            best_loss = value
    return best_threshold


def auc(probabilities: np.ndarray, labels: np.ndarray) -> float:
    """Probability a random positive outranks a random negative, ties at 1/2."""
    p = np.asarray(probabilities, dtype=float)
    y = np.asarray(labels)
    n_pos = int(np.sum(y == 1))
    n_neg = int(np.sum(y == 0))
    if n_pos == 0 or n_neg == 0:
        raise ValueError("AUC needs both classes present")
    order = np.argsort(p, kind="stable")
    ranks = np.empty(len(p), dtype=float)
    sorted_p = p[order]
    i = 0
    while i < len(p):
        j = i
        while j + 1 < len(p) and sorted_p[j + 1] == sorted_p[i]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0  # average rank, 1-based
        i = j + 1
    rank_sum = float(ranks[y == 1].sum())
    return (rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


def load_panel_csv(path: str | Path) -> list[PanelObservation]:
    """Read a panel file: columns entity, period, label, then features."""
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:3]] != ["entity", "period", "label"]:
            raise ValueError(
                f"{path}: header must start with entity,period,label"
            )
        feature_names = [h.strip() for h in header[3:]]
        panel = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ValueError(f"{path}: line {lineno}: wrong column count")
            features = {
                name: float(value)
                for name, value in zip(feature_names, row[3:])
            }
            panel.append(
                PanelObservation(
                    entity=row[0],
                    period=Period.parse(row[1]),
                    features=features,
                    label=int(row[2]),
                )
            )
    return panel


def load_events_csv(path: str | Path) -> dict[str, list]:
    """Read distress events: columns entity, event_date, optional event_type."""
    events: dict[str, list] = {}
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:2]] != ["entity", "event_date"]:
            raise ValueError(f"{path}: header must start with entity,event_date")
        for row in reader:
            if not row:
                continue
            events.setdefault(row[0], []).append(
                _dt.date.fromisoformat(row[1].strip())
            )
    return events


def evaluate(
    probabilities: np.ndarray, labels: np.ndarray, prefs: Preferences
) -> EvalOutcome:
    """Optimize the threshold and assemble the full evaluation outcome."""
    threshold = optimize_threshold(probabilities, labels, prefs)
    counts = contingency(probabilities, labels, threshold)
    ua, ur = usefulness(counts, prefs)
    return EvalOutcome(
        threshold=threshold,
        counts=counts,
        t1=counts.t1,
        t2=counts.t2,
        p1=counts.p1,
        p2=counts.p2,
        loss=loss(counts, prefs),
        ua=ua,
        ur=ur,
        auc=auc(probabilities, labels),
    )
