"""Aggregation of co-occurrence relations into per-period weighted networks."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .cooccur import ContextParams, extract
from .corpus import Article, Period, PeriodKind, assign_period
from .matcher import EntityPatternSet, PatternIndex

__all__ = [
    "CrossSectionNetwork",
    "SmoothingParams",
    "aggregate",
    "smooth",
    "build_dynamic",
]


@dataclass(frozen=True)
class SmoothingParams:
    """Additive smoothing constant for link weights.

    1.0 accentuates relative differences between nodes (rankings); smaller
    values such as 0.2 retain more of the global trend structure.
    """

    alpha: float = 1.0

    def __post_init__(self) -> None:
        if self.alpha < 0:
            raise ValueError("alpha must be nonnegative")


@dataclass(frozen=True)
class CrossSectionNetwork:
    """Weighted undirected network over a fixed node universe for one period.

    ``weights`` is a symmetric matrix with zero diagonal; entries are raw
    co-occurrence counts unless the network has been smoothed.
    """

    period: Period
    nodes: tuple[str, ...]
    weights: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        w = self.weights
        n = len(self.nodes)
        if w.shape != (n, n):
            raise ValueError(f"weight matrix shape {w.shape} != ({n}, {n})")
        if np.any(w < 0):
            raise ValueError("negative link weight")
        if np.any(np.diagonal(w) != 0):
            raise ValueError("diagonal must be zero")
        if not np.array_equal(w, w.T):
            raise ValueError("weight matrix must be symmetric")
        w.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.nodes)

    def index_of(self, label: str) -> int:
        return self.nodes.index(label)

    def total_weight(self) -> float:
        return float(self.weights.sum() / 2.0)


def aggregate(
    relation_counts: Counter,
    period: Period,
    node_universe: Iterable[str],
) -> CrossSectionNetwork:
    """Turn a relation multiset into a weighted network for one period.

    Nodes with no relations stay in the network as isolated nodes; unknown
    entity labels are an error.
    """
    nodes = tuple(node_universe)
    index = {label: i for i, label in enumerate(nodes)}
    weights = np.zeros((len(nodes), len(nodes)), dtype=float)
    for relation, count in relation_counts.items():
        try:
            i, j = index[relation.a], index[relation.b]
        except KeyError as exc:
            raise ValueError(f"unknown entity label {exc.args[0]!r}") from None
        weights[i, j] += count
        weights[j, i] += count
    return CrossSectionNetwork(period=period, nodes=nodes, weights=weights)


def smooth(
    net: CrossSectionNetwork, params: SmoothingParams
) -> CrossSectionNetwork:
    """Add ``alpha`` to every off-diagonal pair, linking unlinked nodes."""
    if params.alpha == 0:
        return net
    weights = net.weights + params.alpha
    np.fill_diagonal(weights, 0.0)
    return CrossSectionNetwork(period=net.period, nodes=net.nodes, weights=weights)


def build_dynamic(
    articles: Iterable[Article],
    patterns: list[EntityPatternSet] | PatternIndex,
    params: ContextParams,
    period_kind: PeriodKind = "quarter",
    node_universe: Iterable[str] | None = None,
    dedupe_per_article: bool = False,
) -> list[CrossSectionNetwork]:
    """Build the full series of cross-sectional networks from a corpus.

    One network per period between the first and last article period,
    inclusive; periods without relations appear as all-zero networks. Node
    order is the configured universe, identical across all cross sections.
    """
    if node_universe is None:
        entities = patterns.entities if isinstance(patterns, PatternIndex) else patterns
        node_universe = [e.label for e in entities]
    nodes = tuple(node_universe)

    per_period: dict[Period, Counter] = {}
    first: Period | None = None
    last: Period | None = None
    for article in articles:
        period = assign_period(article, period_kind)
        if first is None or period < first:
            first = period
        if last is None or last < period:
            last = period
        counts = extract(article, patterns, params, dedupe_per_article)
        if counts:
            per_period.setdefault(period, Counter()).update(counts)

    if first is None or last is None:
        return []
    return [
        aggregate(per_period.get(period, Counter()), period, nodes)
        for period in Period.span(first, last)
    ]
