"""Pairwise co-occurrence extraction from per-article occurrence lists.

Two mentions co-occur when they fall inside the same character-window
context. Contexts are anchored at each occurrence and trail backwards by
``window`` characters; a context whose occurrences are all contained in
another context of the same article is suppressed, so a pair is counted
once per distinct sighting and never twice for nested windows. Repeats of
one entity inside a context collapse, and contexts listing more than
``max_entities`` distinct entities are disqualified.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .corpus import Article
from .matcher import EntityPatternSet, Occurrence, PatternIndex, scan

__all__ = [
    "ContextParams",
    "Context",
    "CooccurrenceRelation",
    "contexts",
    "relations",
    "context_relations",
    "extract",
]


@dataclass(frozen=True)
class ContextParams:
    """Window width (characters) and the context disqualification cutoff."""

    window: int = 400
    max_entities: int = 5

    def __post_init__(self) -> None:
        if self.window <= 0:
            raise ValueError("window must be positive")
        if self.max_entities < 2:
            raise ValueError("max_entities must be at least 2")


@dataclass(frozen=True)
class Context:
    """A surviving context: span interval and its distinct entity members."""

    article_id: str
    start: int
    end: int
    members: frozenset[str]


@dataclass(frozen=True)
class CooccurrenceRelation:
    """An unordered pair of distinct entities seen in one context."""

    a: str
    b: str

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise ValueError("relation entities must be distinct")
        if self.a > self.b:
            raise ValueError("relation pair must be in canonical label order")

    @staticmethod
    def of(x: str, y: str) -> "CooccurrenceRelation":
        return CooccurrenceRelation(*sorted((x, y)))

    @property
    def pair(self) -> tuple[str, str]:
        return (self.a, self.b)


def contexts(occurrences: list[Occurrence], params: ContextParams) -> list[Context]:
    """Derive surviving contexts from an article's occurrence list.

    One candidate context per occurrence ``o`` spans the trailing window
    ``[offset(o) - window, offset(o)]`` and collects every occurrence whose
    match starts inside it. Under trailing windows those collections are
    contiguous occurrence ranges, so subset suppression reduces to keeping
    ranges whose left edge strictly precedes the left edge of every later
    range. Occurrences must already be sorted by offset.
    """
    n = len(occurrences)
    if n == 0:
        return []
    offsets = [o.offset for o in occurrences]
    if any(offsets[i] > offsets[i + 1] for i in range(n - 1)):
        raise ValueError("occurrences must be sorted by offset")
    article_id = occurrences[0].article_id

    lows = [0] * n
    lo = 0
    for k in range(n):
        while offsets[k] - offsets[lo] > params.window:
            lo += 1
        lows[k] = lo

    survivors: list[Context] = []
    for k in range(n):
        if k + 1 < n and lows[k + 1] <= lows[k]:
            continue  # absorbed by a later context covering the same sightings
        members = frozenset(o.entity for o in occurrences[lows[k] : k + 1])
        survivors.append(
            Context(
                article_id=article_id,
                start=max(0, offsets[k] - params.window),
                end=offsets[k],
                members=members,
            )
        )
    return survivors


def relations(context: Context, params: ContextParams) -> set[CooccurrenceRelation]:
    """All canonical entity pairs of a context; empty if it is disqualified."""
    members = context.members
    if len(members) < 2 or len(members) > params.max_entities:
        return set()
    return {
        CooccurrenceRelation(a, b) for a, b in combinations(sorted(members), 2)
    }


def context_relations(
    article: Article,
    patterns: list[EntityPatternSet] | PatternIndex,
    params: ContextParams,
) -> list[tuple[Context, set[CooccurrenceRelation]]]:
    """Scan an article and pair each surviving context with its relations.

    The context-level view backs the per-relation audit log; most callers
    want :func:`extract`, which folds it into a multiset.
    """
    occurrences = scan(article, patterns)
    return [
        (context, relations(context, params))
        for context in contexts(occurrences, params)
    ]


def extract(
    article: Article,
    patterns: list[EntityPatternSet] | PatternIndex,
    params: ContextParams,
    dedupe_per_article: bool = False,
) -> Counter:
    """Scan an article and count its co-occurrence relations.

    Returns a multiset (Counter) of :class:`CooccurrenceRelation`. The same
    pair can be contributed by several non-nested contexts; pass
    ``dedupe_per_article`` to cap each pair at one count per article.
    """
    counts: Counter = Counter()
    for _, pairs in context_relations(article, patterns, params):
        counts.update(pairs)
    if dedupe_per_article:
        counts = Counter(dict.fromkeys(counts, 1))
    return counts
