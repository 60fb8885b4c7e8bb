"""Entity name detection in article text via configured regex pattern sets."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .corpus import Article

__all__ = [
    "EntityPatternSet",
    "Occurrence",
    "PatternConfigError",
    "PatternIndex",
    "load_patterns",
    "example_config_path",
    "compile_patterns",
    "scan",
]


class PatternConfigError(ValueError):
    """A pattern configuration violates its contract."""


@dataclass(frozen=True)
class Occurrence:
    """One detected entity mention: character offsets into the article text."""

    entity: str
    article_id: str
    offset: int
    length: int

    @property
    def end(self) -> int:
        return self.offset + self.length


@dataclass
class EntityPatternSet:
    """An entity label and the regular expressions matching its name variants.

    Matching is case-sensitive by default (entity names are proper nouns);
    set ``case_sensitive`` to false per entity to override. Offsets reported
    by :func:`scan` are Unicode character indices.
    """

    label: str
    patterns: list[str]
    case_sensitive: bool = True
    order: int = 0
    _compiled: re.Pattern | None = field(default=None, repr=False, compare=False)

    def compiled(self) -> re.Pattern:
        if self._compiled is None:
            flags = 0 if self.case_sensitive else re.IGNORECASE
            alternation = "|".join(f"(?:{p})" for p in self.patterns)
            object.__setattr__(self, "_compiled", re.compile(alternation, flags))
        return self._compiled


def _validate_pattern(label: str, pattern: str) -> None:
    try:
        compiled = re.compile(pattern)
    except re.error as exc:
        raise PatternConfigError(
            f"entity {label!r}: pattern {pattern!r} does not compile: {exc}"
        ) from exc
    if compiled.match("") is not None:
        raise PatternConfigError(
            f"entity {label!r}: pattern {pattern!r} matches the empty string"
        )


def compile_patterns(raw: list[dict]) -> list[EntityPatternSet]:
    """Validate and compile a list of entity pattern records."""
    seen: set[str] = set()
    sets: list[EntityPatternSet] = []
    for order, record in enumerate(raw):
        label = record.get("label", "")
        if not label:
            raise PatternConfigError(f"entity #{order}: missing label")
        if label in seen:
            raise PatternConfigError(f"duplicate entity label {label!r}")
        seen.add(label)
        patterns = record.get("patterns", [])
        if not patterns:
            raise PatternConfigError(f"entity {label!r}: empty pattern list")
        for pattern in patterns:
            _validate_pattern(label, pattern)
        entity = EntityPatternSet(
            label=label,
            patterns=list(patterns),
            case_sensitive=bool(record.get("case_sensitive", True)),
            order=order,
        )
        entity.compiled()
        sets.append(entity)
    return sets


def load_patterns(path: str | Path) -> list[EntityPatternSet]:
    """Load and compile a pattern config file (JSON list of entity records)."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"pattern config not found: {path}")
    with path.open("r", encoding="utf-8") as handle:
        try:
            raw = json.load(handle)
        except json.JSONDecodeError as exc:
            raise PatternConfigError(f"{path}: invalid JSON: {exc.msg}") from exc
    if isinstance(raw, dict):
        raw = raw.get("entities", [])
    return compile_patterns(raw)


def example_config_path() -> Path:
    """Path of the bundled example config (27 European banking groups)."""
    return Path(str(resources.files("comention") / "data" / "banks_example.json"))


class PatternIndex:
    """Pattern sets plus a precompiled union regex used as a fast screen."""

    def __init__(self, entities: list[EntityPatternSet]):
        self.entities = entities
        # Case-insensitive entities force IGNORECASE on their alternatives only.
        parts = []
        for entity in entities:
            for p in entity.patterns:
                parts.append(f"(?:{p})" if entity.case_sensitive else f"(?i:(?:{p}))")
        self.union = re.compile("|".join(parts))


_INDEX_CACHE: dict[tuple, PatternIndex] = {}


def _ensure_index(patterns: list[EntityPatternSet] | PatternIndex) -> PatternIndex:
    if isinstance(patterns, PatternIndex):
        return patterns
    key = tuple(
        (e.label, tuple(e.patterns), e.case_sensitive) for e in patterns
    )
    index = _INDEX_CACHE.get(key)
    if index is None:
        if len(_INDEX_CACHE) > 8:
            _INDEX_CACHE.clear()
        index = PatternIndex(patterns)
        _INDEX_CACHE[key] = index
    return index


def scan(
    article: Article, patterns: list[EntityPatternSet] | PatternIndex
) -> list[Occurrence]:
    """Find all entity mentions in an article, resolved to non-overlapping spans.

    Candidates from every entity's pattern set are collected, then overlaps
    are resolved: the longer match wins, ties broken by earlier start, then
    by config order. The result is sorted by offset.
    """
    index = _ensure_index(patterns)
    text = article.text
    # Cheap screen: most articles mention no configured entity at all.
    if index.union.search(text) is None:
        return []
    candidates: list[tuple[int, int, int, str]] = []
    for entity in index.entities:
        for match in entity.compiled().finditer(text):
            start, end = match.span()
            if end > start:
                candidates.append((start, end - start, entity.order, entity.label))
    candidates.sort(key=lambda c: (-c[1], c[0], c[2]))
    taken: list[tuple[int, int]] = []
    chosen: list[tuple[int, int, str]] = []
    for start, length, _, label in candidates:
        end = start + length
        if any(start < t_end and t_start < end for t_start, t_end in taken):
            continue
        taken.append((start, end))
        chosen.append((start, length, label))
    chosen.sort()
    return [
        Occurrence(entity=label, article_id=article.id, offset=start, length=length)
        for start, length, label in chosen
    ]
