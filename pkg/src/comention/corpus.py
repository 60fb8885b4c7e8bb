"""Timestamped article corpora: streaming ingestion, period bucketing, sampling.

A corpus is a UTF-8 text file with one JSON record per line, fields
``id``, ``timestamp`` (ISO date) and ``text``. Files are read in a single
streaming pass; memory is bounded by the largest record, not the corpus.
"""

from __future__ import annotations

import datetime as _dt
import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

__all__ = [
    "Article",
    "Period",
    "PeriodKind",
    "SampleSpec",
    "CorpusFormatError",
    "open_corpus",
    "assign_period",
    "sample",
]

REQUIRED_FIELDS = ("id", "timestamp", "text")

PeriodKind = str  # one of "quarter", "month", "year", "full"
PERIOD_KINDS = ("quarter", "month", "year", "full")


class CorpusFormatError(ValueError):
    """A corpus file violates the one-record-per-line contract."""


@dataclass(frozen=True)
class Article:
    """One timestamped document, the unit of scanning."""

    id: str
    timestamp: _dt.date
    text: str


@dataclass(frozen=True, order=True)
class Period:
    """A calendar bucket: quarter, month, year, or the full corpus span."""

    kind: PeriodKind
    year: int
    ordinal: int

    def __post_init__(self) -> None:
        if self.kind not in PERIOD_KINDS:
            raise ValueError(f"unknown period kind {self.kind!r}")
        limits = {"quarter": 4, "month": 12, "year": 1, "full": 1}
        if not 1 <= self.ordinal <= limits[self.kind]:
            raise ValueError(
                f"ordinal {self.ordinal} out of range for {self.kind} period"
            )

    def label(self) -> str:
        if self.kind == "quarter":
            return f"{self.year}Q{self.ordinal}"
        if self.kind == "month":
            return f"{self.year}M{self.ordinal:02d}"
        if self.kind == "year":
            return str(self.year)
        return "ALL"

    def start_month_index(self) -> int:
        """Months since year 0 at which this period starts."""
        if self.kind == "quarter":
            return self.year * 12 + (self.ordinal - 1) * 3
        if self.kind == "month":
            return self.year * 12 + (self.ordinal - 1)
        if self.kind == "year":
            return self.year * 12
        return 0

    def months_per_period(self) -> int:
        return {"quarter": 3, "month": 1, "year": 12, "full": 0}[self.kind]

    def next(self) -> "Period":
        if self.kind == "full":
            raise ValueError("full-span period has no successor")
        limit = {"quarter": 4, "month": 12, "year": 1}[self.kind]
        if self.ordinal < limit:
            return Period(self.kind, self.year, self.ordinal + 1)
        return Period(self.kind, self.year + 1, 1)

    @staticmethod
    def parse(label: str) -> "Period":
        """Inverse of :meth:`label` ("2008Q2", "2008M03", "2008", "ALL")."""
        label = label.strip()
        if label == "ALL":
            return Period("full", 0, 1)
        if "Q" in label:
            year, _, ordinal = label.partition("Q")
            return Period("quarter", int(year), int(ordinal))
        if "M" in label:
            year, _, ordinal = label.partition("M")
            return Period("month", int(year), int(ordinal))
        return Period("year", int(label), 1)

    @staticmethod
    def span(first: "Period", last: "Period") -> list["Period"]:
        """All periods from first to last inclusive, no gaps."""
        if first.kind != last.kind:
            raise ValueError("span endpoints must share a period kind")
        if last < first:
            raise ValueError("span end precedes start")
        out = [first]
        while out[-1] != last:
            out.append(out[-1].next())
        return out


@dataclass(frozen=True)
class SampleSpec:
    """Reproducible per-article random sampling parameters."""

    fraction: float
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 < self.fraction <= 1.0:
            raise ValueError(f"fraction must be in (0, 1], got {self.fraction}")


def _parse_record(line: str, lineno: int) -> Article:
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CorpusFormatError(f"line {lineno}: invalid JSON record ({exc.msg})") from exc
    if not isinstance(record, dict):
        raise CorpusFormatError(f"line {lineno}: record is not an object")
    for field in REQUIRED_FIELDS:
        if field not in record:
            raise CorpusFormatError(f"line {lineno}: missing field {field}")
    if not record["id"]:
        raise CorpusFormatError(f"line {lineno}: empty id")
    try:
        timestamp = _dt.date.fromisoformat(str(record["timestamp"])[:10])
    except ValueError as exc:
        raise CorpusFormatError(
            f"line {lineno}: invalid timestamp {record['timestamp']!r}"
        ) from exc
    return Article(id=str(record["id"]), timestamp=timestamp, text=str(record["text"]))


def open_corpus(path: str | Path) -> Iterator[Article]:
    """Stream articles from a newline-delimited corpus file, in file order.

    Raises :class:`CorpusFormatError` naming the offending line for malformed
    records, and naming the id for duplicates. Duplicate detection keeps only
    a 64-bit digest per id so memory stays small even for large corpora.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"corpus file not found: {path}")
    seen: set[int] = set()
    with path.open("r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            article = _parse_record(line, lineno)
            digest = int.from_bytes(
                hashlib.blake2b(article.id.encode("utf-8"), digest_size=8).digest(),
                "big",
            )
            if digest in seen:
                raise CorpusFormatError(
                    f"line {lineno}: duplicate article id {article.id!r}"
                )
            seen.add(digest)
            yield article


def assign_period(article: Article, kind: PeriodKind) -> Period:
    """Map an article to its containing period, deterministically."""
    date = article.timestamp
    if kind == "quarter":
        return Period("quarter", date.year, (date.month - 1) // 3 + 1)
    if kind == "month":
        return Period("month", date.year, date.month)
    if kind == "year":
        return Period("year", date.year, 1)
    if kind == "full":
        return Period("full", 0, 1)
    raise ValueError(f"unknown period kind {kind!r}")


def _inclusion_hash(seed: int, article_id: str) -> float:
    """Deterministic uniform draw in [0, 1) from (seed, id)."""
    digest = hashlib.blake2b(
        f"{seed}:{article_id}".encode("utf-8"), digest_size=8
    ).digest()
    return int.from_bytes(digest, "big") / 2.0**64


def sample(articles: Iterable[Article], spec: SampleSpec) -> Iterator[Article]:
    """Keep each article independently with probability ``spec.fraction``.

    Inclusion is decided by a hash of (seed, id), so the subset is identical
    across runs and independent of iteration batching; order is preserved.
    """
    for article in articles:
        if _inclusion_hash(spec.seed, article.id) < spec.fraction:
            yield article
