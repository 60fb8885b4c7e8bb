"""Synthetic corpora with planted co-occurrence structure.

The generator emits a corpus file, a matching pattern config and a manifest
of expected per-period pair counts. Expected counts are derived purely from
the construction rules (every mention group sits inside one window, or a
two-entity group is placed beyond the window), never by running the
extraction pipeline, so they can serve as an independent oracle for it.
"""

from __future__ import annotations

import calendar
import datetime as dt
import json
import random
import re
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

from .corpus import Period

__all__ = ["SynthesisError", "SynthResult", "generate_synthetic", "generate_from_file"]

# Neutral lowercase filler; validated against entity labels at generation time.
DEFAULT_FILLER = (
    "market trading report quarterly earnings statement shares outlook "
    "analysts sector lending figures results growth revenue policy rates "
    "credit funding capital retail investors announced meanwhile however "
    "regional economy forecast published during period weekly climbed"
).split()


class SynthesisError(ValueError):
    """The planted-structure spec cannot be generated with exact counts."""


@dataclass(frozen=True)
class SynthResult:
    corpus_path: Path
    patterns_path: Path
    manifest_path: Path
    expected: dict[str, Counter]
    article_count: int


def _period_dates(period: Period) -> list[dt.date]:
    months = {
        "quarter": range((period.ordinal - 1) * 3 + 1, (period.ordinal - 1) * 3 + 4),
        "month": [period.ordinal],
        "year": range(1, 13),
    }[period.kind]
    dates = []
    for month in months:
        last = calendar.monthrange(period.year, month)[1]
        dates.extend(dt.date(period.year, month, day) for day in range(1, last + 1))
    return dates


class _FillerPool:
    """A long pre-joined filler string sliced into exact-length segments."""

    def __init__(self, vocabulary: list[str], rng: random.Random):
        words = rng.choices(vocabulary, k=4000)
        self.pool = " ".join(words) + " "
        self.rng = rng

    def segment(self, length: int) -> str:
        if length <= 0:
            return ""
        start = self.rng.randrange(0, len(self.pool) - 1)
        out = self.pool[start:]
        while len(out) < length:
            out += self.pool
        return out[:length]

    def padded_segment(self, length: int) -> str:
        """Exact-length segment starting and ending with a space."""
        if length == 1:
            return " "
        return " " + self.segment(length - 2) + " "


def _derive_expected(
    labels: list[str], gaps: list[int], window: int, max_entities: int
) -> list[tuple[str, str]]:
    """Pairs one plant instance must contribute, derived by construction."""
    distinct = sorted(set(labels))
    span = sum(gaps)
    if len(distinct) == 1:
        return []
    if len(labels) == 2 and span > window:
        return []  # separated pair: beyond the context window by design
    if span > window:
        raise SynthesisError(
            f"mentions {labels} span {span} characters, wider than the "
            f"{window}-character window; counts are not derivable"
        )
    if len(distinct) > max_entities:
        return []  # disqualified listing
    return list(combinations(distinct, 2))


def generate_synthetic(spec: dict, out_dir: str | Path) -> SynthResult:
    """Generate a corpus file with planted pair counts from a spec mapping.

    The spec lists ``entities``, a ``seed``, plant groups (period, mention
    labels, count, start-to-start gaps) and optional per-period noise
    articles containing no mentions at all. See the shipped README for the
    full schema. Raises :class:`SynthesisError` for infeasible plants.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    entities: list[str] = list(spec.get("entities", []))
    if not entities or len(set(entities)) != len(entities):
        raise SynthesisError("spec needs a list of unique entity labels")
    seed = int(spec.get("seed", 0))
    window = int(spec.get("window", 400))
    max_entities = int(spec.get("max_entities", 5))
    vocabulary = list(spec.get("filler", DEFAULT_FILLER))
    for word in vocabulary:
        for label in entities:
            if label in word:
                raise SynthesisError(
                    f"filler word {word!r} contains entity label {label!r}"
                )

    rng = random.Random(seed)
    pool = _FillerPool(vocabulary, rng)
    for label in entities:
        if label in pool.pool:
            raise SynthesisError(
                f"entity label {label!r} occurs in the joined filler text"
            )
    expected: dict[str, Counter] = {}
    records: list[str] = []
    serial = 0

    def add_article(date, text: str) -> None:
        nonlocal serial
        serial += 1
        records.append(
            json.dumps(
                {"id": f"synth-{serial:06d}", "timestamp": date.isoformat(), "text": text},
                ensure_ascii=False,
            )
        )

    for plant in spec.get("plants", []):
        period = Period.parse(plant["period"])
        labels = list(plant["entities"])
        unknown = [l for l in labels if l not in entities]
        if unknown:
            raise SynthesisError(f"plant references unknown entities {unknown}")
        count = int(plant.get("count", 1))
        raw_gap = plant.get("gap", 60)
        gaps = list(raw_gap) if isinstance(raw_gap, (list, tuple)) else [raw_gap] * (
            len(labels) - 1
        )
        if len(gaps) != len(labels) - 1:
            raise SynthesisError("need one gap per consecutive mention pair")
        for label, gap in zip(labels, gaps):
            if gap < len(label) + 1:
                raise SynthesisError(
                    f"gap {gap} too small to fit mention {label!r} plus a separator"
                )
        pairs = _derive_expected(labels, gaps, window, max_entities)
        if len(set(labels)) > max_entities and "expect" not in plant:
            raise SynthesisError(
                f"{len(set(labels))} entities forced into one context; "
                "declare expect: 0 to plant a disqualified listing"
            )
        if "expect" in plant and int(plant["expect"]) != len(pairs):
            raise SynthesisError(
                f"plant declares expect={plant['expect']} but construction "
                f"yields {len(pairs)} pairs per instance"
            )
        dates = _period_dates(period)
        bucket = expected.setdefault(period.label(), Counter())
        for _ in range(count):
            lead = rng.randrange(0, 120)
            parts = [pool.segment(lead - 1) + " " if lead > 0 else ""]
            for k, label in enumerate(labels):
                parts.append(label)
                if k < len(gaps):
                    parts.append(pool.padded_segment(gaps[k] - len(label)))
            parts.append(" " + pool.segment(rng.randrange(20, 120)))
            add_article(rng.choice(dates), "".join(parts))
            for a, b in pairs:
                bucket[f"{a}|{b}"] += 1

    noise = spec.get("noise")
    if noise:
        periods = [Period.parse(p) for p in noise.get("periods", [])] or [
            Period.parse(p["period"]) for p in spec.get("plants", [])
        ]
        length = int(noise.get("length", 400))
        for period in dict.fromkeys(periods):
            dates = _period_dates(period)
            for _ in range(int(noise.get("per_period", 0))):
                add_article(rng.choice(dates), pool.segment(length))

    corpus_path = out_dir / "corpus.jsonl"
    corpus_path.write_text("\n".join(records) + ("\n" if records else ""), "utf-8")

    patterns = [
        {"label": label, "patterns": [rf"\b{re.escape(label)}\b"]} for label in entities
    ]
    patterns_path = out_dir / "patterns.json"
    patterns_path.write_text(
        json.dumps({"entities": patterns}, indent=2, ensure_ascii=False) + "\n", "utf-8"
    )

    manifest = {
        "entities": entities,
        "window": window,
        "max_entities": max_entities,
        "articles": serial,
        "expected": {
            period: dict(sorted(counts.items()))
            for period, counts in sorted(expected.items())
        },
    }
    manifest_path = out_dir / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n", "utf-8")
    return SynthResult(
        corpus_path=corpus_path,
        patterns_path=patterns_path,
        manifest_path=manifest_path,
        expected=expected,
        article_count=serial,
    )


def generate_from_file(spec_path: str | Path, out_dir: str | Path) -> SynthResult:
    with open(spec_path, "r", encoding="utf-8") as handle:
        return generate_synthetic(json.load(handle), out_dir)
