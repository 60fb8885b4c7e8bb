"""Serialization of networks, panels and metric tables.

JSON numbers are emitted with Python's shortest round-trip float
representation and CSV numbers at 12 significant digits, so identical
inputs always serialize byte-for-byte identically and network documents
parse back to exactly the weights they were written from.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable

import numpy as np

from .corpus import Period
from .metrics import CentralityPanel
from .netbuild import CrossSectionNetwork

__all__ = [
    "SCHEMA_VERSION",
    "entity_flags",
    "network_document",
    "parse_network_document",
    "panel_document",
    "write_json",
    "format_number",
    "write_csv",
]

SCHEMA_VERSION = 1


def entity_flags(config_path: str | Path) -> dict[str, dict]:
    """Per-entity metadata (currently the G-SIB flag) from a pattern config."""
    with open(config_path, "r", encoding="utf-8") as handle:
        raw = json.load(handle)
    records = raw.get("entities", raw) if isinstance(raw, dict) else raw
    return {
        record["label"]: {"gsib": bool(record.get("gsib", False))}
        for record in records
    }


def _scalar(value) -> float | None:
    if value is None:
        return None
    out = float(value)
    return out


def network_document(
    net: CrossSectionNetwork,
    alpha: float,
    info_raw: Iterable[float | None] | None,
    info_smoothed: Iterable[float],
    flags: dict[str, dict] | None = None,
) -> dict:
    """Build the JSON-shaped document for one cross section.

    ``net`` must carry the raw (unsmoothed) weights; smoothed link weights
    are recoverable as weight + alpha for every pair. ``info_raw`` entries
    may be None when the unsmoothed matrix was singular.
    """
    flags = flags or {}
    raw = list(info_raw) if info_raw is not None else [None] * net.n
    smoothed = list(info_smoothed)
    strengths = net.weights.sum(axis=1)
    nodes = [
        {
            "id": i,
            "label": label,
            "strength": _scalar(strengths[i]),
            "info_centrality": _scalar(raw[i]),
            "info_centrality_smoothed": _scalar(smoothed[i]),
            "is_gsib": bool(flags.get(label, {}).get("gsib", False)),
        }
        for i, label in enumerate(net.nodes)
    ]
    links = []
    rows, cols = np.nonzero(np.triu(net.weights))
    for i, j in zip(rows.tolist(), cols.tolist()):
        links.append({"source": i, "target": j, "weight": float(net.weights[i, j])})
    return {
        "schema_version": SCHEMA_VERSION,
        "period": net.period.label(),
        "alpha": float(alpha),
        "nodes": nodes,
        "links": links,
    }


def parse_network_document(document: dict) -> CrossSectionNetwork:
    """Rebuild a cross-section network (raw weights) from its document."""
    if document.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(
            f"unsupported schema version {document.get('schema_version')!r}"
        )
    nodes = tuple(node["label"] for node in document["nodes"])
    weights = np.zeros((len(nodes), len(nodes)))
    for link in document["links"]:
        i, j, w = link["source"], link["target"], float(link["weight"])
        if not (0 <= i < len(nodes) and 0 <= j < len(nodes)):
            raise ValueError(f"link index out of range: {link}")
        weights[i, j] = w
        weights[j, i] = w
    return CrossSectionNetwork(
        period=Period.parse(document["period"]), nodes=nodes, weights=weights
    )


def panel_document(
    panel: CentralityPanel, raw_values: list[list[float | None]] | None = None
) -> dict:
    """Centrality panel document: smoothed series plus optional raw series."""
    return {
        "schema_version": SCHEMA_VERSION,
        "alpha": panel.alpha,
        "periods": [p.label() for p in panel.periods],
        "nodes": list(panel.nodes),
        "smoothed": [[float(v) for v in row] for row in panel.values],
        "smoothed_normalized": [[float(v) for v in row] for row in panel.normalized],
        "raw": raw_values,
        "degenerate": panel.degenerate,
    }


def write_json(path: str | Path, document: dict) -> None:
    """Write a document deterministically (stable key order, LF endings)."""
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(document, handle, ensure_ascii=False, indent=2)
        handle.write("\n")


def format_number(value) -> str:
    """Fixed CSV number format: 12 significant digits, integers untouched."""
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    formatted = f"{float(value):.12g}"
    return "0" if formatted == "-0" else formatted


def write_csv(path: str | Path, header: list[str], rows: Iterable[Iterable]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [cell if isinstance(cell, str) else format_number(cell) for cell in row]
            )
