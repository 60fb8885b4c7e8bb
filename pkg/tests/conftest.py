import datetime as dt
import json
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from comention.corpus import Article, Period
from comention.matcher import compile_patterns
from comention.netbuild import CrossSectionNetwork

Q = Period("quarter", 2008, 1)


def article(text: str, article_id: str = "a1", date: dt.date = dt.date(2008, 2, 14)) -> Article:
    return Article(id=article_id, timestamp=date, text=text)


def toy_patterns(labels=("AA", "BB", "CC", "DD", "EE", "FF", "GG")):
    return compile_patterns(
        [{"label": label, "patterns": [rf"\b{label}\b"]} for label in labels]
    )


def network(weights, nodes=None, period=Q) -> CrossSectionNetwork:
    weights = np.asarray(weights, dtype=float)
    if nodes is None:
        nodes = tuple(chr(ord("A") + i) for i in range(weights.shape[0]))
    return CrossSectionNetwork(period=period, nodes=tuple(nodes), weights=weights)


def random_network(rng: np.random.Generator, n: int, density: float = 0.6,
                   period=Q) -> CrossSectionNetwork:
    weights = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                weights[i, j] = weights[j, i] = float(rng.integers(1, 20))
    return network(weights, period=period)


def fluctuating_series(seed: int, n: int = 12, quarters: int = 8):
    """Dynamic networks with a stable heavy core and a sparse periphery.

    Peripheral nodes keep a single weight-1 attachment whose endpoint moves
    between quarters (so the sparse structure fluctuates), plus occasional
    extra links. Every quarter stays connected, so unsmoothed information
    centrality is defined and its instability is attributable to the
    fluctuation rather than to singular matrices.
    """
    rng = np.random.default_rng(seed)
    core = 4
    nets = []
    for q in range(quarters):
        weights = np.zeros((n, n))
        for i in range(core):
            for j in range(i + 1, core):
                weights[i, j] = weights[j, i] = float(rng.integers(15, 30))
        for i in range(core, n):
            anchor = int(rng.integers(0, core))
            weights[i, anchor] = weights[anchor, i] = 1.0
            if rng.random() < 0.35:
                other = int(rng.integers(core, n))
                if other != i:
                    weights[i, other] = weights[other, i] = 1.0
        nets.append(
            network(weights, nodes=tuple(f"N{k:02d}" for k in range(n)),
                    period=Period("quarter", 2007 + q // 4, q % 4 + 1))
        )
    return nets


def write_corpus(path: Path, records: list[dict]) -> Path:
    lines = [json.dumps(record, ensure_ascii=False) for record in records]
    path.write_text("\n".join(lines) + ("\n" if lines else ""), "utf-8")
    return path


@pytest.fixture
def corpus_file(tmp_path):
    def make(records: list[dict], name: str = "corpus.jsonl") -> Path:
        return write_corpus(tmp_path / name, records)

    return make
