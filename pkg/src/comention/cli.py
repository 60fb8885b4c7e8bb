"""Command-line pipeline: synth, extract, network, metrics, evaluate, serve.

All outputs are reproducible byte-for-byte given identical inputs and
flags: extraction order is file order, reductions are commutative counts,
and serialization uses fixed formatting.
"""

from __future__ import annotations

import argparse
import functools
import http.server
import json
import sys
from collections import Counter
from multiprocessing import Pool
from pathlib import Path

from . import earlywarn, export, metrics, synth
from .cooccur import ContextParams, context_relations, extract
from .corpus import Period, SampleSpec, assign_period, open_corpus, sample
from .matcher import PatternIndex, load_patterns
from .netbuild import CrossSectionNetwork, SmoothingParams, aggregate, smooth

PROGRESS_EVERY = 20_000


def _log(message: str) -> None:
    print(message, file=sys.stderr)


def _add_extraction_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--corpus", required=True, help="newline-delimited corpus file")
    parser.add_argument("--patterns", required=True, help="entity pattern config")
    parser.add_argument("--window", type=int, default=400, help="context window, characters")
    parser.add_argument("--max-entities", type=int, default=5, help="context disqualification cutoff")
    parser.add_argument("--period", default="quarter", choices=["quarter", "month", "year", "full"])
    parser.add_argument("--sample", type=float, default=None, help="sampling fraction in (0,1]")
    parser.add_argument("--seed", type=int, default=0, help="sampling seed")
    parser.add_argument("--dedupe-per-article", action="store_true",
                        help="count each pair at most once per article")
    parser.add_argument("--workers", type=int, default=1, help="parallel scan processes")
    parser.add_argument("--out", required=True, help="output directory")


_WORKER_STATE: dict = {}


def _worker_init(patterns_path: str, window: int, max_entities: int,
                 dedupe: bool, period_kind: str) -> None:
    entities = load_patterns(patterns_path)
    _WORKER_STATE["index"] = PatternIndex(entities)
    _WORKER_STATE["params"] = ContextParams(window, max_entities)
    _WORKER_STATE["dedupe"] = dedupe
    _WORKER_STATE["kind"] = period_kind


def _scan_chunk(articles: list) -> tuple[dict, list]:
    index = _WORKER_STATE["index"]
    params = _WORKER_STATE["params"]
    per_period: dict = {}
    spans: list = []
    for article in articles:
        period = assign_period(article, _WORKER_STATE["kind"])
        spans.append(period)
        counts = extract(article, index, params, _WORKER_STATE["dedupe"])
        if counts:
            per_period.setdefault(period, Counter()).update(counts)
    return per_period, spans


def _iter_articles(args):
    articles = open_corpus(args.corpus)
    if args.sample is not None:
        articles = sample(articles, SampleSpec(args.sample, args.seed))
    return articles


def _run_extraction(args, audit_rows: list | None = None):
    """Scan the corpus into per-period relation counts.

    Returns (per_period counts, ordered period span, article count). With
    ``--workers`` > 1 articles are scanned in fixed-size chunks by a process
    pool; counts merge commutatively so the result is identical to a serial
    run. The audit log is only produced serially.
    """
    entities = load_patterns(args.patterns)
    index = PatternIndex(entities)
    params = ContextParams(args.window, args.max_entities)
    per_period: dict[Period, Counter] = {}
    first = last = None
    total = 0

    def note_period(period: Period) -> None:
        nonlocal first, last
        if first is None or period < first:
            first = period
        if last is None or last < period:
            last = period

    if args.workers > 1 and audit_rows is None:
        chunk: list = []
        chunks = []
        for article in _iter_articles(args):
            chunk.append(article)
            if len(chunk) >= 2000:
                chunks.append(chunk)
                chunk = []
        if chunk:
            chunks.append(chunk)
        initargs = (args.patterns, args.window, args.max_entities,
                    args.dedupe_per_article, args.period)
        with Pool(args.workers, initializer=_worker_init, initargs=initargs) as pool:
            for part, spans in pool.imap(_scan_chunk, chunks):
                for period, counts in part.items():
                    per_period.setdefault(period, Counter()).update(counts)
                for period in spans:
                    note_period(period)
                total += len(spans)
                if total % PROGRESS_EVERY < len(spans):
                    _log(f"scanned {total} articles")
    else:
        for article in _iter_articles(args):
            period = assign_period(article, args.period)
            note_period(period)
            if audit_rows is None:
                article_counts = extract(article, index, params, args.dedupe_per_article)
            else:
                article_counts = Counter()
                for context, pairs in context_relations(article, index, params):
                    article_counts.update(pairs)
                    for rel in sorted(pairs, key=lambda r: r.pair):
                        audit_rows.append(
                            (article.id, rel.a, rel.b, context.start, context.end)
                        )
                if args.dedupe_per_article:
                    article_counts = Counter(dict.fromkeys(article_counts, 1))
            if article_counts:
                per_period.setdefault(period, Counter()).update(article_counts)
            total += 1
            if total % PROGRESS_EVERY == 0:
                _log(f"scanned {total} articles")

    span = [] if first is None else Period.span(first, last)
    _log(f"scanned {total} articles; {len(span)} period(s)")
    return per_period, span, total, [e.label for e in entities]


def cmd_synth(args) -> int:
    result = synth.generate_from_file(args.spec, args.out)
    _log(
        f"wrote {result.article_count} articles to {result.corpus_path}, "
        f"patterns to {result.patterns_path}, manifest to {result.manifest_path}"
    )
    return 0


def cmd_extract(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    audit_rows: list | None = [] if args.audit else None
    per_period, span, _, _ = _run_extraction(args, audit_rows)
    rows = []
    for period in span:
        for relation, count in sorted(per_period.get(period, Counter()).items(),
                                      key=lambda kv: kv[0].pair):
            rows.append((period.label(), relation.a, relation.b, count))
    export.write_csv(out / "counts.csv",
                     ["period", "entity_a", "entity_b", "count"], rows)
    if audit_rows is not None:
        export.write_csv(out / "audit.csv",
                         ["article_id", "entity_a", "entity_b", "start", "end"],
                         audit_rows)
    _log(f"wrote {out / 'counts.csv'}")
    return 0


def _build_networks(args):
    per_period, span, _, universe = _run_extraction(args)
    return [
        aggregate(per_period.get(period, Counter()), period, universe)
        for period in span
    ]


def _raw_centrality(net: CrossSectionNetwork) -> list[float | None]:
    try:
        return [float(v) for v in metrics.information_centrality(net)]
    except metrics.CentralityError:
        return [None] * net.n


def cmd_network(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    networks = _build_networks(args)
    if not networks:
        _log("empty corpus; nothing to write")
        return 0
    flags = export.entity_flags(args.patterns)
    panel = metrics.centrality_panel(networks, args.alpha)
    raw_rows = [_raw_centrality(net) for net in networks]
    for net, raw, smoothed in zip(networks, raw_rows, panel.values):
        document = export.network_document(net, args.alpha, raw, smoothed, flags)
        export.write_json(out / f"network_{net.period.label()}.json", document)
    export.write_json(out / "panel.json", export.panel_document(panel, raw_rows))
    _log(f"wrote {len(networks)} network document(s) and panel.json to {out}")
    return 0


def cmd_metrics(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    networks = _build_networks(args)
    if not networks:
        _log("empty corpus; nothing to write")
        return 0
    params = SmoothingParams(args.alpha)
    rows = []
    for net in networks:
        smoothed_net = smooth(net, params)
        info_raw = _raw_centrality(net)
        info_smoothed = metrics.information_centrality(smoothed_net)
        strengths = metrics.strength(net)
        degrees = metrics.degree(net)
        close = metrics.closeness(net)
        between = metrics.betweenness(net)
        for i, label in enumerate(net.nodes):
            rows.append(
                (net.period.label(), label, strengths[i], int(degrees[i]),
                 close[i], between[i], info_raw[i], float(info_smoothed[i]))
            )
    export.write_csv(
        out / "metrics.csv",
        ["period", "node", "strength", "degree", "closeness", "betweenness",
         "info_centrality", "info_centrality_smoothed"],
        rows,
    )

    stats: dict = {"alpha": args.alpha}
    panel = metrics.centrality_panel(networks, args.alpha)
    if len(networks) >= 2:
        stats["variance_over_time"] = metrics.variance_over_time(panel)
    if len(panel.nodes) >= 2:
        stats["variance_across_nodes"] = metrics.variance_across_nodes(panel)
    total = networks[0].weights.copy()
    for net in networks[1:]:
        total = total + net.weights
    full = CrossSectionNetwork(Period("full", 0, 1), networks[0].nodes, total)
    try:
        stats["avg_binary_distance_full_span"] = metrics.avg_binary_distance(full)
    except metrics.CentralityError:
        stats["avg_binary_distance_full_span"] = None
    points = metrics.strength_distribution(full)
    for model in ("exponential", "power-law"):
        key = model.replace("-", "_") + "_fit"
        try:
            fit = metrics.fit_distribution(points, model)
            stats[key] = {
                "scale": fit.scale, "rate": fit.rate,
                "fit_range": list(fit.fit_range), "residual": fit.residual,
            }
        except ValueError:
            stats[key] = None
    export.write_json(out / "stats.json", stats)
    _log(f"wrote metrics.csv and stats.json to {out}")
    return 0


def _parse_model(spec: str) -> tuple[str, list[str]]:
    name, _, features = spec.partition("=")
    if not features:
        name, features = spec, spec
    return name.strip(), [f.strip() for f in features.replace("+", ",").split(",") if f.strip()]


def cmd_evaluate(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    panel = earlywarn.load_panel_csv(args.panel)
    if args.events:
        events = earlywarn.load_events_csv(args.events)
        panel = earlywarn.label_pre_distress(events, panel, args.horizon)
    prefs = earlywarn.Preferences(args.mu)
    summary_rows = []
    coefficient_rows = []
    for spec in args.model:
        name, features = _parse_model(spec)
        fit = earlywarn.fit_logit(panel, features)
        labels = [obs.label for obs in panel]
        outcome = earlywarn.evaluate(fit.probabilities, labels, prefs)
        summary_rows.append(
            (name, "+".join(features), outcome.threshold,
             outcome.counts.tp, outcome.counts.fp, outcome.counts.fn,
             outcome.counts.tn, outcome.t1, outcome.t2, outcome.loss,
             outcome.ua, outcome.ur, outcome.auc,
             str(fit.converged).lower(), str(fit.separation).lower())
        )
        coefficient_rows.append((name, "intercept", float(fit.coefficients[0])))
        for i, feature in enumerate(features):
            coefficient_rows.append((name, feature, float(fit.coefficients[1 + i])))
    export.write_csv(
        out / "evaluation.csv",
        ["model", "features", "lambda", "tp", "fp", "fn", "tn", "t1", "t2",
         "loss", "ua", "ur", "auc", "converged", "separation"],
        summary_rows,
    )
    export.write_csv(out / "coefficients.csv",
                     ["model", "term", "estimate"], coefficient_rows)
    _log(f"wrote evaluation.csv and coefficients.csv to {out}")
    return 0


def cmd_serve(args) -> int:
    handler = functools.partial(
        http.server.SimpleHTTPRequestHandler, directory=str(Path(args.dir).resolve())
    )
    with http.server.ThreadingHTTPServer(("", args.port), handler) as server:
        _log(f"serving {args.dir} at http://localhost:{args.port}/ (Ctrl-C stops)")
        try:
            server.serve_forever()
        except KeyboardInterrupt:
            pass
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="comention",
        description="Entity co-mention networks from timestamped text",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("synth", help="generate a synthetic planted corpus")
    p.add_argument("--spec", required=True, help="planted-structure spec (JSON)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)

    p = commands.add_parser("extract", help="scan a corpus into relation counts")
    _add_extraction_flags(p)
    p.add_argument("--audit", action="store_true",
                   help="also write one audit row per (article, pair, span)")
    p.set_defaults(func=cmd_extract)

    p = commands.add_parser("network", help="build per-period network documents")
    _add_extraction_flags(p)
    p.add_argument("--alpha", type=float, default=1.0, help="link weight smoothing")
    p.set_defaults(func=cmd_network)

    p = commands.add_parser("metrics", help="compute per-period node measures")
    _add_extraction_flags(p)
    p.add_argument("--alpha", type=float, default=1.0, help="link weight smoothing")
    p.set_defaults(func=cmd_metrics)

    p = commands.add_parser("evaluate", help="fit and evaluate early-warning models")
    p.add_argument("--panel", required=True, help="panel CSV: entity,period,label,features...")
    p.add_argument("--events", default=None, help="distress events CSV: entity,event_date")
    p.add_argument("--horizon", type=int, default=24, help="pre-distress horizon, months")
    p.add_argument("--mu", type=float, default=0.9, help="preference for catching events")
    p.add_argument("--model", action="append", required=True,
                   help="model spec name=feat1+feat2 (repeatable)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_evaluate)

    p = commands.add_parser("serve", help="serve an output directory over HTTP")
    p.add_argument("--dir", required=True)
    p.add_argument("--port", type=int, default=8314)
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        _log(f"error: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
