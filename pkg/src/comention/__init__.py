"""comention: entity co-mention networks from timestamped text corpora.

Pipeline stages are importable directly: corpus ingestion and sampling,
pattern-based mention scanning, windowed co-occurrence extraction,
per-period network aggregation with Laplace smoothing, weighted-network
centrality measures, and preference-weighted early-warning evaluation.
"""

from .cooccur import Context, ContextParams, CooccurrenceRelation, contexts, extract, relations
from .corpus import Article, CorpusFormatError, Period, SampleSpec, assign_period, open_corpus, sample
from .matcher import EntityPatternSet, Occurrence, PatternConfigError, PatternIndex, load_patterns, scan
from .netbuild import CrossSectionNetwork, SmoothingParams, aggregate, build_dynamic, smooth

__version__ = "0.1.0"

__all__ = [
    "Article",
    "Period",
    "SampleSpec",
    "CorpusFormatError",
    "open_corpus",
    "assign_period",
    "sample",
    "EntityPatternSet",
    "Occurrence",
    "PatternConfigError",
    "PatternIndex",
    "load_patterns",
    "scan",
    "Context",
    "ContextParams",
    "CooccurrenceRelation",
    "contexts",
    "relations",
    "extract",
    "CrossSectionNetwork",
    "SmoothingParams",
    "aggregate",
    "smooth",
    "build_dynamic",
    "__version__",
]
