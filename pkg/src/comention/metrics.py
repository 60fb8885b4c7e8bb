"""Node and network measures for weighted cross-sectional networks.

Strength doubles as a weighted degree centrality. Closeness and betweenness
run on inverted weights (strong links are short distances). Information
centrality models flow over all parallel paths: with strength ``S`` and
weights ``w``, the matrix ``B`` has diagonal ``1 + S(i)`` and off-diagonal
``1 - w_ij``; writing ``C`` for its inverse, node ``i`` scores

    I(i) = n / (n * C_ii + trace(C) - 2 * rowsum_i(C))

Smoothing the network first (any positive alpha) guarantees ``B`` is
invertible. Panel-level diagnostics quantify how smoothing stabilizes the
series: the average per-node variance over time (V) and the average
cross-sectional variance around per-node temporal means (V').
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as _csgraph_dijkstra

from .corpus import Period
from .netbuild import CrossSectionNetwork, SmoothingParams, smooth

__all__ = [
    "CentralityError",
    "CentralityPanel",
    "DistributionFit",
    "strength",
    "degree",
    "invert_weights",
    "shortest_paths",
    "avg_binary_distance",
    "closeness",
    "betweenness",
    "information_centrality",
    "centrality_panel",
    "variance_over_time",
    "variance_across_nodes",
    "strength_distribution",
    "fit_distribution",
]

COND_TOLERANCE = 1e12
RESIDUAL_TOLERANCE = 1e-8


class CentralityError(ValueError):
    """Raised when a centrality computation cannot produce trustworthy values."""


def strength(net: CrossSectionNetwork) -> np.ndarray:
    """Sum of link weights per node."""
    return net.weights.sum(axis=1)


def degree(net: CrossSectionNetwork, min_weight: float = 0.0) -> np.ndarray:
    """Number of links per node with weight strictly above ``min_weight``."""
    if min_weight < 0:
        raise ValueError("min_weight must be nonnegative")
    return (net.weights > min_weight).sum(axis=1)


def invert_weights(net: CrossSectionNetwork) -> np.ndarray:
    """Distance matrix 1/w; absent links (w=0) become infinite distances."""
    with np.errstate(divide="ignore"):
        dist = 1.0 / net.weights
    np.fill_diagonal(dist, 0.0)
    return dist


def _distance_graph(net: CrossSectionNetwork) -> csr_matrix:
    i, j = np.nonzero(np.triu(net.weights))
    return csr_matrix(
        (1.0 / net.weights[i, j], (i, j)), shape=(net.n, net.n)
    )


def shortest_paths(net: CrossSectionNetwork) -> np.ndarray:
    """All-pairs shortest distances over inverted weights (Dijkstra)."""
    return _csgraph_dijkstra(_distance_graph(net), directed=False)


def avg_binary_distance(net: CrossSectionNetwork, min_weight: float = 0.0) -> float:
    """Mean hop count over connected node pairs, ignoring weights."""
    adjacency = (net.weights > min_weight).astype(float)
    hops = _csgraph_dijkstra(csr_matrix(adjacency), directed=False, unweighted=True)
    mask = np.isfinite(hops) & ~np.eye(net.n, dtype=bool)
    if not mask.any():
        raise CentralityError("all nodes are isolated; no connected pairs")
    return float(hops[mask].mean())


def closeness(net: CrossSectionNetwork) -> np.ndarray:
    """Closeness centrality on inverted weights, Wasserman-Faust scaled.

    For node i with r reachable nodes at total distance D:
    C(i) = (r / (n-1)) * (r / D); nodes reaching nothing score 0.
    """
    dist = shortest_paths(net)
    n = net.n
    out = np.zeros(n)
    for i in range(n):
        finite = np.isfinite(dist[i]) & (np.arange(n) != i)
        r = int(finite.sum())
        if r == 0:
            continue
        total = dist[i, finite].sum()
        if total > 0:
            out[i] = (r / (n - 1)) * (r / total)
    return out


def betweenness(net: CrossSectionNetwork) -> np.ndarray:
    """Shortest-path betweenness with fractional shares over equal-cost paths.

    Brandes' accumulation over inverted-weight distances; unnormalized, so a
    middle node on a 3-path scores exactly 1.
    """
    n = net.n
    dist = invert_weights(net)
    score = np.zeros(n)
    for s in range(n):
        sigma = np.zeros(n)
        sigma[s] = 1.0
        d = np.full(n, np.inf)
        d[s] = 0.0
        preds: list[list[int]] = [[] for _ in range(n)]
        done = np.zeros(n, dtype=bool)
        order: list[int] = []
        heap: list[tuple[float, int]] = [(0.0, s)]
        while heap:
            dv, v = heapq.heappop(heap)
            if done[v] or dv > d[v]:
                continue
            done[v] = True
            order.append(v)
            for w in range(n):
                edge = dist[v, w]
                if not np.isfinite(edge) or w == v:
                    continue
                alt = dv + edge
                if alt < d[w]:
                    d[w] = alt
                    sigma[w] = sigma[v]
                    preds[w] = [v]
                    heapq.heappush(heap, (alt, w))
                elif alt == d[w] and not done[w]:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = np.zeros(n)
        for v in reversed(order):
            for p in preds[v]:
                delta[p] += sigma[p] / sigma[v] * (1.0 + delta[v])
            if v != s:
                score[v] += delta[v]
    return score / 2.0  # each unordered pair visited from both endpoints


def information_centrality(
    net: CrossSectionNetwork, cond_tolerance: float = COND_TOLERANCE
) -> np.ndarray:
    """Information (current-flow closeness) centrality per node.

    Computed from a single dense factorization of B. Raises
    :class:`CentralityError` when B is singular or ill-conditioned (for
    example on networks with disconnected components at alpha=0) rather
    than returning unreliable numbers.
    """
    n = net.n
    if n < 2:
        raise CentralityError("information centrality needs at least 2 nodes")
    w = net.weights
    b = 1.0 - w
    np.fill_diagonal(b, 1.0 + strength(net))
    cond = np.linalg.cond(b)
    if not np.isfinite(cond) or cond > cond_tolerance:
        raise CentralityError(
            f"matrix B is singular or ill-conditioned (cond={cond:.3e}); "
            "smooth the network (alpha > 0) to guarantee invertibility"
        )
    c = np.linalg.solve(b, np.eye(n))
    residual = float(np.abs(b @ c - np.eye(n)).max())
    if residual > RESIDUAL_TOLERANCE:
        raise CentralityError(f"inversion residual {residual:.3e} exceeds tolerance")
    diag = np.diagonal(c)
    return n / (n * diag + diag.sum() - 2.0 * c.sum(axis=1))


@dataclass(frozen=True)
class CentralityPanel:
    """Information centrality per period and node, with joint normalization.

    ``normalized`` is min-max scaled over all periods and nodes together;
    when every value is identical the panel is flagged degenerate and the
    normalized matrix is all zeros.
    """

    periods: tuple[Period, ...]
    nodes: tuple[str, ...]
    values: np.ndarray
    normalized: np.ndarray
    alpha: float
    degenerate: bool = False


def centrality_panel(
    networks: list[CrossSectionNetwork], alpha: float = 1.0
) -> CentralityPanel:
    """Smooth each cross section, compute centrality, normalize jointly."""
    if not networks:
        raise ValueError("empty network series")
    nodes = networks[0].nodes
    for net in networks:
        if net.nodes != nodes:
            raise ValueError("inconsistent node ordering across cross sections")
    params = SmoothingParams(alpha)
    values = np.vstack(
        [information_centrality(smooth(net, params)) for net in networks]
    )
    lo, hi = float(values.min()), float(values.max())
    degenerate = not hi > lo
    normalized = (
        np.zeros_like(values) if degenerate else (values - lo) / (hi - lo)
    )
    return CentralityPanel(
        periods=tuple(net.period for net in networks),
        nodes=nodes,
        values=values,
        normalized=normalized,
        alpha=alpha,
        degenerate=degenerate,
    )


def variance_over_time(panel: CentralityPanel) -> float:
    """Average over nodes of the population variance of I' across periods."""
    if len(panel.periods) < 2:
        raise ValueError("variance over time needs at least 2 periods")
    return float(np.var(panel.normalized, axis=0).mean())


def variance_across_nodes(panel: CentralityPanel) -> float:
    """Average cross-sectional spread of I' around per-node temporal means."""
    if len(panel.nodes) < 2:
        raise ValueError("variance across nodes needs at least 2 nodes")
    deviations = panel.normalized - panel.normalized.mean(axis=0, keepdims=True)
    return float(np.mean(deviations**2))


def strength_distribution(net: CrossSectionNetwork) -> list[tuple[float, float]]:
    """Cumulative strength distribution: (x, P(strength >= x)) per distinct x."""
    s = np.sort(strength(net))
    n = len(s)
    points = []
    for x in np.unique(s):
        points.append((float(x), float((s >= x).sum() / n)))
    return points


@dataclass(frozen=True)
class DistributionFit:
    """A log-space least-squares fit of a survival distribution.

    For the exponential model ``p = scale * exp(-rate * x)``; for the
    power-law model ``p = scale * x ** (-rate)``. ``residual`` is the sum of
    squared errors in log space over the fitted points.
    """

    model: str
    scale: float
    rate: float
    fit_range: tuple[float, float]
    residual: float


def fit_distribution(
    points: list[tuple[float, float]],
    model: str,
    fit_range: tuple[float, float] | None = None,
) -> DistributionFit:
    """Fit an exponential or power-law survival model to distribution points."""
    if model not in ("exponential", "power-law"):
        raise ValueError(f"unknown model {model!r}")
    xs = np.array([x for x, _ in points], dtype=float)
    ps = np.array([p for _, p in points], dtype=float)
    if fit_range is not None:
        keep = (xs >= fit_range[0]) & (xs <= fit_range[1])
        xs, ps = xs[keep], ps[keep]
    keep = ps > 0
    if model == "power-law":
        keep &= xs > 0
    xs, ps = xs[keep], ps[keep]
    if len(np.unique(xs)) < 3:
        raise ValueError("need at least 3 distinct strength values in range")
    predictor = xs if model == "exponential" else np.log(xs)
    design = np.column_stack([np.ones_like(predictor), predictor])
    coef, *_ = np.linalg.lstsq(design, np.log(ps), rcond=None)
    fitted = design @ coef
    residual = float(((np.log(ps) - fitted) ** 2).sum())
    return DistributionFit(
        model=model,
        scale=float(np.exp(coef[0])),
        rate=float(-coef[1]),
        fit_range=(float(xs.min()), float(xs.max())),
        residual=residual,
    )
