"""Independent brute-force oracles used to cross-check the implementation.

Everything here is deliberately naive and written from the definitions,
without numpy linear algebra or scipy graph routines, so a bug in the
package cannot hide in a shared code path.
"""

from __future__ import annotations

import math
from itertools import combinations


def gauss_inverse(matrix: list[list[float]]) -> list[list[float]]:
    """Matrix inverse by Gaussian elimination with partial pivoting."""
    n = len(matrix)
    aug = [list(map(float, row)) + [1.0 if i == j else 0.0 for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(aug[r][col]))
        if abs(aug[pivot][col]) < 1e-300:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        scale = aug[col][col]
        aug[col] = [v / scale for v in aug[col]]
        for row in range(n):
            if row != col and aug[row][col] != 0.0:
                factor = aug[row][col]
                aug[row] = [a - factor * b for a, b in zip(aug[row], aug[col])]
    return [row[n:] for row in aug]


def info_centrality_direct(weights: list[list[float]]) -> list[float]:
    """Information centrality straight from the defining formula."""
    n = len(weights)
    b = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                b[i][j] = 1.0 + sum(weights[i])
            else:
                b[i][j] = 1.0 - weights[i][j]
    c = gauss_inverse(b)
    trace = sum(c[j][j] for j in range(n))
    out = []
    for i in range(n):
        rowsum = sum(c[i][j] for j in range(n))
        out.append(n / (n * c[i][i] + trace - 2.0 * rowsum))
    return out


def invert(weights: list[list[float]]) -> list[list[float]]:
    n = len(weights)
    return [
        [0.0 if i == j else (1.0 / weights[i][j] if weights[i][j] > 0 else math.inf)
         for j in range(n)]
        for i in range(n)
    ]


def floyd_warshall(weights: list[list[float]]) -> list[list[float]]:
    """All-pairs shortest distances over inverted weights."""
    dist = [row[:] for row in invert(weights)]
    n = len(dist)
    for k in range(n):
        for i in range(n):
            dik = dist[i][k]
            if dik == math.inf:
                continue
            for j in range(n):
                alt = dik + dist[k][j]
                if alt < dist[i][j]:
                    dist[i][j] = alt
    return dist


def _all_simple_paths(dist: list[list[float]], s: int, t: int):
    """Yield (cost, interior_nodes) over every simple path s..t."""
    n = len(dist)
    stack = [(s, 0.0, {s}, [])]
    while stack:
        node, cost, visited, interior = stack.pop()
        for nxt in range(n):
            if nxt in visited or dist[node][nxt] == math.inf or nxt == node:
                continue
            ncost = cost + dist[node][nxt]
            if nxt == t:
                yield ncost, interior
            else:
                stack.append((nxt, ncost, visited | {nxt}, interior + [nxt]))


def enum_centralities(weights: list[list[float]]) -> tuple[list[float], list[float]]:
    """(closeness, betweenness) by exhaustive simple-path enumeration."""
    n = len(weights)
    dist = invert(weights)
    shortest = [[math.inf] * n for _ in range(n)]
    betweenness = [0.0] * n
    for s, t in combinations(range(n), 2):
        paths = list(_all_simple_paths(dist, s, t))
        if not paths:
            continue
        best = min(cost for cost, _ in paths)
        shortest[s][t] = shortest[t][s] = best
        shortest_paths = [
            interior for cost, interior in paths
            if abs(cost - best) <= 1e-12 * max(1.0, abs(best))
        ]
        for interior in shortest_paths:
            for node in interior:
                betweenness[node] += 1.0 / len(shortest_paths)
    closeness = []
    for i in range(n):
        reach = [shortest[i][j] for j in range(n) if j != i and shortest[i][j] < math.inf]
        if not reach or sum(reach) == 0:
            closeness.append(0.0)
        else:
            r = len(reach)
            closeness.append((r / (n - 1)) * (r / sum(reach)))
    return closeness, betweenness


def naive_variance_over_time(normalized: list[list[float]]) -> float:
    """Average over nodes of the temporal population variance (Eq. style)."""
    t_count = len(normalized)
    n = len(normalized[0])
    total = 0.0
    for i in range(n):
        mean_i = sum(normalized[t][i] for t in range(t_count)) / t_count
        total += sum((normalized[t][i] - mean_i) ** 2 for t in range(t_count)) / t_count
    return total / n


def naive_variance_across_nodes(normalized: list[list[float]]) -> float:
    """Average per-period spread around per-node temporal means."""
    t_count = len(normalized)
    n = len(normalized[0])
    means = [
        sum(normalized[t][i] for t in range(t_count)) / t_count for i in range(n)
    ]
    total = 0.0
    for t in range(t_count):
        total += sum((normalized[t][i] - means[i]) ** 2 for i in range(n)) / n
    return total / t_count


def pairwise_auc(probabilities: list[float], labels: list[int]) -> float:
    positives = [p for p, y in zip(probabilities, labels) if y == 1]
    negatives = [p for p, y in zip(probabilities, labels) if y == 0]
    score = 0.0
    for p in positives:
        for q in negatives:
            if p > q:
                score += 1.0
            elif p == q:
                score += 0.5
    return score / (len(positives) * len(negatives))


def grid_best_loss(
    probabilities: list[float], labels: list[int], mu: float, grid: int = 10_000
) -> float:
    """Minimum loss over a dense uniform threshold grid."""
    n = len(labels)
    n_pos = sum(labels)
    n_neg = n - n_pos
    p1, p2 = n_pos / n, n_neg / n
    best = math.inf
    for k in range(grid + 1):
        lam = k / grid
        fn = sum(1 for p, y in zip(probabilities, labels) if y == 1 and p <= lam)
        fp = sum(1 for p, y in zip(probabilities, labels) if y == 0 and p > lam)
        value = mu * (fn / n_pos) * p1 + (1 - mu) * (fp / n_neg) * p2
        best = min(best, value)
    return best


def article_pairs(entity_sequence: list[str]) -> set[tuple[str, str]]:
    """Article-level co-occurrence: each unordered pair at most once."""
    distinct = sorted(set(entity_sequence))
    return set(combinations(distinct, 2))
