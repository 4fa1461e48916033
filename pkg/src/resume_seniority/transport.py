"""Exact discrete optimal transport for the small instances that arise from job titles.

Solved as a min-cost flow with successive shortest augmenting paths
(Bellman-Ford on the residual graph, so negative reduced costs are fine).
Instances are a handful of tokens per side; exactness matters more than speed.
"""

from __future__ import annotations

from typing import Tuple

import numpy as np

_EPS = 1e-15


def transport(a: np.ndarray, b: np.ndarray, cost: np.ndarray) -> Tuple[float, np.ndarray]:
    """Minimum of <plan, cost> over plans with row sums ``a`` and column sums ``b``.

    ``a`` and ``b`` must be nonnegative and carry equal total mass.
    Returns (cost, plan).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    cost = np.asarray(cost, dtype=float)
    m, n = cost.shape
    if a.shape != (m,) or b.shape != (n,):
        raise ValueError("weight vectors do not match cost matrix shape")
    if (a < 0).any() or (b < 0).any():
        raise ValueError("weights must be nonnegative")
    if not np.isclose(a.sum(), b.sum(), rtol=1e-12, atol=1e-12):
        raise ValueError("source and sink mass differ")

    supply = a.copy()
    demand = b.copy()
    plan = np.zeros((m, n))
    # Node ids: 0..m-1 sources, m..m+n-1 sinks. Forward arcs i->j are uncapacitated;
    # backward arcs j->i carry residual capacity plan[i, j].
    while supply.max(initial=0.0) > _EPS and demand.max(initial=0.0) > _EPS:
        dist = np.full(m + n, np.inf)
        pred = np.full(m + n, -1, dtype=int)
        active = supply > _EPS
        dist[:m][active] = 0.0
        for _ in range(m + n):
            changed = False
            # source -> sink
            cand = dist[:m, None] + cost
            best_src = np.argmin(cand, axis=0)
            best = cand[best_src, np.arange(n)]
            better = best < dist[m:] - 1e-15
            if better.any():
                idx = np.nonzero(better)[0]
                dist[m + idx] = best[idx]
                pred[m + idx] = best_src[idx]
                changed = True
            # sink -> source along arcs with positive flow
            back = np.where(plan > _EPS, dist[None, m:] - cost, np.inf)
            best_sink = np.argmin(back, axis=1)
            bestb = back[np.arange(m), best_sink]
            betterb = bestb < dist[:m] - 1e-15
            if betterb.any():
                idx = np.nonzero(betterb)[0]
                dist[idx] = bestb[idx]
                pred[idx] = m + best_sink[idx]
                changed = True
            if not changed:
                break
        sinks = np.nonzero(demand > _EPS)[0]
        reach = sinks[np.isfinite(dist[m + sinks])]
        if reach.size == 0:  # pragma: no cover - impossible with complete bipartite arcs
            raise RuntimeError("no augmenting path")
        t = m + reach[np.argmin(dist[m + reach])]

        # walk back to the source, collect path and bottleneck
        path = []
        node = t
        bottleneck = demand[t - m]
        while True:
            p = pred[node]
            if node >= m:  # arc p(source) -> node(sink)
                path.append((p, node - m, +1))
            else:  # arc p(sink) -> node(source), reduces plan[node, p-m]
                path.append((node, p - m, -1))
                bottleneck = min(bottleneck, plan[node, p - m])
            node = p
            if node < m and pred[node] == -1:
                break
        bottleneck = min(bottleneck, supply[node])
        for i, j, sign in path:
            plan[i, j] += sign * bottleneck
            if sign < 0 and plan[i, j] < _EPS:
                plan[i, j] = 0.0
        supply[node] -= bottleneck
        demand[t - m] -= bottleneck
    return float((plan * cost).sum()), plan
