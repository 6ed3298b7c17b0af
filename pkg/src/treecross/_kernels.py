"""Compiled inner loop for the ensemble experiment.

Rejection sampling at realistic sizes burns through 1e8+ candidate trees,
so the walk, the capped crossing count and the per-sample statistics run
under numba. The kernel mirrors the pure-Python sampler semantics exactly
(same walk step rule, same crossing predicate); tests pin the two against
each other and against exhaustive enumeration at small n.

Determinism: all randomness comes from the Generator passed in, consumed
in fixed-size blocks of BLOCK draws, so a given stream always produces
the same sample sequence regardless of thread scheduling.
"""

from __future__ import annotations

import numpy as np
from numba import njit

#: Draw-buffer size; part of the reproducible stream contract, do not tune.
BLOCK = 4096


@njit(cache=True, nogil=True)
def fill_quotas(rng, n, quotas, total_target, max_attempts, ptab):  # pragma: no cover
    """Sample trees until per-crossing-count quotas (or a total) are met.

    quotas[c] caps how many samples with exactly c crossings are kept;
    sampling stops once total_target samples are kept or max_attempts
    candidates were drawn. Per kept sample the outputs hold the crossing
    count, the number of vertex-disjoint edge pairs, and the two relative
    prediction errors (NaN when no pair can cross).

    Returns (attempts, kept, counts, cmaxes, delta0, delta2).
    """
    cap = quotas.shape[0] - 1
    out_c = np.empty(total_target, np.int64)
    out_cmax = np.empty(total_target, np.int64)
    out_d0 = np.empty(total_target, np.float64)
    out_d2 = np.empty(total_target, np.float64)
    filled = np.zeros(cap + 1, np.int64)
    visited = np.zeros(n + 1, np.uint8)
    es = np.empty(max(n - 1, 1), np.int64)
    ee = np.empty(max(n - 1, 1), np.int64)
    deg = np.zeros(n + 1, np.int64)
    steps = rng.integers(0, n - 1, size=BLOCK)
    starts = rng.integers(1, n + 1, size=BLOCK)
    si = 0
    ti = 0
    kept = 0
    attempts = np.int64(0)
    m = n - 1
    while kept < total_target and attempts < max_attempts:
        attempts += 1
        # first-entry random walk on the complete graph, identity arrangement
        for i in range(n + 1):
            visited[i] = 0
        if ti >= BLOCK:
            starts = rng.integers(1, n + 1, size=BLOCK)
            ti = 0
        cur = starts[ti]
        ti += 1
        visited[cur] = 1
        k = 0
        while k < m:
            if si >= BLOCK:
                steps = rng.integers(0, n - 1, size=BLOCK)
                si = 0
            step = steps[si]
            si += 1
            nxt = step + 1 if step < cur - 1 else step + 2
            if visited[nxt] == 0:
                visited[nxt] = 1
                if cur < nxt:
                    es[k] = cur
                    ee[k] = nxt
                else:
                    es[k] = nxt
                    ee[k] = cur
                k += 1
            cur = nxt
        # crossing count with early exit above the largest conditioning value
        c = 0
        for i in range(m):
            s1 = es[i]
            e1 = ee[i]
            for j in range(i + 1, m):
                s2 = es[j]
                e2 = ee[j]
                if s2 == s1 or s2 == e1 or e2 == s1 or e2 == e1:
                    continue
                if (s1 < s2 and s2 < e1 and e1 < e2) or (s2 < s1 and s1 < e2 and e2 < e1):
                    c += 1
                    if c > cap:
                        break
            if c > cap:
                break
        if c > cap or filled[c] >= quotas[c]:
            continue
        for i in range(n + 1):
            deg[i] = 0
        for i in range(m):
            deg[es[i]] += 1
            deg[ee[i]] += 1
        sum_sq = 0
        for v in range(1, n + 1):
            sum_sq += deg[v] * deg[v]
        cmax = (n * (n - 1) - sum_sq) // 2
        informed = 0.0
        for i in range(m):
            s1 = es[i]
            e1 = ee[i]
            d1 = e1 - s1
            for j in range(i + 1, m):
                s2 = es[j]
                e2 = ee[j]
                if s2 == s1 or s2 == e1 or e2 == s1 or e2 == e1:
                    continue
                informed += ptab[d1, e2 - s2]
        out_c[kept] = c
        out_cmax[kept] = cmax
        if cmax > 0:
            out_d0[kept] = 1.0 / 3.0 - c / cmax
            out_d2[kept] = (informed - c) / cmax
        else:
            out_d0[kept] = np.nan
            out_d2[kept] = np.nan
        filled[c] += 1
        kept += 1
    return attempts, kept, out_c, out_cmax, out_d0, out_d2
