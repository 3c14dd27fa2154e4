"""Jitted inner loops for the clustering algorithms.

All kernels operate on the package's 1-based array layout: per-node arrays
of length n_node+1 (slot 0 is writable scratch, never read) and per-cluster
arrays of length n_cluster+1. Edge sweeps visit tail nodes in ascending
order and each tail's out-edges in storage order, so results are
deterministic for a fixed graph.
"""

import numpy as np
from numba import njit

INF = np.inf


@njit(cache=True)
def bf_sweep(row_offsets, col_indices, weights, m, d):
    """One relaxation sweep of multi-source Bellman-Ford. Returns True on change."""
    changed = False
    n = row_offsets.shape[0] - 1
    for i in range(1, n + 1):
        di = d[i]
        if di == INF:
            continue
        mi = m[i]
        for e in range(row_offsets[i - 1], row_offsets[i]):
            j = col_indices[e]
            lhs = di + weights[e]
            if lhs < d[j]:
                d[j] = lhs
                m[j] = mi
                changed = True
    return changed


@njit(cache=True)
def balanced_bf_sweep(row_offsets, col_indices, weights, m, d, p, n, s, tol, tiebreak):
    """One sweep of size-aware Bellman-Ford. Returns True if any node switched.

    A node j switches to the tail's cluster on strict improvement, or on an
    approximate distance tie when the candidate cluster is smaller by at
    least two and j is not anybody's predecessor.
    """
    changed = False
    nn = row_offsets.shape[0] - 1
    for i in range(1, nn + 1):
        di = d[i]
        if di == INF:
            continue
        for e in range(row_offsets[i - 1], row_offsets[i]):
            j = col_indices[e]
            lhs = di + weights[e]
            dj = d[j]
            switch = False
            if lhs < dj:
                switch = True
            elif tiebreak and n[j] == 0:
                scale = max(1.0, max(abs(lhs), abs(dj)))
                if abs(lhs - dj) <= tol * scale:
                    mi = m[i]
                    mj = m[j]
                    si = s[mi] if mi > 0 else 0
                    sj = s[mj] if mj > 0 else 0
                    if si + 1 < sj:
                        switch = True
            if switch:
                s[m[i]] += 1
                s[m[j]] -= 1
                m[j] = m[i]
                d[j] = lhs
                n[i] += 1
                n[p[j]] -= 1
                p[j] = i
                changed = True
    return changed


@njit(cache=True)
def fw_tables(row_offsets, col_indices, weights, m,
              cluster_nodes, node_offsets, table_offsets, local_index,
              d_flat, p_flat):
    """Fill packed per-cluster all-pairs distance/predecessor tables."""
    n_cluster = node_offsets.shape[0] - 2
    for a in range(1, n_cluster + 1):
        lo = node_offsets[a]
        sz = node_offsets[a + 1] - lo
        base = table_offsets[a]
        for t in range(sz * sz):
            d_flat[base + t] = INF
            p_flat[base + t] = 0
        for li in range(sz):
            i = cluster_nodes[lo + li]
            for e in range(row_offsets[i - 1], row_offsets[i]):
                j = col_indices[e]
                if m[j] == a:
                    lj = local_index[j]
                    d_flat[base + li * sz + lj] = weights[e]
                    p_flat[base + li * sz + lj] = i
        for li in range(sz):
            d_flat[base + li * sz + li] = 0.0
            p_flat[base + li * sz + li] = cluster_nodes[lo + li]
        for lk in range(sz):
            for li in range(sz):
                dik = d_flat[base + li * sz + lk]
                if dik == INF:
                    continue
                for lj in range(sz):
                    alt = dik + d_flat[base + lk * sz + lj]
                    if alt < d_flat[base + li * sz + lj]:
                        d_flat[base + li * sz + lj] = alt
                        p_flat[base + li * sz + lj] = p_flat[base + lk * sz + lj]


@njit(cache=True)
def center_sweep(cluster_nodes, node_offsets, table_offsets, local_index,
                 d_flat, p_flat, c, d, p, n):
    """Move each center to the node with strictly least sum of squared
    within-cluster distances; reload d/p/n from the new center's table row.
    Returns True if any center moved."""
    changed = False
    n_cluster = node_offsets.shape[0] - 2
    for a in range(1, n_cluster + 1):
        lo = node_offsets[a]
        sz = node_offsets[a + 1] - lo
        base = table_offsets[a]
        cur = local_index[c[a]]
        qbest = 0.0
        for lj in range(sz):
            v = d_flat[base + cur * sz + lj]
            qbest += v * v
        best = cur
        for li in range(sz):
            q = 0.0
            for lj in range(sz):
                v = d_flat[base + li * sz + lj]
                q += v * v
            if q < qbest:
                best = li
                qbest = q
        if best != cur:
            changed = True
            c[a] = cluster_nodes[lo + best]
            for lj in range(sz):
                n[cluster_nodes[lo + lj]] = 0
            for lj in range(sz):
                jg = cluster_nodes[lo + lj]
                d[jg] = d_flat[base + best * sz + lj]
                p[jg] = p_flat[base + best * sz + lj]
                n[p[jg]] += 1
    return changed


@njit(cache=True)
def exterior_reach(row_offsets, col_indices, weights, m, d, reach):
    """reach[j] = cheapest center distance coming in over an inter-cluster edge."""
    nn = row_offsets.shape[0] - 1
    for k in range(1, nn + 1):
        dk = d[k]
        mk = m[k]
        for e in range(row_offsets[k - 1], row_offsets[k]):
            j = col_indices[e]
            if m[j] != mk:
                v = dk + weights[e]
                if v < reach[j]:
                    reach[j] = v


@njit(cache=True)
def elimination_scan(cluster_nodes, node_offsets, table_offsets,
                     d_flat, reach, d, penalty):
    """Energy increase from dissolving each cluster into its neighbors."""
    n_cluster = node_offsets.shape[0] - 2
    for a in range(1, n_cluster + 1):
        lo = node_offsets[a]
        sz = node_offsets[a + 1] - lo
        base = table_offsets[a]
        new_energy = 0.0
        old_energy = 0.0
        for li in range(sz):
            dmin = INF
            for lj in range(sz):
                v = reach[cluster_nodes[lo + lj]] + d_flat[base + lj * sz + li]
                if v < dmin:
                    dmin = v
            new_energy += dmin * dmin
            di = d[cluster_nodes[lo + li]]
            old_energy += di * di
        penalty[a] = new_energy - old_energy


@njit(cache=True)
def split_scan(cluster_nodes, node_offsets, table_offsets, d_flat, d,
               improvement, best1, best2):
    """Energy decrease from the best two-center split of each cluster."""
    n_cluster = node_offsets.shape[0] - 2
    for a in range(1, n_cluster + 1):
        lo = node_offsets[a]
        sz = node_offsets[a + 1] - lo
        base = table_offsets[a]
        best = INF
        b1 = 0
        b2 = 0
        for li in range(sz):
            for lj in range(sz):
                energy = 0.0
                for lk in range(sz):
                    dik = d_flat[base + li * sz + lk]
                    djk = d_flat[base + lj * sz + lk]
                    if dik < djk:
                        energy += dik * dik
                    else:
                        energy += djk * djk
                if energy < best:
                    best = energy
                    b1 = li
                    b2 = lj
        old_energy = 0.0
        for li in range(sz):
            di = d[cluster_nodes[lo + li]]
            old_energy += di * di
        improvement[a] = old_energy - best
        best1[a] = cluster_nodes[lo + b1]
        best2[a] = cluster_nodes[lo + b2]
