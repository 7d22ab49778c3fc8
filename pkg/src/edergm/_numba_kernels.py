"""numba-jitted kernel implementations; contracts live in _kernels."""

from __future__ import annotations

import numpy as np
from numba import njit, prange


@njit(cache=True)
def core_numbers_csr(indptr, indices):
    n = indptr.shape[0] - 1
    deg = np.empty(n, np.int64)
    md = 0
    for v in range(n):
        deg[v] = indptr[v + 1] - indptr[v]
        if deg[v] > md:
            md = deg[v]
    bins = np.zeros(md + 2, np.int64)
    for v in range(n):
        bins[deg[v]] += 1
    start = 0
    for d in range(md + 1):
        count = bins[d]
        bins[d] = start
        start += count
    pos = np.empty(n, np.int64)
    vert = np.empty(n, np.int64)
    for v in range(n):
        pos[v] = bins[deg[v]]
        vert[pos[v]] = v
        bins[deg[v]] += 1
    for d in range(md, 0, -1):
        bins[d] = bins[d - 1]
    bins[0] = 0
    core = deg.copy()
    for i in range(n):
        v = vert[i]
        cv = core[v]
        for j in range(indptr[v], indptr[v + 1]):
            u = indices[j]
            cu = core[u]
            if cu > cv:
                pu = pos[u]
                pw = bins[cu]
                w = vert[pw]
                if u != w:
                    vert[pu] = w
                    pos[w] = pu
                    vert[pw] = u
                    pos[u] = pw
                bins[cu] += 1
                core[u] = cu - 1
    return core


@njit(cache=True, parallel=True)
def census_counts(n, pu, pv, nchunks):
    m = pu.shape[0]
    total = np.int64(1) << m
    out = np.zeros((nchunks, m + 1, n), np.int64)
    chunk = (total + nchunks - 1) // nchunks
    for c in prange(nchunks):
        lo = c * chunk
        hi = min(lo + chunk, total)
        adj = np.zeros(n, np.int64)
        for mask in range(lo, hi):
            for v in range(n):
                adj[v] = 0
            e = 0
            for k in range(m):
                if (mask >> k) & 1:
                    adj[pu[k]] |= np.int64(1) << pv[k]
                    adj[pv[k]] |= np.int64(1) << pu[k]
                    e += 1
            alive = (np.int64(1) << n) - 1
            degen = 0
            for _ in range(n):
                best_v = -1
                best_d = n + 1
                for v in range(n):
                    if (alive >> v) & 1:
                        x = adj[v] & alive
                        cnt = 0
                        while x:
                            x &= x - 1
                            cnt += 1
                        if cnt < best_d:
                            best_d = cnt
                            best_v = v
                if best_d > degen:
                    degen = best_d
                alive &= ~(np.int64(1) << best_v)
            out[c, e, degen] += 1
    return out.sum(axis=0)


@njit(cache=True)
def chain_run(adj, theta1, theta2, pu, pv, proposals, logu, e0, d0, mask0,
              track_mask, inv_e, inv_d):
    n = adj.shape[0]
    steps = proposals.shape[0]
    e_t = np.empty(steps, np.int64)
    d_t = np.empty(steps, np.int64)
    acc_t = np.empty(steps, np.uint8)
    mask_t = np.empty(steps, np.int64)
    deg = np.empty(n, np.int64)
    alive = np.empty(n, np.uint8)
    e = e0
    dcur = d0
    mask = mask0
    for t in range(steps):
        k = proposals[t]
        u = pu[k]
        v = pv[k]
        adding = adj[u, v] == 0
        if adding:
            adj[u, v] = 1
            adj[v, u] = 1
            de = 1
        else:
            adj[u, v] = 0
            adj[v, u] = 0
            de = -1
        # degeneracy of the proposal, recomputed from scratch
        for w in range(n):
            s = 0
            for x in range(n):
                s += adj[w, x]
            deg[w] = s
            alive[w] = 1
        dnew = 0
        for _ in range(n):
            best_v = -1
            best_d = n + 1
            for w in range(n):
                if alive[w] == 1 and deg[w] < best_d:
                    best_d = deg[w]
                    best_v = w
            if best_d > dnew:
                dnew = best_d
            alive[best_v] = 0
            for x in range(n):
                if adj[best_v, x] == 1 and alive[x] == 1:
                    deg[x] -= 1
        delta = theta1 * (de * inv_e) + theta2 * ((dnew - dcur) * inv_d)
        if logu[t] < delta:
            e += de
            dcur = dnew
            if track_mask:
                mask ^= np.int64(1) << k
            acc_t[t] = 1
        else:
            if adding:
                adj[u, v] = 0
                adj[v, u] = 0
            else:
                adj[u, v] = 1
                adj[v, u] = 1
            acc_t[t] = 0
        e_t[t] = e
        d_t[t] = dcur
        mask_t[t] = mask
    return e_t, d_t, acc_t, mask_t
