"""Hot numeric kernels with two interchangeable backends.

"numba" (default when importable) JIT-compiles the inner loops; "numpy" is
the fallback: the graph census runs as vectorized batch operations, while
the strictly sequential pieces (bucket peeling, the Metropolis walk) run as
plain Python over int bitmasks. Both backends produce bit-identical output:
ties in the peeling order break toward the lowest node index and the chain
kernels evaluate the same float expressions in the same order.

Backend selection: environment variable EDERGM_BACKEND=numba|numpy at import
time, or set_backend() at runtime (used by the benchmark and the tests).
"""

from __future__ import annotations

import os
import warnings
from math import comb

import numpy as np

ENV_VAR = "EDERGM_BACKEND"

# numba probes the TBB threading layer lazily, on the first parallel kernel
# launch; the stale-version notice it may emit there is irrelevant to us
# (the workqueue layer takes over), so silence that one message globally
warnings.filterwarnings("ignore", message=".*TBB.*")

# census masks are int64, so C(n,2) must fit in 62 bits
MAX_CENSUS_NODES = 11

_numba_mod = None


def _numba_available() -> bool:
    try:
        with warnings.catch_warnings():
            # a stale TBB probe warning, irrelevant to the fallback layers
            warnings.filterwarnings("ignore", message=".*TBB.*")
            import numba  # noqa: F401
    except ImportError:
        return False
    return True


def _initial_backend() -> str:
    choice = os.environ.get(ENV_VAR, "").strip().lower()
    if choice and choice not in ("numba", "numpy"):
        raise ValueError(f"{ENV_VAR} must be 'numba' or 'numpy', got {choice!r}")
    if choice == "numpy":
        return "numpy"
    if _numba_available():
        return "numba"
    if choice == "numba":
        raise RuntimeError(f"{ENV_VAR}=numba but numba is not importable")
    return "numpy"


_backend = _initial_backend()


def active_backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not _numba_available():
        raise RuntimeError("numba backend requested but numba is not importable")
    _backend = name


def _jit():
    global _numba_mod
    if _numba_mod is None:
        with warnings.catch_warnings():
            warnings.filterwarnings("ignore", message=".*TBB.*")
            from . import _numba_kernels
        _numba_mod = _numba_kernels
    return _numba_mod


# ---------------------------------------------------------------------------
# core numbers (CSR adjacency in, core number per node out)

def core_numbers(indptr: np.ndarray, indices: np.ndarray) -> np.ndarray:
    indptr = np.ascontiguousarray(indptr, dtype=np.int64)
    indices = np.ascontiguousarray(indices, dtype=np.int64)
    if _backend == "numba":
        return _jit().core_numbers_csr(indptr, indices)
    return _core_numbers_py(indptr, indices)


def _core_numbers_py(indptr: np.ndarray, indices: np.ndarray) -> np.ndarray:
    ptr = indptr.tolist()
    adj = indices.tolist()
    n = len(ptr) - 1
    deg = [ptr[v + 1] - ptr[v] for v in range(n)]
    md = max(deg) if n else 0
    bins = [0] * (md + 2)
    for v in range(n):
        bins[deg[v]] += 1
    start = 0
    for d in range(md + 1):
        count = bins[d]
        bins[d] = start
        start += count
    pos = [0] * n
    vert = [0] * n
    for v in range(n):
        pos[v] = bins[deg[v]]
        vert[pos[v]] = v
        bins[deg[v]] += 1
    for d in range(md, 0, -1):
        bins[d] = bins[d - 1]
    bins[0] = 0
    core = deg[:]
    for i in range(n):
        v = vert[i]
        cv = core[v]
        for j in range(ptr[v], ptr[v + 1]):
            u = adj[j]
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
    return np.asarray(core, dtype=np.int64)


# ---------------------------------------------------------------------------
# exhaustive census over all 2^C(n,2) labeled graphs

def census_counts(n: int) -> np.ndarray:
    """counts[e, d] = number of labeled graphs on n nodes with that statistic."""
    if not 1 <= n <= MAX_CENSUS_NODES:
        raise ValueError(f"census kernel supports 1 <= n <= {MAX_CENSUS_NODES}, got {n}")
    m = comb(n, 2)
    pu = np.empty(m, dtype=np.int64)
    pv = np.empty(m, dtype=np.int64)
    k = 0
    for u in range(n):
        for v in range(u + 1, n):
            pu[k] = u
            pv[k] = v
            k += 1
    if _backend == "numba":
        nchunks = int(min(256, 1 << m))
        return _jit().census_counts(n, pu, pv, nchunks)
    return _census_counts_np(n, pu, pv)


def _census_counts_np(n: int, pu: np.ndarray, pv: np.ndarray, chunk_size: int = 1 << 16) -> np.ndarray:
    m = pu.shape[0]
    total = 1 << m
    full = np.int64((1 << n) - 1)
    one = np.int64(1)
    pop = np.array([bin(i).count("1") for i in range(1 << n)], dtype=np.int64)
    counts = np.zeros((m + 1) * n, dtype=np.int64)
    for lo in range(0, total, chunk_size):
        masks = np.arange(lo, min(lo + chunk_size, total), dtype=np.int64)
        batch = masks.shape[0]
        adj = np.zeros((n, batch), dtype=np.int64)
        e = np.zeros(batch, dtype=np.int64)
        for k in range(m):
            bit = (masks >> np.int64(k)) & one
            adj[pu[k]] |= bit << np.int64(pv[k])
            adj[pv[k]] |= bit << np.int64(pu[k])
            e += bit
        alive = np.full(batch, full, dtype=np.int64)
        degen = np.zeros(batch, dtype=np.int64)
        degs = np.empty((n, batch), dtype=np.int64)
        for _ in range(n):
            for v in range(n):
                dv = pop[adj[v] & alive]
                dv[((alive >> np.int64(v)) & one) == 0] = n + 1
                degs[v] = dv
            dmin = degs.min(axis=0)
            best = degs.argmin(axis=0)  # first minimum = lowest node index
            np.maximum(degen, dmin, out=degen)
            alive &= ~(one << best.astype(np.int64))
        counts += np.bincount(e * n + degen, minlength=(m + 1) * n)
    return counts.reshape(m + 1, n)


# ---------------------------------------------------------------------------
# Metropolis single-edge-toggle chain

def chain_run(
    adj: np.ndarray,
    theta1: float,
    theta2: float,
    pu: np.ndarray,
    pv: np.ndarray,
    proposals: np.ndarray,
    logu: np.ndarray,
    e0: int,
    d0: int,
    mask0: int,
    track_mask: bool,
    inv_e: float,
    inv_d: float,
):
    """Run the chain for len(proposals) steps from the given adjacency matrix.

    Returns per-step arrays (e, degen, accepted, edge_mask); the state
    recorded at step t is the state after the step-t proposal is resolved.
    edge_mask is only tracked when track_mask is set (needs C(n,2) <= 62).
    """
    adj = np.array(adj, dtype=np.uint8, copy=True)
    pu = np.ascontiguousarray(pu, dtype=np.int64)
    pv = np.ascontiguousarray(pv, dtype=np.int64)
    proposals = np.ascontiguousarray(proposals, dtype=np.int64)
    logu = np.ascontiguousarray(logu, dtype=np.float64)
    if _backend == "numba":
        return _jit().chain_run(
            adj, float(theta1), float(theta2), pu, pv, proposals, logu,
            np.int64(e0), np.int64(d0), np.int64(mask0), track_mask,
            float(inv_e), float(inv_d),
        )
    return _chain_run_py(
        adj, float(theta1), float(theta2), pu, pv, proposals, logu,
        int(e0), int(d0), int(mask0), track_mask, float(inv_e), float(inv_d),
    )


def _bit_degeneracy_py(rows: list[int], n: int) -> int:
    alive = (1 << n) - 1
    degen = 0
    for _ in range(n):
        best_v = -1
        best_d = n + 1
        for v in range(n):
            if alive >> v & 1:
                c = (rows[v] & alive).bit_count()
                if c < best_d:
                    best_d = c
                    best_v = v
        if best_d > degen:
            degen = best_d
        alive &= ~(1 << best_v)
    return degen


def _chain_run_py(adj, theta1, theta2, pu, pv, proposals, logu, e0, d0, mask0,
                  track_mask, inv_e, inv_d):
    n = adj.shape[0]
    rows = [0] * n
    for u in range(n):
        for v in range(n):
            if adj[u, v]:
                rows[u] |= 1 << v
    steps = proposals.shape[0]
    e_t = np.empty(steps, dtype=np.int64)
    d_t = np.empty(steps, dtype=np.int64)
    acc_t = np.empty(steps, dtype=np.uint8)
    mask_t = np.empty(steps, dtype=np.int64)
    prop = proposals.tolist()
    lu = logu.tolist()
    pul = pu.tolist()
    pvl = pv.tolist()
    e, dcur, mask = e0, d0, mask0
    for t in range(steps):
        k = prop[t]
        u = pul[k]
        v = pvl[k]
        bit_u = 1 << u
        bit_v = 1 << v
        adding = not rows[u] >> v & 1
        rows[u] ^= bit_v
        rows[v] ^= bit_u
        de = 1 if adding else -1
        dnew = _bit_degeneracy_py(rows, n)
        delta = theta1 * (de * inv_e) + theta2 * ((dnew - dcur) * inv_d)
        if lu[t] < delta:
            e += de
            dcur = dnew
            if track_mask:
                mask ^= 1 << k
            acc_t[t] = 1
        else:
            rows[u] ^= bit_v
            rows[v] ^= bit_u
            acc_t[t] = 0
        e_t[t] = e
        d_t[t] = dcur
        mask_t[t] = mask
    return e_t, d_t, acc_t, mask_t
