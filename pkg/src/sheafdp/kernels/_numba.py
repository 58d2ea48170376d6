"""numba-compiled kernels; see ``_numpy`` for the reference semantics."""

import numpy as np
from numba import njit


@njit(cache=True)
def _hash(row):
    h = np.uint64(1469598103934665603)
    for w in row:
        h ^= w
        h *= np.uint64(1099511628211)
        h ^= h >> np.uint64(29)
    return h


@njit(cache=True)
def _insert(table, store, n, row):
    """Probe for ``row``; insert at index ``n`` if absent. Returns True if inserted."""
    mask = table.shape[0] - 1
    slot = np.int64(_hash(row) & np.uint64(mask))
    words = row.shape[0]
    while True:
        k = table[slot]
        if k < 0:
            table[slot] = n
            return True
        same = True
        for w in range(words):
            if store[k, w] != row[w]:
                same = False
                break
        if same:
            return False
        slot = (slot + 1) & mask


@njit(cache=True)
def _rehash(store, n, size):
    table = np.full(size, -1, dtype=np.int64)
    mask = size - 1
    for k in range(n):
        slot = np.int64(_hash(store[k]) & np.uint64(mask))
        while table[slot] >= 0:
            slot = (slot + 1) & mask
        table[slot] = k
    return table


@njit(cache=True)
def union_closure(base, cap):
    b, words = base.shape
    store = np.zeros((64, words), dtype=np.uint64)
    table = np.full(128, -1, dtype=np.int64)
    _insert(table, store, 0, store[0])
    n = 1
    head = 0
    cand = np.empty(words, dtype=np.uint64)
    while head < n:
        for j in range(b):
            for w in range(words):
                cand[w] = store[head, w] | base[j, w]
            if n == store.shape[0]:
                grown = np.zeros((2 * n, words), dtype=np.uint64)
                grown[:n] = store
                store = grown
            if 2 * (n + 1) > table.shape[0]:
                table = _rehash(store, n, 2 * table.shape[0])
            if _insert(table, store, n, cand):
                store[n] = cand
                n += 1
                if n > cap:
                    return store[:n].copy(), False
        head += 1
    return store[:n].copy(), True


@njit(cache=True)
def _is_subset(a, b):
    for w in range(a.shape[0]):
        if a[w] & ~b[w]:
            return False
    return True


@njit(cache=True)
def minimal_supersets(masks, cards, u):
    k = masks.shape[0]
    out = np.empty(k, dtype=np.int64)
    count = 0
    row = masks[u]
    for j in range(k):
        if cards[j] <= cards[u] or not _is_subset(row, masks[j]):
            continue
        # candidates arrive by ascending size, so any open strictly between
        # u and masks[j] contains an already accepted minimal superset
        blocked = False
        for t in range(count):
            if _is_subset(masks[out[t]], masks[j]):
                blocked = True
                break
        if not blocked:
            out[count] = j
            count += 1
    return out[:count].copy()


@njit(cache=True)
def subset_matrix(masks):
    k = masks.shape[0]
    out = np.zeros((k, k), dtype=np.bool_)
    for i in range(k):
        for j in range(k):
            out[i, j] = _is_subset(masks[i], masks[j])
    return out


@njit(cache=True)
def nw_fill(cost):
    rows, cols = cost.shape
    table = np.empty((rows, cols), dtype=np.float64)
    for i in range(rows):
        for j in range(cols):
            if i == 0 and j == 0:
                table[0, 0] = 0.0
                continue
            best = np.inf
            if i > 0:
                best = min(best, table[i - 1, j] + cost[i - 1, j])
            if j > 0:
                best = min(best, table[i, j - 1] + cost[i, j - 1])
            if i > 0 and j > 0:
                best = min(best, table[i - 1, j - 1] + cost[i - 1, j - 1])
            table[i, j] = best
    return table


@njit(cache=True)
def nw_fill_scored(diag, gap):
    m, n = diag.shape
    table = np.empty((m + 1, n + 1), dtype=np.float64)
    for j in range(n + 1):
        table[0, j] = j * gap
    for i in range(1, m + 1):
        table[i, 0] = i * gap
        for j in range(1, n + 1):
            best = table[i - 1, j] + gap
            best = min(best, table[i, j - 1] + gap)
            best = min(best, table[i - 1, j - 1] + diag[i - 1, j - 1])
            table[i, j] = best
    return table
