"""Vectorised numpy implementations of the hot kernels.

Every function here has a twin in ``_numba`` with the same signature and
the same result (row order of ``union_closure`` aside, callers sort).
"""

import numpy as np


def _as_void(rows):
    rows = np.ascontiguousarray(rows)
    return rows.view(np.dtype((np.void, rows.dtype.itemsize * rows.shape[1]))).ravel()


def union_closure(base, cap):
    """All unions of subfamilies of ``base`` (rows of packed words), plus the empty set.

    Returns ``(rows, ok)``; ``ok`` is False when more than ``cap`` rows were produced,
    in which case ``rows`` is truncated.
    """
    words = base.shape[1]
    seen = np.zeros((1, words), dtype=np.uint64)
    frontier = seen
    while frontier.shape[0] and base.shape[0]:
        cand = (frontier[:, None, :] | base[None, :, :]).reshape(-1, words)
        cand = cand[np.unique(_as_void(cand), return_index=True)[1]]
        fresh = cand[~np.isin(_as_void(cand), _as_void(seen))]
        seen = np.concatenate([seen, fresh])
        if seen.shape[0] > cap:
            return seen[:cap + 1], False
        frontier = fresh
    return seen, True


def minimal_supersets(masks, cards, u):
    """Indices ``j`` whose row strictly contains row ``u`` with nothing open in between.

    ``masks`` must be sorted by cardinality; the result keeps that order.
    """
    row = masks[u]
    lo = int(np.searchsorted(cards, cards[u], side="right"))
    tail = masks[lo:]
    if masks.shape[1] == 1:
        sup = (tail[:, 0] & row[0]) == row[0]
    else:
        sup = ((tail & row) == row).all(axis=1)
    idx = np.flatnonzero(sup) + lo
    # equal-size strict supersets cannot contain one another
    if idx.size <= 1 or cards[idx[-1]] == cards[idx[0]]:
        return idx.astype(np.int64)
    found = []
    # peel size levels: the smallest remaining candidates are minimal, and
    # anything containing one of them is not
    while idx.size:
        level_card = cards[idx[0]]
        level = idx[cards[idx] == level_card]
        found.append(level)
        rest = idx[cards[idx] > level_card]
        if rest.size == 0:
            break
        lm = masks[level]
        covered = ((masks[rest][:, None, :] & lm[None, :, :]) == lm[None, :, :]).all(axis=2).any(axis=1)
        idx = rest[~covered]
    return np.concatenate(found).astype(np.int64)


def subset_matrix(masks):
    """``out[i, j]`` is True iff row i is a subset of row j."""
    return np.all((masks[:, None, :] & masks[None, :, :]) == masks[:, None, :], axis=2)


def nw_fill(cost):
    """Source-indexed min-plus table: each move pays the cost of the cell it leaves."""
    rows, cols = cost.shape
    table = np.empty((rows, cols), dtype=np.float64)
    # a row is a min-plus scan: s[j] = min(a[j], s[j-1] + c[j-1])
    for i in range(rows):
        a = np.full(cols, np.inf)
        if i == 0:
            a[0] = 0.0
        else:
            a = table[i - 1] + cost[i - 1]
            a[1:] = np.minimum(a[1:], table[i - 1, :-1] + cost[i - 1, :-1])
        prefix = np.concatenate([[0.0], np.cumsum(cost[i, :-1])])
        table[i] = prefix + np.minimum.accumulate(a - prefix)
    return table


def nw_fill_scored(diag, gap):
    """Standard global alignment table with a linear gap penalty.

    ``diag[i, j]`` is the cost of pairing symbol i of the first sequence with
    symbol j of the second.
    """
    m, n = diag.shape
    table = np.empty((m + 1, n + 1), dtype=np.float64)
    steps = np.arange(n + 1) * gap
    table[0] = steps
    for i in range(1, m + 1):
        a = table[i - 1] + gap
        a[1:] = np.minimum(a[1:], table[i - 1, :-1] + diag[i - 1])
        table[i] = steps + np.minimum.accumulate(a - steps)
    return table
