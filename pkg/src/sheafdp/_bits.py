"""Conversions between point-index sets and packed uint64 word rows."""

import numpy as np


def n_words(point_count):
    return max(1, (point_count + 63) // 64)


def to_mask(members):
    mask = 0
    for i in members:
        mask |= 1 << i
    return mask


def mask_to_row(mask, words):
    return np.frombuffer(mask.to_bytes(8 * words, "little"), dtype="<u8").astype(np.uint64)


def sets_to_rows(sets, point_count):
    words = n_words(point_count)
    rows = np.zeros((len(sets), words), dtype=np.uint64)
    for k, s in enumerate(sets):
        rows[k] = mask_to_row(to_mask(s), words)
    return rows


def row_to_set(row):
    bits = np.unpackbits(np.ascontiguousarray(row, dtype="<u8").view(np.uint8), bitorder="little")
    return frozenset(np.flatnonzero(bits).tolist())


def popcount_rows(rows):
    if rows.size == 0:
        return np.zeros(rows.shape[0], dtype=np.int64)
    bits = np.unpackbits(np.ascontiguousarray(rows, dtype="<u8").view(np.uint8), axis=1)
    return bits.sum(axis=1).astype(np.int64)
