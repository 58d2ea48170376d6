import random

import numpy as np
import pytest

from sheafdp import kernels
from sheafdp._bits import popcount_rows, row_to_set, sets_to_rows

import oracles

BACKENDS = sorted(kernels.BACKENDS.items())


def _canon(rows):
    return sorted((tuple(sorted(row_to_set(r))) for r in rows), key=lambda s: (len(s), s))


@pytest.mark.parametrize("name,mod", BACKENDS)
@pytest.mark.parametrize("seed", range(6))
def test_union_closure_matches_powerset(name, mod, seed):
    rng = random.Random(seed)
    n = rng.randint(1, 9)
    elems = [frozenset(x for x in range(n) if rng.random() < 0.4) for _ in range(rng.randint(1, 6))]
    rows, ok = mod.union_closure(sets_to_rows(elems, n), 10_000)
    assert ok
    expected = sorted((tuple(sorted(s)) for s in oracles.all_unions(n, elems)), key=lambda s: (len(s), s))
    assert _canon(rows) == expected


@pytest.mark.parametrize("name,mod", BACKENDS)
def test_union_closure_multiword(name, mod):
    # 130 points span three words
    elems = [frozenset(range(k, 130, 7)) for k in range(5)]
    rows, ok = mod.union_closure(sets_to_rows(elems, 130), 1000)
    assert ok and rows.shape[0] == 32


@pytest.mark.parametrize("name,mod", BACKENDS)
def test_union_closure_cap(name, mod):
    elems = [frozenset([k]) for k in range(10)]
    _, ok = mod.union_closure(sets_to_rows(elems, 10), 100)
    assert not ok


@pytest.mark.parametrize("name,mod", BACKENDS)
def test_union_closure_empty_base(name, mod):
    rows, ok = mod.union_closure(np.zeros((0, 1), dtype=np.uint64), 10)
    assert ok and _canon(rows) == [()]


@pytest.mark.parametrize("name,mod", BACKENDS)
@pytest.mark.parametrize("seed", range(5))
def test_minimal_supersets_match_scan(name, mod, seed):
    rng = random.Random(seed)
    n = rng.randint(1, 7)
    elems = [frozenset(x for x in range(n) if rng.random() < 0.5) for _ in range(4)] + [frozenset(range(n))]
    opens = sorted(oracles.all_unions(n, elems), key=lambda s: (len(s), sorted(s)))
    masks = sets_to_rows(opens, n)
    cards = popcount_rows(masks)
    for k, u in enumerate(opens):
        got = [opens[j] for j in mod.minimal_supersets(masks, cards, k)]
        assert got == oracles.minimal_supersets(opens, u)


@pytest.mark.parametrize("name,mod", BACKENDS)
def test_subset_matrix(name, mod):
    opens = [frozenset(), frozenset({0}), frozenset({1}), frozenset({0, 1})]
    got = mod.subset_matrix(sets_to_rows(opens, 2))
    expected = np.array([[a <= b for b in opens] for a in opens])
    assert (got == expected).all()


@pytest.mark.parametrize("name,mod", BACKENDS)
@pytest.mark.parametrize("seed", range(8))
def test_nw_fill_matches_nested_loop(name, mod, seed):
    rng = np.random.default_rng(seed)
    m, n = rng.integers(0, 6, size=2)
    cost = rng.integers(0, 9, size=(m + 1, n + 1))
    got = mod.nw_fill(cost.astype(np.float64))
    assert got.tolist() == oracles.nested_loop_source_cost(cost.tolist())


@pytest.mark.parametrize("name,mod", BACKENDS)
@pytest.mark.parametrize("a,b", [("", ""), ("A", "A"), ("AB", "B"), ("ABBA", "BAB"), ("", "AAB")])
def test_nw_fill_scored_matches_brute_force(name, mod, a, b):
    diag = np.array([[0.0 if x == y else 1.0 for y in b] for x in a]).reshape(len(a), len(b))
    table = mod.nw_fill_scored(diag, 1.0)
    assert table[len(a), len(b)] == oracles.best_alignment_score(a, b, 0, 1, 1)


def test_backends_agree_on_real_costs():
    if "numba" not in kernels.BACKENDS:
        pytest.skip("numba unavailable")
    rng = np.random.default_rng(7)
    cost = rng.uniform(0, 3, size=(12, 9))
    a = kernels.numpy_backend.nw_fill(cost)
    b = kernels.numba_backend.nw_fill(cost)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-9)


@pytest.mark.parametrize("flag,expected", [("1", "numpy"), ("0", "numba")])
def test_env_flag_selects_backend(flag, expected):
    import os
    import subprocess
    import sys
    if expected == "numba" and "numba" not in kernels.BACKENDS:
        pytest.skip("numba unavailable")
    env = dict(os.environ, SHEAFDP_DISABLE_NUMBA=flag)
    code = "from sheafdp import kernels; print(kernels.backend.__name__.rsplit('_', 1)[-1])"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == expected
