import numpy as np
import pytest

from cubecoset import cosets
from cubecoset.coords import H_SIZE, N_UDEDGE, relabel
from cubecoset.cosets import (CosetJob, CosetReport, RepresentativeError, OrbitReducer,
                              dense_bytes, dense_count, dense_indices, dense_insert,
                              dense_missing, dense_prepass, mid_group_tables, oracle_solve_set,
                              parse_residual_line, prepass_sparse, search_depth, solve_set,
                              witness_sequence)
from cubecoset.cube import SOLVED, MoveSequence, apply_sequence
from cubecoset.hset import (IDENTITY_INDEX, apply_left_a, index_of_state, pack_many,
                            state_of_index, unpack_many)
from cubecoset.pruning import ResourceError

from oracles import StickerDistance, random_slice_representative

CENSUS_S = [1, 10, 67, 456, 3079, 20076, 125218]


def counts(report):
    return [n for _, n in report.per_depth_new_counts]


def off_h_representative(rng):
    while True:
        rep = MoveSequence(random_slice_representative(rng))
        if relabel(apply_sequence(SOLVED, rep)) != (0, 0, 0):
            return rep


def test_job_validation():
    with pytest.raises(ValueError):
        CosetJob("", memory_mode="bitmap")
    with pytest.raises(RepresentativeError):
        solve_set(CosetJob("F", depth_limit=2))
    with pytest.raises(ResourceError):
        solve_set(CosetJob("", memory_mode="full", memory_budget=2 << 30))
    with pytest.raises(ResourceError):
        solve_set(CosetJob("", depth_limit=None, memory_budget=1 << 30))


def test_prepass_examples(tables):
    empty = np.empty(0, np.int64)
    assert len(prepass_sparse(tables, empty)) == 0
    one = prepass_sparse(tables, np.array([IDENTITY_INDEX]))
    assert len(one) == 11
    assert len(prepass_sparse(tables, one)) == 1 + 10 + 67


def test_search_depth_examples():
    assert list(search_depth("", 0)) == [IDENTITY_INDEX]
    assert len(search_depth("", 1)) == 10


def test_census_prefix():
    r = solve_set(CosetJob("", depth_limit=5))
    assert counts(r) == CENSUS_S[:6]
    assert r.final_bound is None and not r.exact
    assert r.covered_count == len(r.covered) == sum(CENSUS_S[:6])
    lines = r.tsv().splitlines()
    assert lines[0] == "depth\tnew\tcovered"
    assert lines[2] == "1\t10\t11"
    assert lines[-1].startswith("# representative=ε bound=- exact=no")


def test_a_representative_gives_same_set(tables):
    base = solve_set(CosetJob("", depth_limit=4))
    rep = MoveSequence.parse("U R2 D' F2")
    other = solve_set(CosetJob(rep, depth_limit=4))
    assert counts(other) == counts(base)
    # indices store h for the position h a; compare the positions themselves
    a = apply_sequence(SOLVED, rep)
    positions = sorted(index_of_state(state_of_index(tables, int(i)) * a) for i in other.covered)
    assert positions == list(base.covered)


def test_oracle_examples():
    assert counts(oracle_solve_set("", 3)) == CENSUS_S[:4]
    assert counts(oracle_solve_set("U F2", 0)) == [1]
    assert counts(oracle_solve_set("R", 0)) == [0]


def test_fast_matches_oracle(rng):
    for _ in range(2):
        rep = off_h_representative(rng)
        fast = solve_set(CosetJob(rep, depth_limit=4))
        slow = oracle_solve_set(rep, 4)
        assert counts(fast) == counts(slow)
        assert np.array_equal(fast.covered, slow.covered)


def test_limited_search_is_a_bound(rng):
    full = solve_set(CosetJob("", depth_limit=4))
    short = solve_set(CosetJob("", m=2, depth_limit=4))
    assert counts(short)[:3] == counts(full)[:3]
    assert short.covered_count <= full.covered_count
    assert all(n >= 0 for n in counts(short))


def test_symmetric_mode_matches_hash(rng):
    for rep in ("", off_h_representative(rng)):
        a = solve_set(CosetJob(rep, depth_limit=4))
        b = solve_set(CosetJob(rep, depth_limit=4, memory_mode="symmetric"))
        assert counts(a) == counts(b)
        assert np.array_equal(a.covered, b.covered)


def test_orbit_reducer_of_solved_coset(tables, rng):
    red = OrbitReducer(tables, SOLVED)
    assert red.order == 16
    idx = search_depth("", 3)
    rep, size = red.reduce(idx)
    assert size.sum() == len(idx)
    assert np.array_equal(red.expand(rep), idx)


def test_insertions_replay_into_coset(tables, rng):
    sd = StickerDistance(inner=4, outer=2)
    rep = off_h_representative(rng)
    a = apply_sequence(SOLVED, rep)
    seen = np.empty(0, np.int64)
    for d in range(5):
        idx = search_depth(rep, d)
        new = np.setdiff1d(idx, seen)
        seen = np.union1d(seen, idx)
        for i in rng.choice(idx, min(20, len(idx)), replace=False):
            x = state_of_index(tables, int(i)) * a
            w = witness_sequence(tables, int(i), rep)
            assert apply_sequence(SOLVED, w) == x
            assert sd(x) <= d
        for i in new[:10]:
            # first found at depth d with an unlimited search: exactly d away
            assert sd(state_of_index(tables, int(i)) * a) == d


def test_residual_line_roundtrip(tables, tmp_path):
    rep = MoveSequence.parse("U F2 R2")
    line = f"{rep}\t{12345}\t{witness_sequence(tables, 12345, rep)}"
    r, i, w = parse_residual_line(line)
    assert r == rep and i == 12345
    assert apply_sequence(SOLVED, w) == state_of_index(tables, i) * apply_sequence(SOLVED, rep)
    report = CosetReport(rep, residual_log=[line])
    job = CosetJob(rep, residual_log=tmp_path / "res.log")
    cosets._write_log(job, report)
    assert (tmp_path / "res.log").read_text() == line + "\n"


def test_sparse_missing():
    f = np.array([0, 1, 3, 4, 7], np.int64)
    assert list(cosets._sparse_missing(f, 10, 3)) == [2, 5, 6]
    assert list(cosets._sparse_missing(f, 10, 100)) == [2, 5, 6, 8, 9]


# -- dense bitmap kernels on toy tables ----------------------------------------

def test_dense_insert_count_missing():
    n_bits = 12 * 20
    bits = np.zeros(dense_bytes(20), np.uint8)
    idx = np.array([0, 5, 17, 239, 100], np.int64)
    dense_insert(bits, idx)
    dense_insert(bits, idx)
    assert dense_count(bits) == 5
    assert list(dense_indices(bits, n_bits)) == sorted(idx)
    missing = dense_missing(bits, n_bits, 1000)
    assert len(missing) == n_bits - 5
    assert not set(missing) & set(idx)


def sparse_left(idx, corner_left, ud_left, mid_left, corner_parity, ud_parity, mid_parity, n_ud):
    out = set()
    for x in idx:
        half = x % 12
        g = x // 12
        c, u = divmod(g, n_ud)
        p = corner_parity[c] ^ ud_parity[u]
        mid = 2 * half if mid_parity[2 * half] == p else 2 * half + 1
        for k in range(corner_left.shape[0]):
            g2 = corner_left[k, c] * n_ud + ud_left[k, u]
            out.add(int(g2 * 12 + (mid_left[k, mid] >> 1)))
    return out | set(int(x) for x in idx)


def test_dense_prepass_on_toy_tables(tables, rng):
    n_c, n_ud = 7, 5
    corner_left = np.array([rng.permutation(n_c) for _ in range(10)], np.int64)
    ud_left = np.array([rng.permutation(n_ud) for _ in range(10)], np.int64)
    cpar = rng.integers(0, 2, n_c).astype(np.uint8)
    upar = rng.integers(0, 2, n_ud).astype(np.uint8)
    T = mid_group_tables(tables.mid_left, tables.mid_parity)
    n_groups = n_c * n_ud
    src = np.zeros(dense_bytes(n_groups), np.uint8)
    dst = np.zeros_like(src)
    idx = rng.choice(n_groups * 12, 30, replace=False)
    dense_insert(src, idx)
    dense_prepass(src, dst, n_ud, corner_left, ud_left, T, cpar, upar)
    want = sparse_left(idx, corner_left, ud_left, tables.mid_left, cpar, upar,
                       tables.mid_parity, n_ud)
    assert set(dense_indices(dst, n_groups * 12)) == want


def test_mid_group_tables_match_left_moves(tables, rng):
    T = mid_group_tables(tables.mid_left, tables.mid_parity)
    idx = rng.integers(0, H_SIZE, 500)
    c, u, m = unpack_many(tables, idx)
    for k in range(10):
        img = apply_left_a(tables, idx, k)
        p = tables.corner_parity[c] ^ tables.ud_parity[u]
        bit = np.array([int(T[k, p[i], 1 << (m[i] >> 1)]) for i in range(len(idx))])
        assert np.array_equal(1 << (img % 12), bit)
        g = tables.corner_left[k, c].astype(np.int64) * N_UDEDGE + tables.ud_left[k, u]
        assert np.array_equal(img // 12, g)
    assert np.array_equal(pack_many(c, u, m), idx)
