import itertools

import numpy as np
import pytest

from cubecoset.coords import N_SLICE, relabel, slice_rank_from_mask
from cubecoset.cube import (AXIS_SYMS, CORNER_NAMES, EDGE_NAMES, apply_sequence, conjugate,
                            random_state)
from cubecoset.setgraph import (AXIS_GROUPS, AXIS_SLOT_MAP, H_VERTEX, MAX_BOUND, BoundLedger,
                                EliminationCover, LedgerError, compute_elimination, f_cover,
                                greedy_select, odd_corner_count, partition_configs, partitions,
                                validate_cover)

from oracles import all_slot_partitions


@pytest.fixture(scope="module")
def ledger_factory(graph):
    def make(**kw):
        return BoundLedger(graph, **kw)
    return make


def canonical_many(t, twist, flip, slc):
    """Vectorized vertex index from raw coordinates."""
    fs = slc * 2048 + flip
    c = t.fs_class[fs]
    tw = t.twist_conj[twist, t.fs_sym[fs]].astype(np.int64)
    k = t.class_slot[c]
    tw = np.where(k >= 0, t.orbit_rank[np.maximum(k, 0), tw], tw)
    return t.class_offset[c] + tw


def raw_ball(t, coord, radius):
    """Vertices within ``radius`` of coord, by BFS over unreduced coordinates."""
    tw = np.array([coord[0]])
    fl = np.array([coord[1]])
    sl = np.array([coord[2]])
    keys = {int((tw[0] * 2048 + fl[0]) * 495 + sl[0])}
    all_tw, all_fl, all_sl = [tw], [fl], [sl]
    for _ in range(radius):
        ntw = t.twist_move[tw].reshape(-1).astype(np.int64)
        nfl = t.flip_move[fl].reshape(-1).astype(np.int64)
        nsl = t.slice_move[sl].reshape(-1).astype(np.int64)
        key = (ntw * 2048 + nfl) * 495 + nsl
        key, first = np.unique(key, return_index=True)
        fresh = np.array([int(k) not in keys for k in key], bool)
        keys.update(int(k) for k in key[fresh])
        tw, fl, sl = ntw[first][fresh], nfl[first][fresh], nsl[first][fresh]
        all_tw.append(tw)
        all_fl.append(fl)
        all_sl.append(sl)
    return np.unique(canonical_many(t, np.concatenate(all_tw), np.concatenate(all_fl),
                                    np.concatenate(all_sl)))


# -- graph ---------------------------------------------------------------------

def test_neighbors_of_h(graph):
    nb = graph.neighbors(H_VERTEX)
    assert len(nb) == 18
    assert sum(w == H_VERTEX for w in nb) == 10
    assert len(set(nb) - {H_VERTEX}) == 1


def test_neighbor_symmetry(graph, rng):
    for v in rng.integers(0, graph.n, 300):
        nb = graph.neighbors(int(v))
        assert len(nb) == 18
        for w in nb[:: 5]:
            assert int(v) in graph.neighbors(w)


def test_neighbors_match_cubie_moves(graph, tables, rng):
    for _ in range(50):
        p = random_state(rng)
        v = tables.vertex_index(relabel(p))
        m = int(rng.integers(18))
        q = apply_sequence(p, [m])
        assert tables.vertex_index(relabel(q)) in graph.neighbors(v)


def test_vertex_of_and_representative(graph, phase1, rng):
    assert graph.vertex_of("") == H_VERTEX
    assert graph.vertex_of("U R2 F2") == H_VERTEX
    for v in rng.integers(0, graph.n, 10):
        rep = graph.representative(int(v), phase1)
        assert graph.vertex_of(rep) == int(v)
    with pytest.raises(ValueError):
        graph.neighbors(graph.n)


def test_solvable_vertices(graph):
    sv = graph.solvable_vertices()
    assert len(sv) == 282_828
    assert graph.solvable(sv[::1000]).all()
    assert not graph.solvable(np.array([len(sv)]))[0]


def test_ball_matches_raw_bfs(graph, tables, rng):
    for v in [H_VERTEX] + [int(x) for x in rng.integers(0, graph.n, 9)]:
        n, above, vis, dist = graph.ball([v], 4, collect=True)
        want = raw_ball(tables, tables.vertex_coord(v), 4)
        assert n == len(want) and above == 0
        assert np.array_equal(np.sort(vis), want)
        assert dist.min() == 0 and dist.max() <= 4


def test_ball_five_sizes(graph, tables, rng):
    assert graph.ball([H_VERTEX], 5)[0] == 6022
    for v in rng.integers(0, 282_828, 2):
        want = raw_ball(tables, tables.vertex_coord(int(v)), 5)
        assert graph.ball([int(v)], 5)[0] == len(want)


# -- ledger --------------------------------------------------------------------

def test_fresh_ledger(ledger_factory):
    led = ledger_factory()
    assert led.diameter_bound() == MAX_BOUND
    assert led.record_bound(5, 30) == 0
    assert led.report().splitlines()[0] == "global bound 30, 0 sets recorded"
    with pytest.raises(ValueError):
        led.record_bound(5, 31)
    with pytest.raises(ValueError):
        led.record_bound(5, -1)


def test_record_propagates_locally(ledger_factory, graph, rng):
    led = ledger_factory()
    v = int(rng.integers(graph.n))
    led.record_bound(v, 26)
    _, _, vis, dist = graph.ball([v], 4, collect=True)
    assert np.array_equal(led.bounds[vis], 26 + dist)
    assert (led.bounds <= 30).all()
    # distance 4 from a bound of 26 is 30, which lowers nothing
    assert int((led.bounds < 30).sum()) == graph.ball([v], 3)[0]
    assert led.impact(v, 26, 28) == 0
    led.record_bound(H_VERTEX, 25)
    for w in graph.neighbors(H_VERTEX):
        assert led.bounds[w] <= 26
    hist = led.histogram()
    assert hist[25] == 1


def test_lipschitz_and_monotone(ledger_factory, graph, rng):
    led = ledger_factory()
    seeds = [(int(v), int(c))
             for v, c in zip(rng.integers(0, graph.n, 20), rng.integers(25, 29, 20))]
    before = led.bounds.copy()
    for v, c in seeds:
        led.record_bound(v, c)
        assert (led.bounds <= before).all()
        before = led.bounds.copy()
    touched = np.flatnonzero(led.bounds < 30)
    vs = rng.choice(touched, 2000)
    ms = rng.integers(0, 18, 2000)
    ws = graph.neighbor_pairs(vs, ms)
    assert (np.abs(led.bounds[vs].astype(int) - led.bounds[ws]) <= 1).all()


def test_order_independence(ledger_factory, graph, rng):
    seeds = [(int(v), int(c))
             for v, c in zip(rng.integers(0, graph.n, 15), rng.integers(25, 29, 15))]
    a = ledger_factory()
    a.record_many(seeds)
    b = ledger_factory()
    for i in rng.permutation(len(seeds)):
        b.record_bound(*seeds[i])
    assert np.array_equal(a.bounds, b.bounds)


def test_impact_fresh_ledger(ledger_factory, graph):
    led = ledger_factory()
    assert led.impact(H_VERTEX) == graph.ball([H_VERTEX], 5)[0] == 6022
    low = BoundLedger(graph, np.full(graph.n, 25, np.uint8))
    assert low.impact(H_VERTEX) == 0


def test_save_load_and_journal(ledger_factory, graph, tmp_path, rng):
    journal = tmp_path / "journal.tsv"
    led = ledger_factory(journal_path=journal)
    for v in rng.integers(0, graph.n, 4):
        led.record_bound(int(v), 27, "test")
    path = tmp_path / "ledger.bin"
    led.save(path)
    again = BoundLedger.load(path, graph)
    assert np.array_equal(again.bounds, led.bounds)
    records = BoundLedger.read_journal(journal)
    assert len(records) == 4 and records[0][2] == "test"
    assert np.array_equal(BoundLedger.replay(graph, records).bounds, led.bounds)

    raw = path.read_bytes()
    (tmp_path / "magic.bin").write_bytes(b"XXXX" + raw[4:])
    with pytest.raises(LedgerError):
        BoundLedger.load(tmp_path / "magic.bin", graph)
    (tmp_path / "short.bin").write_bytes(raw[:-10])
    with pytest.raises(LedgerError):
        BoundLedger.load(tmp_path / "short.bin", graph)
    flipped = bytearray(raw)
    flipped[-1] ^= 1
    (tmp_path / "crc.bin").write_bytes(bytes(flipped))
    with pytest.raises(LedgerError):
        BoundLedger.load(tmp_path / "crc.bin", graph)


def test_greedy_select(ledger_factory, graph, rng):
    led = ledger_factory()
    cand = rng.choice(282_828, 2000, replace=False)
    scores = {int(v): led.impact(int(v), 20, 22) for v in cand}
    best = max(scores.values())
    pick = greedy_select(led, 1, 20, 22, candidates=cand)
    assert scores[pick[0]] == best
    assert min(v for v, s in scores.items() if s == best) == pick[0]
    lazy = greedy_select(led, 6, 20, 22, candidates=cand)
    full = greedy_select(led, 6, 20, 22, candidates=cand, lazy=False)
    assert lazy == full
    assert len(set(lazy)) == len(lazy)
    assert (led.bounds == 30).all()   # selection only simulates


# -- elimination cover -----------------------------------------------------------

def corner_adjacency():
    return [[j for j, e in enumerate(EDGE_NAMES) if set(e) <= set(c)] for c in CORNER_NAMES]


def test_corner_adjacency():
    adj = corner_adjacency()
    assert all(len(a) == 3 for a in adj)
    assert sorted(itertools.chain(*adj)) == sorted(list(range(12)) * 2)


def test_odd_corner_examples():
    assert odd_corner_count([]) == 0
    assert odd_corner_count(range(12)) == 8
    assert odd_corner_count([4, 5, 6, 7]) == 8
    assert odd_corner_count([0]) == 2
    with pytest.raises(ValueError):
        odd_corner_count([12])


def test_cover_theorem_exhaustive():
    n = 0
    for parts in all_slot_partitions():
        n += 1
        assert max(odd_corner_count(p) for p in parts) >= 3
    assert n == 34_650


def test_partitions_match_oracle():
    assert list(partitions()) == list(all_slot_partitions())
    assert partition_configs().shape == (34_650, 3)


def test_axis_slot_maps(rng):
    assert AXIS_GROUPS[0] == (4, 5, 6, 7)
    assert sorted(itertools.chain(*AXIS_GROUPS)) == list(range(12))
    for _ in range(30):
        p = random_state(rng)
        for k, s in enumerate(AXIS_SYMS):
            held = [slot for slot in range(12) if p.ep[slot] in AXIS_GROUPS[k]]
            occ = [False] * 12
            for slot in held:
                occ[AXIS_SLOT_MAP[k][slot]] = True
            assert relabel(conjugate(p, s)).slice == slice_rank_from_mask(occ)


def test_cover_validation():
    assert validate_cover(EliminationCover(np.empty(0, np.int64))) is None
    assert validate_cover(f_cover()) is None
    everything = EliminationCover(np.arange(N_SLICE))
    bad = validate_cover(everything)
    assert bad is not None and len(bad) == 3


def test_computed_elimination(tables):
    cover = compute_elimination(tables)
    assert validate_cover(cover) is None
    assert 0 not in cover.eliminated      # the solved slice is always kept
    assert len(cover.eliminated) >= len(f_cover().eliminated)
    # symmetric under the 16 U/D symmetries, so it is well defined on vertices
    elim = set(cover.eliminated.tolist())
    for r in elim:
        assert set(tables.slice_conj[r].tolist()) <= elim
    print(f"eliminated {len(elim)} of 495 slice configurations (reference: 94)")
