import numpy as np

from cubecoset.coords import H_SIZE
from cubecoset.cube import A_MOVES, MOVE_STATES, SOLVED, apply_sequence, invert
from cubecoset.hset import (IDENTITY_INDEX, apply_left_a, apply_right_a, index_of_state,
                            invert_many, pack_many, state_of_index, unpack_index, unpack_many)


def random_h(rng, n=25):
    return apply_sequence(SOLVED, [A_MOVES[i] for i in rng.integers(0, 10, n)])


def test_identity_index():
    assert index_of_state(SOLVED) == IDENTITY_INDEX == 0


def test_index_roundtrip(tables, rng):
    for _ in range(200):
        h = random_h(rng)
        i = index_of_state(h)
        assert 0 <= i < H_SIZE
        assert state_of_index(tables, i) == h


def test_every_index_decodes(tables, rng):
    idx = rng.integers(0, H_SIZE, 5000)
    c, u, m = unpack_many(tables, idx)
    assert np.array_equal(pack_many(c, u, m), idx)
    parity_ok = tables.corner_parity[c] == tables.ud_parity[u] ^ tables.mid_parity[m]
    assert parity_ok.all()
    assert tuple(unpack_index(tables, int(idx[0]))) == (c[0], u[0], m[0])


def test_multiplication_by_a_moves(tables, rng):
    hs = [random_h(rng) for _ in range(50)]
    idx = np.array([index_of_state(h) for h in hs])
    for k, mv in enumerate(A_MOVES):
        right = apply_right_a(tables, idx, k)
        left = apply_left_a(tables, idx, k)
        for j, h in enumerate(hs):
            assert right[j] == index_of_state(h * MOVE_STATES[mv])
            assert left[j] == index_of_state(MOVE_STATES[mv] * h)


def test_inverse(tables, rng):
    hs = [random_h(rng) for _ in range(50)]
    idx = np.array([index_of_state(h) for h in hs])
    inv = invert_many(tables, idx)
    for j, h in enumerate(hs):
        assert inv[j] == index_of_state(invert(h))
    assert np.array_equal(invert_many(tables, inv), idx)
