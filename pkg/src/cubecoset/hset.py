"""Dense indexing of H.

``index = ((corner * 40320) + ud_edge) * 12 + mid // 2``

Given the corner and U/D-edge permutations, the parity constraint leaves 12 of
the 24 E-slice permutations; permutation ranks 2k and 2k+1 differ by one
transposition, so ``mid // 2`` identifies the valid one.
"""

from __future__ import annotations

import numba as nb
import numpy as np

from .coords import N_UDEDGE, CoordTables, Phase2Coord, encode_phase2, decode_phase2

GROUP = 12
IDENTITY_INDEX = 0


@nb.njit(cache=True, nogil=True)
def pack(corner, ud, mid):
    return (corner * 40320 + ud) * 12 + (mid >> 1)


@nb.njit(cache=True, nogil=True)
def unpack(index, corner_parity, ud_parity, mid_parity):
    half = index % 12
    g = index // 12
    ud = g % 40320
    corner = g // 40320
    need = corner_parity[corner] ^ ud_parity[ud]
    mid = 2 * half
    if mid_parity[mid] != need:
        mid += 1
    return corner, ud, mid


def pack_coord(c) -> int:
    return int(pack(int(c[0]), int(c[1]), int(c[2])))


def unpack_index(tables: CoordTables, index: int) -> Phase2Coord:
    return Phase2Coord(*(int(v) for v in unpack(int(index), tables.corner_parity,
                                                  tables.ud_parity, tables.mid_parity)))


def index_of_state(state) -> int:
    return pack_coord(encode_phase2(state))


def state_of_index(tables: CoordTables, index: int):
    return decode_phase2(unpack_index(tables, index))


def unpack_many(tables: CoordTables, idx: np.ndarray):
    idx = np.asarray(idx, dtype=np.int64)
    half = idx % 12
    g = idx // 12
    ud = g % N_UDEDGE
    corner = g // N_UDEDGE
    need = tables.corner_parity[corner] ^ tables.ud_parity[ud]
    mid = 2 * half
    mid = mid + (tables.mid_parity[mid] != need)
    return corner, ud, mid


def pack_many(corner, ud, mid) -> np.ndarray:
    return (np.asarray(corner, dtype=np.int64) * N_UDEDGE + ud) * 12 + (np.asarray(mid) >> 1)


def apply_right_a(tables: CoordTables, idx: np.ndarray, k: int) -> np.ndarray:
    """Indices of h * m for the k-th A-move."""
    from .coords import A_INDEX
    c, u, m = unpack_many(tables, idx)
    return pack_many(tables.corner_move[c, A_INDEX[k]], tables.ud_move[u, k],
                     tables.mid_move[m, k])


def apply_left_a(tables: CoordTables, idx: np.ndarray, k: int) -> np.ndarray:
    """Indices of m * h for the k-th A-move."""
    c, u, m = unpack_many(tables, idx)
    return pack_many(tables.corner_left[k, c], tables.ud_left[k, u], tables.mid_left[k, m])


def invert_many(tables: CoordTables, idx: np.ndarray) -> np.ndarray:
    c, u, m = unpack_many(tables, idx)
    return pack_many(tables.corner_inv[c], tables.ud_inv[u], tables.mid_inv[m])
