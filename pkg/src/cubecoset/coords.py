"""Coordinates for the relabeled puzzle R and for the subgroup H.

Phase-1 coordinates describe what survives relabeling:

* twist  = sum co[i] * 3**i over corners 0..6           (0..2186)
* flip   = sum eo[i] * 2**i over edges 0..10            (0..2047)
* slice  = rank of the 4 slots holding E-slice edges     (0..494, solved = 0)

Phase-2 coordinates index H by Lehmer codes of the corner permutation, the
permutation of the eight U/D-layer edges and the permutation of the four
E-slice edges.

The 16 symmetries that keep the U/D axis act on R.  A vertex of the reduced
coset graph is an orbit of that action; its canonical coordinate is the
lexicographic minimum of (slice, flip, twist) over the orbit, and vertices are
numbered densely in increasing canonical order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial
from pathlib import Path
from typing import NamedTuple

import numba as nb
import numpy as np

from . import cache
from .cube import (A_MOVES, MOVE_CO, MOVE_CP, MOVE_EO, MOVE_EP, N_MOVES, N_UD_SYMS,
                   SLICE_EDGES, SYM_CSIG, SYM_CT, SYM_EPS, SYM_ESIG, SYM_ET, UD_EDGES,
                   CubieState, permutation_parity)

N_TWIST = 2187
N_FLIP = 2048
N_SLICE = 495
N_FLIPSLICE = N_FLIP * N_SLICE
N_CORNER = 40320
N_UDEDGE = 40320
N_MID = 24
N_A = len(A_MOVES)

R_SIZE = N_TWIST * N_FLIP * N_SLICE          # 2,217,093,120
H_SIZE = N_CORNER * N_UDEDGE * N_MID // 2    # 19,508,428,800

A_INDEX = np.array([int(m) for m in A_MOVES], dtype=np.int64)

# slots re-ordered so the E slice comes first; the solved slice then ranks 0
_SLICE_ORDER = np.array(SLICE_EDGES + UD_EDGES)
_SLICE_POS = np.argsort(_SLICE_ORDER)
_UD_RANK = np.full(12, -1)
_UD_RANK[list(UD_EDGES)] = np.arange(8)


class Phase1Coord(NamedTuple):
    twist: int
    flip: int
    slice: int

    @property
    def flipslice(self) -> int:
        return self.slice * N_FLIP + self.flip


class Phase2Coord(NamedTuple):
    corner: int
    ud_edge: int
    mid: int


class RVertex(NamedTuple):
    coord: Phase1Coord
    index: int


# ---------------------------------------------------------------------------
# permutation ranking (factorial base, identity -> 0)
# ---------------------------------------------------------------------------

def perm_rank(perm) -> int:
    perm = list(perm)
    n = len(perm)
    r = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if perm[j] < perm[i])
        r += smaller * factorial(n - 1 - i)
    return r


def perm_unrank(r: int, n: int) -> list[int]:
    if not 0 <= r < factorial(n):
        raise ValueError(f"permutation index {r} out of range for n={n}")
    digits = []
    for i in range(n):
        f = factorial(n - 1 - i)
        digits.append(r // f)
        r %= f
    avail = list(range(n))
    return [avail.pop(d) for d in digits]


def all_perms(n: int) -> np.ndarray:
    """Every permutation of n, row r = perm_unrank(r, n)."""
    total = factorial(n)
    idx = np.arange(total)
    digits = np.empty((total, n), dtype=np.int64)
    for i in range(n):
        f = factorial(n - 1 - i)
        digits[:, i] = idx // f
        idx = idx % f
    out = np.empty((total, n), dtype=np.int64)
    avail = np.tile(np.arange(n), (total, 1))
    rows = np.arange(total)
    for i in range(n):
        d = digits[:, i]
        out[:, i] = avail[rows, d]
        # drop the used column by shifting the tail left
        mask = np.arange(n - i)[None, :] >= d[:, None]
        shifted = avail[:, 1:n - i]
        avail = np.where(mask[:, :n - i - 1], shifted, avail[:, :n - i - 1])
    return out


def ranks_of(perms: np.ndarray) -> np.ndarray:
    """Vectorized perm_rank over rows."""
    perms = np.asarray(perms)
    n = perms.shape[1]
    r = np.zeros(perms.shape[0], dtype=np.int64)
    for i in range(n):
        smaller = (perms[:, i + 1:] < perms[:, i:i + 1]).sum(axis=1)
        r += smaller * factorial(n - 1 - i)
    return r


def perm_parities(perms: np.ndarray) -> np.ndarray:
    perms = np.asarray(perms)
    n = perms.shape[1]
    inv = np.zeros(perms.shape[0], dtype=np.int64)
    for i in range(n):
        inv += (perms[:, i + 1:] < perms[:, i:i + 1]).sum(axis=1)
    return inv & 1


# ---------------------------------------------------------------------------
# phase-1 encode / decode
# ---------------------------------------------------------------------------

def _check(value: int, size: int, what: str) -> None:
    if not 0 <= value < size:
        raise ValueError(f"{what} {value} out of range 0..{size - 1}")


def slice_rank_from_mask(occupied) -> int:
    pos = sorted(int(_SLICE_POS[s]) for s in range(12) if occupied[s])
    return sum(comb(p, i + 1) for i, p in enumerate(pos))


def slice_unrank(r: int) -> list[bool]:
    _check(r, N_SLICE, "slice")
    occ = [False] * 12
    k = 4
    for p in range(11, -1, -1):
        if k and comb(p, k) <= r:
            r -= comb(p, k)
            occ[int(_SLICE_ORDER[p])] = True
            k -= 1
    return occ


def encode_twist(co) -> int:
    return sum(int(co[i]) * 3 ** i for i in range(7))


def decode_twist(t: int) -> list[int]:
    _check(t, N_TWIST, "twist")
    co = []
    for _ in range(7):
        t, r = divmod(t, 3)
        co.append(r)
    co.append((-sum(co)) % 3)
    return co


def encode_flip(eo) -> int:
    return sum(int(eo[i]) << i for i in range(11))


def decode_flip(f: int) -> list[int]:
    _check(f, N_FLIP, "flip")
    eo = [(f >> i) & 1 for i in range(11)]
    eo.append(sum(eo) % 2)
    return eo


def relabel(state: CubieState) -> Phase1Coord:
    occ = [e in SLICE_EDGES for e in state.ep]
    return Phase1Coord(encode_twist(state.co), encode_flip(state.eo), slice_rank_from_mask(occ))


encode_phase1 = relabel


def decode_phase1(c) -> CubieState:
    """Some position whose relabeling is ``c`` (permutations filled in canonically)."""
    twist, flip, slc = c
    co = decode_twist(twist)
    eo = decode_flip(flip)
    occ = slice_unrank(slc)
    mids = iter(SLICE_EDGES)
    uds = iter(UD_EDGES)
    ep = [next(mids) if occ[s] else next(uds) for s in range(12)]
    cp = list(range(8))
    if permutation_parity(cp) != permutation_parity(ep):
        cp[0], cp[1] = cp[1], cp[0]
    return CubieState(tuple(cp), tuple(co), tuple(ep), tuple(eo))


# ---------------------------------------------------------------------------
# phase-2 encode / decode
# ---------------------------------------------------------------------------

def in_h(state: CubieState) -> bool:
    return relabel(state) == (0, 0, 0)


def encode_phase2(state: CubieState) -> Phase2Coord:
    if not in_h(state):
        raise ValueError("position is not in H")
    corner = perm_rank(state.cp)
    ud = perm_rank([_UD_RANK[state.ep[s]] for s in UD_EDGES])
    mid = perm_rank([state.ep[s] - 4 for s in SLICE_EDGES])
    return Phase2Coord(corner, ud, mid)


def decode_phase2(c) -> CubieState:
    corner, ud, mid = c
    cp = perm_unrank(corner, 8)
    udp = perm_unrank(ud, 8)
    midp = perm_unrank(mid, 4)
    if permutation_parity(cp) != permutation_parity(udp) ^ permutation_parity(midp):
        raise ValueError(f"phase-2 coordinate {tuple(c)} violates the parity constraint")
    ep = [0] * 12
    for j, s in enumerate(UD_EDGES):
        ep[s] = UD_EDGES[udp[j]]
    for j, s in enumerate(SLICE_EDGES):
        ep[s] = SLICE_EDGES[midp[j]]
    return CubieState(tuple(cp), (0,) * 8, tuple(ep), (0,) * 12)


def count_valid_phase2() -> int:
    """Parity-valid (corner, ud, mid) triples, counted from the parity tables."""
    pc = np.bincount(perm_parities(all_perms(8)), minlength=2)
    pm = np.bincount(perm_parities(all_perms(4)), minlength=2)
    total = 0
    for a in range(2):
        for b in range(2):
            total += int(pc[a]) * int(pc[b]) * int(pm[a ^ b])
    return total


# ---------------------------------------------------------------------------
# table construction
# ---------------------------------------------------------------------------

def _twist_rows(n=N_TWIST) -> np.ndarray:
    t = np.arange(n)
    co = np.empty((n, 8), dtype=np.int64)
    for i in range(7):
        co[:, i] = t % 3
        t = t // 3
    co[:, 7] = (-co[:, :7].sum(axis=1)) % 3
    return co


def _flip_rows() -> np.ndarray:
    f = np.arange(N_FLIP)
    eo = (f[:, None] >> np.arange(11)[None, :]) & 1
    return np.concatenate([eo, eo.sum(axis=1, keepdims=True) % 2], axis=1)


def _slice_rows() -> np.ndarray:
    return np.array([slice_unrank(r) for r in range(N_SLICE)], dtype=bool)


def _encode_twist_rows(co):
    return (co[:, :7] * (3 ** np.arange(7))[None, :]).sum(axis=1)


def _encode_flip_rows(eo):
    return (eo[:, :11] << np.arange(11)[None, :]).sum(axis=1)


_SLICE_LOOKUP = None


def _encode_slice_rows(occ):
    global _SLICE_LOOKUP
    if _SLICE_LOOKUP is None:
        _SLICE_LOOKUP = np.full(1 << 12, -1, dtype=np.int64)
        rows = _slice_rows()
        _SLICE_LOOKUP[(rows << np.arange(12)).sum(axis=1)] = np.arange(N_SLICE)
    return _SLICE_LOOKUP[(occ.astype(np.int64) << np.arange(12)).sum(axis=1)]


def _ud_move_perms() -> np.ndarray:
    """For A-moves, the induced permutation of the 8 U/D-edge positions (by rank)."""
    return np.array([[_UD_RANK[MOVE_EP[m, s]] for s in UD_EDGES] for m in A_INDEX])


def _mid_move_perms() -> np.ndarray:
    return np.array([[MOVE_EP[m, s] - 4 for s in SLICE_EDGES] for m in A_INDEX])


@dataclass
class CoordTables:
    """Move, conjugation and vertex-index tables.  Immutable once built."""

    twist_move: np.ndarray = field(repr=False)     # (2187, 18)
    flip_move: np.ndarray = field(repr=False)      # (2048, 18)
    slice_move: np.ndarray = field(repr=False)     # (495, 18)
    corner_move: np.ndarray = field(repr=False)    # (40320, 18)
    ud_move: np.ndarray = field(repr=False)        # (40320, 10) A-moves only
    mid_move: np.ndarray = field(repr=False)       # (24, 10)
    corner_left: np.ndarray = field(repr=False)    # (10, 40320): index of m * h
    ud_left: np.ndarray = field(repr=False)
    mid_left: np.ndarray = field(repr=False)
    corner_inv: np.ndarray = field(repr=False)
    ud_inv: np.ndarray = field(repr=False)
    mid_inv: np.ndarray = field(repr=False)
    corner_parity: np.ndarray = field(repr=False)
    ud_parity: np.ndarray = field(repr=False)
    mid_parity: np.ndarray = field(repr=False)
    twist_conj: np.ndarray = field(repr=False)     # (2187, 16)
    flipslice_conj: np.ndarray = field(repr=False)  # (1013760, 16)
    slice_conj: np.ndarray = field(repr=False)     # (495, 16)
    corner_conj: np.ndarray = field(repr=False)    # (40320, 16) on H elements
    ud_conj: np.ndarray = field(repr=False)
    mid_conj: np.ndarray = field(repr=False)
    # vertex index structures
    fs_class: np.ndarray = field(repr=False)       # flipslice -> class id
    fs_sym: np.ndarray = field(repr=False)         # flipslice -> sym taking it to the class rep
    class_rep: np.ndarray = field(repr=False)      # class id -> rep flipslice (sorted)
    class_offset: np.ndarray = field(repr=False)   # class id -> first vertex index (len+1)
    class_stab: np.ndarray = field(repr=False)     # class id -> stabilizer bitmask
    class_slot: np.ndarray = field(repr=False)     # class id -> row in orbit tables or -1
    orbit_rank: np.ndarray = field(repr=False)     # (k, 2187): twist -> orbit rank
    orbit_twist: np.ndarray = field(repr=False)    # (k, 2187): rank -> canonical twist

    ARRAYS = ("twist_move", "flip_move", "slice_move", "corner_move", "ud_move", "mid_move",
              "corner_left", "ud_left", "mid_left", "corner_inv", "ud_inv", "mid_inv",
              "corner_parity", "ud_parity", "mid_parity", "twist_conj", "flipslice_conj",
              "slice_conj", "corner_conj", "ud_conj", "mid_conj", "fs_class", "fs_sym",
              "class_rep", "class_offset", "class_stab", "class_slot", "orbit_rank",
              "orbit_twist")
    MAGIC = b"CCRD"

    @property
    def n_vertices(self) -> int:
        return int(self.class_offset[-1])

    @property
    def n_classes(self) -> int:
        return len(self.class_rep)

    # -- single-coordinate helpers -------------------------------------------------

    def move_phase1(self, c, mv) -> Phase1Coord:
        m = int(mv)
        return Phase1Coord(int(self.twist_move[c[0], m]), int(self.flip_move[c[1], m]),
                           int(self.slice_move[c[2], m]))

    def conj_phase1(self, c, sym: int) -> Phase1Coord:
        fs = int(self.flipslice_conj[c[2] * N_FLIP + c[1], sym])
        return Phase1Coord(int(self.twist_conj[c[0], sym]), fs % N_FLIP, fs // N_FLIP)

    def vertex_index(self, c) -> int:
        return int(vertex_index(self.fs_class, self.fs_sym, self.twist_conj, self.class_offset,
                                self.class_slot, self.orbit_rank, c[0], c[1], c[2]))

    def canonical_vertex(self, c) -> RVertex:
        idx = self.vertex_index(c)
        return RVertex(self.vertex_coord(idx), idx)

    def vertex_coord(self, idx: int) -> Phase1Coord:
        if not 0 <= idx < self.n_vertices:
            raise ValueError(f"vertex index {idx} out of range")
        cls = int(np.searchsorted(self.class_offset, idx, side="right")) - 1
        r = idx - int(self.class_offset[cls])
        slot = int(self.class_slot[cls])
        twist = r if slot < 0 else int(self.orbit_twist[slot, r])
        fs = int(self.class_rep[cls])
        return Phase1Coord(twist, fs % N_FLIP, fs // N_FLIP)

    def vertex_slice(self, idx):
        """Canonical slice coordinate of vertex indices (vectorized)."""
        cls = np.searchsorted(self.class_offset, idx, side="right") - 1
        return self.class_rep[cls] // N_FLIP

    def phase2_of(self, state: CubieState) -> Phase2Coord:
        return encode_phase2(state)

    # -- persistence -----------------------------------------------------------------

    def save(self, path) -> None:
        cache.save_arrays(path, self.MAGIC, {k: getattr(self, k) for k in self.ARRAYS})

    @classmethod
    def load(cls, path) -> CoordTables:
        arrays = cache.load_arrays(path, cls.MAGIC)
        missing = set(cls.ARRAYS) - set(arrays)
        if missing:
            raise cache.CacheError(f"{path}: missing arrays {sorted(missing)}")
        return cls(**{k: arrays[k] for k in cls.ARRAYS})


def build_move_tables() -> dict[str, np.ndarray]:
    out = {}
    co = _twist_rows()
    eo = _flip_rows()
    occ = _slice_rows()
    twist_move = np.empty((N_TWIST, N_MOVES), dtype=np.uint16)
    flip_move = np.empty((N_FLIP, N_MOVES), dtype=np.uint16)
    slice_move = np.empty((N_SLICE, N_MOVES), dtype=np.uint16)
    perms8 = all_perms(8)
    corner_move = np.empty((N_CORNER, N_MOVES), dtype=np.uint16)
    for m in range(N_MOVES):
        mcp, mco, mep, meo = MOVE_CP[m], MOVE_CO[m], MOVE_EP[m], MOVE_EO[m]
        twist_move[:, m] = _encode_twist_rows((co[:, mcp] + mco[None, :]) % 3)
        flip_move[:, m] = _encode_flip_rows((eo[:, mep] + meo[None, :]) % 2)
        slice_move[:, m] = _encode_slice_rows(occ[:, mep])
        corner_move[:, m] = ranks_of(perms8[:, mcp])
    out.update(twist_move=twist_move, flip_move=flip_move, slice_move=slice_move,
               corner_move=corner_move)

    perms4 = all_perms(4)
    udm = _ud_move_perms()
    midm = _mid_move_perms()
    cpa = MOVE_CP[A_INDEX]
    ud_move = np.empty((N_UDEDGE, N_A), dtype=np.uint16)
    mid_move = np.empty((N_MID, N_A), dtype=np.uint8)
    corner_left = np.empty((N_A, N_CORNER), dtype=np.uint16)
    ud_left = np.empty((N_A, N_UDEDGE), dtype=np.uint16)
    mid_left = np.empty((N_A, N_MID), dtype=np.uint8)
    for k in range(N_A):
        ud_move[:, k] = ranks_of(perms8[:, udm[k]])
        mid_move[:, k] = ranks_of(perms4[:, midm[k]])
        corner_left[k] = ranks_of(cpa[k][perms8])
        ud_left[k] = ranks_of(udm[k][perms8])
        mid_left[k] = ranks_of(midm[k][perms4])
    out.update(ud_move=ud_move, mid_move=mid_move, corner_left=corner_left,
               ud_left=ud_left, mid_left=mid_left)
    out["corner_inv"] = ranks_of(np.argsort(perms8, axis=1)).astype(np.uint16)
    out["ud_inv"] = out["corner_inv"].copy()
    out["mid_inv"] = ranks_of(np.argsort(perms4, axis=1)).astype(np.uint8)
    out["corner_parity"] = perm_parities(perms8).astype(np.uint8)
    out["ud_parity"] = out["corner_parity"].copy()
    out["mid_parity"] = perm_parities(perms4).astype(np.uint8)
    return out


def build_sym_tables() -> dict[str, np.ndarray]:
    co = _twist_rows()
    eo = _flip_rows()
    occ = _slice_rows()
    twist_conj = np.empty((N_TWIST, N_UD_SYMS), dtype=np.uint16)
    flipslice_conj = np.empty((N_FLIPSLICE, N_UD_SYMS), dtype=np.int32)
    slice_conj = np.empty((N_SLICE, N_UD_SYMS), dtype=np.uint16)
    perms8 = all_perms(8)
    perms4 = all_perms(4)
    corner_conj = np.empty((N_CORNER, N_UD_SYMS), dtype=np.uint16)
    ud_conj = np.empty((N_UDEDGE, N_UD_SYMS), dtype=np.uint16)
    mid_conj = np.empty((N_MID, N_UD_SYMS), dtype=np.uint8)
    ud_slots = np.array(UD_EDGES)
    mid_slots = np.array(SLICE_EDGES)
    for s in range(N_UD_SYMS):
        csig, ct, eps = SYM_CSIG[s], SYM_CT[s], SYM_EPS[s]
        esig, et = SYM_ESIG[s], SYM_ET[s]
        assert not ct.any(), "U/D symmetries keep corner reference facelets"
        t_mid = set(et[list(SLICE_EDGES)].tolist())
        t_ud = set(et[list(UD_EDGES)].tolist())
        assert len(t_mid) == 1 and t_ud == {0}
        t_mid = t_mid.pop()
        new_co = np.empty_like(co)
        new_co[:, csig] = (eps * co) % 3
        twist_conj[:, s] = _encode_twist_rows(new_co)
        new_occ = np.empty_like(occ)
        new_occ[:, esig] = occ
        new_slice = _encode_slice_rows(new_occ)
        slice_conj[:, s] = new_slice
        # eo'[sig j] = eo[j] + t_j - t(cubie at j); the cubie term depends on the slice
        for r in range(N_SLICE):
            delta = (et - t_mid * occ[r]) % 2
            new_eo = np.empty_like(eo)
            new_eo[:, esig] = (eo + delta[None, :]) % 2
            flipslice_conj[r * N_FLIP:(r + 1) * N_FLIP, s] = (
                new_slice[r] * N_FLIP + _encode_flip_rows(new_eo))
        # on H: permutations conjugate within their own cubie classes
        new_cp = np.empty_like(perms8)
        new_cp[:, csig] = csig[perms8]
        corner_conj[:, s] = ranks_of(new_cp)
        ud_sig = _UD_RANK[esig[ud_slots]]
        new_ud = np.empty_like(perms8)
        new_ud[:, ud_sig] = ud_sig[perms8]
        ud_conj[:, s] = ranks_of(new_ud)
        mid_sig = esig[mid_slots] - 4
        new_mid = np.empty_like(perms4)
        new_mid[:, mid_sig] = mid_sig[perms4]
        mid_conj[:, s] = ranks_of(new_mid)
    return dict(twist_conj=twist_conj, flipslice_conj=flipslice_conj, slice_conj=slice_conj,
                corner_conj=corner_conj, ud_conj=ud_conj, mid_conj=mid_conj)


def build_vertex_index(twist_conj: np.ndarray, flipslice_conj: np.ndarray) -> dict[str, np.ndarray]:
    rep_of = flipslice_conj.min(axis=1)
    fs_sym = flipslice_conj.argmin(axis=1).astype(np.uint8)
    class_rep = np.unique(rep_of).astype(np.int32)
    fs_class = np.searchsorted(class_rep, rep_of).astype(np.int32)
    fixes = flipslice_conj[class_rep] == class_rep[:, None]
    class_stab = (fixes.astype(np.int64) << np.arange(N_UD_SYMS)[None, :]).sum(axis=1)
    nontrivial = np.nonzero(class_stab != 1)[0]
    class_slot = np.full(len(class_rep), -1, dtype=np.int32)
    class_slot[nontrivial] = np.arange(len(nontrivial))
    orbit_rank = np.zeros((len(nontrivial), N_TWIST), dtype=np.uint16)
    orbit_twist = np.zeros((len(nontrivial), N_TWIST), dtype=np.uint16)
    sizes = np.full(len(class_rep), N_TWIST, dtype=np.int64)
    for k, c in enumerate(nontrivial):
        syms = [s for s in range(N_UD_SYMS) if fixes[c, s]]
        canon = twist_conj[:, syms].min(axis=1)
        reps, rank = np.unique(canon, return_inverse=True)
        orbit_rank[k] = rank
        orbit_twist[k, :len(reps)] = reps
        sizes[c] = len(reps)
    class_offset = np.zeros(len(class_rep) + 1, dtype=np.int64)
    np.cumsum(sizes, out=class_offset[1:])
    return dict(fs_class=fs_class, fs_sym=fs_sym, class_rep=class_rep,
                class_offset=class_offset, class_stab=class_stab, class_slot=class_slot,
                orbit_rank=orbit_rank, orbit_twist=orbit_twist)


def build_tables() -> CoordTables:
    arrays = build_move_tables()
    arrays.update(build_sym_tables())
    arrays.update(build_vertex_index(arrays["twist_conj"], arrays["flipslice_conj"]))
    return CoordTables(**arrays)


_TABLES: dict[str, CoordTables] = {}


def get_tables(cache_dir=None) -> CoordTables:
    """Load the coordinate tables from the cache, building them on first use."""
    path = Path(cache_dir or cache.default_cache_dir()) / "coords.bin"
    key = str(path)
    if key in _TABLES:
        return _TABLES[key]
    try:
        tables = CoordTables.load(path)
    except (FileNotFoundError, cache.CacheError):
        tables = build_tables()
        tables.save(path)
    _TABLES[key] = tables
    return tables


# ---------------------------------------------------------------------------
# numba kernels shared by the search modules
# ---------------------------------------------------------------------------

@nb.njit(cache=True, nogil=True)
def vertex_index(fs_class, fs_sym, twist_conj, class_offset, class_slot, orbit_rank,
                 twist, flip, slc):
    fs = slc * 2048 + flip
    c = fs_class[fs]
    t = twist_conj[twist, fs_sym[fs]]
    k = class_slot[c]
    if k >= 0:
        t = orbit_rank[k, t]
    return class_offset[c] + t


def count_solvable_vertices(tables: CoordTables) -> int:
    """Vertices whose class has a member with every E-slice edge in the E slice."""
    solved_slice = tables.class_rep < N_FLIP
    sizes = np.diff(tables.class_offset)
    return int(sizes[solved_slice].sum())


def solvable_vertex_range(tables: CoordTables) -> tuple[int, int]:
    """Solvable vertices are exactly the first block of indices (slice 0 sorts first)."""
    n = count_solvable_vertices(tables)
    return 0, n
