"""Distance tables.

The phase-1 table holds, for every vertex of the reduced coset graph, its
distance to H modulo 3 in two bits.  Exact distances are recovered either by
walking downhill from a coordinate (each step finds a neighbour whose stored
value is one less mod 3) or, inside a search, incrementally from the parent's
known distance.

Phase-2 pruning uses two exact byte tables over projections of H, corner
permutation x E-slice permutation and U/D-edge permutation x E-slice
permutation, each a lower bound on the distance within H using A-moves.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

import numba as nb
import numpy as np

from . import cache
from .coords import (A_INDEX, N_CORNER, N_MID, N_UDEDGE, CoordTables,
                     get_tables, vertex_index)
from .cube import N_MOVES

log = logging.getLogger(__name__)

UNSEEN = 255


class ResourceError(RuntimeError):
    """A requested computation would exceed the configured memory budget."""


# ---------------------------------------------------------------------------
# packed 2-bit storage
# ---------------------------------------------------------------------------

@nb.njit(cache=True, nogil=True)
def packed_get(data, i):
    return (data[i >> 2] >> ((i & 3) << 1)) & 3


@nb.njit(cache=True, nogil=True)
def _pack_mod3(dist, out):
    for i in range(dist.shape[0]):
        d = dist[i]
        v = 3 if d == UNSEEN else d % 3
        out[i >> 2] |= np.uint8(v << ((i & 3) << 1))


@dataclass
class PackedDistanceTable:
    """Distances mod 3, two bits per entry; 3 marks unreached entries."""

    data: np.ndarray
    size: int
    root: int = 0

    @classmethod
    def from_distances(cls, dist: np.ndarray, root: int = 0) -> PackedDistanceTable:
        out = np.zeros((len(dist) + 3) // 4, dtype=np.uint8)
        _pack_mod3(dist, out)
        return cls(out, len(dist), root)

    def __getitem__(self, i) -> int:
        return int(packed_get(self.data, i))

    def __len__(self) -> int:
        return self.size

    def values(self) -> np.ndarray:
        """Unpacked mod-3 values as a byte array."""
        shifts = np.array([0, 2, 4, 6], dtype=np.uint8)
        v = (self.data[:, None] >> shifts[None, :]) & 3
        return v.reshape(-1)[:self.size]


# ---------------------------------------------------------------------------
# phase-1 table over reduced R
# ---------------------------------------------------------------------------

@nb.njit(cache=True, nogil=True)
def _phase1_level(dist, depth, backward, twist_move, flip_move, slice_move, twist_conj,
                  fs_class, fs_sym, class_rep, class_offset, class_slot, orbit_rank,
                  orbit_twist):
    """Advance the breadth-first search one level; returns vertices reached."""
    found = 0
    n_classes = class_rep.shape[0]
    for c in range(n_classes):
        fs = class_rep[c]
        flip = fs % 2048
        slc = fs // 2048
        base = class_offset[c]
        count = class_offset[c + 1] - base
        slot = class_slot[c]
        # skip classes with nothing to do
        todo = False
        want = UNSEEN if backward else depth
        for r in range(count):
            if dist[base + r] == want:
                todo = True
                break
        if not todo:
            continue
        for m in range(18):
            fs2 = slice_move[slc, m] * 2048 + flip_move[flip, m]
            c2 = fs_class[fs2]
            sym = fs_sym[fs2]
            base2 = class_offset[c2]
            slot2 = class_slot[c2]
            for r in range(count):
                d = dist[base + r]
                if backward:
                    if d != UNSEEN:
                        continue
                elif d != depth:
                    continue
                tw = r if slot < 0 else orbit_twist[slot, r]
                t2 = twist_conj[twist_move[tw, m], sym]
                if slot2 >= 0:
                    t2 = orbit_rank[slot2, t2]
                j = base2 + t2
                if backward:
                    if dist[j] == depth:
                        dist[base + r] = depth + 1
                        found += 1
                elif dist[j] == UNSEEN:
                    dist[j] = depth + 1
                    found += 1
    return found


def bfs_reduced_graph(tables: CoordTables, sources, max_depth: int = 255,
                      dist: np.ndarray | None = None) -> tuple[np.ndarray, list[int]]:
    """Breadth-first distances over the reduced coset graph from ``sources``.

    Returns the byte distance array (``UNSEEN`` beyond ``max_depth``) and the
    per-level counts.
    """
    n = tables.n_vertices
    if dist is None:
        dist = np.full(n, UNSEEN, dtype=np.uint8)
    else:
        dist.fill(UNSEEN)
    sources = np.unique(np.asarray(sources, dtype=np.int64))
    dist[sources] = 0
    counts = [len(sources)]
    seen = len(sources)
    depth = 0
    while depth < max_depth and counts[-1] > 0:
        backward = seen > n // 3
        found = _phase1_level(dist, depth, backward, tables.twist_move, tables.flip_move,
                              tables.slice_move, tables.twist_conj, tables.fs_class,
                              tables.fs_sym, tables.class_rep, tables.class_offset,
                              tables.class_slot, tables.orbit_rank, tables.orbit_twist)
        log.info("reduced-graph bfs depth %d: %d (%s)", depth + 1, found,
                 "backward" if backward else "forward")
        if found == 0:
            break
        counts.append(found)
        seen += found
        depth += 1
    return dist, counts


@dataclass
class Phase1Table:
    table: PackedDistanceTable
    depth_counts: np.ndarray

    MAGIC = b"CCP1"

    @property
    def max_distance(self) -> int:
        return len(self.depth_counts) - 1

    def save(self, path) -> None:
        cache.save_arrays(path, self.MAGIC, {"data": self.table.data,
                                             "size": np.array([self.table.size]),
                                             "depth_counts": self.depth_counts})

    @classmethod
    def load(cls, path) -> Phase1Table:
        a = cache.load_arrays(path, cls.MAGIC)
        return cls(PackedDistanceTable(a["data"], int(a["size"][0])), a["depth_counts"])


def build_phase1_distances(tables: CoordTables) -> Phase1Table:
    dist, counts = bfs_reduced_graph(tables, [0])
    if (dist == UNSEEN).any():
        raise RuntimeError("phase-1 search left vertices unreached")
    packed = PackedDistanceTable.from_distances(dist)
    return Phase1Table(packed, np.array(counts, dtype=np.int64))


@nb.njit(cache=True, nogil=True)
def phase1_mod3(data, fs_class, fs_sym, twist_conj, class_offset, class_slot, orbit_rank,
                twist, flip, slc):
    i = vertex_index(fs_class, fs_sym, twist_conj, class_offset, class_slot, orbit_rank,
                     twist, flip, slc)
    return packed_get(data, i)


@nb.njit(cache=True, nogil=True)
def phase1_distance(data, twist_move, flip_move, slice_move, fs_class, fs_sym, twist_conj,
                    class_offset, class_slot, orbit_rank, twist, flip, slc):
    """Exact distance to H by walking downhill through the mod-3 table."""
    d = 0
    while not (twist == 0 and flip == 0 and slc == 0):
        v = phase1_mod3(data, fs_class, fs_sym, twist_conj, class_offset, class_slot,
                        orbit_rank, twist, flip, slc)
        want = (v + 2) % 3
        moved = False
        for m in range(18):
            t2 = twist_move[twist, m]
            f2 = flip_move[flip, m]
            s2 = slice_move[slc, m]
            if phase1_mod3(data, fs_class, fs_sym, twist_conj, class_offset, class_slot,
                           orbit_rank, t2, f2, s2) == want:
                twist, flip, slc = t2, f2, s2
                d += 1
                moved = True
                break
        if not moved:
            return -1
    return d


@nb.njit(cache=True, nogil=True)
def step_distance(d, mod3):
    """Distance of a neighbour of a node at distance d, given its stored value."""
    if mod3 == (d + 1) % 3:
        return d + 1
    if mod3 == d % 3:
        return d
    return d - 1


class Phase1:
    """Phase-1 distance lookups on raw coordinates."""

    def __init__(self, tables: CoordTables, p1: Phase1Table):
        self.tables = tables
        self.p1 = p1
        self.data = p1.table.data

    def args(self):
        t = self.tables
        return (self.data, t.fs_class, t.fs_sym, t.twist_conj, t.class_offset, t.class_slot,
                t.orbit_rank)

    def mod3(self, c) -> int:
        return int(phase1_mod3(*self.args(), c[0], c[1], c[2]))

    def distance(self, c) -> int:
        t = self.tables
        return int(phase1_distance(self.data, t.twist_move, t.flip_move, t.slice_move,
                                   t.fs_class, t.fs_sym, t.twist_conj, t.class_offset,
                                   t.class_slot, t.orbit_rank, c[0], c[1], c[2]))

    def descend(self, c) -> list[int]:
        """Moves taking coordinate c to (0, 0, 0) along strictly decreasing distance."""
        t = self.tables
        path = []
        d = self.distance(c)
        while d > 0:
            for m in range(N_MOVES):
                nxt = t.move_phase1(c, m)
                if self.mod3(nxt) == (d - 1) % 3:
                    c = nxt
                    path.append(m)
                    d -= 1
                    break
        return path


# ---------------------------------------------------------------------------
# phase-2 bound tables
# ---------------------------------------------------------------------------

@nb.njit(cache=True, nogil=True)
def _bfs_projection(perm_move, mid_move, n_perm):
    """Exact A-move distances over (perm, mid) pairs, index perm * 24 + mid."""
    n = n_perm * 24
    dist = np.full(n, UNSEEN, dtype=np.uint8)
    dist[0] = 0
    depth = 0
    done = 1
    while done < n:
        for i in range(n):
            if dist[i] != depth:
                continue
            p = i // 24
            q = i % 24
            for k in range(perm_move.shape[1]):
                j = perm_move[p, k] * 24 + mid_move[q, k]
                if dist[j] == UNSEEN:
                    dist[j] = depth + 1
                    done += 1
        depth += 1
    return dist


@dataclass
class Phase2BoundTables:
    corner_mid: np.ndarray   # (40320 * 24,) bytes
    ud_mid: np.ndarray

    MAGIC = b"CCP2"

    def bound(self, c) -> int:
        corner, ud, mid = (int(x) for x in c)
        return max(int(self.corner_mid[corner * N_MID + mid]), int(self.ud_mid[ud * N_MID + mid]))

    def save(self, path) -> None:
        cache.save_arrays(path, self.MAGIC, {"corner_mid": self.corner_mid, "ud_mid": self.ud_mid})

    @classmethod
    def load(cls, path) -> Phase2BoundTables:
        a = cache.load_arrays(path, cls.MAGIC)
        return cls(a["corner_mid"], a["ud_mid"])


def build_phase2_bound_tables(tables: CoordTables) -> Phase2BoundTables:
    corner_a = np.ascontiguousarray(tables.corner_move[:, A_INDEX])
    cm = _bfs_projection(corner_a, tables.mid_move, N_CORNER)
    um = _bfs_projection(tables.ud_move, tables.mid_move, N_UDEDGE)
    return Phase2BoundTables(cm, um)


@nb.njit(cache=True, nogil=True)
def d2bound(corner_mid, ud_mid, corner, ud, mid):
    a = corner_mid[corner * 24 + mid]
    b = ud_mid[ud * 24 + mid]
    return a if a > b else b


# ---------------------------------------------------------------------------
# cached access
# ---------------------------------------------------------------------------

_P1: dict[str, Phase1Table] = {}
_P2: dict[str, Phase2BoundTables] = {}


def _cached(store, path, loader, builder):
    key = str(path)
    if key in store:
        return store[key]
    try:
        obj = loader(path)
    except (FileNotFoundError, cache.CacheError):
        log.warning("building %s (one-time)", Path(path).name)
        obj = builder()
        obj.save(path)
    store[key] = obj
    return obj


def get_phase1(cache_dir=None) -> Phase1:
    tables = get_tables(cache_dir)
    path = Path(cache_dir or cache.default_cache_dir()) / "phase1.bin"
    p1 = _cached(_P1, path, Phase1Table.load, lambda: build_phase1_distances(tables))
    return Phase1(tables, p1)


def get_phase2(cache_dir=None) -> Phase2BoundTables:
    tables = get_tables(cache_dir)
    path = Path(cache_dir or cache.default_cache_dir()) / "phase2.bin"
    return _cached(_P2, path, Phase2BoundTables.load, lambda: build_phase2_bound_tables(tables))


# ---------------------------------------------------------------------------
# census of H by distance
# ---------------------------------------------------------------------------

def census_a(depth_limit: int, memory_budget: int = 2 << 30, tables: CoordTables | None = None
             ) -> list[int]:
    """Positions of H at each exact distance using A-moves only (hash-set BFS)."""
    from .hset import apply_right_a, IDENTITY_INDEX
    tables = tables or get_tables()
    seen = np.array([IDENTITY_INDEX], dtype=np.int64)
    frontier = seen
    counts = [1]
    for _ in range(depth_limit):
        # 10 successors per frontier element, sorted int64 arrays
        if 8 * 4 * 10 * len(frontier) + 8 * len(seen) > memory_budget:
            raise ResourceError(f"census depth {depth_limit} exceeds the memory budget")
        nxt = np.unique(np.concatenate([apply_right_a(tables, frontier, k) for k in range(len(A_INDEX))]))
        nxt = nxt[~np.isin(nxt, seen, assume_unique=True)]
        seen = np.union1d(seen, nxt)
        frontier = nxt
        counts.append(len(nxt))
    return counts


def census(depth_limit: int, move_set: str = "S", memory_budget: int = 2 << 30,
           cache_dir=None) -> list[int]:
    """Counts of H positions at exact distance d <= depth_limit under ``move_set``."""
    if move_set == "A":
        return census_a(depth_limit, memory_budget, get_tables(cache_dir))
    if move_set != "S":
        raise ValueError("move_set must be 'A' or 'S'")
    from .cosets import CosetJob, solve_set
    report = solve_set(CosetJob("", depth_limit=depth_limit, memory_budget=memory_budget),
                       cache_dir=cache_dir)
    return [n for _, n in report.per_depth_new_counts]
