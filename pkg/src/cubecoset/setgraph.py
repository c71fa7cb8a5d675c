"""The symmetry-reduced coset graph: one vertex per class of cosets Ha, one
edge per move.  Neighbouring cosets differ in distance by at most one, so a
bound proven for one set bounds every set around it.
"""

from __future__ import annotations

import itertools
import logging
import os
import struct
import time
import zlib
from dataclasses import dataclass
from pathlib import Path

import numba as nb
import numpy as np

from .coords import (N_FLIP, N_SLICE, CoordTables, get_tables, relabel, slice_rank_from_mask,
                     slice_unrank, vertex_index)
from .cube import (AXIS_SYMS, CORNER_NAMES, EDGE_NAMES, N_MOVES, SOLVED, SYM_ESIG,
                   MoveSequence, apply_sequence)
from .pruning import UNSEEN, bfs_reduced_graph

log = logging.getLogger(__name__)

MAX_BOUND = 30
H_VERTEX = 0


class LedgerError(Exception):
    pass


def graph_args(t: CoordTables):
    return (t.twist_move, t.flip_move, t.slice_move, t.fs_class, t.fs_sym, t.twist_conj,
            t.class_offset, t.class_slot, t.orbit_rank, t.class_rep, t.orbit_twist)


# ---------------------------------------------------------------------------
# numba kernels
# ---------------------------------------------------------------------------

@nb.njit(cache=True, nogil=True)
def _decode(v, class_offset, class_rep, class_slot, orbit_twist):
    lo = 0
    hi = class_offset.shape[0] - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if class_offset[mid] <= v:
            lo = mid
        else:
            hi = mid
    r = v - class_offset[lo]
    slot = class_slot[lo]
    tw = r if slot < 0 else orbit_twist[slot, r]
    fs = class_rep[lo]
    return tw, fs % 2048, fs // 2048


@nb.njit(cache=True, nogil=True)
def _neighbor(v, m, g):
    (twist_move, flip_move, slice_move, fs_class, fs_sym, twist_conj, class_offset,
     class_slot, orbit_rank, class_rep, orbit_twist) = g
    tw, fl, sl = _decode(v, class_offset, class_rep, class_slot, orbit_twist)
    return vertex_index(fs_class, fs_sym, twist_conj, class_offset, class_slot, orbit_rank,
                        twist_move[tw, m], flip_move[fl, m], slice_move[sl, m])


@nb.njit(cache=True, nogil=True)
def _neighbor_pairs(vs, ms, g):
    out = np.empty(vs.shape[0], np.int64)
    for i in range(vs.shape[0]):
        out[i] = _neighbor(vs[i], ms[i], g)
    return out


@nb.njit(cache=True, nogil=True)
def _expand(frontier, level, bounds, g):
    """Lower every neighbour of the frontier (at bound ``level``) to level + 1."""
    (twist_move, flip_move, slice_move, fs_class, fs_sym, twist_conj, class_offset,
     class_slot, orbit_rank, class_rep, orbit_twist) = g
    out = np.empty(max(1024, frontier.shape[0]), np.int32)
    n = 0
    nb1 = level + 1
    for i in range(frontier.shape[0]):
        v = frontier[i]
        if bounds[v] != level:
            continue
        tw, fl, sl = _decode(v, class_offset, class_rep, class_slot, orbit_twist)
        for m in range(18):
            w = vertex_index(fs_class, fs_sym, twist_conj, class_offset, class_slot,
                             orbit_rank, twist_move[tw, m], flip_move[fl, m],
                             slice_move[sl, m])
            if bounds[w] > nb1:
                bounds[w] = nb1
                if n == out.shape[0]:
                    bigger = np.empty(2 * n, np.int32)
                    bigger[:n] = out
                    out = bigger
                out[n] = w
                n += 1
    return out[:n]


@nb.njit(cache=True, nogil=True)
def _ball(sources, radius, mark, bounds, threshold, g, visited_out, dist_out):
    """Breadth-first ball around ``sources``; returns (visited, above threshold).

    ``mark`` must be all zero on entry and is restored before returning.
    Visited vertices and their distances land in the first entries of
    visited_out / dist_out when those are large enough.
    """
    (twist_move, flip_move, slice_move, fs_class, fs_sym, twist_conj, class_offset,
     class_slot, orbit_rank, class_rep, orbit_twist) = g
    cap = 1024
    seen = np.empty(cap, np.int64)
    depth = np.empty(cap, np.int64)
    n = 0
    for i in range(sources.shape[0]):
        v = sources[i]
        if mark[v] == 0:
            mark[v] = 1
            seen[n] = v
            depth[n] = 0
            n += 1
    head = 0
    while head < n:
        v = seen[head]
        d = depth[head]
        head += 1
        if d == radius:
            continue
        tw, fl, sl = _decode(v, class_offset, class_rep, class_slot, orbit_twist)
        for m in range(18):
            w = vertex_index(fs_class, fs_sym, twist_conj, class_offset, class_slot,
                             orbit_rank, twist_move[tw, m], flip_move[fl, m],
                             slice_move[sl, m])
            if mark[w] == 0:
                mark[w] = 1
                if n == cap:
                    cap *= 2
                    s2 = np.empty(cap, np.int64)
                    s2[:n] = seen[:n]
                    seen = s2
                    d2 = np.empty(cap, np.int64)
                    d2[:n] = depth[:n]
                    depth = d2
                seen[n] = w
                depth[n] = d + 1
                n += 1
    above = 0
    for i in range(n):
        v = seen[i]
        mark[v] = 0
        if bounds[v] > threshold:
            above += 1
        if i < visited_out.shape[0]:
            visited_out[i] = v
            dist_out[i] = depth[i]
    return n, above


@nb.njit(cache=True, nogil=True)
def _relax_scan(bounds, tag, level, pull, twist_move, flip_move, slice_move, twist_conj,
                fs_class, fs_sym, class_rep, class_offset, class_slot, orbit_rank,
                orbit_twist):
    """One relaxation level over the whole graph, class by class.

    Frontier vertices carry tag == level + 1.  Push mode lowers their
    neighbours; pull mode lets every vertex above level + 1 look for a frontier
    neighbour (valid because the neighbour relation is symmetric).  Lowered
    vertices get tag level + 2.  Returns the number lowered.
    """
    lowered = 0
    want = level + 1
    nb1 = level + 1
    for c in range(class_rep.shape[0]):
        fs = class_rep[c]
        flip = fs % 2048
        slc = fs // 2048
        base = class_offset[c]
        count = class_offset[c + 1] - base
        slot = class_slot[c]
        todo = False
        for r in range(count):
            if pull:
                if bounds[base + r] > nb1:
                    todo = True
                    break
            elif tag[base + r] == want and bounds[base + r] == level:
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
                i = base + r
                if pull:
                    if bounds[i] <= nb1:
                        continue
                elif tag[i] != want or bounds[i] != level:
                    continue
                tw = r if slot < 0 else orbit_twist[slot, r]
                t2 = twist_conj[twist_move[tw, m], sym]
                if slot2 >= 0:
                    t2 = orbit_rank[slot2, t2]
                j = base2 + t2
                if pull:
                    if tag[j] == want and bounds[j] == level:
                        bounds[i] = nb1
                        tag[i] = want + 1
                        lowered += 1
                elif bounds[j] > nb1:
                    bounds[j] = nb1
                    tag[j] = want + 1
                    lowered += 1
    return lowered


# ---------------------------------------------------------------------------
# graph queries
# ---------------------------------------------------------------------------

class SetGraph:
    """Graph queries over the reduced vertex set, plus a scratch mark array."""

    def __init__(self, tables: CoordTables | None = None, cache_dir=None):
        self.tables = tables or get_tables(cache_dir)
        self.g = graph_args(self.tables)
        self.n = self.tables.n_vertices
        self._mark = None

    @property
    def mark(self) -> np.ndarray:
        if self._mark is None:
            self._mark = np.zeros(self.n, np.uint8)
        return self._mark

    def neighbors(self, v: int) -> list[int]:
        """Canonical vertices reached from v by each of the 18 moves (in move order)."""
        self._check(v)
        vs = np.full(N_MOVES, v, np.int64)
        return [int(w) for w in _neighbor_pairs(vs, np.arange(N_MOVES), self.g)]

    def neighbor_pairs(self, vs, ms) -> np.ndarray:
        return _neighbor_pairs(np.asarray(vs, np.int64), np.asarray(ms, np.int64), self.g)

    def vertex_of(self, seq) -> int:
        """Vertex of the set Ha for representative a."""
        a = apply_sequence(SOLVED, seq)
        return self.tables.vertex_index(relabel(a))

    def ball(self, sources, radius: int, bounds=None, threshold: int = -1,
             collect: bool = False):
        """(size, count above threshold[, vertices, distances]) of the radius ball."""
        sources = np.atleast_1d(np.asarray(sources, np.int64))
        cap = 1 << 22 if collect else 0
        vis = np.empty(cap, np.int64)
        dist = np.empty(cap, np.int64)
        b = bounds
        if bounds is None:
            b = self.mark          # all zero, so nothing counts as above
            threshold = 255
        n, above = _ball(sources, radius, self.mark, b, threshold, self.g, vis, dist)
        if collect:
            if n > cap:
                vis = np.empty(n, np.int64)
                dist = np.empty(n, np.int64)
                _ball(sources, radius, self.mark, b, threshold, self.g, vis, dist)
            return n, above, vis[:n], dist[:n]
        return n, above

    def representative(self, v: int, phase1=None) -> MoveSequence:
        """A move sequence a whose set Ha lies in vertex v (phase-1 table descent)."""
        from .pruning import get_phase1
        self._check(v)
        phase1 = phase1 or get_phase1()
        c = self.tables.vertex_coord(v)
        path = MoveSequence(phase1.descend(c))
        rep = path.inverse()
        assert self.vertex_of(rep) == v
        return rep

    def solvable(self, v) -> np.ndarray:
        """Whether the vertex's class holds a set with the E-slice edges in place."""
        return self.tables.vertex_slice(v) == 0

    def solvable_vertices(self) -> np.ndarray:
        sl = self.tables.class_rep // N_FLIP
        sizes = np.diff(self.tables.class_offset)
        return np.arange(int(sizes[sl == 0].sum()), dtype=np.int64)

    def _check(self, v):
        if not 0 <= int(v) < self.n:
            raise ValueError(f"vertex {v} out of range")


@dataclass
class BallResult:
    ok: bool
    max_distance: int           # largest finite distance found (within the radius)
    farthest: np.ndarray        # unreached vertices (if not ok) or those at max_distance
    counts: list


def ball_within(tables: CoordTables, sources, radius: int, keep=None, sample: int = 10
                ) -> BallResult:
    """Check that every vertex (or every kept vertex) is within ``radius`` of the sources."""
    dist, counts = bfs_reduced_graph(tables, sources, max_depth=255)
    mask = np.ones(len(dist), bool) if keep is None else keep
    relevant = dist[mask]
    finite = relevant[relevant != UNSEEN]
    maxd = int(finite.max()) if len(finite) else 0
    idx = np.flatnonzero(mask)
    far = idx[relevant > radius] if maxd > radius else idx[relevant == maxd]
    return BallResult(maxd <= radius, maxd, far[:sample], counts)


# ---------------------------------------------------------------------------
# bound ledger
# ---------------------------------------------------------------------------

LEDGER_MAGIC = b"RCGL"
LEDGER_VERSION = 1


class BoundLedger:
    """Proven upper bounds per vertex, with an append-only journal."""

    def __init__(self, graph: SetGraph, bounds: np.ndarray | None = None,
                 journal_path: str | Path | None = None):
        self.graph = graph
        self.bounds = bounds if bounds is not None else np.full(graph.n, MAX_BOUND, np.uint8)
        if self.bounds.shape != (graph.n,):
            raise LedgerError("ledger size does not match the vertex count")
        self.journal_path = Path(journal_path) if journal_path else None
        self.journal: list[tuple[int, int, str, float]] = []

    # -- updates -----------------------------------------------------------------

    def record_bound(self, v: int, c: int, source: str = "manual") -> int:
        return self.record_many([(v, c)], source)

    def record_many(self, items, source: str = "manual") -> int:
        """Apply a batch of (vertex, bound) facts and propagate; returns vertices lowered."""
        seeds: dict[int, int] = {}
        for v, c in items:
            v, c = int(v), int(c)
            if not 0 <= c <= MAX_BOUND:
                raise ValueError(f"bound {c} outside 0..{MAX_BOUND}")
            self.graph._check(v)
            if c < self.bounds[v] and c < seeds.get(v, MAX_BOUND + 1):
                seeds[v] = c
        if not seeds:
            return 0
        now = time.time()
        for v, c in seeds.items():
            self._journal(v, c, source, now)
        return propagate(self.graph, self.bounds, seeds)

    def _journal(self, v, c, source, stamp):
        rec = (v, c, source, stamp)
        self.journal.append(rec)
        if self.journal_path is not None:
            with open(self.journal_path, "a", encoding="utf-8") as fh:
                fh.write(f"{v}\t{c}\t{source}\t{stamp:.3f}\n")

    # -- queries -----------------------------------------------------------------

    def impact(self, v: int, assumed: int = 20, threshold: int = 25) -> int:
        """Vertices above ``threshold`` within ``threshold - assumed`` moves of v."""
        radius = threshold - assumed
        if radius < 0:
            return 0
        _, above = self.graph.ball([v], radius, self.bounds, threshold)
        return int(above)

    def diameter_bound(self, cover: EliminationCover | None = None) -> int:
        if cover is None or not len(cover.eliminated):
            return int(self.bounds.max())
        keep = cover.vertex_mask(self.graph.tables)
        return int(self.bounds[keep].max())

    def histogram(self) -> dict[int, int]:
        counts = np.bincount(self.bounds, minlength=MAX_BOUND + 1)
        return {b: int(n) for b, n in enumerate(counts) if n}

    def copy(self) -> BoundLedger:
        return BoundLedger(self.graph, self.bounds.copy())

    # -- persistence -------------------------------------------------------------

    def save(self, path) -> None:
        path = Path(path)
        payload = self.bounds.tobytes()
        header = LEDGER_MAGIC + struct.pack("<BQI", LEDGER_VERSION, len(self.bounds),
                                            zlib.crc32(payload))
        tmp = path.with_suffix(path.suffix + ".tmp")
        with open(tmp, "wb") as fh:
            fh.write(header)
            fh.write(payload)
        os.replace(tmp, path)

    @classmethod
    def load(cls, path, graph: SetGraph, journal_path=None) -> BoundLedger:
        data = Path(path).read_bytes()
        if data[:4] != LEDGER_MAGIC:
            raise LedgerError(f"{path}: not a ledger file")
        version, count, crc = struct.unpack_from("<BQI", data, 4)
        if version != LEDGER_VERSION:
            raise LedgerError(f"{path}: unsupported version {version}")
        off = 4 + struct.calcsize("<BQI")
        if len(data) - off != count:
            raise LedgerError(f"{path}: truncated ({len(data) - off} of {count} bytes)")
        payload = data[off:]
        if zlib.crc32(payload) != crc:
            raise LedgerError(f"{path}: checksum mismatch")
        bounds = np.frombuffer(payload, np.uint8).copy()
        return cls(graph, bounds, journal_path)

    @staticmethod
    def read_journal(path):
        out = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    v, c, src, stamp = line.rstrip("\n").split("\t")
                    out.append((int(v), int(c), src, float(stamp)))
        return out

    @classmethod
    def replay(cls, graph: SetGraph, records) -> BoundLedger:
        led = cls(graph)
        for v, c, src, _ in records:
            led.record_bound(v, c, src)
        return led

    def report(self, cover: EliminationCover | None = None) -> str:
        hist = self.histogram()
        recorded = len({v for v, *_ in self.journal})
        lines = [f"global bound {self.diameter_bound(cover)}, {recorded} sets recorded"]
        sources = [v for v, *_ in self.journal]
        if sources:
            at = {}
            for v, c, *_ in self.journal:
                at[v] = min(c, at.get(v, MAX_BOUND))
            per = {}
            for c in at.values():
                per[c] = per.get(c, 0) + 1
            for c in sorted(per):
                lines.append(f"  {per[c]} sets proven at {c} or less")
        lines.append("bound histogram:")
        for b in sorted(hist):
            lines.append(f"  {b:2d}\t{hist[b]}")
        lines.append(f"journal length {len(self.journal)}")
        return "\n".join(lines)


def propagate(graph: SetGraph, bounds: np.ndarray, seeds: dict[int, int]) -> int:
    """Lower seeded vertices, then relax neighbours level by level.

    Each level only expands vertices whose bound just dropped to that level, so
    the work stops where nothing improves.  The result is
    min(old bound, seed value + graph distance) everywhere, whatever the seed order.
    Small frontiers are pushed from an explicit list; large ones switch to a
    class-by-class scan, pulling when fewer vertices remain above the frontier.
    """
    by_level: dict[int, list[int]] = {}
    for v, c in seeds.items():
        if c < bounds[v]:
            bounds[v] = c
            by_level.setdefault(c, []).append(v)
    if not by_level:
        return 0
    t = graph.tables
    n = graph.n
    lowered = sum(len(x) for x in by_level.values())
    level = min(by_level)
    frontier = np.array(sorted(by_level.pop(level)), np.int32)
    tag = None     # scan mode: tag[v] == level + 1 marks the frontier
    while level < MAX_BOUND - 1 and (len(frontier) or by_level):
        extra = [v for v in by_level.pop(level + 1, []) if bounds[v] == level + 1]
        if len(frontier) < n // 256:
            nxt = _expand(frontier, level, bounds, graph.g)
            found = len(nxt)
        else:
            if tag is None:
                tag = np.zeros(n, np.uint8)
            tag[frontier] = level + 1
            above = int(np.count_nonzero(bounds > level + 1))
            found = _relax_scan(bounds, tag, level, above < len(frontier), t.twist_move,
                                t.flip_move, t.slice_move, t.twist_conj, t.fs_class,
                                t.fs_sym, t.class_rep, t.class_offset, t.class_slot,
                                t.orbit_rank, t.orbit_twist)
            nxt = np.flatnonzero(tag == level + 2).astype(np.int32) if found else \
                np.empty(0, np.int32)
            tag[frontier] = 0
        lowered += found
        level += 1
        if extra:
            nxt = np.concatenate([nxt, np.array(extra, np.int32)])
        frontier = nxt
    return lowered


# ---------------------------------------------------------------------------
# greedy selection
# ---------------------------------------------------------------------------

def greedy_select(ledger: BoundLedger, n: int, assumed: int = 20, threshold: int = 25,
                  candidates=None, lazy: bool = True) -> list[int]:
    """Pick n vertices by repeated maximum impact, simulating each pick at ``assumed``.

    With ``lazy`` a stale score is only refreshed when it could still beat the
    best fresh score found so far (scores never rise as picks accumulate).
    """
    graph = ledger.graph
    bounds = ledger.bounds.copy()
    radius = threshold - assumed
    if candidates is None:
        candidates = graph.solvable_vertices()
    candidates = np.asarray(candidates, np.int64)

    def score(v):
        return graph.ball([v], radius, bounds, threshold)[1]

    stale = {int(v): score(int(v)) for v in candidates}
    chosen: list[int] = []
    for _ in range(n):
        order = sorted(stale, key=lambda v: (-stale[v], v))
        best_v, best_s = None, 0
        for v in order:
            if lazy and stale[v] < best_s:
                break
            if lazy and stale[v] == best_s and best_v is not None and v > best_v:
                continue
            s = score(v)
            stale[v] = s
            if s > best_s or (s == best_s and best_v is not None and v < best_v):
                best_v, best_s = v, s
        if best_v is None or best_s == 0:
            break
        chosen.append(best_v)
        del stale[best_v]
        _, _, vis, dist = graph.ball([best_v], radius, bounds, threshold, collect=True)
        np.minimum.at(bounds, vis, (assumed + dist).astype(np.uint8))
    return chosen


# ---------------------------------------------------------------------------
# odd-corner-count elimination
# ---------------------------------------------------------------------------

CORNER_EDGES = tuple(
    tuple(j for j, e in enumerate(EDGE_NAMES) if set(e) <= set(c)) for c in CORNER_NAMES)


def odd_corner_count(subset) -> int:
    s = set(int(x) for x in subset)
    if not s <= set(range(12)):
        raise ValueError("edge slots are 0..11")
    return sum(1 for edges in CORNER_EDGES if sum(e in s for e in edges) % 2 == 1)


def _axis_slot_maps():
    """Per axis: the edge cubies that become E-slice edges, and the slot map."""
    groups, maps = [], []
    for s in AXIS_SYMS:
        sig = SYM_ESIG[s]
        groups.append(tuple(sorted(int(j) for j in range(12) if 4 <= sig[j] < 8)))
        maps.append(tuple(int(x) for x in sig))
    return tuple(groups), tuple(maps)


# AXIS_GROUPS[k]: edge cubies that sit in the E slice after reorienting to axis k;
# AXIS_SLOT_MAP[k][slot]: where that slot goes under the reorientation.
AXIS_GROUPS, AXIS_SLOT_MAP = _axis_slot_maps()


def slice_config_f(r: int) -> int:
    occ = slice_unrank(r)
    return odd_corner_count(i for i in range(12) if occ[i])


def partitions():
    """All ordered partitions of the 12 slots into three 4-slot groups."""
    slots = range(12)
    for a in itertools.combinations(slots, 4):
        rest = [s for s in slots if s not in a]
        for b in itertools.combinations(rest, 4):
            c = tuple(s for s in rest if s not in b)
            yield a, b, c


def partition_configs() -> np.ndarray:
    """(34650, 3) slice coordinates seen by each axis for each partition.

    Part k holds the slots of the cubies in AXIS_GROUPS[k]; reoriented to axis
    k, those cubies occupy the image slots, which is that axis's slice config.
    """
    rows = []
    for parts in partitions():
        row = []
        for k in range(3):
            occ = [False] * 12
            for s in parts[k]:
                occ[AXIS_SLOT_MAP[k][s]] = True
            row.append(slice_rank_from_mask(occ))
        rows.append(row)
    return np.array(rows, np.int64)


_PART = None


def _partition_table() -> np.ndarray:
    global _PART
    if _PART is None:
        _PART = partition_configs()
    return _PART


@dataclass
class EliminationCover:
    eliminated: np.ndarray   # sorted slice coordinates

    @property
    def kept(self) -> np.ndarray:
        return np.setdiff1d(np.arange(N_SLICE), self.eliminated)

    def kept_mask(self) -> np.ndarray:
        m = np.ones(N_SLICE, bool)
        m[self.eliminated] = False
        return m

    def vertex_mask(self, tables: CoordTables) -> np.ndarray:
        cls_keep = self.kept_mask()[tables.class_rep // N_FLIP]
        return np.repeat(cls_keep, np.diff(tables.class_offset))


def validate_cover(cover: EliminationCover):
    """None if every partition has an axis whose slice config is kept, else a counterexample."""
    cfg = _partition_table()
    keep = cover.kept_mask()
    ok = keep[cfg].any(axis=1)
    if ok.all():
        return None
    i = int(np.flatnonzero(~ok)[0])
    return list(partitions())[i]


def slice_orbits(tables: CoordTables) -> list[np.ndarray]:
    """Slice coordinates grouped into orbits of the 16 U/D-axis symmetries."""
    seen = np.zeros(N_SLICE, bool)
    orbits = []
    for r in range(N_SLICE):
        if not seen[r]:
            orb = np.unique(tables.slice_conj[r])
            seen[orb] = True
            orbits.append(orb)
    return orbits


def slice_distance(r: int) -> int:
    """E-slice edges outside the E slice for slice configuration r."""
    occ = slice_unrank(r)
    return sum(1 for i in range(12) if occ[i] and not 4 <= i < 8)


def compute_elimination(tables: CoordTables | None = None) -> EliminationCover:
    """Greedily eliminate whole symmetry orbits of slice configurations.

    Orbits farthest from the solved slice go first; an orbit is dropped if the
    cover stays valid without it.  Orbits keep the result consistent with the
    symmetry-reduced vertex labels.
    """
    tables = tables or get_tables()
    orbits = slice_orbits(tables)
    orbits.sort(key=lambda o: (-slice_distance(int(o[0])), -len(o), int(o.min())))
    eliminated: list[int] = []
    for orb in orbits:
        trial = EliminationCover(np.array(sorted(eliminated + orb.tolist()), np.int64))
        if validate_cover(trial) is None:
            eliminated = trial.eliminated.tolist()
    return EliminationCover(np.array(eliminated, np.int64))


def f_cover() -> EliminationCover:
    """Eliminate every configuration with odd-corner count below three."""
    elim = [r for r in range(N_SLICE) if slice_config_f(r) < 3]
    return EliminationCover(np.array(elim, np.int64))
