"""Coset solving: bound the distance of every position in a coset Ha at once.

A position x of Ha is stored through h = x a^-1, packed into the dense H index
of :mod:`cubecoset.hset`.  At depth d the covered set f holds every x with a
solution of length <= d; the loop alternates a prepass (f <- f + A f, using
left multiplication by the moves of A) with a phase-1 style search over all
sequences s of length d for which a s lies in H, each inserting x = s^-1.

Three storage backends share that loop:

``hash``       sorted arrays of packed indices; cheap at shallow depth.
``symmetric``  the same, keeping one representative per symmetry orbit of Ha.
``full``       two dense bitmaps of |H| bits (about 2.44 GB each).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

import numba as nb
import numpy as np

from . import hset
from .coords import (A_INDEX, H_SIZE, N_CORNER, N_UDEDGE, CoordTables, all_perms,
                     encode_phase2, get_tables, relabel)
from .cube import (MOVE_CO, MOVE_CP, MOVE_EO, MOVE_EP, MOVE_STATES, N_MOVES, SOLVED, CubieState,
                   MoveSequence, apply_sequence, conjugate, invert)
from .pruning import ResourceError, get_phase1, phase1_mod3, step_distance

log = logging.getLogger(__name__)

MODES = ("hash", "symmetric", "full")
BITMAP_BYTES = H_SIZE // 8
_UD_SLOTS = np.array([0, 1, 2, 3, 8, 9, 10, 11], dtype=np.int64)
_UD_RANK = np.array([0, 1, 2, 3, -1, -1, -1, -1, 4, 5, 6, 7], dtype=np.int64)


class RepresentativeError(ValueError):
    """The representative does not keep the E-slice edges in the E slice."""


@dataclass
class CosetJob:
    representative: MoveSequence | str = ""
    m: int | None = None              # longest phase-1 search depth; None = unlimited
    memory_mode: str = "hash"
    log_threshold: int = 65536
    depth_limit: int | None = None    # stop after this depth even if f != Ha
    memory_budget: int = 2 << 30
    reenter_h: bool = True            # let the search pass through H mid-sequence
    residual_log: str | Path | None = None

    def __post_init__(self):
        if isinstance(self.representative, str):
            self.representative = MoveSequence.parse(self.representative)
        if self.memory_mode not in MODES:
            raise ValueError(f"unknown memory mode {self.memory_mode!r}")

    @property
    def position(self) -> CubieState:
        return apply_sequence(SOLVED, self.representative)


@dataclass
class CosetReport:
    representative: MoveSequence
    per_depth_new_counts: list = field(default_factory=list)   # (d, newly covered)
    final_bound: int | None = None
    exact: bool = False
    residual_log: list = field(default_factory=list)           # log lines
    nodes_per_depth: list = field(default_factory=list)
    covered: np.ndarray | None = None                           # hash modes only

    @property
    def covered_count(self) -> int:
        return sum(n for _, n in self.per_depth_new_counts)

    def tsv(self) -> str:
        lines = ["depth\tnew\tcovered"]
        total = 0
        for d, n in self.per_depth_new_counts:
            total += n
            lines.append(f"{d}\t{n}\t{total}")
        bound = "-" if self.final_bound is None else str(self.final_bound)
        lines.append(f"# representative={self.representative or 'ε'} bound={bound} "
                     f"exact={'yes' if self.exact else 'no'} residual={len(self.residual_log)}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# search kernel
# ---------------------------------------------------------------------------

@nb.njit(cache=True, nogil=True)
def _perm_rank(perm, n):
    r = 0
    for i in range(n):
        smaller = 0
        for j in range(i + 1, n):
            if perm[j] < perm[i]:
                smaller += 1
        f = 1
        for k in range(2, n - i):
            f *= k
        r += smaller * f
    return r


@nb.njit(cache=True, nogil=True)
def _search_depth(depth, tw0, fl0, sl0, dist0, cp0, ep0, p1t, move_cp, move_ep, ud_slots,
                  ud_rank, corner_inv, ud_inv, mid_inv, reenter, nodes):
    """Packed indices of (a s)^-1 for every canonical s of length ``depth`` with a s in H."""
    (data, twist_move, flip_move, slice_move, fs_class, fs_sym, twist_conj,
     class_offset, class_slot, orbit_rank) = p1t
    out = np.empty(1024, np.int64)
    n_out = 0
    tw = np.empty(depth + 1, np.int64)
    fl = np.empty(depth + 1, np.int64)
    sl = np.empty(depth + 1, np.int64)
    dd = np.empty(depth + 1, np.int64)
    nxt = np.empty(depth + 1, np.int64)
    path = np.empty(depth + 1, np.int64)
    cps = np.empty((depth + 1, 8), np.int64)
    eps = np.empty((depth + 1, 12), np.int64)
    cps[0] = cp0
    eps[0] = ep0
    ud = np.empty(8, np.int64)
    mid = np.empty(4, np.int64)
    if depth == 0:
        if dist0 == 0:
            for j in range(8):
                ud[j] = ud_rank[ep0[ud_slots[j]]]
            for j in range(4):
                mid[j] = ep0[4 + j] - 4
            c = corner_inv[_perm_rank(cp0, 8)]
            u = ud_inv[_perm_rank(ud, 8)]
            mm = mid_inv[_perm_rank(mid, 4)]
            out[0] = (c * 40320 + u) * 12 + (mm >> 1)
            return out[:1]
        return out[:0]
    tw[0] = tw0
    fl[0] = fl0
    sl[0] = sl0
    dd[0] = dist0
    nxt[0] = 0
    level = 0
    while level >= 0:
        m = nxt[level]
        if m >= 18:
            level -= 1
            if level >= 0:
                nxt[level] += 1
            continue
        f = m // 3
        if level > 0:
            pf = path[level - 1] // 3
            if f == pf or f + 3 == pf:
                nxt[level] += 1
                continue
        t2 = twist_move[tw[level], m]
        f2 = flip_move[fl[level], m]
        s2 = slice_move[sl[level], m]
        v = phase1_mod3(data, fs_class, fs_sym, twist_conj, class_offset, class_slot,
                        orbit_rank, t2, f2, s2)
        d2 = step_distance(dd[level], v)
        togo = depth - level - 1
        nodes[0] += 1
        if d2 > togo or (d2 == 0 and togo > 0 and not reenter):
            nxt[level] += 1
            continue
        path[level] = m
        for j in range(8):
            cps[level + 1, j] = cps[level, move_cp[m, j]]
        for j in range(12):
            eps[level + 1, j] = eps[level, move_ep[m, j]]
        if togo == 0:
            e = eps[level + 1]
            for j in range(8):
                ud[j] = ud_rank[e[ud_slots[j]]]
            for j in range(4):
                mid[j] = e[4 + j] - 4
            c = corner_inv[_perm_rank(cps[level + 1], 8)]
            u = ud_inv[_perm_rank(ud, 8)]
            mm = mid_inv[_perm_rank(mid, 4)]
            if n_out == out.shape[0]:
                bigger = np.empty(2 * n_out, np.int64)
                bigger[:n_out] = out
                out = bigger
            out[n_out] = (c * 40320 + u) * 12 + (mm >> 1)
            n_out += 1
            nxt[level] += 1
            continue
        level += 1
        tw[level] = t2
        fl[level] = f2
        sl[level] = s2
        dd[level] = d2
        nxt[level] = 0
    return out[:n_out]


class _Searcher:
    def __init__(self, tables: CoordTables, cache_dir=None):
        self.tables = tables
        ph = get_phase1(cache_dir)
        self.phase1 = ph
        t = tables
        self.p1t = (ph.data, t.twist_move, t.flip_move, t.slice_move, t.fs_class, t.fs_sym,
                    t.twist_conj, t.class_offset, t.class_slot, t.orbit_rank)
        self.move_cp = MOVE_CP.astype(np.int64)
        self.move_ep = MOVE_EP.astype(np.int64)
        self.corner_inv = t.corner_inv.astype(np.int64)
        self.ud_inv = t.ud_inv.astype(np.int64)
        self.mid_inv = t.mid_inv.astype(np.int64)

    def search(self, a: CubieState, depth: int, reenter: bool = True):
        c = relabel(a)
        dist0 = self.phase1.distance(c)
        nodes = np.zeros(1, np.int64)
        if dist0 > depth:
            return np.empty(0, np.int64), 0
        idx = _search_depth(depth, c.twist, c.flip, c.slice, dist0,
                            np.array(a.cp, np.int64), np.array(a.ep, np.int64), self.p1t,
                            self.move_cp, self.move_ep, _UD_SLOTS, _UD_RANK,
                            self.corner_inv, self.ud_inv, self.mid_inv, reenter, nodes)
        return idx, int(nodes[0])


def search_depth(a, d: int, cache_dir=None, reenter: bool = True) -> np.ndarray:
    """Sorted unique packed indices inserted by the depth-d search from a."""
    if not isinstance(a, CubieState):
        a = apply_sequence(SOLVED, a)
    s = _Searcher(get_tables(cache_dir), cache_dir)
    idx, _ = s.search(a, d, reenter)
    return np.unique(idx)


# ---------------------------------------------------------------------------
# hash backend
# ---------------------------------------------------------------------------

def prepass_sparse(tables: CoordTables, f: np.ndarray) -> np.ndarray:
    """f united with m * f for the ten moves of A (sorted unique indices)."""
    if len(f) == 0:
        return f
    parts = [f] + [hset.apply_left_a(tables, f, k) for k in range(len(A_INDEX))]
    return np.unique(np.concatenate(parts))


# ---------------------------------------------------------------------------
# symmetric backend: one representative per orbit
# ---------------------------------------------------------------------------

@nb.njit(cache=True, nogil=True)
def _compose_rank(x_rank, y_perm, perms, n):
    """Rank of the composition x * y where y is given as a permutation."""
    x = perms[x_rank]
    z = np.empty(n, np.int64)
    for i in range(n):
        z[i] = x[y_perm[i]]
    return _perm_rank(z, n)


@nb.njit(cache=True, nogil=True)
def _canonical_orbit(idx, syms, h_cp, h_ud, h_mid, corner_conj, ud_conj, mid_conj,
                     perms8, perms4, cpar, upar, mpar, out_rep, out_size):
    """Minimum index and orbit size of each h under h -> conj(h, s) * h_s."""
    ns = syms.shape[0]
    images = np.empty(ns, np.int64)
    for i in range(idx.shape[0]):
        g = idx[i] // 12
        half = idx[i] % 12
        u = g % 40320
        c = g // 40320
        need = cpar[c] ^ upar[u]
        m = 2 * half
        if mpar[m] != need:
            m += 1
        best = idx[i]
        for k in range(ns):
            s = syms[k]
            c2 = _compose_rank(corner_conj[c, s], h_cp[k], perms8, 8)
            u2 = _compose_rank(ud_conj[u, s], h_ud[k], perms8, 8)
            m2 = _compose_rank(mid_conj[m, s], h_mid[k], perms4, 4)
            v = (c2 * 40320 + u2) * 12 + (m2 >> 1)
            images[k] = v
            if v < best:
                best = v
        images.sort()
        size = 1
        for k in range(1, ns):
            if images[k] != images[k - 1]:
                size += 1
        out_rep[i] = best
        out_size[i] = size


class OrbitReducer:
    """Symmetry of a coset Ha: the U/D-axis symmetries s with conj(Ha, s) = Ha.

    Such an s maps x = h a to conj(x, s) = conj(h, s) h_s a with
    h_s = conj(a, s) a^-1 in H, so covered sets are unions of orbits.
    """

    def __init__(self, tables: CoordTables, a: CubieState):
        self.tables = tables
        ca = relabel(a)
        syms, hc, hu, hm = [], [], [], []
        a_inv = invert(a)
        for s in range(16):
            b = conjugate(a, s)
            if relabel(b) != ca:
                continue
            h = b * a_inv
            syms.append(s)
            hc.append(h.cp)
            hu.append([_UD_RANK[h.ep[j]] for j in _UD_SLOTS])
            hm.append([h.ep[j] - 4 for j in range(4, 8)])
        self.syms = np.array(syms, np.int64)
        self.h_cp = np.array(hc, np.int64)
        self.h_ud = np.array(hu, np.int64)
        self.h_mid = np.array(hm, np.int64)
        self.perms8 = all_perms(8).astype(np.int64)
        self.perms4 = all_perms(4).astype(np.int64)

    @property
    def order(self) -> int:
        return len(self.syms)

    def canonical(self, idx: np.ndarray):
        idx = np.asarray(idx, np.int64)
        rep = np.empty(len(idx), np.int64)
        size = np.empty(len(idx), np.int64)
        t = self.tables
        _canonical_orbit(idx, self.syms, self.h_cp, self.h_ud, self.h_mid,
                         t.corner_conj.astype(np.int64), t.ud_conj.astype(np.int64),
                         t.mid_conj.astype(np.int64), self.perms8, self.perms4,
                         t.corner_parity, t.ud_parity, t.mid_parity, rep, size)
        return rep, size

    def reduce(self, idx: np.ndarray):
        """Sorted unique orbit representatives and their orbit sizes."""
        rep, size = self.canonical(idx)
        rep, first = np.unique(rep, return_index=True)
        return rep, size[first]

    def expand(self, reps: np.ndarray) -> np.ndarray:
        """Every member of the given orbits (sorted unique)."""
        t = self.tables
        out = [np.asarray(reps, np.int64)]
        c, u, m = hset.unpack_many(t, reps)
        for k, s in enumerate(self.syms):
            cc = t.corner_conj[c, s].astype(np.int64)
            uu = t.ud_conj[u, s].astype(np.int64)
            mm = t.mid_conj[m, s].astype(np.int64)
            c2 = _compose_many(self.perms8, cc, self.h_cp[k])
            u2 = _compose_many(self.perms8, uu, self.h_ud[k])
            m2 = _compose_many(self.perms4, mm, self.h_mid[k])
            out.append(hset.pack_many(c2, u2, m2))
        return np.unique(np.concatenate(out))


def _compose_many(perms, x_ranks, y_perm):
    from .coords import ranks_of
    z = perms[x_ranks][:, y_perm]
    return ranks_of(z)


# ---------------------------------------------------------------------------
# full backend: dense bitmaps, 12 bits per (corner, ud) group
# ---------------------------------------------------------------------------

def mid_group_tables(mid_left: np.ndarray, mid_parity: np.ndarray) -> np.ndarray:
    """T[k, p, mask]: image of a 12-bit mid group under the k-th left A-move.

    p is the parity the mid permutation must have (corner parity xor ud parity);
    bit j of a group stands for whichever of mid ranks 2j, 2j+1 has parity p.
    """
    n_a = mid_left.shape[0]
    T = np.zeros((n_a, 2, 4096), dtype=np.uint16)
    for k in range(n_a):
        for p in range(2):
            bit_img = np.empty(12, np.int64)
            for j in range(12):
                mid = 2 * j if mid_parity[2 * j] == p else 2 * j + 1
                bit_img[j] = int(mid_left[k, mid]) >> 1
            masks = np.arange(4096)
            acc = np.zeros(4096, np.int64)
            for j in range(12):
                acc |= ((masks >> j) & 1) << bit_img[j]
            T[k, p] = acc
    return T


@nb.njit(cache=True, nogil=True)
def _get_group(bits, g):
    pos = g * 12
    b = pos >> 3
    w = np.int64(bits[b]) | (np.int64(bits[b + 1]) << 8)
    return (w >> (pos & 7)) & 0xFFF


@nb.njit(cache=True, nogil=True)
def _or_group(bits, g, mask):
    pos = g * 12
    b = pos >> 3
    sh = pos & 7
    v = mask << sh
    bits[b] |= np.uint8(v & 0xFF)
    bits[b + 1] |= np.uint8((v >> 8) & 0xFF)


@nb.njit(cache=True, nogil=True)
def dense_prepass(src, dst, n_ud, corner_left, ud_left, T, corner_parity, ud_parity):
    """dst <- src | (m * src for every left A-move m), scanning corner-major."""
    dst[:] = src
    n_groups = (src.shape[0] * 8) // 12
    for g in range(n_groups):
        mask = _get_group(src, g)
        if mask == 0:
            continue
        c = g // n_ud
        u = g % n_ud
        p = corner_parity[c] ^ ud_parity[u]
        for k in range(corner_left.shape[0]):
            g2 = corner_left[k, c] * n_ud + ud_left[k, u]
            _or_group(dst, g2, np.int64(T[k, p, mask]))


@nb.njit(cache=True, nogil=True)
def dense_insert(bits, idx):
    for i in range(idx.shape[0]):
        x = idx[i]
        bits[x >> 3] |= np.uint8(1 << (x & 7))


@nb.njit(cache=True, nogil=True)
def dense_count(bits):
    total = 0
    for i in range(bits.shape[0]):
        v = bits[i]
        while v:
            v &= v - 1
            total += 1
    return total


@nb.njit(cache=True, nogil=True)
def dense_missing(bits, n_bits, limit):
    out = np.empty(limit, np.int64)
    n = 0
    for x in range(n_bits):
        if not (bits[x >> 3] >> (x & 7)) & 1:
            if n < limit:
                out[n] = x
            n += 1
    return out[:min(n, limit)]


def dense_bytes(n_groups: int) -> int:
    # one spare byte so a 16-bit group read never runs off the end
    return (n_groups * 12 + 7) // 8 + 1


def dense_indices(bits: np.ndarray, n_bits: int) -> np.ndarray:
    flat = np.unpackbits(bits, bitorder="little")[:n_bits]
    return np.flatnonzero(flat).astype(np.int64)


@nb.njit(cache=True, nogil=True)
def _sparse_missing(f, n_bits, limit):
    """First ``limit`` indices below n_bits absent from sorted array f."""
    out = np.empty(limit, np.int64)
    n = 0
    j = 0
    x = 0
    while x < n_bits and n < limit:
        if j < f.shape[0] and f[j] == x:
            j += 1
        else:
            out[n] = x
            n += 1
        x += 1
    return out[:n]


# ---------------------------------------------------------------------------
# Algorithm: set solver
# ---------------------------------------------------------------------------

def memory_required(mode: str) -> int:
    if mode == "full":
        return 2 * BITMAP_BYTES + (256 << 20)
    return 0


def estimated_hash_bytes(depth_limit: int | None) -> int:
    if depth_limit is None:
        return 16 * 12 * H_SIZE
    covered = min(H_SIZE, sum(8 ** k for k in range(depth_limit + 1)))
    return 16 * 12 * covered


def check_job(job: CosetJob) -> None:
    """Raise before any computation if the job cannot run."""
    c = relabel(job.position)
    if c.slice != 0:
        raise RepresentativeError(
            f"representative {job.representative} moves E-slice edges out of the E slice")
    if job.memory_mode == "full":
        need = memory_required("full")
        if job.memory_budget < need:
            raise ResourceError(f"full mode needs {need / 2**30:.1f} GiB; budget is "
                                f"{job.memory_budget / 2**30:.1f} GiB")
    else:
        need = estimated_hash_bytes(job.depth_limit)
        if need > job.memory_budget:
            raise ResourceError(f"{job.memory_mode} mode to depth {job.depth_limit} may need "
                                f"{need / 2**30:.1f} GiB; budget is "
                                f"{job.memory_budget / 2**30:.1f} GiB")


def witness_sequence(tables: CoordTables, index: int, a: MoveSequence) -> MoveSequence:
    """A move sequence producing the position h a for the packed index of h."""
    from .twophase import get_solver
    h = hset.unpack_index(tables, int(index))
    t = get_solver().phase2_solve(h, 18)
    return t.inverse() + MoveSequence(a)


def solve_set(job: CosetJob, cache_dir=None, tables: CoordTables | None = None) -> CosetReport:
    check_job(job)
    tables = tables or get_tables(cache_dir)
    a = job.position
    searcher = _Searcher(tables, cache_dir)
    report = CosetReport(job.representative)
    m = job.m if job.m is not None else 10 ** 9
    mode = job.memory_mode
    reducer = OrbitReducer(tables, a) if mode == "symmetric" else None
    if mode == "full":
        nbytes = dense_bytes(N_CORNER * N_UDEDGE)
        f = np.zeros(nbytes, np.uint8)
        g = np.zeros(nbytes, np.uint8)
        T = mid_group_tables(tables.mid_left, tables.mid_parity)
        corner_left = tables.corner_left.astype(np.int64)
        ud_left = tables.ud_left.astype(np.int64)
    else:
        f = np.empty(0, np.int64)
        sizes = np.empty(0, np.int64)
    covered = 0
    d = 0
    logged = False
    while True:
        # line 4: prepass
        if d > 0:
            if mode == "full":
                dense_prepass(f, g, N_UDEDGE, corner_left, ud_left, T,
                              tables.corner_parity, tables.ud_parity)
                f, g = g, f
            elif mode == "hash":
                f = prepass_sparse(tables, f)
            else:
                f, sizes = _merge_orbits(reducer, f, sizes, prepass_sparse(tables, f))
        now = _count(mode, f, sizes)
        if now == H_SIZE:
            report.per_depth_new_counts.append((d, now - covered))
            covered = now
            break
        if not logged and H_SIZE - now < job.log_threshold:
            report.residual_log = _residual_lines(tables, job, f, mode, reducer)
            logged = True
        # lines 9-11: search
        nodes = 0
        if d <= m:
            idx, nodes = searcher.search(a, d, job.reenter_h)
            if mode == "full":
                dense_insert(f, idx)
            elif mode == "hash":
                f = np.union1d(f, idx)
            else:
                f, sizes = _merge_orbits(reducer, f, sizes, idx)
        report.nodes_per_depth.append((d, nodes))
        now = _count(mode, f, sizes)
        report.per_depth_new_counts.append((d, now - covered))
        log.info("coset %s depth %d: +%d (%d covered, %d nodes)",
                 job.representative or "ε", d, now - covered, now, nodes)
        covered = now
        if mode != "full" and 8 * 12 * 2 * len(f) > job.memory_budget:
            raise ResourceError("covered set outgrew the memory budget")
        if now == H_SIZE:
            break
        if job.depth_limit is not None and d >= job.depth_limit:
            report.final_bound = None
            report.exact = False
            _attach(report, mode, f, reducer)
            _write_log(job, report)
            return report
        d += 1
    report.final_bound = d
    report.exact = m >= d
    _attach(report, mode, f, reducer)
    _write_log(job, report)
    return report


def _count(mode, f, sizes) -> int:
    if mode == "full":
        return int(dense_count(f))
    if mode == "symmetric":
        return int(sizes.sum())
    return len(f)


def _merge_orbits(reducer: OrbitReducer, f, sizes, new_idx):
    rep, size = reducer.reduce(new_idx)
    allrep = np.concatenate([f, rep])
    allsize = np.concatenate([sizes, size])
    allrep, first = np.unique(allrep, return_index=True)
    return allrep, allsize[first]


def _attach(report, mode, f, reducer):
    if mode == "hash":
        report.covered = f
    elif mode == "symmetric":
        report.covered = reducer.expand(f) if len(f) < 50_000_000 else None


def _residual_lines(tables, job, f, mode, reducer) -> list[str]:
    limit = job.log_threshold
    if mode == "full":
        missing = dense_missing(f, H_SIZE, limit)
    else:
        full = reducer.expand(f) if mode == "symmetric" else f
        missing = _sparse_missing(full, H_SIZE, limit)
    rep = str(job.representative) or "ε"
    return [f"{rep}\t{int(x)}\t{witness_sequence(tables, x, job.representative)}"
            for x in missing]


def _write_log(job: CosetJob, report: CosetReport) -> None:
    if job.residual_log is None or not report.residual_log:
        return
    with open(job.residual_log, "a", encoding="utf-8") as fh:
        for line in report.residual_log:
            fh.write(line + "\n")


def parse_residual_line(line: str):
    rep, index, witness = line.rstrip("\n").split("\t")
    return (MoveSequence.parse(rep), int(index), MoveSequence.parse(witness))


# ---------------------------------------------------------------------------
# independent oracle: breadth-first search over whole cube positions
# ---------------------------------------------------------------------------

def _projection_bounds():
    """Exact move distances to the solved value of three orientation/slice projections."""
    cp_moves = [np.asarray(MOVE_CP[m]) for m in range(N_MOVES)]
    co_moves = [np.asarray(MOVE_CO[m]) for m in range(N_MOVES)]
    ep_moves = [np.asarray(MOVE_EP[m]) for m in range(N_MOVES)]
    eo_moves = [np.asarray(MOVE_EO[m]) for m in range(N_MOVES)]

    def bfs(start, step):
        dist = {start: 0}
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                for m in range(N_MOVES):
                    y = step(x, m)
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        nxt.append(y)
            frontier = nxt
        return dist

    def co_step(x, m):
        return tuple(int((x[cp_moves[m][i]] + co_moves[m][i]) % 3) for i in range(8))

    def eo_step(x, m):
        return tuple(int((x[ep_moves[m][i]] + eo_moves[m][i]) % 2) for i in range(12))

    def occ_step(x, m):
        return tuple(x[ep_moves[m][i]] for i in range(12))

    # distances measured to the solved value equal distances from it, since
    # every move's inverse is also a move
    twist = bfs((0,) * 8, co_step)
    flip = bfs((0,) * 12, eo_step)
    occ = bfs(tuple(1 if 4 <= i < 8 else 0 for i in range(12)), occ_step)
    return twist, flip, occ


_PROJ = None


def oracle_solve_set(a, depth_limit: int, memory_budget: int = 2 << 30) -> CosetReport:
    """Plain breadth-first search from a over whole positions.

    A position y = a w with y in H certifies x = w^-1 in Ha at distance <= |w|;
    x is recorded by the packed index of y^-1 = x a^-1.
    """
    global _PROJ
    if _PROJ is None:
        _PROJ = _projection_bounds()
    twist, flip, occ = _PROJ
    rep = MoveSequence.parse(a) if isinstance(a, str) else MoveSequence(a)
    start = apply_sequence(SOLVED, rep)
    key = _state_key
    seen = {key(start)}
    frontier = [start]
    report = CosetReport(rep)
    covered = []

    def lower_bound(s: CubieState) -> int:
        return max(twist[s.co], flip[s.eo], occ[tuple(1 if 4 <= e < 8 else 0 for e in s.ep)])

    for d in range(depth_limit + 1):
        found = []
        for s in frontier:
            if lower_bound(s) == 0:
                found.append(hset.pack_coord(encode_phase2(invert(s))))
        covered.extend(found)
        report.per_depth_new_counts.append((d, len(set(found))))
        if d == depth_limit:
            break
        nxt = []
        for s in frontier:
            for mv in range(N_MOVES):
                t = s * MOVE_STATES[mv]
                if lower_bound(t) > depth_limit - d - 1:
                    continue
                k = key(t)
                if k not in seen:
                    seen.add(k)
                    nxt.append(t)
        if 200 * len(seen) > memory_budget:
            raise ResourceError("oracle hash set exceeds the memory budget")
        frontier = nxt
    report.covered = np.unique(np.array(covered, np.int64))
    return report


def _state_key(s: CubieState):
    return (s.cp, s.co, s.ep, s.eo)
