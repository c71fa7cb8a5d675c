"""Two-phase solving: near-optimal search with one, three or six axes, plus an
optimal IDA* solver for single positions.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numba as nb
import numpy as np

from .coords import A_INDEX, CoordTables, relabel
from .cube import (AXIS_SYMS, MOVE_CP, MOVE_EP, SOLVED, SYM_INV, SYM_MOVE, CubieState,
                   MoveSequence, apply_sequence, conjugate, invert, is_valid)
from .pruning import (Phase1, Phase2BoundTables, d2bound, get_phase1, get_phase2, phase1_mod3,
                      step_distance)

MAX_MILESTONES = 64
_UD_SLOTS = np.array([0, 1, 2, 3, 8, 9, 10, 11], dtype=np.int64)
_UD_RANK = np.array([0, 1, 2, 3, -1, -1, -1, -1, 4, 5, 6, 7], dtype=np.int64)
_A_FACE = (A_INDEX // 3).astype(np.int64)


@dataclass
class SolveOptions:
    mode: str = "six"            # single | triple | six
    target_length: int = 0       # stop as soon as a solution this short is known
    max_phase1_depth: int = 20
    node_budget: int = 0         # 0 = unlimited
    time_budget: float = 0.0     # seconds, 0 = unlimited
    workers: int = 1             # >1 runs the axis variants concurrently
    prefix_rule: bool = True     # skip phase-1 solutions with a phase-1 prefix

    def __post_init__(self):
        if self.mode not in ("single", "triple", "six"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.target_length < 0:
            raise ValueError("target_length must be >= 0")


@dataclass
class SolveResult:
    solution: MoveSequence
    nodes: int
    improved_at: list = field(default_factory=list)   # (length, nodes) milestones
    exhausted: bool = False

    @property
    def length(self) -> int:
        return len(self.solution)

    def line(self) -> str:
        return f"{self.length}\t{self.solution}\t{self.nodes}"


class SolverError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# numba kernels
# ---------------------------------------------------------------------------

@nb.njit(cache=True, nogil=True)
def _rank(perm, n):
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
def _phase2_coords(cp0, ep0, moves, n, move_cp, move_ep, ud_slots, ud_rank):
    cp = cp0.copy()
    ep = ep0.copy()
    tmp8 = np.empty(8, np.int64)
    tmp12 = np.empty(12, np.int64)
    for i in range(n):
        m = moves[i]
        for j in range(8):
            tmp8[j] = cp[move_cp[m, j]]
        for j in range(12):
            tmp12[j] = ep[move_ep[m, j]]
        cp[:] = tmp8
        ep[:] = tmp12
    ud = np.empty(8, np.int64)
    for j in range(8):
        ud[j] = ud_rank[ep[ud_slots[j]]]
    mid = np.empty(4, np.int64)
    for j in range(4):
        mid[j] = ep[4 + j] - 4
    return _rank(cp, 8), _rank(ud, 8), _rank(mid, 4)


@nb.njit(cache=True, nogil=True)
def _phase2_search(corner, ud, mid, max_len, last_face, p2t, a_index, a_face, out, nodes):
    """Shortest A-move solution of length <= max_len; returns length or -1."""
    corner_move, ud_move, mid_move, corner_mid, ud_mid = p2t
    h = d2bound(corner_mid, ud_mid, corner, ud, mid)
    if h > max_len:
        return -1
    cs = np.empty(max_len + 1, np.int64)
    us = np.empty(max_len + 1, np.int64)
    ms = np.empty(max_len + 1, np.int64)
    nxt = np.empty(max_len + 1, np.int64)
    for length in range(h, max_len + 1):
        if length == 0:
            return 0
        level = 0
        cs[0] = corner
        us[0] = ud
        ms[0] = mid
        nxt[0] = 0
        while level >= 0:
            k = nxt[level]
            if k >= 10:
                level -= 1
                if level >= 0:
                    nxt[level] += 1
                continue
            f = a_face[k]
            pf = last_face if level == 0 else a_face[out[level - 1]]
            if pf >= 0 and (f == pf or f + 3 == pf):
                nxt[level] += 1
                continue
            c2 = corner_move[cs[level], k]
            u2 = ud_move[us[level], k]
            m2 = mid_move[ms[level], k]
            togo = length - level - 1
            nodes[0] += 1
            if d2bound(corner_mid, ud_mid, c2, u2, m2) > togo:
                nxt[level] += 1
                continue
            out[level] = k
            if togo == 0:
                return length
            level += 1
            cs[level] = c2
            us[level] = u2
            ms[level] = m2
            nxt[level] = 0
    return -1


@nb.njit(cache=True, nogil=True)
def _phase1_depth(depth, tw0, fl0, sl0, dist0, cp0, ep0, p1t, p2t, move_cp, move_ep,
                  ud_slots, ud_rank, a_index, a_face, prefix_rule, best, target, sol_out,
                  milestones, n_milestones, nodes, stop, node_budget, leaf_counts):
    """All phase-1 solutions of exactly ``depth`` moves; improves ``best`` in place.

    Returns 1 if the search stopped early (target reached, budget or stop flag).
    """
    (data, twist_move, flip_move, slice_move, fs_class, fs_sym, twist_conj,
     class_offset, class_slot, orbit_rank) = p1t
    tw = np.empty(depth + 1, np.int64)
    fl = np.empty(depth + 1, np.int64)
    sl = np.empty(depth + 1, np.int64)
    dd = np.empty(depth + 1, np.int64)
    nxt = np.empty(depth + 1, np.int64)
    path = np.empty(depth + 1, np.int64)
    p2 = np.empty(40, np.int64)
    if depth == 0:
        if dist0 == 0:
            c, u, m = _phase2_coords(cp0, ep0, path, 0, move_cp, move_ep, ud_slots, ud_rank)
            L = _phase2_search(c, u, m, best[0] - 1, -1, p2t, a_index, a_face, p2, nodes)
            if L >= 0:
                best[0] = L
                for i in range(L):
                    sol_out[i] = a_index[p2[i]]
                sol_out[39] = L
                if n_milestones[0] < milestones.shape[0]:
                    milestones[n_milestones[0], 0] = L
                    milestones[n_milestones[0], 1] = nodes[0]
                    n_milestones[0] += 1
                if L <= target:
                    return 1
        return 0
    tw[0] = tw0
    fl[0] = fl0
    sl[0] = sl0
    dd[0] = dist0
    nxt[0] = 0
    level = 0
    while level >= 0:
        if stop[0] != 0 or (node_budget > 0 and nodes[0] >= node_budget):
            return 1
        if depth >= best[0]:
            return 0
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
        if d2 > togo:
            nxt[level] += 1
            continue
        path[level] = m
        if togo == 0:
            # d2 == 0: a phase-1 solution
            if m % 3 != 1 and f != 0 and f != 3:
                leaf_counts[0] += 1
            leaf_counts[1] += 1
            c, u, mm = _phase2_coords(cp0, ep0, path, depth, move_cp, move_ep, ud_slots, ud_rank)
            room = best[0] - depth - 1
            if room >= 0 and d2bound(p2t[3], p2t[4], c, u, mm) <= room:
                L = _phase2_search(c, u, mm, room, f, p2t, a_index, a_face, p2, nodes)
                if L >= 0 and depth + L < best[0]:
                    best[0] = depth + L
                    for i in range(depth):
                        sol_out[i] = path[i]
                    for i in range(L):
                        sol_out[depth + i] = a_index[p2[i]]
                    sol_out[39] = depth + L
                    if n_milestones[0] < milestones.shape[0]:
                        milestones[n_milestones[0], 0] = depth + L
                        milestones[n_milestones[0], 1] = nodes[0]
                        n_milestones[0] += 1
                    if depth + L <= target:
                        return 1
            nxt[level] += 1
            continue
        if prefix_rule and d2 == 0:
            nxt[level] += 1
            continue
        level += 1
        tw[level] = t2
        fl[level] = f2
        sl[level] = s2
        dd[level] = d2
        nxt[level] = 0
    return 0


@nb.njit(cache=True, nogil=True)
def _optimal_search(bound, coords0, dists0, axis_move, p1t, cp0, co0, ep0, eo0,
                    move_cp, move_co, move_ep, move_eo, out, nodes, stop, node_budget):
    """Depth-limited DFS over all 18 moves with the three-axis phase-1 bound.

    Returns 1 if a solution of exactly ``bound`` moves was written to ``out``,
    0 if none exists, -1 if interrupted.
    """
    (data, twist_move, flip_move, slice_move, fs_class, fs_sym, twist_conj,
     class_offset, class_slot, orbit_rank) = p1t
    n = bound
    co = np.empty((n + 1, 3, 3), np.int64)
    ds = np.empty((n + 1, 3), np.int64)
    nxt = np.empty(n + 1, np.int64)
    path = np.empty(n + 1, np.int64)
    for a in range(3):
        for k in range(3):
            co[0, a, k] = coords0[a, k]
        ds[0, a] = dists0[a]
    h = max(dists0[0], max(dists0[1], dists0[2]))
    if h > bound:
        return 0
    if bound == 0:
        return 1 if _is_solved(cp0, co0, ep0, eo0, path, 0, move_cp, move_co, move_ep, move_eo) else 0
    level = 0
    nxt[0] = 0
    while level >= 0:
        if stop[0] != 0 or (node_budget > 0 and nodes[0] >= node_budget):
            return -1
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
        togo = bound - level - 1
        ok = True
        hmax = 0
        for a in range(3):
            ma = axis_move[a, m]
            t2 = twist_move[co[level, a, 0], ma]
            f2 = flip_move[co[level, a, 1], ma]
            s2 = slice_move[co[level, a, 2], ma]
            v = phase1_mod3(data, fs_class, fs_sym, twist_conj, class_offset, class_slot,
                            orbit_rank, t2, f2, s2)
            d2 = step_distance(ds[level, a], v)
            if d2 > togo:
                ok = False
                break
            co[level + 1, a, 0] = t2
            co[level + 1, a, 1] = f2
            co[level + 1, a, 2] = s2
            ds[level + 1, a] = d2
            if d2 > hmax:
                hmax = d2
        nodes[0] += 1
        if not ok:
            nxt[level] += 1
            continue
        path[level] = m
        if togo == 0:
            if _is_solved(cp0, co0, ep0, eo0, path, bound, move_cp, move_co, move_ep, move_eo):
                for i in range(bound):
                    out[i] = path[i]
                return 1
            nxt[level] += 1
            continue
        level += 1
        nxt[level] = 0
    return 0


@nb.njit(cache=True, nogil=True)
def _is_solved(cp0, co0, ep0, eo0, path, n, move_cp, move_co, move_ep, move_eo):
    cp = cp0.copy()
    co = co0.copy()
    ep = ep0.copy()
    eo = eo0.copy()
    t1 = np.empty(8, np.int64)
    t2 = np.empty(8, np.int64)
    e1 = np.empty(12, np.int64)
    e2 = np.empty(12, np.int64)
    for i in range(n):
        m = path[i]
        for j in range(8):
            t1[j] = cp[move_cp[m, j]]
            t2[j] = (co[move_cp[m, j]] + move_co[m, j]) % 3
        for j in range(12):
            e1[j] = ep[move_ep[m, j]]
            e2[j] = (eo[move_ep[m, j]] + move_eo[m, j]) % 2
        cp[:] = t1
        co[:] = t2
        ep[:] = e1
        eo[:] = e2
    for j in range(8):
        if cp[j] != j or co[j] != 0:
            return False
    for j in range(12):
        if ep[j] != j or eo[j] != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# python front end
# ---------------------------------------------------------------------------

class Solver:
    """Holds the tables; one instance can serve many solve calls."""

    def __init__(self, phase1: Phase1 | None = None, phase2: Phase2BoundTables | None = None,
                 cache_dir=None):
        self.phase1 = phase1 or get_phase1(cache_dir)
        self.phase2 = phase2 or get_phase2(cache_dir)
        t: CoordTables = self.phase1.tables
        self.tables = t
        self.p1t = (self.phase1.data, t.twist_move, t.flip_move, t.slice_move, t.fs_class,
                    t.fs_sym, t.twist_conj, t.class_offset, t.class_slot, t.orbit_rank)
        self.p2t = (np.ascontiguousarray(t.corner_move[:, A_INDEX]), t.ud_move, t.mid_move,
                    self.phase2.corner_mid, self.phase2.ud_mid)
        self.move_cp = MOVE_CP.astype(np.int64)
        self.move_ep = MOVE_EP.astype(np.int64)
        from .cube import MOVE_CO, MOVE_EO
        self.move_co = MOVE_CO.astype(np.int64)
        self.move_eo = MOVE_EO.astype(np.int64)

    # -- phase 2 ---------------------------------------------------------------

    def phase2_solve(self, c, max_len: int = 18) -> MoveSequence | None:
        """Shortest A-move sequence (length <= max_len) solving phase-2 coordinate c."""
        corner, ud, mid = (int(v) for v in c)
        out = np.empty(max(max_len, 1) + 1, np.int64)
        nodes = np.zeros(1, np.int64)
        L = _phase2_search(corner, ud, mid, max_len, -1, self.p2t, A_INDEX, _A_FACE, out, nodes)
        if L < 0:
            return None
        return MoveSequence(int(A_INDEX[k]) for k in out[:L])

    def d2bound(self, c) -> int:
        return self.phase2.bound(c)

    # -- phase 1 enumeration (for tests and diagnostics) --------------------------

    def phase1_leaf_counts(self, p: CubieState, depth: int, prefix_rule: bool = False):
        """(quarter-turn-ending leaves, all leaves) of the phase-1 tree at ``depth``."""
        c = relabel(p)
        dist0 = self.phase1.distance(c)
        counts = np.zeros(2, np.int64)
        _phase1_depth_count(self, depth, c, dist0, prefix_rule, counts)
        return int(counts[0]), int(counts[1])

    def _run_depth(self, depth, c, dist0, p, best, target, prefix_rule, sol=None,
                   milestones=None, n_milestones=None, nodes=None, stop=None,
                   node_budget=0, counts=None):
        sol = sol if sol is not None else np.zeros(40, np.int64)
        milestones = milestones if milestones is not None else np.zeros((MAX_MILESTONES, 2), np.int64)
        n_milestones = n_milestones if n_milestones is not None else np.zeros(1, np.int64)
        nodes = nodes if nodes is not None else np.zeros(1, np.int64)
        stop = stop if stop is not None else np.zeros(1, np.int64)
        counts = counts if counts is not None else np.zeros(2, np.int64)
        cp0 = np.array(p.cp, np.int64)
        ep0 = np.array(p.ep, np.int64)
        return _phase1_depth(depth, c[0], c[1], c[2], dist0, cp0, ep0, self.p1t, self.p2t,
                             self.move_cp, self.move_ep, _UD_SLOTS, _UD_RANK, A_INDEX, _A_FACE,
                             prefix_rule, best, target, sol, milestones, n_milestones, nodes,
                             stop, node_budget, counts)

    # -- Algorithm 1 --------------------------------------------------------------

    def solve(self, p: CubieState, opts: SolveOptions | None = None) -> SolveResult:
        opts = opts or SolveOptions()
        if not is_valid(p):
            raise ValueError("invalid cube position")
        if p == SOLVED:
            return SolveResult(MoveSequence(), 0, [(0, 0)], True)
        axes = AXIS_SYMS[:1] if opts.mode == "single" else AXIS_SYMS
        inverses = (False, True) if opts.mode == "six" else (False,)
        variants = []
        for inv in inverses:
            base = invert(p) if inv else p
            for s in axes:
                q = conjugate(base, s)
                c = relabel(q)
                variants.append(dict(sym=s, inv=inv, state=q, coord=c,
                                     dist=self.phase1.distance(c),
                                     sol=np.zeros(40, np.int64),
                                     milestones=np.zeros((MAX_MILESTONES, 2), np.int64),
                                     n_milestones=np.zeros(1, np.int64)))
        best = np.array([1 << 20], np.int64)
        nodes = np.zeros(1, np.int64)
        stop = np.zeros(1, np.int64)
        timer = None
        if opts.time_budget > 0:
            timer = threading.Timer(opts.time_budget, stop.fill, args=(1,))
            timer.daemon = True
            timer.start()
        pool = ThreadPoolExecutor(opts.workers) if opts.workers > 1 else None
        exhausted = False
        try:
            for depth in range(opts.max_phase1_depth + 1):
                if depth >= best[0]:
                    exhausted = True
                    break
                todo = [v for v in variants if v["dist"] <= depth and
                        not (opts.prefix_rule and v["dist"] == 0 and depth > 0)]

                def run(v, depth=depth):
                    return self._run_depth(depth, v["coord"], v["dist"], v["state"], best,
                                           opts.target_length, opts.prefix_rule, v["sol"],
                                           v["milestones"], v["n_milestones"], nodes, stop,
                                           opts.node_budget)

                if pool is None:
                    stopped = False
                    for v in todo:
                        if run(v):
                            stopped = True
                            break
                else:
                    stopped = any(list(pool.map(run, todo)))
                if stopped:
                    break
            else:
                exhausted = best[0] <= opts.max_phase1_depth + 1
        finally:
            if timer is not None:
                timer.cancel()
            if pool is not None:
                pool.shutdown()
        return self._collect(p, variants, int(nodes[0]), exhausted)

    def _collect(self, p, variants, nodes, exhausted) -> SolveResult:
        found = []
        milestones = []
        for v in variants:
            n = int(v["sol"][39])
            for i in range(int(v["n_milestones"][0])):
                milestones.append((int(v["milestones"][i, 0]), int(v["milestones"][i, 1])))
            if v["n_milestones"][0] == 0:
                continue
            seq = MoveSequence(int(m) for m in v["sol"][:n])
            seq = conjugate_back(seq, v["sym"])
            if v["inv"]:
                seq = seq.inverse()
            found.append(seq)
        if not found:
            raise SolverError("no solution found within the budget")
        best = min(found, key=len)
        if apply_sequence(p, best) != SOLVED:
            raise SolverError(f"solution {best} does not solve the position")
        milestones.sort(key=lambda x: x[1])
        kept = []
        for length, at in milestones:
            if not kept or length < kept[-1][0]:
                kept.append((length, at))
        return SolveResult(best, nodes, kept, exhausted)

    # -- optimal ------------------------------------------------------------------

    def solve_optimal(self, p: CubieState, node_budget: int = 0, time_budget: float = 0.0,
                      max_length: int = 20) -> SolveResult:
        if not is_valid(p):
            raise ValueError("invalid cube position")
        coords = np.empty((3, 3), np.int64)
        dists = np.empty(3, np.int64)
        axis_move = np.empty((3, 18), np.int64)
        for a, s in enumerate(AXIS_SYMS):
            c = relabel(conjugate(p, s))
            coords[a] = c
            dists[a] = self.phase1.distance(c)
            axis_move[a] = SYM_MOVE[s]
        nodes = np.zeros(1, np.int64)
        stop = np.zeros(1, np.int64)
        timer = None
        if time_budget > 0:
            timer = threading.Timer(time_budget, stop.fill, args=(1,))
            timer.daemon = True
            timer.start()
        cp0, co0 = np.array(p.cp, np.int64), np.array(p.co, np.int64)
        ep0, eo0 = np.array(p.ep, np.int64), np.array(p.eo, np.int64)
        out = np.zeros(max_length + 1, np.int64)
        try:
            for bound in range(int(dists.max()), max_length + 1):
                r = _optimal_search(bound, coords, dists, axis_move, self.p1t, cp0, co0, ep0,
                                    eo0, self.move_cp, self.move_co, self.move_ep,
                                    self.move_eo, out, nodes, stop, node_budget)
                if r == 1:
                    seq = MoveSequence(int(m) for m in out[:bound])
                    if apply_sequence(p, seq) != SOLVED:
                        raise SolverError("optimal search produced a non-solution")
                    return SolveResult(seq, int(nodes[0]), [(bound, int(nodes[0]))], True)
                if r < 0:
                    break
        finally:
            if timer is not None:
                timer.cancel()
        # fall back to the best two-phase answer, flagged as not proven
        res = self.solve(p, SolveOptions(mode="six", target_length=0, node_budget=node_budget))
        res.exhausted = False
        return res


def conjugate_back(seq: MoveSequence, sym: int) -> MoveSequence:
    inv = int(SYM_INV[sym])
    return MoveSequence(int(SYM_MOVE[inv, int(m)]) for m in seq)


@nb.njit(cache=True, nogil=True)
def _count_leaves(depth, tw0, fl0, sl0, dist0, p1t, prefix_rule, counts):
    (data, twist_move, flip_move, slice_move, fs_class, fs_sym, twist_conj,
     class_offset, class_slot, orbit_rank) = p1t
    if depth == 0:
        if dist0 == 0:
            counts[1] += 1
        return 0
    tw = np.empty(depth + 1, np.int64)
    fl = np.empty(depth + 1, np.int64)
    sl = np.empty(depth + 1, np.int64)
    dd = np.empty(depth + 1, np.int64)
    nxt = np.empty(depth + 1, np.int64)
    path = np.empty(depth + 1, np.int64)
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
        if d2 > togo:
            nxt[level] += 1
            continue
        path[level] = m
        if togo == 0:
            if m % 3 != 1 and f != 0 and f != 3:
                counts[0] += 1
            counts[1] += 1
            nxt[level] += 1
            continue
        if prefix_rule and d2 == 0:
            nxt[level] += 1
            continue
        level += 1
        tw[level] = t2
        fl[level] = f2
        sl[level] = s2
        dd[level] = d2
        nxt[level] = 0
    return 0


def _phase1_depth_count(solver, depth, c, dist0, prefix_rule, counts):
    if prefix_rule and dist0 == 0 and depth > 0:
        return 0
    return _count_leaves(depth, c[0], c[1], c[2], dist0, solver.p1t, prefix_rule, counts)


_SOLVERS: dict = {}


def get_solver(cache_dir=None) -> Solver:
    key = str(cache_dir)
    if key not in _SOLVERS:
        _SOLVERS[key] = Solver(cache_dir=cache_dir)
    return _SOLVERS[key]


def solve(p: CubieState, opts: SolveOptions | None = None, cache_dir=None) -> SolveResult:
    return get_solver(cache_dir).solve(p, opts)


def solve_optimal(p: CubieState, cache_dir=None, **kw) -> SolveResult:
    return get_solver(cache_dir).solve_optimal(p, **kw)


def phase2_solve(c, max_len: int = 18, cache_dir=None) -> MoveSequence | None:
    return get_solver(cache_dir).phase2_solve(c, max_len)
