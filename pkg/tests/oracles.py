"""Slow, independent reference computations used by the tests.

They work on sticker arrays or plain cubie tuples and never touch the
coordinate tables, pruning tables or numba kernels they are checked against.
"""

import itertools

from cubecoset.cube import MOVE_LOCATIONS, MOVE_STATES, SOLVED, CubieState

N_MOVES = 18


def sticker_move(at, m):
    out = at.copy()
    out[MOVE_LOCATIONS[m]] = at
    return out


def canonical_next(prev_face):
    """Moves allowed after a move on ``prev_face`` (None at the start)."""
    for m in range(N_MOVES):
        f = m // 3
        if prev_face is not None and (f == prev_face or f + 3 == prev_face):
            continue
        yield m


class StickerDistance:
    """Exact distances up to ``inner + outer`` by meeting in the middle on stickers."""

    def __init__(self, inner=4, outer=3):
        self.inner, self.outer = inner, outer
        start = SOLVED.to_facelets()
        self.ball = {start.tobytes(): 0}
        frontier = [start]
        for d in range(1, inner + 1):
            nxt = []
            for at in frontier:
                for m in range(N_MOVES):
                    b = sticker_move(at, m)
                    k = b.tobytes()
                    if k not in self.ball:
                        self.ball[k] = d
                        nxt.append(b)
            frontier = nxt

    def __call__(self, state: CubieState):
        at = state.to_facelets()
        best = self.ball.get(at.tobytes())
        seen = {at.tobytes()}
        frontier = [at]
        for d in range(1, self.outer + 1):
            nxt = []
            for x in frontier:
                for m in range(N_MOVES):
                    y = sticker_move(x, m)
                    k = y.tobytes()
                    if k in seen:
                        continue
                    seen.add(k)
                    nxt.append(y)
                    if k in self.ball:
                        cand = d + self.ball[k]
                        best = cand if best is None else min(best, cand)
            frontier = nxt
        return best


def phase1_key(s: CubieState):
    """Orientation and E-slice occupancy, straight from the cubie tuples."""
    return s.co, s.eo, tuple(4 <= e < 8 for e in s.ep)


SOLVED_KEY = phase1_key(SOLVED)


def _sequences(k, first_prev=None):
    """All canonical move sequences of length k."""
    def rec(prefix, prev):
        if len(prefix) == k:
            yield tuple(prefix)
            return
        for m in canonical_next(prev):
            prefix.append(m)
            yield from rec(prefix, m // 3)
            prefix.pop()
    yield from rec([], first_prev)


def _apply(s, seq):
    for m in seq:
        s = s * MOVE_STATES[m]
    return s


def _inverse_seq(seq):
    return tuple(3 * (m // 3) + (2 - m % 3) for m in reversed(seq))


def phase1_solution_counts(p: CubieState, d: int):
    """(quarter-turn-ending, all) canonical length-d sequences s with p s in H's pattern."""
    def is_qt_end(m):
        return m % 3 != 1 and m // 3 not in (0, 3)

    if d <= 2:
        qt = total = 0
        for seq in _sequences(d):
            if phase1_key(_apply(p, seq)) == SOLVED_KEY:
                total += 1
                qt += bool(seq) and is_qt_end(seq[-1])
        return qt, total
    k2 = d // 2
    k1 = d - k2
    forward = {}
    for seq in _sequences(k1):
        key = (phase1_key(_apply(p, seq)), seq[-1] // 3)
        forward[key] = forward.get(key, 0) + 1
    backward = {}
    for seq in _sequences(k2):
        y = _apply(SOLVED, _inverse_seq(seq))
        key = (phase1_key(y), seq[0] // 3, is_qt_end(seq[-1]))
        backward[key] = backward.get(key, 0) + 1
    qt = total = 0
    for (k, f2, q), nb in backward.items():
        for f1 in range(6):
            if f2 == f1 or f2 + 3 == f1:
                continue
            n = forward.get((k, f1), 0) * nb
            total += n
            if q:
                qt += n
    return qt, total


def all_slot_partitions():
    for a in itertools.combinations(range(12), 4):
        rest = [s for s in range(12) if s not in a]
        for b in itertools.combinations(rest, 4):
            yield a, b, tuple(s for s in rest if s not in b)


def slice_restoring_suffix(s: CubieState):
    """A shortest move sequence returning the E-slice edges to the E slice."""
    def occ(state):
        return tuple(4 <= e < 8 for e in state.ep)
    goal = occ(SOLVED)
    start = occ(s)
    if start == goal:
        return ()
    paths = {start: ()}
    frontier = [(s, ())]
    while frontier:
        nxt = []
        for state, path in frontier:
            for m in range(N_MOVES):
                t = state * MOVE_STATES[m]
                k = occ(t)
                if k in paths:
                    continue
                paths[k] = path + (m,)
                if k == goal:
                    return paths[k]
                nxt.append((t, paths[k]))
        frontier = nxt
    raise AssertionError("slice unreachable")


def random_slice_representative(rng, length=8):
    """Random move sequence whose position keeps the E-slice edges in the E slice."""
    seq = tuple(int(m) for m in rng.integers(0, N_MOVES, length))
    return seq + slice_restoring_suffix(_apply(SOLVED, seq))
