"""Exact cube group arithmetic.

Positions are stored at the cubie level: ``cp[i]`` is the corner cubie sitting
in corner slot ``i`` and ``co[i]`` is the slot facelet (0, 1 or 2, clockwise
from the U/D facelet) that holds the cubie's U/D sticker.  Edges work the same
way with the reference facelet being U/D for top/bottom slots and F/B for the
middle slots.

Slot order::

    corners  URF UFL ULB UBR | DFR DLF DBL DRB
    edges    UR UF UL UB | FR FL BL BR | DR DF DL DB

Move and symmetry data are not typed in by hand.  They are derived once from a
sticker model in which every facelet is a (cubie position, outward normal)
pair of integer vectors and a face turn or whole-cube symmetry is a 3x3
integer matrix acting on both.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass

import numpy as np

FACES = "UFRDBL"
# outward normals in (x=R, y=U, z=F) coordinates
FACE_NORMAL = {
    "U": (0, 1, 0), "F": (0, 0, 1), "R": (1, 0, 0),
    "D": (0, -1, 0), "B": (0, 0, -1), "L": (-1, 0, 0),
}

CORNER_NAMES = ("URF", "UFL", "ULB", "UBR", "DFR", "DLF", "DBL", "DRB")
EDGE_NAMES = ("UR", "UF", "UL", "UB", "FR", "FL", "BL", "BR", "DR", "DF", "DL", "DB")
# slots of the middle (E) slice, between U and D
SLICE_EDGES = (4, 5, 6, 7)
UD_EDGES = (0, 1, 2, 3, 8, 9, 10, 11)

N_MOVES = 18


class Move(enum.IntEnum):
    """The 18 face turns.  Value = 3 * face + twist, faces ordered U F R D B L."""

    U = 0
    U2 = 1
    Ui = 2
    F = 3
    F2 = 4
    Fi = 5
    R = 6
    R2 = 7
    Ri = 8
    D = 9
    D2 = 10
    Di = 11
    B = 12
    B2 = 13
    Bi = 14
    L = 15
    L2 = 16
    Li = 17

    @property
    def face(self) -> str:
        return FACES[self // 3]

    @property
    def turns(self) -> int:
        """Clockwise quarter turns: 1, 2 or 3."""
        return self % 3 + 1

    @property
    def inverse(self) -> Move:
        return Move(self - self % 3 + (2 - self % 3))

    def __str__(self) -> str:
        return self.face + ("", "2", "'")[self % 3]


# the ten moves that preserve H
A_MOVES = (Move.U, Move.U2, Move.Ui, Move.D, Move.D2, Move.Di,
           Move.R2, Move.L2, Move.F2, Move.B2)


class ParseError(ValueError):
    def __init__(self, text: str, offset: int):
        super().__init__(f"cannot parse move at offset {offset}: {text[offset:offset + 8]!r}")
        self.offset = offset


_TOKEN = re.compile(r"([UFRDBL])(2|'|3|\+|1)?")


class MoveSequence(tuple):
    """Immutable sequence of :class:`Move` with Singmaster text I/O."""

    def __new__(cls, moves=()):
        return super().__new__(cls, (Move(m) for m in moves))

    @classmethod
    def parse(cls, text: str) -> MoveSequence:
        """Parse ``"R' B2 U"`` or the unspaced ``"R'B2U"``.  ``ε`` / ``e`` mean empty."""
        moves = []
        i, n = 0, len(text)
        if text.strip() in ("ε", "e", "-"):
            return cls()
        while i < n:
            if text[i].isspace():
                i += 1
                continue
            m = _TOKEN.match(text, i)
            if m is None:
                raise ParseError(text, i)
            face = FACES.index(m.group(1))
            suffix = m.group(2) or ""
            twist = {"": 0, "+": 0, "1": 0, "2": 1, "'": 2, "3": 2}[suffix]
            moves.append(3 * face + twist)
            i = m.end()
        return cls(moves)

    def inverse(self) -> MoveSequence:
        return MoveSequence(m.inverse for m in reversed(self))

    def __add__(self, other) -> MoveSequence:
        return MoveSequence(tuple.__add__(self, tuple(other)))

    def __getitem__(self, key):
        out = tuple.__getitem__(self, key)
        return MoveSequence(out) if isinstance(key, slice) else out

    def __str__(self) -> str:
        return " ".join(str(m) for m in self)

    def __repr__(self) -> str:
        return f"MoveSequence({str(self)!r})"


def parse_sequence(text: str) -> MoveSequence:
    return MoveSequence.parse(text)


def format_sequence(seq) -> str:
    return str(MoveSequence(seq))


# ---------------------------------------------------------------------------
# sticker model
# ---------------------------------------------------------------------------

def _vec(face: str) -> np.ndarray:
    return np.array(FACE_NORMAL[face])


def _facelets():
    """48 facelet locations as (position, normal); corners first, 3 per slot."""
    locs = []
    for name in CORNER_NAMES:
        pos = sum(_vec(f) for f in name)
        for f in name:
            locs.append((tuple(pos), tuple(_vec(f))))
    edge_faces = {  # reference facelet first
        "UR": "UR", "UF": "UF", "UL": "UL", "UB": "UB",
        "FR": "FR", "FL": "FL", "BL": "BL", "BR": "BR",
        "DR": "DR", "DF": "DF", "DL": "DL", "DB": "DB",
    }
    for name in EDGE_NAMES:
        faces = edge_faces[name]
        pos = sum(_vec(f) for f in faces)
        for f in faces:
            locs.append((tuple(pos), tuple(_vec(f))))
    return locs


FACELETS = _facelets()
_LOC_INDEX = {loc: i for i, loc in enumerate(FACELETS)}

# corner facelet order must be one consistent chirality (clockwise)
for _i in range(8):
    _n = [np.array(FACELETS[3 * _i + k][1]) for k in range(3)]
    assert int(np.dot(_n[0], np.cross(_n[1], _n[2]))) == -1, CORNER_NAMES[_i]


def _location_map(mat: np.ndarray, layer: np.ndarray | None = None) -> np.ndarray:
    """Facelet permutation induced by ``mat``: facelet x moves to out[x]."""
    out = np.empty(48, dtype=np.int64)
    for x, (p, n) in enumerate(FACELETS):
        p, n = np.array(p), np.array(n)
        if layer is not None and int(p @ layer) != 1:
            out[x] = x
            continue
        out[x] = _LOC_INDEX[(tuple(mat @ p), tuple(mat @ n))]
    return out


def _quarter_turn(face: str) -> np.ndarray:
    # clockwise seen from outside = -90 degrees about the outward normal
    n = _vec(face)
    cross = np.array([[0, -n[2], n[1]], [n[2], 0, -n[0]], [-n[1], n[0], 0]])
    return -cross + np.outer(n, n)


def _move_location_maps() -> np.ndarray:
    maps = np.empty((N_MOVES, 48), dtype=np.int64)
    for f, face in enumerate(FACES):
        q = _location_map(_quarter_turn(face), _vec(face))
        cur = np.arange(48)
        for t in range(3):
            cur = q[cur]
            maps[3 * f + t] = cur
    return maps


MOVE_LOCATIONS = _move_location_maps()


def _symmetry_matrices() -> list[np.ndarray]:
    """All 48 signed permutation matrices; the 16 fixing the U/D axis first."""
    mats = []
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            m = np.zeros((3, 3), dtype=np.int64)
            for r in range(3):
                m[r, perm[r]] = signs[r]
            mats.append(m)
    ident = np.eye(3, dtype=np.int64)
    mats.sort(key=lambda m: (abs(m[1, 1]) != 1, not np.array_equal(m, ident)))
    return mats


SYM_MATRICES = _symmetry_matrices()
N_SYMS = 48
N_UD_SYMS = 16
SYM_LOCATIONS = np.array([_location_map(m) for m in SYM_MATRICES])


def _sym_products():
    index = {m.tobytes(): i for i, m in enumerate(SYM_MATRICES)}
    mult = np.empty((N_SYMS, N_SYMS), dtype=np.int64)
    inv = np.empty(N_SYMS, dtype=np.int64)
    for i, gi in enumerate(SYM_MATRICES):
        inv[i] = index[gi.T.copy().tobytes()]
        for j, gj in enumerate(SYM_MATRICES):
            # conjugating by i then by j equals conjugating by G_j G_i
            mult[i, j] = index[(gj @ gi).tobytes()]
    return mult, inv


SYM_MULT, SYM_INV = _sym_products()
IS_REFLECTION = np.array([round(np.linalg.det(m)) == -1 for m in SYM_MATRICES])


# ---------------------------------------------------------------------------
# cubie states
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CubieState:
    cp: tuple
    co: tuple
    ep: tuple
    eo: tuple

    @classmethod
    def solved(cls) -> CubieState:
        return SOLVED

    @classmethod
    def from_sequence(cls, seq) -> CubieState:
        if isinstance(seq, str):
            seq = MoveSequence.parse(seq)
        return apply_sequence(SOLVED, seq)

    def __mul__(self, other: CubieState) -> CubieState:
        """``self * other`` is ``self`` followed by ``other``."""
        cp = tuple(self.cp[j] for j in other.cp)
        co = tuple((self.co[j] + o) % 3 for j, o in zip(other.cp, other.co))
        ep = tuple(self.ep[j] for j in other.ep)
        eo = tuple((self.eo[j] + o) % 2 for j, o in zip(other.ep, other.eo))
        return CubieState(cp, co, ep, eo)

    def dump(self) -> str:
        """Four integer lists: cp, co, ep, eo."""
        return "\n".join(" ".join(map(str, v)) for v in (self.cp, self.co, self.ep, self.eo))

    @classmethod
    def load(cls, text: str) -> CubieState:
        rows = [tuple(int(t) for t in line.split()) for line in text.strip().splitlines()]
        return cls(*rows)

    def to_facelets(self) -> np.ndarray:
        """at[x] = home facelet of the sticker now at location x."""
        at = np.empty(48, dtype=np.int64)
        for i, (c, o) in enumerate(zip(self.cp, self.co)):
            for k in range(3):
                at[3 * i + (k + o) % 3] = 3 * c + k
        for j, (e, o) in enumerate(zip(self.ep, self.eo)):
            for k in range(2):
                at[24 + 2 * j + (k + o) % 2] = 24 + 2 * e + k
        return at

    @classmethod
    def from_facelets(cls, at) -> CubieState:
        cp, co, ep, eo = [], [], [], []
        for i in range(8):
            stickers = [int(at[3 * i + k]) for k in range(3)]
            k0 = next(k for k in range(3) if stickers[k] % 3 == 0)
            cp.append(stickers[k0] // 3)
            co.append(k0)
        for j in range(12):
            stickers = [int(at[24 + 2 * j + k]) - 24 for k in range(2)]
            k0 = 0 if stickers[0] % 2 == 0 else 1
            ep.append(stickers[k0] // 2)
            eo.append(k0)
        return cls(tuple(cp), tuple(co), tuple(ep), tuple(eo))


SOLVED = CubieState(tuple(range(8)), (0,) * 8, tuple(range(12)), (0,) * 12)


def _facelets_apply(at: np.ndarray, locmap: np.ndarray) -> np.ndarray:
    out = np.empty_like(at)
    out[locmap] = at
    return out


def _move_states() -> tuple:
    ident = SOLVED.to_facelets()
    return tuple(CubieState.from_facelets(_facelets_apply(ident, MOVE_LOCATIONS[m]))
                 for m in range(N_MOVES))


MOVE_STATES = _move_states()

# cubie-level move arrays (used to build coordinate tables and numba kernels)
MOVE_CP = np.array([s.cp for s in MOVE_STATES], dtype=np.int8)
MOVE_CO = np.array([s.co for s in MOVE_STATES], dtype=np.int8)
MOVE_EP = np.array([s.ep for s in MOVE_STATES], dtype=np.int8)
MOVE_EO = np.array([s.eo for s in MOVE_STATES], dtype=np.int8)


def apply_move(state: CubieState, mv) -> CubieState:
    return state * MOVE_STATES[int(mv)]


def apply_sequence(state: CubieState, seq) -> CubieState:
    if isinstance(seq, str):
        seq = MoveSequence.parse(seq)
    for mv in seq:
        state = state * MOVE_STATES[int(mv)]
    return state


def invert(x):
    """Inverse of a :class:`CubieState` or a move sequence."""
    if isinstance(x, CubieState):
        cp = [0] * 8
        co = [0] * 8
        for i, c in enumerate(x.cp):
            cp[c] = i
            co[c] = (-x.co[i]) % 3
        ep = [0] * 12
        eo = [0] * 12
        for i, e in enumerate(x.ep):
            ep[e] = i
            eo[e] = x.eo[i]
        return CubieState(tuple(cp), tuple(co), tuple(ep), tuple(eo))
    if isinstance(x, str):
        x = MoveSequence.parse(x)
    return MoveSequence(x).inverse()


# ---------------------------------------------------------------------------
# symmetries
# ---------------------------------------------------------------------------

def conjugate_facelets(at: np.ndarray, sym: int) -> np.ndarray:
    g = SYM_LOCATIONS[sym]
    out = np.empty_like(at)
    out[g] = g[at]
    return out


def _sym_cubie_data():
    """Per symmetry: corner slot map, corner facelet shift, chirality, edge slot map, edge shift."""
    csig = np.empty((N_SYMS, 8), dtype=np.int64)
    ct = np.empty((N_SYMS, 8), dtype=np.int64)
    esig = np.empty((N_SYMS, 12), dtype=np.int64)
    et = np.empty((N_SYMS, 12), dtype=np.int64)
    eps = np.where(IS_REFLECTION, -1, 1)
    for s in range(N_SYMS):
        g = SYM_LOCATIONS[s]
        for i in range(8):
            y = g[3 * i]
            csig[s, i], ct[s, i] = divmod(y, 3)
        for j in range(12):
            y = g[24 + 2 * j] - 24
            esig[s, j], et[s, j] = divmod(y, 2)
    return csig, ct, eps, esig, et


SYM_CSIG, SYM_CT, SYM_EPS, SYM_ESIG, SYM_ET = _sym_cubie_data()


def conjugate(state: CubieState, sym: int) -> CubieState:
    """Conjugate ``state`` by whole-cube symmetry ``sym`` (distance preserving)."""
    sig, t, e = SYM_CSIG[sym], SYM_CT[sym], SYM_EPS[sym]
    cp = [0] * 8
    co = [0] * 8
    for i in range(8):
        c = state.cp[i]
        cp[sig[i]] = int(sig[c])
        co[sig[i]] = int((e * state.co[i] + t[i] - t[c]) % 3)
    sig, t = SYM_ESIG[sym], SYM_ET[sym]
    ep = [0] * 12
    eo = [0] * 12
    for j in range(12):
        c = state.ep[j]
        ep[sig[j]] = int(sig[c])
        eo[sig[j]] = int((state.eo[j] + t[j] - t[c]) % 2)
    return CubieState(tuple(cp), tuple(co), tuple(ep), tuple(eo))


def _sym_move_map() -> np.ndarray:
    index = {s: m for m, s in enumerate(MOVE_STATES)}
    return np.array([[index[conjugate(MOVE_STATES[m], s)] for m in range(N_MOVES)]
                     for s in range(N_SYMS)], dtype=np.int64)


# SYM_MOVE[s, m]: conjugate(p * m, s) == conjugate(p, s) * SYM_MOVE[s, m]
SYM_MOVE = _sym_move_map()


def conjugate_sequence(seq, sym: int) -> MoveSequence:
    return MoveSequence(SYM_MOVE[sym, int(m)] for m in seq)


def _axis_syms():
    """Rotations whose conjugation turns R/L (resp. F/B) moves into U/D moves."""
    out = [0]
    for face in ("R", "F"):
        for s in range(N_SYMS):
            if IS_REFLECTION[s]:
                continue
            if Move(SYM_MOVE[s, FACES.index(face) * 3]).face == "U":
                out.append(s)
                break
    return tuple(out)


AXIS_SYMS = _axis_syms()


# ---------------------------------------------------------------------------
# validity
# ---------------------------------------------------------------------------

def permutation_parity(perm) -> int:
    perm = list(perm)
    seen = [False] * len(perm)
    parity = 0
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


def validate(state: CubieState) -> list[str]:
    """Names of the violated invariants; an empty list means the state is valid."""
    problems = []
    if sorted(state.cp) != list(range(8)) or sorted(state.ep) != list(range(12)):
        problems.append("not-a-permutation")
        return problems
    if any(o not in (0, 1, 2) for o in state.co) or any(o not in (0, 1) for o in state.eo):
        problems.append("orientation-range")
        return problems
    if sum(state.co) % 3:
        problems.append("corner-orientation-sum")
    if sum(state.eo) % 2:
        problems.append("edge-orientation-sum")
    if permutation_parity(state.cp) != permutation_parity(state.ep):
        problems.append("permutation-parity")
    return problems


def is_valid(state: CubieState) -> bool:
    return not validate(state)


def random_state(rng: np.random.Generator) -> CubieState:
    """Uniformly random reachable position."""
    cp = [int(x) for x in rng.permutation(8)]
    ep = [int(x) for x in rng.permutation(12)]
    if permutation_parity(cp) != permutation_parity(ep):
        ep[0], ep[1] = ep[1], ep[0]
    co = [int(x) for x in rng.integers(0, 3, 7)]
    co.append((-sum(co)) % 3)
    eo = [int(x) for x in rng.integers(0, 2, 11)]
    eo.append(sum(eo) % 2)
    return CubieState(tuple(cp), tuple(co), tuple(ep), tuple(eo))


SUPERFLIP = CubieState(tuple(range(8)), (0,) * 8, tuple(range(12)), (1,) * 12)

# 12!8!/2 * 3^8/3 * 2^12/2
GROUP_ORDER = (479001600 * 40320 // 2) * (3 ** 7) * (2 ** 11)
