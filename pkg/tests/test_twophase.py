import pytest

from cubecoset.coords import encode_phase2
from cubecoset.cube import A_MOVES, SOLVED, MoveSequence, apply_sequence, random_state
from cubecoset.twophase import SolveOptions, SolveResult

from oracles import StickerDistance, phase1_solution_counts

PONS = MoveSequence.parse("R2 L2 U2 D2 F2 B2")


@pytest.fixture(scope="module")
def sticker_distance():
    return StickerDistance(inner=4, outer=3)


def scramble(rng, n):
    return MoveSequence(int(m) for m in rng.integers(0, 18, n))


def test_options_validation():
    with pytest.raises(ValueError):
        SolveOptions(mode="double")
    with pytest.raises(ValueError):
        SolveOptions(target_length=-1)


def test_solved_position(solver):
    r = solver.solve(SOLVED)
    assert r.length == 0 and r.line() == "0\t\t0"
    assert solver.solve_optimal(SOLVED).length == 0


def test_invalid_position_rejected(solver):
    bad = SOLVED.__class__(SOLVED.cp, (1,) + SOLVED.co[1:], SOLVED.ep, SOLVED.eo)
    with pytest.raises(ValueError):
        solver.solve(bad)


def test_phase2_examples(solver, rng):
    assert solver.phase2_solve((0, 0, 0)) == MoveSequence()
    c = encode_phase2(apply_sequence(SOLVED, "U R2"))
    sol = solver.phase2_solve(c)
    assert len(sol) <= 2
    for _ in range(10):
        seq = [A_MOVES[i] for i in rng.integers(0, 10, 40)]
        h = apply_sequence(SOLVED, seq)
        sol = solver.phase2_solve(encode_phase2(h), 18)
        assert sol is not None and len(sol) <= 18
        assert all(m in A_MOVES for m in sol)
        assert apply_sequence(h, sol) == SOLVED


@pytest.mark.parametrize("mode", ["single", "triple", "six"])
def test_solutions_replay(solver, rng, mode):
    for _ in range(5):
        p = random_state(rng)
        r = solver.solve(p, SolveOptions(mode=mode, target_length=22))
        assert apply_sequence(p, r.solution) == SOLVED
        assert r.length <= 22
        lengths = [length for length, _ in r.improved_at]
        assert lengths == sorted(lengths, reverse=True)
        assert lengths[-1] == r.length
        nodes = [n for _, n in r.improved_at]
        assert nodes == sorted(nodes)


def test_short_scramble_found_optimally(solver, rng):
    for _ in range(5):
        seq = scramble(rng, 5)
        p = apply_sequence(SOLVED, seq)
        r = solver.solve(p, SolveOptions(mode="single"))
        assert r.length <= 5
        assert r.exhausted


def test_budget_returns_partial(solver, rng):
    p = random_state(rng)
    r = solver.solve(p, SolveOptions(mode="six", node_budget=20_000))
    assert not r.exhausted
    assert apply_sequence(p, r.solution) == SOLVED
    r = solver.solve(p, SolveOptions(mode="six", time_budget=0.3))
    assert not r.exhausted


def test_threaded_matches_single_worker(solver, rng):
    for _ in range(3):
        p = random_state(rng)
        a = solver.solve(p, SolveOptions(mode="six", target_length=21))
        b = solver.solve(p, SolveOptions(mode="six", target_length=21, workers=2))
        assert a.length <= 21 and b.length <= 21
        assert apply_sequence(p, b.solution) == SOLVED


def test_leaf_counts_match_enumeration(solver, rng):
    for _ in range(5):
        p = apply_sequence(SOLVED, scramble(rng, 4))
        for d in range(8):
            got = solver.phase1_leaf_counts(p, d, prefix_rule=False)
            assert got == phase1_solution_counts(p, d), d


def test_quarter_turn_leaves_come_in_pairs(solver, rng):
    for _ in range(10):
        p = random_state(rng)
        for d in (8, 9):
            qt, _ = solver.phase1_leaf_counts(p, d)
            assert qt % 2 == 0


def test_optimal_matches_oracle(solver, sticker_distance, rng):
    for n in range(8):
        p = apply_sequence(SOLVED, scramble(rng, n))
        r = solver.solve_optimal(p)
        assert r.exhausted
        assert r.length == sticker_distance(p)
        assert apply_sequence(p, r.solution) == SOLVED


def test_pons_asinorum_optimal(solver, sticker_distance):
    p = apply_sequence(SOLVED, PONS)
    r = solver.solve_optimal(p)
    assert r.length == sticker_distance(p) == 6


def test_optimal_budget_falls_back(solver, rng):
    p = random_state(rng)
    r = solver.solve_optimal(p, node_budget=1000)
    assert isinstance(r, SolveResult)
    assert not r.exhausted
    assert apply_sequence(p, r.solution) == SOLVED
