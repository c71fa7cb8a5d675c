"""Solve a few positions with the two-phase solver and watch the solution shrink.

Run: python demos/solve_positions.py
"""

import numpy as np

from cubecoset.cube import SOLVED, SUPERFLIP, MoveSequence, apply_sequence, random_state
from cubecoset.twophase import SolveOptions, get_solver


def show(name, p, solver, opts):
    r = solver.solve(p, opts)
    assert apply_sequence(p, r.solution) == SOLVED
    steps = ", ".join(f"{length} after {nodes} nodes" for length, nodes in r.improved_at)
    print(f"{name}: {r.length} moves  {r.solution}")
    print(f"    improvements: {steps}")


def main():
    solver = get_solver()   # builds or loads the cached tables
    rng = np.random.default_rng(1)
    for i in range(3):
        show(f"random #{i}", random_state(rng), solver, SolveOptions(mode="six", target_length=20))
    show("superflip", SUPERFLIP, solver, SolveOptions(mode="six", target_length=20))

    # short positions are solved exactly by the optimal search
    pons = apply_sequence(SOLVED, MoveSequence.parse("R2 L2 U2 D2 F2 B2"))
    r = solver.solve_optimal(pons)
    print(f"pons asinorum: optimal length {r.length}  {r.solution}")


if __name__ == "__main__":
    main()
