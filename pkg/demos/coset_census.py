"""Grow one coset of H level by level and compare with the independent oracle.

Run: python demos/coset_census.py
"""

from cubecoset.cosets import CosetJob, oracle_solve_set, solve_set


def main():
    report = solve_set(CosetJob("", depth_limit=6))
    print("the subgroup itself, covered positions per depth:")
    print(report.tsv())

    rep = "R' D L2 D' R"
    fast = solve_set(CosetJob(rep, depth_limit=5))
    slow = oracle_solve_set(rep, 5)
    same = fast.per_depth_new_counts == slow.per_depth_new_counts
    print(f"coset of [{rep}]: {[n for _, n in fast.per_depth_new_counts]}")
    print(f"oracle agrees: {same}")


if __name__ == "__main__":
    main()
