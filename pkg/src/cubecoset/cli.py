"""Command line front end.

Exit status: 0 ok, 1 usage error, 2 resource error, 3 verification failure.
Every flag can also be set through an environment variable ``CUBECOSET_<FLAG>``
(for example ``CUBECOSET_CACHE_DIR`` or ``CUBECOSET_MEMORY``).
"""

from __future__ import annotations

import argparse
import logging
import os
import re
import sys
from pathlib import Path

import numpy as np

from .cube import SOLVED, MoveSequence, ParseError, apply_sequence, random_state

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class VerificationError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _env(name, default=None):
    return os.environ.get("CUBECOSET_" + name.upper().replace("-", "_"), default)


def parse_size(text) -> int:
    """Byte count from text such as 2G, 512M or 6000000000."""
    m = re.fullmatch(r"\s*(\d+(?:\.\d+)?)\s*([KMGT]?)i?B?\s*", str(text), re.I)
    if not m:
        raise UsageError(f"bad memory size {text!r}")
    scale = {"": 1, "K": 1 << 10, "M": 1 << 20, "G": 1 << 30, "T": 1 << 40}[m.group(2).upper()]
    return int(float(m.group(1)) * scale)


def parse_representative(text: str, cache_dir=None) -> MoveSequence:
    """A move sequence, or a packed relabeled coordinate written as 0x... hex.

    The packed form is ``(slice * 2048 + flip) * 2187 + twist``.
    """
    text = text.strip()
    if text.lower().startswith("0x"):
        from .coords import N_FLIP, N_TWIST, Phase1Coord, R_SIZE
        from .pruning import get_phase1
        value = int(text, 16)
        if not 0 <= value < R_SIZE:
            raise UsageError(f"packed coordinate {text} out of range")
        twist = value % N_TWIST
        fs = value // N_TWIST
        c = Phase1Coord(twist, fs % N_FLIP, fs // N_FLIP)
        return MoveSequence(get_phase1(cache_dir).descend(c)).inverse()
    return MoveSequence.parse(text)


def _common(p: argparse.ArgumentParser):
    p.add_argument("--cache-dir", default=_env("cache_dir"), help="table cache directory")
    p.add_argument("--memory", default=_env("memory", "2G"), help="memory budget, e.g. 2G")
    p.add_argument("--threads", type=int, default=int(_env("threads", 1)))
    p.add_argument("--seed", type=int, default=int(_env("seed", 0)))
    p.add_argument("--deterministic", action="store_true",
                   default=_env("deterministic", "") not in ("", "0"))
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cubecoset", description="Coset-based distance bounds for the 3x3x3 cube")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="near-optimal two-phase solve")
    _common(s)
    s.add_argument("--seq", help="scramble to solve")
    s.add_argument("--random", type=int, default=0, help="solve N seeded random positions")
    s.add_argument("--mode", default=_env("mode", "six"), choices=("single", "triple", "six"))
    s.add_argument("--target", type=int, default=int(_env("target", 20)))
    s.add_argument("--nodes", type=int, default=0, help="node budget (0 = none)")
    s.add_argument("--time", type=float, default=0.0, help="seconds per position (0 = none)")
    s.add_argument("--db", help="append scramble<TAB>solution records to this file")

    o = sub.add_parser("optimal", help="provably optimal solve")
    _common(o)
    o.add_argument("--seq", required=True)
    o.add_argument("--nodes", type=int, default=0)
    o.add_argument("--time", type=float, default=0.0)

    c = sub.add_parser("coset", help="bound every position of one coset")
    _common(c)
    c.add_argument("--rep", default="", help="representative (moves or 0x packed coordinate)")
    c.add_argument("--m", type=int, default=_int_or_none(_env("m")))
    c.add_argument("--depth", type=int, default=_int_or_none(_env("depth")),
                   help="stop after this depth")
    c.add_argument("--mode", default=_env("mode", "hash"), choices=("hash", "symmetric", "full"))
    c.add_argument("--log", help="append residual positions to this file")
    c.add_argument("--log-threshold", type=int, default=65536)

    cv = sub.add_parser("coset-verify", help="compare the set solver with the plain oracle")
    _common(cv)
    cv.add_argument("--rep", default="")
    cv.add_argument("--depth", type=int, default=int(_env("depth", 5)))

    ce = sub.add_parser("census", help="positions of H per distance, both move sets")
    _common(ce)
    ce.add_argument("--depth", type=int, default=int(_env("depth", 6)))

    g = sub.add_parser("graph", help="set-graph ledger operations")
    _common(g)
    g.add_argument("action", choices=("init", "record", "select", "status", "cover"))
    g.add_argument("--ledger", default=_env("ledger", "ledger.rcgl"))
    g.add_argument("--rep", action="append", default=[], help="representative (repeatable)")
    g.add_argument("--bound", type=int, help="proven bound for --rep")
    g.add_argument("--source", default="cli")
    g.add_argument("-n", type=int, default=1, help="sets to select")
    g.add_argument("--assumed", type=int, default=20)
    g.add_argument("--threshold", type=int, default=25)
    g.add_argument("--candidates", type=int, default=0,
                   help="sample this many solvable vertices (0 = all)")

    v = sub.add_parser("verify-db", help="replay a scramble<TAB>solution database")
    _common(v)
    v.add_argument("path")
    return p


def _int_or_none(x):
    return None if x in (None, "") else int(x)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_solve(args, out):
    from .twophase import SolveOptions, get_solver
    solver = get_solver(args.cache_dir)
    opts = SolveOptions(mode=args.mode, target_length=args.target, node_budget=args.nodes,
                        time_budget=args.time,
                        workers=1 if args.deterministic else max(1, args.threads))
    if args.seq is None and not args.random:
        raise UsageError("give --seq or --random N")
    positions = []
    if args.seq is not None:
        seq = MoveSequence.parse(args.seq)
        positions.append((seq, apply_sequence(SOLVED, seq)))
    rng = np.random.default_rng(args.seed)
    positions += [(None, random_state(rng)) for _ in range(args.random)]
    db = open(args.db, "a", encoding="utf-8") if args.db else None
    try:
        for scramble, p in positions:
            res = solver.solve(p, opts)
            if apply_sequence(p, res.solution) != SOLVED:
                raise VerificationError(f"solution {res.solution} does not solve the position")
            print(res.line(), file=out)
            if db is not None:
                # a random position has no scramble of its own; the inverted
                # solution is one that produces it
                scramble = res.solution.inverse() if scramble is None else scramble
                db.write(f"{scramble}\t{res.solution}\n")
    finally:
        if db is not None:
            db.close()


def cmd_optimal(args, out):
    from .twophase import get_solver
    p = apply_sequence(SOLVED, MoveSequence.parse(args.seq))
    res = get_solver(args.cache_dir).solve_optimal(p, node_budget=args.nodes,
                                                   time_budget=args.time)
    if apply_sequence(p, res.solution) != SOLVED:
        raise VerificationError("optimal solver returned a non-solution")
    tag = "optimal" if res.exhausted else "unproven"
    print(f"{res.line()}\t{tag}", file=out)


def cmd_coset(args, out):
    from .cosets import CosetJob, solve_set
    job = CosetJob(parse_representative(args.rep, args.cache_dir), m=args.m,
                   memory_mode=args.mode, log_threshold=args.log_threshold,
                   depth_limit=args.depth, memory_budget=parse_size(args.memory),
                   residual_log=args.log)
    report = solve_set(job, cache_dir=args.cache_dir)
    print(report.tsv(), file=out)


def cmd_coset_verify(args, out):
    from .cosets import CosetJob, oracle_solve_set, solve_set
    rep = parse_representative(args.rep, args.cache_dir)
    fast = solve_set(CosetJob(rep, depth_limit=args.depth,
                              memory_budget=parse_size(args.memory)), cache_dir=args.cache_dir)
    slow = oracle_solve_set(rep, args.depth, parse_size(args.memory))
    print("depth\tfast\toracle", file=out)
    for (d, a), (_, b) in zip(fast.per_depth_new_counts, slow.per_depth_new_counts):
        print(f"{d}\t{a}\t{b}", file=out)
    same_counts = fast.per_depth_new_counts == slow.per_depth_new_counts
    same_sets = np.array_equal(fast.covered, slow.covered)
    print(f"# counts {'agree' if same_counts else 'DIFFER'}, "
          f"sets {'agree' if same_sets else 'DIFFER'}", file=out)
    if not (same_counts and same_sets):
        raise VerificationError("fast and oracle set solvers disagree")


def cmd_census(args, out):
    from .pruning import census
    budget = parse_size(args.memory)
    s = census(args.depth, "S", budget, args.cache_dir)
    a = census(args.depth, "A", budget, args.cache_dir)
    print("depth\tcountS\tcountA", file=out)
    for d in range(args.depth + 1):
        print(f"{d}\t{s[d]}\t{a[d]}", file=out)


def _open_ledger(args, create=False):
    from .setgraph import BoundLedger, SetGraph
    graph = SetGraph(cache_dir=args.cache_dir)
    path = Path(args.ledger)
    journal = path.with_suffix(path.suffix + ".journal")
    if create:
        return BoundLedger(graph, journal_path=journal), path
    if not path.exists():
        raise UsageError(f"no ledger at {path}; run 'graph init' first")
    led = BoundLedger.load(path, graph, journal)
    if journal.exists():
        led.journal = BoundLedger.read_journal(journal)
    return led, path


def cmd_graph(args, out):
    from .setgraph import compute_elimination, greedy_select, validate_cover
    if args.action == "init":
        path = Path(args.ledger)
        if path.exists():
            print(f"ledger {path} already exists; left unchanged", file=out)
            return
        led, path = _open_ledger(args, create=True)
        led.save(path)
        print(f"created {path} with {led.graph.n} vertices at bound 30", file=out)
    elif args.action == "record":
        if not args.rep or args.bound is None:
            raise UsageError("record needs --rep and --bound")
        led, path = _open_ledger(args)
        items = [(led.graph.vertex_of(parse_representative(r, args.cache_dir)), args.bound)
                 for r in args.rep]
        lowered = led.record_many(items, args.source)
        if lowered:
            led.save(path)
        print(f"lowered {lowered} vertices; global bound {led.diameter_bound()}", file=out)
    elif args.action == "select":
        led, _ = _open_ledger(args)
        cands = None
        if args.candidates:
            rng = np.random.default_rng(args.seed)
            allv = led.graph.solvable_vertices()
            cands = np.sort(rng.choice(allv, size=min(args.candidates, len(allv)),
                                       replace=False))
        picks = greedy_select(led, args.n, args.assumed, args.threshold, cands)
        for v in picks:
            print(led.graph.representative(v), file=out)
    elif args.action == "status":
        led, _ = _open_ledger(args)
        cover = compute_elimination(led.graph.tables)
        print(led.report(cover), file=out)
        print(f"solvable vertices {len(led.graph.solvable_vertices())} of {led.graph.n}",
              file=out)
    elif args.action == "cover":
        from .setgraph import f_cover
        cover = compute_elimination()
        bad = validate_cover(cover)
        print(f"eliminated {len(cover.eliminated)} of 495 slice configurations "
              f"(reference figure 94); f<3 rule alone eliminates {len(f_cover().eliminated)}",
              file=out)
        if bad is not None:
            raise VerificationError(f"cover misses partition {bad}")
        print("cover valid over all 34650 partitions", file=out)


def cmd_verify_db(args, out):
    failures = 0
    with open(args.path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip() or line.startswith("#"):
                continue
            try:
                scramble, solution = line.rstrip("\n").split("\t")
                p = apply_sequence(SOLVED, MoveSequence.parse(scramble))
                ok = apply_sequence(p, MoveSequence.parse(solution)) == SOLVED
            except (ValueError, ParseError) as exc:
                ok = False
                print(f"line {lineno}: unreadable ({exc})", file=out)
            if not ok:
                failures += 1
                print(f"line {lineno}: solution does not solve scramble", file=out)
    print(f"{failures} failures", file=out)
    if failures:
        raise VerificationError(f"{failures} bad records")


COMMANDS = {"solve": cmd_solve, "optimal": cmd_optimal, "coset": cmd_coset,
            "coset-verify": cmd_coset_verify, "census": cmd_census, "graph": cmd_graph,
            "verify-db": cmd_verify_db}


def main(argv=None, out=None) -> int:
    from .pruning import ResourceError
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(name)s %(message)s")
    try:
        COMMANDS[args.command](args, out)
    except (UsageError, ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceError, MemoryError) as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except Exception as exc:  # solver post-condition failures
        from .twophase import SolverError
        if isinstance(exc, SolverError):
            print(f"verification failed: {exc}", file=sys.stderr)
            return EXIT_VERIFY
        raise
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
