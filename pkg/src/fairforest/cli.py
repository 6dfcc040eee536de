"""Command line interface: ``fcc solve|cost|verify|gen|oracle|bench``.

Exit status is 0 on success, 2 when the instance is infeasible or no
requested solver supports it, and 1 on any other error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import approx, few_clusters, oracle, relaxed, solvers_dp, solvers_linear
from .core import ColoredForest, cc_cost, is_fair
from .errors import FCCError, NoFairAssembly, UnsupportedInstance
from .gadgets import (
    ThreePartitionSpec,
    gen_deg5_gadget,
    gen_diam4_gadget,
    gen_forest_gadget,
    gen_paintshop_path,
    gen_random_forest,
)
from .io import parse_assignment, parse_instance, serialize_instance, serialize_result

SOLVERS = {
    "auto": approx.solve_auto,
    "one_one": solvers_linear.solve_one_one,
    "diam3": solvers_linear.solve_diameter_le3,
    "one_two": solvers_dp.solve_one_two,
    "general": solvers_dp.solve_general,
    "few_clusters": few_clusters.solve_one_c,
    "greedy": approx.greedy_fair,
}


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _ratio(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.replace(",", ":").split(":"))


def _numbers(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(","))


def _run_solver(forest: ColoredForest, name: str, epsilon, alpha):
    if name == "ptas":
        return approx.solve_ptas(forest, epsilon)
    if name == "alpha_relaxed":
        if alpha is None:
            raise SystemExit("--alpha is required for the alpha_relaxed solver")
        return relaxed.solve_alpha_relaxed_one_one(forest, alpha)
    return SOLVERS[name](forest)


def _self_check(forest, clustering, alpha) -> bool:
    again = cc_cost(forest, clustering.assignment)
    if again.total != clustering.total:
        return False
    if alpha is not None:
        return relaxed.is_relaxed_fair(forest, clustering, alpha)
    return is_fair(forest, clustering)


def cmd_solve(args) -> int:
    forest = parse_instance(_read(args.instance))
    alpha = Fraction(args.alpha) if args.alpha is not None else None
    if args.solver != "alpha_relaxed":
        alpha = None
    start = time.perf_counter()
    clustering = _run_solver(forest, args.solver, Fraction(args.epsilon), alpha)
    elapsed = time.perf_counter() - start
    fair = _self_check(forest, clustering, alpha)
    meta = {"fair": fair}
    if alpha is not None:
        meta["alpha"] = str(alpha)
    if not args.no_time:
        meta["wall_time"] = round(elapsed, 6)
    sys.stdout.write(serialize_result(clustering, meta))
    if not fair:
        print("self-check failed: output is not fair or its cost does not recompute", file=sys.stderr)
        return 1
    return 0


def cmd_cost(args) -> int:
    forest = parse_instance(_read(args.instance))
    clustering = cc_cost(forest, parse_assignment(_read(args.assignment)), "given")
    sys.stdout.write(serialize_result(clustering, {"fair": is_fair(forest, clustering)}))
    return 0


def cmd_verify(args) -> int:
    forest = parse_instance(_read(args.instance))
    text = _read(args.result)
    clustering = cc_cost(forest, parse_assignment(text))
    problems = []
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        for key in ("chi", "psi", "total"):
            if key in doc and doc[key] != getattr(clustering, key):
                problems.append(f"{key}: claimed {doc[key]}, actual {getattr(clustering, key)}")
    if args.alpha is not None:
        ok = relaxed.is_relaxed_fair(forest, clustering, Fraction(args.alpha))
    else:
        ok = is_fair(forest, clustering)
    if not ok:
        problems.append("clustering is not fair")
    for p in problems:
        print(p)
    if not problems:
        print(f"ok: total={clustering.total} chi={clustering.chi} psi={clustering.psi}")
    return 0 if not problems else 1


def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "random":
        forest = gen_random_forest(args.n, _ratio(args.ratio), args.shape, args.seed)
        sys.stdout.write(serialize_instance(forest, f"random n={args.n} ratio={args.ratio} seed={args.seed}"))
        return 0
    if kind == "paintshop":
        inst = gen_paintshop_path(args.word)
    else:
        a = _numbers(args.a)
        spec = ThreePartitionSpec(len(a) // 3, args.B, a)
        if kind == "forest":
            inst = gen_forest_gadget(spec, args.shape if args.shape != "random" else "path")
        elif kind == "diam4":
            inst = gen_diam4_gadget(spec)
        else:
            inst = gen_deg5_gadget(spec)
    comment = f"gadget={inst.name} threshold={inst.threshold} yes={inst.is_yes}"
    sys.stdout.write(serialize_instance(inst.forest, comment))
    return 0


def cmd_oracle(args) -> int:
    forest = parse_instance(_read(args.instance))
    if args.alpha is not None:
        clustering = oracle.brute_force_relaxed(forest, Fraction(args.alpha), limit=args.limit)
    else:
        clustering = oracle.brute_force_exact(forest, limit=args.limit)
    sys.stdout.write(serialize_result(clustering, {"fair": True}))
    return 0


def _bench_one(job):
    solver, n, ratio, seed = job
    forest = gen_random_forest(n, ratio, "random", seed)
    start = time.perf_counter()
    clustering = SOLVERS[solver](forest)
    elapsed = time.perf_counter() - start
    return solver, n, seed, elapsed, clustering.total


def cmd_bench(args) -> int:
    ratio = _ratio(args.ratio)
    jobs = [
        (args.solver, n, ratio, args.seed + r) for n in _numbers(args.sizes) for r in range(args.repeat)
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_bench_one, jobs))
    else:
        results = [_bench_one(j) for j in jobs]
    print("solver\tn\tseed\tseconds\tcost")
    for solver, n, seed, elapsed, total in results:
        print(f"{solver}\t{n}\t{seed}\t{elapsed:.6f}\t{total}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fcc", description="Fair correlation clustering on colored forests.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file ('-' for stdin)")
    p.add_argument("instance")
    p.add_argument("--solver", default="auto", choices=sorted(SOLVERS) + ["alpha_relaxed", "ptas"])
    p.add_argument("--epsilon", default="0.5")
    p.add_argument("--alpha")
    p.add_argument("--no-time", action="store_true", help="omit wall time for byte-stable output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("cost", help="score an assignment")
    p.add_argument("instance")
    p.add_argument("assignment")
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("verify", help="check fairness and claimed costs of a result")
    p.add_argument("instance")
    p.add_argument("result")
    p.add_argument("--alpha")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("kind", choices=["forest", "diam4", "deg5", "paintshop", "random"])
    p.add_argument("--B", type=int, default=6)
    p.add_argument("--a", default="2,2,2", help="comma-separated 3-Partition numbers")
    p.add_argument("--word", default="abab")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--ratio", default="1:2")
    p.add_argument("--shape", default="random")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("oracle", help="brute-force optimum for small instances")
    p.add_argument("instance")
    p.add_argument("--alpha")
    p.add_argument("--limit", type=int, default=oracle.DEFAULT_LIMIT)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="time a solver on seeded random forests")
    p.add_argument("--solver", default="one_one", choices=sorted(SOLVERS))
    p.add_argument("--sizes", default="1000,2000,4000")
    p.add_argument("--ratio", default="1:1")
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UnsupportedInstance, NoFairAssembly) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FCCError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
