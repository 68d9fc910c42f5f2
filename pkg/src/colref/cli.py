"""Command-line interface.

Exit codes: 0 success, 1 failed verification, 2 unreadable input or bad
parameters, 3 contract violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import random
import sys
import time
from typing import Callable

from colref.bisim import bisimilarity_fast
from colref.engine import Policy, refine
from colref.errors import ContractViolation, ParseError
from colref.graph import Colouring, Digraph, EdgeColouredDigraph, TransitionSystem, UndirectedGraph, colouring_of, double, partition_of
from colref.individualise import Selector, branch_refine
from colref.io import ParsedInput, format_colouring, format_graph, read_graph
from colref.lowerbound.gadgets import gen_and_gadget
from colref.lowerbound.gk import gen_gk, gen_sk
from colref.lowerbound.verify import (
    PiCache,
    Report,
    all_specs,
    sample_specs,
    verify_agreement,
    verify_cost_recurrence,
    verify_discrete_on_x,
    verify_effective_ops,
    verify_gadget_lemma,
)
from colref.oracle import naive_coarsest_stable
from colref.random_instances import random_colouring, random_digraph
from colref.reductions import (
    refine_bistable_with_ledger,
    refine_edge_coloured_with_ledger,
    refine_undirected_with_ledger,
)

BENCH_COLUMNS = ["k", "n", "m", "cost", "new_colours", "classes", "seconds"]


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _expect(parsed: ParsedInput, *kinds: type) -> None:
    if not isinstance(parsed.graph, kinds):
        names = " or ".join(k.__name__ for k in kinds)
        raise ContractViolation(f"this command needs a {names} file, got {parsed.kind}")


def cmd_refine(args: argparse.Namespace) -> int:
    parsed = read_graph(args.input)
    policy = Policy(args.policy)
    colouring = parsed.colouring if parsed.has_colours else None
    ledger = None
    trace_lines: list[str] = []
    if args.command == "refine":
        _expect(parsed, Digraph)
        beta, ledger = refine(parsed.graph, parsed.colouring, policy=policy)
    elif args.command == "refine-undirected":
        _expect(parsed, UndirectedGraph)
        beta, ledger = refine_undirected_with_ledger(parsed.graph, colouring, policy)
    elif args.command == "refine-ec":
        _expect(parsed, EdgeColouredDigraph)
        beta, ledger = refine_edge_coloured_with_ledger(parsed.graph, colouring, policy)
    elif args.command == "refine-bistable":
        _expect(parsed, Digraph)
        beta, ledger = refine_bistable_with_ledger(parsed.graph, colouring, policy)
    elif args.command == "branch":
        _expect(parsed, Digraph, UndirectedGraph)
        g = parsed.graph if isinstance(parsed.graph, Digraph) else double(parsed.graph)
        trace = branch_refine(g, parsed.colouring, Selector(args.selector), policy)
        beta, ledger = trace.colouring, trace.ledger
        trace_lines = [f"individualise {s.vertex + 1} {s.classes_before} {s.classes_after}" for s in trace.steps]
    else:
        _expect(parsed, TransitionSystem)
        beta = colouring_of(bisimilarity_fast(parsed.graph))
    text = format_colouring(beta, args.json)
    if trace_lines and not args.json:
        text = "\n".join(trace_lines) + "\n" + text
    _emit(text, args.out)
    if args.ledger and ledger is not None:
        with open(args.ledger, "w", encoding="utf-8") as fh:
            fh.write(ledger.to_csv())
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    if args.family in ("gk", "sk"):
        if args.k is None or args.k < 2:
            raise UsageError("--k must be given and at least 2")
        g = gen_gk(args.k).graph if args.family == "gk" else gen_sk(args.k)
    else:
        if args.level is None or args.level < 1:
            raise UsageError("--level must be given and at least 1")
        g = gen_and_gadget(args.level).graph
    _emit(format_graph(g), args.out)
    return 0


def bench_rows(kmin: int, kmax: int, policy: Policy) -> list[dict]:
    rows = []
    for k in range(kmin, kmax + 1):
        inst = gen_gk(k)
        start = time.perf_counter()
        g = double(inst.graph)
        beta, ledger = refine(g, Colouring.unit(g.n), policy=policy, track_vertices=False)
        rows.append(
            {
                "k": k,
                "n": inst.n,
                "m": inst.graph.m,
                "cost": ledger.cost,
                "new_colours": ledger.total_new,
                "classes": beta.k,
                "seconds": round(time.perf_counter() - start, 4),
            }
        )
    return rows


def cmd_bench(args: argparse.Namespace) -> int:
    if args.family != "gk":
        raise UsageError(f"unknown family {args.family!r}")
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    w.writeheader()
    for row in bench_rows(args.kmin, args.kmax, Policy(args.policy)):
        w.writerow(row)
    _emit(buf.getvalue(), args.out)
    return 0


def verify_oracle(trials: int, nmax: int, seed: int) -> Report:
    report = Report(f"engine vs oracle, {trials} trials")
    rng = random.Random(seed)
    for t in range(trials):
        n = rng.randint(1, nmax)
        p = rng.choice([0.1, 0.3, 0.5])
        g = random_digraph(rng, n, p)
        alpha = random_colouring(rng, n, rng.randint(1, 5))
        want = naive_coarsest_stable(g, partition_of(alpha))
        for policy in Policy:
            beta, _ = refine(g, alpha, policy=policy)
            report.check(partition_of(beta) == want, f"trial {t} (n={n}, p={p}, {policy.value}): partitions differ")
    return report


def verify_gk(k: int) -> list[Report]:
    inst = gen_gk(k)
    cache = PiCache(inst)
    audit = Report(f"generator counts k={k}")
    counts = inst.component_counts()
    size = 1 << k
    expected = {"X": size, "Y": size, "XX": k * size, "YY": k * size, "X-XX": k * size, "YY-Y": k * size,
                "XX-YY": k * k * size, "gadgets": k - 1}
    for key, want in expected.items():
        audit.check(counts[key] == want, f"{key}: {counts[key]} != {want}")
    specs = list(all_specs(k)) if k <= 3 else sample_specs(k, 6, random.Random(k))
    return [
        audit,
        verify_agreement(k, specs, cache),
        verify_effective_ops(k, specs, cache),
        verify_discrete_on_x(k, cache=cache),
    ]


def cmd_verify(args: argparse.Namespace) -> int:
    if args.what == "gadget":
        if args.level is None or args.level < 1:
            raise UsageError("--level must be given and at least 1")
        reports = [verify_gadget_lemma(args.level)]
    elif args.what == "gk":
        if args.k is None or args.k < 2:
            raise UsageError("--k must be given and at least 2")
        reports = verify_gk(args.k)
    elif args.what == "recurrence":
        if args.k is None or not 2 <= args.k <= 4:
            raise UsageError("--k must be between 2 and 4")
        reports = [verify_cost_recurrence(args.k)]
    else:
        reports = [verify_oracle(args.trials, args.nmax, args.seed)]
    for r in reports:
        line = r.summary()
        if "bound" in r.info:
            line += f" (recurrence value {r.info['bound']})"
        print(line)
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="colref", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("refine", "refine-undirected", "refine-ec", "refine-bistable", "branch", "bisim"):
        p = sub.add_parser(name)
        p.add_argument("input")
        p.add_argument("--out")
        p.add_argument("--ledger", help="write the per-iteration cost ledger as CSV")
        p.add_argument("--policy", choices=[x.value for x in Policy], default="stack")
        p.add_argument("--json", action="store_true", help="emit a single JSON document")
        if name == "branch":
            p.add_argument("--selector", choices=[x.value for x in Selector], default="first")
        p.set_defaults(func=cmd_refine)

    p = sub.add_parser("gen")
    p.add_argument("family", choices=["gk", "sk", "and"])
    p.add_argument("--k", type=int)
    p.add_argument("--level", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench")
    p.add_argument("--family", default="gk")
    p.add_argument("--kmin", type=int, default=4)
    p.add_argument("--kmax", type=int, default=8)
    p.add_argument("--policy", choices=[x.value for x in Policy], default="stack")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify")
    p.add_argument("what", choices=["gadget", "gk", "recurrence", "oracle"])
    p.add_argument("--level", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--nmax", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler: Callable[[argparse.Namespace], int] = args.func
    try:
        return handler(args)
    except (ParseError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ContractViolation as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
