"""Command-line front end.

Exit codes: 0 success, 1 usage, 2 parse or validation error, 3 blow-up
guard, 4 verification failure.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path

from .errors import BlowUpError, CapExceeded, CSPError, InstanceError
from .model import (
    Instance,
    default_cap,
    evaluate_brute_force,
    evaluate_by_elimination,
    format_rational,
    parse_instance,
    serialize_instance,
    validate_instance,
)
from .reductions import BACKWARD, FORWARD, Certificate, IdenticallyZero, pipeline, projected_sizes, to_digraphs
from .reductions.pipeline import table_entries
from .verify import GenParams, check_route_agreement, gen_instance, verify_step

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_BLOWUP, EXIT_VERIFY = 0, 1, 2, 3, 4

STEPS = ["strip", "scale", "unweight", "unweight-back", "product", "product-back",
         "binarize", "binarize-back", "devertex", "devertex-back"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: error: {message}")


def _load(path: str) -> Instance:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    inst = parse_instance(text)
    problems = validate_instance(inst)
    if problems:
        raise InstanceError("; ".join(problems))
    if inst.q == 1:
        print("warning: domain of size 1 is trivial", file=sys.stderr)
    return inst


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_eval(args) -> int:
    inst = _load(args.file)
    if args.method == "brute":
        z = evaluate_brute_force(inst, args.cap)
    else:
        z = evaluate_by_elimination(inst, cap=args.cap)
    print(format_rational(z))
    return EXIT_OK


def cmd_reduce(args) -> int:
    inst = _load(args.file)
    if args.step in BACKWARD:
        if args.cert is None:
            raise UsageError(f"step {args.step!r} needs --cert with the forward certificate")
        cert = Certificate.from_text(Path(args.cert).read_text())
        res = BACKWARD[args.step][1](inst, cert)
    else:
        res = FORWARD[args.step](inst)
    if isinstance(res, IdenticallyZero):
        print(f"identically-zero {res.reason}")
        return EXIT_OK
    _write(args.out, serialize_instance(res.instance))
    if args.step not in BACKWARD:
        Path(args.cert or f"{args.out}.cert").write_text(res.certificate.to_text())
    print(format_rational(res.phi))
    return EXIT_OK


def cmd_pipeline(args) -> int:
    inst = _load(args.file)
    res = pipeline(inst, args.route, args.cap)
    for rec in res.steps:
        phi = "zero" if rec.phi is None else format_rational(rec.phi)
        print(f"step {rec.step} phi {phi} domain {rec.domain} vars {rec.variables} "
              f"constraints {rec.constraints} entries {rec.table_entries}")
    if isinstance(res.result, IdenticallyZero):
        print("phi_total zero")
        return EXIT_OK
    _write(args.out, serialize_instance(res.result.instance))
    if args.digraphs:
        Path(args.digraphs).write_text(to_digraphs(res.result.instance).to_text())
    print(f"phi_total {format_rational(res.result.phi)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = _load(args.file)
    if args.route:
        report = check_route_agreement(inst, args.cap, args.seed)
    else:
        report = verify_step(inst, args.step, args.cap, args.seed)
    print(report.line())
    if not report.passed and report.witness:
        print(report.witness, file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_gen(args) -> int:
    params = GenParams(
        q=args.domain,
        num_vars=args.vars,
        num_constraints=args.constraints,
        max_arity=args.max_arity,
        max_numerator=args.max_num,
        max_denominator=args.max_den,
        allow_lambda=args.lambda_,
        force_integer=args.integer,
        seed=args.seed,
    )
    _write(args.out, serialize_instance(gen_instance(params)))
    return EXIT_OK


def cmd_stats(args) -> int:
    inst = _load(args.file)
    print(f"domain {inst.q}")
    print(f"variables {len(inst.variables)} used {len(inst.used_variables())}")
    print(f"constraints {len(inst.constraints)}")
    for name in sorted(inst.functions):
        f = inst.functions[name]
        print(f"function {name} arity {f.arity} entries {len(f.table)} of {inst.q ** f.arity}")
    if inst.vertex_weighting is not None:
        print(f"vertexweight {inst.vertex_weighting.name} entries {len(inst.vertex_weighting.table)}")
    print(f"table_entries {table_entries(inst)}")
    for key, value in projected_sizes(inst, args.cap).items():
        print(f"projected {key} {value}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cspforge", description="Exact weighted #CSP evaluation and reductions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="print the partition function")
    p.add_argument("file")
    p.add_argument("--method", choices=["brute", "elim"], default="brute")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("reduce", help="apply one reduction step")
    p.add_argument("file")
    p.add_argument("--step", choices=STEPS, required=True)
    p.add_argument("--cert", default=None, help="certificate output (forward) or input (backward)")
    p.add_argument("--out", required=True, help="instance output; the certificate defaults to <out>.cert")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("pipeline", help="run route A or B")
    p.add_argument("file")
    p.add_argument("--route", choices=["A", "B"], required=True)
    p.add_argument("--digraphs", default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("verify", help="check a step or route by exhaustive evaluation")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--step", choices=STEPS)
    group.add_argument("--route", choices=["A", "B"])
    p.add_argument("--seed", default="-")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write a seeded random instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--domain", type=int, required=True)
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--constraints", type=int, required=True)
    p.add_argument("--max-arity", type=int, required=True)
    p.add_argument("--max-num", type=int, required=True)
    p.add_argument("--max-den", type=int, required=True)
    p.add_argument("--lambda", dest="lambda_", action="store_true")
    p.add_argument("--integer", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("stats", help="sizes and projected blow-up per route")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "cap", 0) is None:
            args.cap = default_cap()
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (BlowUpError, CapExceeded) as exc:
        print(f"blow-up guard: {exc}", file=sys.stderr)
        return EXIT_BLOWUP
    except (CSPError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
