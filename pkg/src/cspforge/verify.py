"""Exhaustive checking of reduction identities and a seeded instance generator."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .model import Constraint, Instance, WeightFunction, all_tuples, format_rational, partition_function, validate_instance
from .reductions import BACKWARD, FORWARD, Certificate, IdenticallyZero, ReductionResult, pipeline, unweight_forward


@dataclass(frozen=True)
class GenParams:
    q: int = 2
    num_vars: int = 3
    num_constraints: int = 3
    max_arity: int = 2
    max_numerator: int = 6
    max_denominator: int = 4
    allow_lambda: bool = False
    force_integer: bool = False
    seed: int = 0
    max_functions: int = 2


@dataclass(frozen=True)
class CheckReport:
    passed: bool
    lhs: Fraction
    phi: Fraction
    rhs: Fraction
    step: str = "-"
    seed: int | str = "-"
    witness: str | None = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def line(self) -> str:
        return " ".join(
            [self.verdict, self.step, str(self.seed), format_rational(self.lhs), format_rational(self.phi), format_rational(self.rhs)]
        )


def check_reduction(
    src: Instance,
    result: ReductionResult,
    cap: int | None = None,
    step: str | None = None,
    seed: int | str = "-",
) -> CheckReport:
    """Check ``Z(src) == phi * Z(target)`` exactly (``Z(src) == 0`` for IdenticallyZero)."""
    lhs = partition_function(src, cap)
    if isinstance(result, IdenticallyZero):
        step = step or result.step
        ok = lhs == 0
        return CheckReport(ok, lhs, Fraction(1), Fraction(0), step, seed, None if ok else f"claimed Z = 0: {result.reason}")
    step = step or result.certificate.step
    problems = validate_instance(result.instance)
    if problems:
        return CheckReport(False, lhs, result.phi, Fraction(0), step, seed, "invalid target: " + "; ".join(problems))
    rhs = partition_function(result.instance, cap)
    ok = lhs == result.phi * rhs
    witness = None if ok else f"Z(src) = {lhs} but phi * Z(target) = {result.phi * rhs}"
    return CheckReport(ok, lhs, result.phi, rhs, step, seed, witness)


def verify_step(inst: Instance, step: str, cap: int | None = None, seed: int | str = "-") -> CheckReport:
    """Check one named step; a backward step is checked on the forward image of ``inst``."""
    if step in FORWARD:
        return check_reduction(inst, FORWARD[step](inst), cap, step, seed)
    if step in BACKWARD:
        fwd_name, backward = BACKWARD[step]
        fwd = FORWARD[fwd_name](inst)
        if isinstance(fwd, IdenticallyZero):
            return check_reduction(inst, fwd, cap, fwd_name, seed)
        return check_reduction(fwd.instance, backward(fwd.instance, fwd.certificate), cap, step, seed)
    raise ValueError(f"unknown step {step!r}")


def check_route_agreement(inst: Instance, cap: int | None = None, seed: int | str = "-") -> CheckReport:
    """Both routes must give ``phi_A * Z_A == phi_B * Z_B == Z(inst)``."""
    z = partition_function(inst, cap)
    totals = {}
    for route in ("A", "B"):
        res = pipeline(inst, route, cap)
        if isinstance(res.result, IdenticallyZero):
            totals[route] = (Fraction(1), Fraction(0), Fraction(0))
        else:
            zr = partition_function(res.result.instance, cap)
            totals[route] = (res.result.phi, zr, res.result.phi * zr)
    ok = totals["A"][2] == z and totals["B"][2] == z
    phi_a, z_a, _ = totals["A"]
    witness = None if ok else f"Z = {z}, route A total {totals['A'][2]}, route B total {totals['B'][2]}"
    details = {"phi_B": totals["B"][0], "Z_B": totals["B"][1]}
    return CheckReport(ok, z, phi_a, z_a, "route", seed, witness, details)


def _weight(rng: random.Random, p: GenParams, zero_prob: float = 0.25) -> Fraction:
    if rng.random() < zero_prob:
        return Fraction(0)
    # Mostly 1..3, occasionally up to max_numerator, so blow-ups stay small.
    if rng.random() < 0.7:
        num = rng.randint(1, min(3, p.max_numerator))
    else:
        num = rng.randint(1, p.max_numerator)
    if p.force_integer or rng.random() < 0.5:
        return Fraction(num)
    return Fraction(num, rng.randint(1, p.max_denominator))


def _random_table(rng: random.Random, p: GenParams, arity: int, q: int) -> dict[tuple[int, ...], Fraction]:
    return {t: _weight(rng, p) for t in all_tuples(q, arity)}


def gen_instance(params: GenParams) -> Instance:
    """Deterministic random instance; ``num_vars`` and ``num_constraints`` are upper bounds.

    Unused variables, repeated scope variables, duplicated constraints, zero
    entries and (rarely) identically-zero functions all occur.
    """
    p = params
    rng = random.Random(p.seed)
    n = rng.randint(1, p.num_vars) if p.num_vars > 0 else 0
    m = rng.randint(0, p.num_constraints) if n else 0
    variables = [f"v{i}" for i in range(1, n + 1)]

    functions = []
    for j in range(1, rng.randint(1, max(1, p.max_functions)) + 1):
        arity = rng.randint(1, p.max_arity)
        table = {} if rng.random() < 0.05 else _random_table(rng, p, arity, p.q)
        functions.append(WeightFunction(f"f{j}", arity, table))

    constraints: list[Constraint] = []
    for _ in range(m):
        if constraints and rng.random() < 0.1:
            constraints.append(rng.choice(constraints))
            continue
        f = rng.choice(functions)
        constraints.append(Constraint(f.name, tuple(rng.choice(variables) for _ in range(f.arity))))

    lam = None
    if p.allow_lambda and rng.random() < 0.5:
        lam = WeightFunction("lam", 1, {(a,): _weight(rng, p, 0.15) for a in range(p.q)})
    return Instance(p.q, {f.name: f for f in functions}, tuple(variables), tuple(constraints), lam)


def gen_vertex_weighted_binary(params: GenParams) -> Instance:
    """Random instance over binary relations with a vertex weighting."""
    p = params
    rng = random.Random(p.seed)
    n = rng.randint(1, p.num_vars) if p.num_vars > 0 else 0
    m = rng.randint(0, p.num_constraints) if n else 0
    variables = [f"v{i}" for i in range(1, n + 1)]
    relations = []
    for j in range(1, rng.randint(1, max(1, p.max_functions)) + 1):
        pairs = [t for t in all_tuples(p.q, 2) if rng.random() < 0.6]
        relations.append(WeightFunction.relation(f"E{j}", 2, pairs))
    constraints = [
        Constraint(rng.choice(relations).name, (rng.choice(variables), rng.choice(variables))) for _ in range(m)
    ]
    lam = WeightFunction("lam", 1, {(a,): _weight(rng, p, 0.15) for a in range(p.q)})
    return Instance(p.q, {r.name: r for r in relations}, tuple(variables), tuple(constraints), lam)


def gen_unweight_violation(seed: int, q: int = 2) -> tuple[Instance, Certificate]:
    """A relational instance over a recorded signature whose Z is 0.

    Even seeds put an auxiliary variable in an argument position; odd seeds
    make two relations from different functions share one auxiliary variable.
    """
    rng = random.Random(seed)
    functions = []
    for name in ("f1", "f2"):
        arity = rng.randint(1, 2)
        functions.append(WeightFunction(name, arity, {t: Fraction(rng.randint(1, 2)) for t in all_tuples(q, arity)}))
    fwd = unweight_forward(Instance.build(q, functions, [(f.name, ["x"] * f.arity) for f in functions]))
    rel = {fname: rname for rname, fname in fwd.certificate.data["relations"].items()}
    (r1, a1), (r2, a2) = [(rel[f.name], f.arity) for f in functions]

    def args(k: int) -> list[str]:
        return [rng.choice(["a", "b"]) for _ in range(k)]

    if seed % 2 == 0:
        scope = args(a2)
        scope[rng.randrange(a2)] = "w"
        constraints = [(r1, args(a1) + ["w"]), (r2, scope + ["z"])]
    else:
        constraints = [(r1, args(a1) + ["w"]), (r2, args(a2) + ["w"])]
    inst = Instance.build(fwd.instance.q, fwd.instance.functions.values(), constraints)
    return inst, fwd.certificate
