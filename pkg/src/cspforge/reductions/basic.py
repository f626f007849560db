"""Normalising steps: unused variables, integer scaling, folding the vertex weighting."""

from __future__ import annotations

import math
from fractions import Fraction

from ..model import Constraint, Instance, WeightFunction
from .result import IdenticallyZero, ReductionResult, transformed


def strip_unused(inst: Instance) -> ReductionResult:
    """Remove variables that occur in no scope.

    Each removed variable contributes a factor ``q``, or ``sum(lambda)`` when a
    vertex weighting is present.
    """
    used = inst.used_variables()
    removed = [v for v in inst.variables if v not in used]
    if inst.vertex_weighting is None:
        base = Fraction(inst.q)
    else:
        base = inst.vertex_weighting.total()
        if base == 0 and removed:
            return IdenticallyZero("strip", "vertex weighting sums to 0 on an unused variable")
    out = inst.replace(variables=tuple(v for v in inst.variables if v in used))
    return transformed("strip", base ** len(removed), out, removed=removed, base=str(base))


def common_denominator(inst: Instance) -> int:
    """Least common multiple of every denominator in every table (and lambda)."""
    tables = list(inst.functions.values())
    if inst.vertex_weighting is not None:
        tables.append(inst.vertex_weighting)
    return math.lcm(1, *(v.denominator for f in tables for v in f.table.values()))


def _scaled(f: WeightFunction, n: int) -> WeightFunction:
    return WeightFunction(f.name, f.arity, {k: v * n for k, v in f.table.items()})


def scale_to_integers(inst: Instance) -> ReductionResult:
    """Multiply every table by the LCM ``N`` of its denominators; ``phi = N ** -k``.

    ``k`` counts applied function occurrences: one per constraint plus one per
    variable when a vertex weighting is present.
    """
    n = common_denominator(inst)
    k = len(inst.constraints)
    lam = inst.vertex_weighting
    if lam is not None:
        k += len(inst.variables)
        lam = _scaled(lam, n)
    out = inst.replace(
        functions={name: _scaled(f, n) for name, f in inst.functions.items()},
        vertex_weighting=lam,
    )
    return transformed("scale", Fraction(1, n**k), out, N=n, k=k)


def fold_vertex_weighting(inst: Instance) -> ReductionResult:
    """Turn the vertex weighting into one explicit unary constraint per variable."""
    lam = inst.vertex_weighting
    if lam is None:
        return transformed("fold", 1, inst, function=None)
    name = lam.name
    while name in inst.functions:
        name += "_"
    functions = dict(inst.functions)
    functions[name] = lam.renamed(name)
    extra = tuple(Constraint(name, (v,)) for v in inst.variables)
    out = inst.replace(functions=functions, constraints=inst.constraints + extra, vertex_weighting=None)
    return transformed("fold", 1, out, function=name)
