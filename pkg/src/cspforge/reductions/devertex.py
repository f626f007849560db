"""Vertex weighting to pure relations by blowing each element up into copies.

After scaling ``lambda`` to integers, element ``a`` is replaced by
``lambda(a)`` copies ``c_<a>_<i>`` and every relation ``beta`` by
``gamma(beta) = {(a_i, b_j) : (a, b) in beta}``. Summing over the copies
of a variable's value reproduces its vertex weight.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..errors import BlowUpError, InstanceError
from ..model import Constraint, Instance, WeightFunction, default_cap
from .result import (
    Certificate,
    IdenticallyZero,
    ReductionResult,
    function_from_data,
    function_to_data,
    transformed,
)


def gamma_name(beta: str) -> str:
    return f"gamma_{beta}"


def _check_binary_relations(inst: Instance) -> None:
    for f in inst.functions.values():
        if f.arity != 2:
            raise InstanceError(f"function {f.name!r} is not binary")
        if not f.is_relation():
            raise InstanceError(f"function {f.name!r} is weighted, not a relation")


def devertex_forward(inst: Instance, cap: int | None = None) -> ReductionResult:
    lam = inst.vertex_weighting
    if lam is None:
        raise InstanceError("devertex needs a vertex weighting")
    _check_binary_relations(inst)
    cap = default_cap() if cap is None else cap

    n = math.lcm(1, *(v.denominator for v in lam.table.values()))
    weights = {a: int(lam(a) * n) for a in range(inst.q)}
    size = sum(weights.values())
    if size > cap:
        raise BlowUpError("devertex", size, cap)
    if size == 0 and inst.variables:
        return IdenticallyZero("devertex", "vertex weighting is identically zero")

    copies: dict[int, list[int]] = {}
    names: list[list] = []
    for a in range(inst.q):
        for i in range(1, weights[a] + 1):
            copies.setdefault(a, []).append(len(names))
            names.append([len(names), f"c_{a}_{i}", a, i])

    entries = sum(weights[a] * weights[b] for f in inst.functions.values() for a, b in f.table)
    if entries > cap:
        raise BlowUpError("devertex", entries, cap)
    gammas = {}
    for name, beta in inst.functions.items():
        tuples = [(x, y) for a, b in beta.table for x in copies.get(a, ()) for y in copies.get(b, ())]
        gammas[name] = WeightFunction.relation(gamma_name(name), 2, tuples)

    constraints = tuple(Constraint(gammas[c.function].name, c.scope) for c in inst.constraints)
    # An empty blow-up only happens with no variables; keep a one-element domain.
    out = Instance(max(size, 1), {g.name: g for g in gammas.values()}, inst.variables, constraints)
    return transformed(
        "devertex",
        Fraction(1, n ** len(inst.variables)),
        out,
        q=inst.q,
        size=size,
        N=n,
        vertex_weighting=function_to_data(lam),
        copies=names,
        relations={gammas[b].name: b for b in sorted(gammas)},
        betas=[function_to_data(inst.functions[b]) for b in sorted(inst.functions)],
    )


def devertex_backward(inst: Instance, cert: Certificate) -> ReductionResult:
    """Replace each ``gamma(beta)`` by ``beta`` and restore the original weighting."""
    cert.expect("devertex")
    data = cert.data
    relations: dict[str, str] = data["relations"]
    betas = {f["name"]: function_from_data(f) for f in data["betas"]}
    lam = function_from_data(data["vertex_weighting"])
    if inst.q != max(data["size"], 1):
        raise InstanceError(f"instance domain {inst.q} does not match recorded size {data['size']}")
    constraints = []
    for c in inst.constraints:
        if c.function not in relations:
            raise InstanceError(f"relation {c.function!r} is not recorded in the certificate")
        constraints.append(Constraint(relations[c.function], c.scope))
    out = Instance(data["q"], betas, inst.variables, tuple(constraints), lam)
    return transformed("devertex-back", Fraction(data["N"]) ** len(inst.variables), out)
