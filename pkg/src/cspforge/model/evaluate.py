"""Exact partition-function evaluators.

Both evaluators rescale every table to integer numerators over a per-function
denominator, work in Python integers, and divide once at the end.
"""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from fractions import Fraction
from itertools import product

from ..errors import CapExceeded, InstanceError
from .types import Instance, WeightFunction, default_cap


def _integer_table(f: WeightFunction) -> tuple[dict[tuple[int, ...], int], int]:
    den = math.lcm(*(v.denominator for v in f.table.values())) if f.table else 1
    return {k: int(v * den) for k, v in f.table.items()}, den


def weight_of(inst: Instance, sigma: Mapping[str, int]) -> Fraction:
    """Weight of one configuration: product of constraint values (and vertex weights)."""
    missing = [v for v in inst.variables if v not in sigma]
    if missing:
        raise InstanceError(f"configuration leaves variables unassigned: {missing}")
    w = Fraction(1)
    for c in inst.constraints:
        w *= inst.functions[c.function].value(tuple(sigma[v] for v in c.scope))
        if w == 0:
            return w
    if inst.vertex_weighting is not None:
        lam = inst.vertex_weighting
        for v in inst.variables:
            w *= lam(sigma[v])
    return w


def evaluate_brute_force(inst: Instance, cap: int | None = None) -> Fraction:
    """Sum of ``weight_of`` over all ``q ** |V|`` configurations."""
    cap = default_cap() if cap is None else cap
    n = len(inst.variables)
    size = inst.q**n
    if size > cap:
        raise CapExceeded("brute-force enumeration needs q^|V| configurations", size, cap)

    index = {v: i for i, v in enumerate(inst.variables)}
    scaled = {name: _integer_table(f) for name, f in inst.functions.items()}
    checks = []
    denominator = 1
    for c in inst.constraints:
        table, den = scaled[c.function]
        checks.append((table, tuple(index[v] for v in c.scope)))
        denominator *= den
    lam_table = None
    if inst.vertex_weighting is not None:
        lam_table, lam_den = _integer_table(inst.vertex_weighting)
        denominator *= lam_den**n
    # Most selective (smallest support) constraints first so zeros short-circuit early.
    checks.sort(key=lambda tc: len(tc[0]))

    total = 0
    for sigma in product(range(inst.q), repeat=n):
        w = 1
        for table, positions in checks:
            w *= table.get(tuple(sigma[p] for p in positions), 0)
            if not w:
                break
        else:
            if lam_table is not None:
                for a in sigma:
                    w *= lam_table.get((a,), 0)
                    if not w:
                        break
            total += w
    return Fraction(total, denominator)


class _Factor:
    __slots__ = ("vars", "table")

    def __init__(self, vars_: tuple[str, ...], table: dict[tuple[int, ...], int]):
        self.vars = vars_
        self.table = table


def _constraint_factor(table: Mapping[tuple[int, ...], int], scope: Sequence[str]) -> _Factor:
    distinct = tuple(dict.fromkeys(scope))
    first = {v: scope.index(v) for v in distinct}
    out: dict[tuple[int, ...], int] = {}
    for point, value in table.items():
        if all(point[i] == point[first[v]] for i, v in enumerate(scope)):
            key = tuple(point[first[v]] for v in distinct)
            out[key] = out.get(key, 0) + value
    return _Factor(distinct, out)


def _join(a: _Factor, b: _Factor, cap: int) -> _Factor:
    shared = [v for v in b.vars if v in a.vars]
    extra = [v for v in b.vars if v not in a.vars]
    a_pos = [a.vars.index(v) for v in shared]
    b_shared = [b.vars.index(v) for v in shared]
    b_extra = [b.vars.index(v) for v in extra]

    index: dict[tuple[int, ...], list[tuple[tuple[int, ...], int]]] = {}
    for point, value in b.table.items():
        key = tuple(point[i] for i in b_shared)
        index.setdefault(key, []).append((tuple(point[i] for i in b_extra), value))

    out: dict[tuple[int, ...], int] = {}
    for point, value in a.table.items():
        for rest, other in index.get(tuple(point[i] for i in a_pos), ()):
            out[point + rest] = value * other
        if len(out) > cap:
            raise CapExceeded("intermediate elimination table", len(out), cap)
    return _Factor(a.vars + tuple(extra), out)


def _merge_bucket(bucket: list[_Factor], cap: int) -> _Factor:
    """Join a bucket, always taking next the factor sharing the most variables."""
    bucket = sorted(bucket, key=lambda f: len(f.table))
    merged = bucket.pop(0)
    while bucket:
        best = max(
            range(len(bucket)),
            key=lambda j: (len(set(bucket[j].vars) & set(merged.vars)) - len(bucket[j].vars), -len(bucket[j].table)),
        )
        merged = _join(merged, bucket.pop(best), cap)
        if not merged.table:
            break
    return merged


def _combine_same_scope(factors: list[_Factor], cap: int) -> list[_Factor]:
    by_scope: dict[frozenset, _Factor] = {}
    for f in factors:
        key = frozenset(f.vars)
        by_scope[key] = _join(by_scope[key], f, cap) if key in by_scope else f
    return list(by_scope.values())


def _sum_out(f: _Factor, var: str) -> _Factor:
    pos = f.vars.index(var)
    out: dict[tuple[int, ...], int] = {}
    for point, value in f.table.items():
        key = point[:pos] + point[pos + 1 :]
        out[key] = out.get(key, 0) + value
    return _Factor(f.vars[:pos] + f.vars[pos + 1 :], {k: v for k, v in out.items() if v})


def _min_degree_pick(candidates: list[str], factors: list[_Factor]) -> str:
    best, best_deg = None, None
    for v in candidates:
        neighbours = set()
        for f in factors:
            if v in f.vars:
                neighbours.update(f.vars)
        deg = len(neighbours) - 1
        if best_deg is None or deg < best_deg:
            best, best_deg = v, deg
    return best


def evaluate_by_elimination(
    inst: Instance,
    order: Sequence[str] | None = None,
    cap: int | None = None,
) -> Fraction:
    """Sparse variable elimination.

    Each step multiplies the factors mentioning the eliminated variable and
    sums it out. ``cap`` bounds the number of nonzero entries of any
    intermediate table. Without ``order`` the variable of least current
    degree is eliminated next (ties go to declaration order).
    """
    cap = default_cap() if cap is None else cap
    if order is not None and sorted(order) != sorted(inst.variables):
        raise InstanceError("elimination order must be a permutation of the instance variables")

    denominator = 1
    scaled = {name: _integer_table(f) for name, f in inst.functions.items()}
    factors: list[_Factor] = []
    for c in inst.constraints:
        table, den = scaled[c.function]
        factors.append(_constraint_factor(table, c.scope))
        denominator *= den
    if inst.vertex_weighting is not None:
        lam_table, lam_den = _integer_table(inst.vertex_weighting)
        for v in inst.variables:
            factors.append(_Factor((v,), dict(lam_table)))
        denominator *= lam_den ** len(inst.variables)

    factors = _combine_same_scope(factors, cap)
    mentioned = {v for f in factors for v in f.vars}
    free = sum(1 for v in inst.variables if v not in mentioned)
    scalar = inst.q**free

    pending = [v for v in (order if order is not None else inst.variables) if v in mentioned]
    while pending:
        v = pending[0] if order is not None else _min_degree_pick(pending, factors)
        pending.remove(v)
        bucket = [f for f in factors if v in f.vars]
        factors = [f for f in factors if v not in f.vars]
        merged = _merge_bucket(bucket, cap)
        if len(merged.table) > cap:
            raise CapExceeded("intermediate elimination table", len(merged.table), cap)
        reduced = _sum_out(merged, v)
        if not reduced.table:
            return Fraction(0)
        factors.append(reduced)

    for f in factors:
        scalar *= f.table.get((), 0)
    return Fraction(scalar, denominator)


def partition_function(inst: Instance, cap: int | None = None) -> Fraction:
    """Brute force when ``q ** |V|`` fits under the cap, elimination otherwise."""
    cap = default_cap() if cap is None else cap
    if inst.q ** len(inst.variables) <= cap:
        return evaluate_brute_force(inst, cap)
    return evaluate_by_elimination(inst, cap=cap)
