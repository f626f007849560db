"""Integer weights to relations: every weight ``f(a)`` becomes ``f(a)`` fresh domain elements.

The relation ``R(f)`` has one ``(a, w)`` tuple for each auxiliary element
``w`` created for the pair ``(f, a)``. Forward, every constraint gains a new
last variable that ranges over those elements; backward, constraints that
share a last variable are merged back into one weighted constraint.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

from scipy.cluster.hierarchy import DisjointSet

from ..errors import BlowUpError, InstanceError
from ..model import Constraint, Instance, WeightFunction, default_cap
from .result import (
    Certificate,
    IdenticallyZero,
    ReductionResult,
    fresh_names,
    function_from_data,
    function_to_data,
    transformed,
)


@dataclass(frozen=True)
class AuxElement:
    index: int
    name: str
    function: str
    point: tuple[int, ...]
    copy: int


@dataclass(frozen=True)
class GammaSignature:
    q: int
    size: int
    relations: dict[str, WeightFunction]  # keyed by source function name
    aux: tuple[AuxElement, ...]

    @property
    def elements(self) -> list[str]:
        return [str(a) for a in range(self.q)] + [w.name for w in self.aux]


def gamma_size(functions: Iterable[WeightFunction], q: int) -> int:
    return q + sum(int(v) for f in functions for v in f.table.values())


def build_gamma(functions: Iterable[WeightFunction], q: int, cap: int | None = None) -> GammaSignature:
    functions = sorted(functions, key=lambda f: f.name)
    for f in functions:
        bad = [k for k, v in f.table.items() if v.denominator != 1]
        if bad:
            raise InstanceError(f"function {f.name!r} has non-integer value at {bad[0]}")
    cap = default_cap() if cap is None else cap
    size = gamma_size(functions, q)
    if size > cap:
        raise BlowUpError("unweight", size, cap)

    relations: dict[str, WeightFunction] = {}
    aux: list[AuxElement] = []
    nxt = q
    for f in functions:
        tuples = []
        for point in sorted(f.table):
            for i in range(1, int(f.table[point]) + 1):
                name = "_".join(["w", f.name, *map(str, point), str(i)])
                aux.append(AuxElement(nxt, name, f.name, point, i))
                tuples.append(point + (nxt,))
                nxt += 1
        relations[f.name] = WeightFunction.relation(f"R_{f.name}", f.arity + 1, tuples)
    return GammaSignature(q, size, relations, tuple(aux))


def unweight_forward(inst: Instance, cap: int | None = None) -> ReductionResult:
    if inst.vertex_weighting is not None:
        raise InstanceError("unweight needs an instance without vertex weighting; fold it first")
    if not inst.constraints:
        return transformed("unweight", 1, inst, q=inst.q, size=inst.q, functions=[], relations={}, aux=[])
    zero_used = sorted(n for n in inst.used_functions() if inst.functions[n].is_zero())
    if zero_used:
        return IdenticallyZero("unweight", f"constraint on identically-zero function {zero_used[0]!r}")

    gamma = build_gamma(inst.functions.values(), inst.q, cap)
    fresh = fresh_names("k", len(inst.constraints), inst.variables)
    constraints = tuple(
        Constraint(gamma.relations[c.function].name, c.scope + (vk,))
        for c, vk in zip(inst.constraints, fresh)
    )
    n0 = len(inst.variables) - len(inst.used_variables())
    out = Instance(
        gamma.size,
        {r.name: r for r in gamma.relations.values()},
        inst.variables + tuple(fresh),
        constraints,
    )
    return transformed(
        "unweight",
        Fraction(inst.q, gamma.size) ** n0,
        out,
        q=inst.q,
        size=gamma.size,
        functions=[function_to_data(inst.functions[n]) for n in sorted(inst.functions)],
        relations={r.name: fname for fname, r in gamma.relations.items()},
        aux=[[w.index, w.name, w.function, list(w.point), w.copy] for w in gamma.aux],
    )


def unweight_backward(inst: Instance, cert: Certificate) -> ReductionResult:
    cert.expect("unweight")
    data = cert.data
    origin: dict[str, str] = data["relations"]
    functions = {f["name"]: function_from_data(f) for f in data["functions"]}
    q, size = data["q"], data["size"]
    if inst.q != size:
        raise InstanceError(f"instance domain {inst.q} does not match recorded size {size}")
    for c in inst.constraints:
        if c.function not in origin:
            raise InstanceError(f"relation {c.function!r} is not recorded in the certificate")

    lasts = {c.scope[-1] for c in inst.constraints}
    inner = {v for c in inst.constraints for v in c.scope[:-1]}
    clash = lasts & inner
    if clash:
        return IdenticallyZero("unweight-back", f"auxiliary variable {min(clash)!r} also in a prefix position")

    groups: dict[str, list[Constraint]] = {}
    for c in inst.constraints:
        groups.setdefault(c.scope[-1], []).append(c)
    for w, members in groups.items():
        if len({origin[c.function] for c in members}) > 1:
            return IdenticallyZero("unweight-back", f"auxiliary variable {w!r} shared by different functions")

    merge = DisjointSet(inner)
    for members in groups.values():
        head = members[0].scope[:-1]
        for c in members[1:]:
            for u, v in zip(head, c.scope[:-1]):
                merge.merge(u, v)
    rep = {v: min(merge.subset(v)) for v in inner}

    constraints = tuple(
        Constraint(origin[members[0].function], tuple(rep[v] for v in members[0].scope[:-1]))
        for members in groups.values()
    )
    unused = [v for v in inst.variables if v not in lasts and v not in inner]
    variables = tuple(v for v in inst.variables if (v in inner and rep[v] == v) or v in unused)
    out = Instance(q, functions, variables, constraints)
    return transformed("unweight-back", Fraction(size, q) ** len(unused), out, merged={v: r for v, r in rep.items() if v != r})
