"""Many functions to one: the pointwise product ``g(a_1, ..., a_l) = prod g_j(a_j)``.

Forward, a constraint on ``g_j`` is padded with blocks of fresh variables for
every other component, each of which sums to ``M_j = sum(g_j)``; the factor
``chi`` collects those sums. Backward, a ``g`` constraint is split at the
component boundaries.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from math import prod

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

PRODUCT_NAME = "g"


@dataclass(frozen=True)
class ProductFunction:
    g: WeightFunction
    components: tuple[WeightFunction, ...]
    totals: tuple[Fraction, ...]

    @property
    def arities(self) -> tuple[int, ...]:
        return tuple(f.arity for f in self.components)

    def certificate_data(self) -> dict:
        return {
            "g": self.g.name,
            "arity": self.g.arity,
            "arities": list(self.arities),
            "order": [f.name for f in self.components],
            "components": [function_to_data(f) for f in self.components],
            "totals": [str(m) for m in self.totals],
        }


def build_product_function(
    functions: Sequence[WeightFunction], name: str = PRODUCT_NAME, cap: int | None = None
) -> ProductFunction:
    """Product of ``functions`` in the given order.

    An empty list yields the constant-1 unary function, which lets a
    constraint-free instance pass through the binary-constraint route.
    """
    for f in functions:
        if f.is_zero():
            raise InstanceError(f"component {f.name!r} is identically zero")
    if not functions:
        return ProductFunction(WeightFunction(name, 1, {(0,): 1}), (), ())
    cap = default_cap() if cap is None else cap
    entries = prod(len(f.table) for f in functions)
    if entries > cap:
        raise BlowUpError("product", entries, cap)

    table = {}
    for parts in cartesian(*(f.table.items() for f in functions)):
        point = tuple(a for key, _ in parts for a in key)
        table[point] = prod((v for _, v in parts), start=Fraction(1))
    g = WeightFunction(name, sum(f.arity for f in functions), table)
    return ProductFunction(g, tuple(functions), tuple(f.total() for f in functions))


def product_forward(inst: Instance, cap: int | None = None) -> ReductionResult:
    if inst.vertex_weighting is not None:
        raise InstanceError("product needs an instance without vertex weighting; fold it first")
    used = inst.used_functions()
    zero_used = sorted(n for n in used if inst.functions[n].is_zero())
    if zero_used:
        return IdenticallyZero("product", f"constraint on identically-zero function {zero_used[0]!r}")

    components = [inst.functions[n] for n in sorted(inst.functions) if not inst.functions[n].is_zero()]
    pf = build_product_function(components, cap=cap)
    if not components:
        # No functions means no constraints; g is a placeholder.
        out = inst.replace(functions={pf.g.name: pf.g})
        return transformed("product", 1, out, **pf.certificate_data())

    position = {f.name: j for j, f in enumerate(components)}
    pad_needed = sum(pf.g.arity - inst.functions[c.function].arity for c in inst.constraints)
    pads = iter(fresh_names("p", pad_needed, inst.variables))
    new_vars: list[str] = []
    constraints = []
    chi = Fraction(1)
    for c in inst.constraints:
        own = position[c.function]
        scope: list[str] = []
        for j, f in enumerate(components):
            if j == own:
                scope.extend(c.scope)
            else:
                block = [next(pads) for _ in range(f.arity)]
                new_vars.extend(block)
                scope.extend(block)
                chi *= pf.totals[j]
        constraints.append(Constraint(pf.g.name, tuple(scope)))

    out = Instance(inst.q, {pf.g.name: pf.g}, inst.variables + tuple(new_vars), tuple(constraints))
    return transformed("product", 1 / chi, out, chi=str(chi), **pf.certificate_data())


def product_backward(inst: Instance, cert: Certificate) -> ReductionResult:
    cert.expect("product")
    data = cert.data
    g_name, arity = data["g"], data["arity"]
    components = [function_from_data(f) for f in data["components"]]
    constraints = []
    for c in inst.constraints:
        if c.function != g_name:
            raise InstanceError(f"constraint uses {c.function!r}, expected {g_name!r}")
        if len(c.scope) != arity:
            raise InstanceError(f"scope length {len(c.scope)} does not match product arity {arity}")
        start = 0
        for f in components:
            constraints.append(Constraint(f.name, c.scope[start : start + f.arity]))
            start += f.arity
    out = Instance(inst.q, {f.name: f for f in components}, inst.variables, tuple(constraints))
    return transformed("product-back", 1, out, order=data["order"])
