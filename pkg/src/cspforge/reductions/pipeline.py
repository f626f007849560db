"""Composite reductions to an unweighted instance.

Route A (integer scaling, then weights to relations)::

    strip -> fold -> scale -> unweight

Route B (single function, binary relations, then blow-up)::

    strip -> fold -> product -> binarize -> devertex

``fold`` only does work when a vertex weighting is present. The factor of
the whole pipeline is the product of the step factors.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import BlowUpError
from ..model import Instance, default_cap
from .basic import common_denominator, fold_vertex_weighting, scale_to_integers, strip_unused
from .binarize import binarize_forward
from .devertex import devertex_forward
from .product import build_product_function, product_forward
from .result import Certificate, IdenticallyZero, ReductionResult, Transformed
from .unweight import unweight_forward


@dataclass(frozen=True)
class StepRecord:
    step: str
    phi: Fraction | None  # None when the step proved Z = 0
    domain: int
    variables: int
    constraints: int
    table_entries: int


@dataclass
class PipelineResult:
    route: str
    result: ReductionResult
    steps: list[StepRecord] = field(default_factory=list)
    certificates: list[Certificate] = field(default_factory=list)

    @property
    def phi(self) -> Fraction | None:
        if isinstance(self.result, IdenticallyZero):
            return None
        return self.result.phi

    @property
    def instance(self) -> Instance | None:
        return None if isinstance(self.result, IdenticallyZero) else self.result.instance


def table_entries(inst: Instance) -> int:
    return sum(len(f.table) for f in inst.functions.values()) + (
        len(inst.vertex_weighting.table) if inst.vertex_weighting is not None else 0
    )


def _record(step: str, inst: Instance, phi: Fraction | None) -> StepRecord:
    return StepRecord(step, phi, inst.q, len(inst.variables), len(inst.constraints), table_entries(inst))


ROUTES: dict[str, list[str]] = {
    "A": ["strip", "fold", "scale", "unweight"],
    "B": ["strip", "fold", "product", "binarize", "devertex"],
}


def pipeline(inst: Instance, route: str, domain_cap: int | None = None) -> PipelineResult:
    """Run a route; ``domain_cap`` bounds every intermediate domain and table."""
    cap = default_cap() if domain_cap is None else domain_cap
    steps: dict[str, Callable[[Instance], ReductionResult]] = {
        "strip": strip_unused,
        "fold": fold_vertex_weighting,
        "scale": scale_to_integers,
        "unweight": lambda i: unweight_forward(i, cap=cap),
        "product": lambda i: product_forward(i, cap=cap),
        "binarize": lambda i: binarize_forward(i, cap=cap),
        "devertex": lambda i: devertex_forward(i, cap=cap),
    }
    route = route.upper()
    if route not in ROUTES:
        raise ValueError(f"unknown route {route!r}")

    out = PipelineResult(route, Transformed(Fraction(1), inst, Certificate("start", Fraction(1))))
    out.steps.append(_record("input", inst, Fraction(1)))
    current, phi = inst, Fraction(1)
    for name in ROUTES[route]:
        res = steps[name](current)
        if isinstance(res, IdenticallyZero):
            out.steps.append(StepRecord(name, None, 0, 0, 0, 0))
            out.result = res
            return out
        if res.instance.q > cap:
            raise BlowUpError(name, res.instance.q, cap)
        current, phi = res.instance, phi * res.phi
        out.steps.append(_record(name, current, res.phi))
        out.certificates.append(res.certificate)
    out.result = Transformed(phi, current, Certificate(f"pipeline-{route}", phi, {"steps": ROUTES[route]}))
    return out


def projected_sizes(inst: Instance, cap: int | None = None) -> dict[str, int | str]:
    """Domain sizes each route would reach, computed without building the large steps."""
    cap = default_cap() if cap is None else cap
    stripped = strip_unused(inst)
    if isinstance(stripped, IdenticallyZero):
        return {"A_unweight_domain": "Z = 0", "B_devertex_domain": "Z = 0"}
    base = fold_vertex_weighting(stripped.instance).instance
    report: dict[str, int | str] = {}

    n = common_denominator(base)
    report["A_scale_N"] = n
    if base.constraints:
        report["A_unweight_domain"] = base.q + sum(int(v * n) for f in base.functions.values() for v in f.table.values())
    else:
        report["A_unweight_domain"] = base.q

    if any(base.functions[name].is_zero() for name in base.used_functions()):
        report["B_devertex_domain"] = "Z = 0"
        return report
    components = [base.functions[k] for k in sorted(base.functions) if not base.functions[k].is_zero()]
    s = sum(f.arity for f in components) or 1
    report["B_product_arity"] = s
    report["B_binarize_domain"] = base.q**s
    entries = math.prod(len(f.table) for f in components)
    if entries > cap:
        report["B_devertex_domain"] = f"not computed: product table has {entries} entries"
        return report
    g = build_product_function(components, cap=cap).g
    n_g = math.lcm(1, *(v.denominator for v in g.table.values()))
    report["B_devertex_domain"] = int(g.total() * n_g)
    return report
