"""One ``r``-ary function to binary relations plus a vertex weighting.

The new domain is ``D^r`` in lexicographic order, the vertex weighting is
``g`` itself, and ``beta_ik(a, b) = [a_i == b_k]``. Each constraint of the
source becomes a variable; two scope positions holding the same source
variable are tied together by the matching ``beta`` relation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from scipy.cluster.hierarchy import DisjointSet

from ..errors import BlowUpError, InstanceError
from ..model import Constraint, Instance, WeightFunction, all_tuples, default_cap
from .result import (
    Certificate,
    ReductionResult,
    function_from_data,
    function_to_data,
    transformed,
)

LAMBDA_NAME = "lam"


def beta_name(i: int, k: int) -> str:
    return f"b_{i}_{k}"


def element_index(point: tuple[int, ...], q: int) -> int:
    idx = 0
    for a in point:
        idx = idx * q + a
    return idx


@dataclass(frozen=True)
class BinarySignature:
    q: int
    r: int
    elements: tuple[tuple[int, ...], ...]
    vertex_weighting: WeightFunction
    betas: dict[tuple[int, int], WeightFunction]


def binarize_build(
    g: WeightFunction, q: int, pairs: set[tuple[int, int]] | None = None, cap: int | None = None
) -> BinarySignature:
    """Build the domain ``D^r``, the weighting and the ``beta`` relations.

    ``pairs`` restricts which ``(i, k)`` relations are materialised (1-based);
    by default all ``r * r`` are built.
    """
    r = g.arity
    cap = default_cap() if cap is None else cap
    size = q**r
    if size > cap:
        raise BlowUpError("binarize", size, cap)
    if pairs is None:
        pairs = {(i, k) for i in range(1, r + 1) for k in range(1, r + 1)}
    entries = len(pairs) * q ** (2 * r - 1)
    if entries > cap:
        raise BlowUpError("binarize", entries, cap)

    elements = tuple(all_tuples(q, r))
    lam = WeightFunction(LAMBDA_NAME, 1, {(element_index(k, q),): v for k, v in g.table.items()})
    betas = {}
    for i, k in sorted(pairs):
        tuples = [
            (x, y)
            for x, a in enumerate(elements)
            for y, b in enumerate(elements)
            if a[i - 1] == b[k - 1]
        ]
        betas[(i, k)] = WeightFunction.relation(beta_name(i, k), 2, tuples)
    return BinarySignature(q, r, elements, lam, betas)


def _single_function(inst: Instance) -> WeightFunction:
    used = inst.used_functions()
    if len(used) > 1:
        raise InstanceError(f"binarize needs a single function, constraints use {sorted(used)}")
    if used:
        return inst.functions[used.pop()]
    if len(inst.functions) == 1:
        return next(iter(inst.functions.values()))
    raise InstanceError("binarize cannot identify the function g")


def binarize_forward(inst: Instance, minimal: bool = False, cap: int | None = None) -> ReductionResult:
    """Constraints become variables over ``D^r`` weighted by ``g``.

    By default every ordered pair of positions holding the same variable gets
    a ``beta`` constraint, reflexive pairs included. ``minimal=True`` links
    consecutive occurrences only, which has the same partition function.
    """
    if inst.vertex_weighting is not None:
        raise InstanceError("binarize needs an instance without vertex weighting")
    g = _single_function(inst)
    r, q = g.arity, inst.q
    names = [f"k{j}" for j in range(1, len(inst.constraints) + 1)]

    occurrences: dict[str, list[tuple[str, int]]] = {}
    for name, c in zip(names, inst.constraints):
        for i, v in enumerate(c.scope, start=1):
            occurrences.setdefault(v, []).append((name, i))

    links: list[tuple[str, str, int, int]] = []
    for occ in occurrences.values():
        if minimal:
            pairs = zip(occ, occ[1:])
        else:
            pairs = ((a, b) for a in occ for b in occ)
        links.extend((u, v, i, k) for (u, i), (v, k) in pairs)

    sig = binarize_build(g, q, {(i, k) for _, _, i, k in links}, cap)
    constraints = tuple(Constraint(beta_name(i, k), (u, v)) for u, v, i, k in links)
    out = Instance(
        q**r,
        {b.name: b for b in sig.betas.values()},
        tuple(names),
        constraints,
        sig.vertex_weighting,
    )
    n0 = len(inst.variables) - len(occurrences)
    return transformed(
        "binarize",
        Fraction(q) ** n0,
        out,
        q=q,
        r=r,
        g=function_to_data(g),
        vertex_weighting=LAMBDA_NAME,
        betas={beta_name(i, k): [i, k] for i in range(1, r + 1) for k in range(1, r + 1)},
        elements=[list(a) for a in sig.elements],
        variables={name: list(c.scope) for name, c in zip(names, inst.constraints)},
    )


def binarize_backward(inst: Instance, cert: Certificate) -> ReductionResult:
    """Merge coordinates ``(u, i) ~ (v, k)`` along every ``beta_ik(u, v)`` constraint.

    Each class of the closure becomes a variable over ``D``, and each source
    variable ``v`` contributes ``g(class(v, 1), ..., class(v, r))``.
    """
    cert.expect("binarize")
    data = cert.data
    q, r = data["q"], data["r"]
    g = function_from_data(data["g"])
    betas: dict[str, list[int]] = data["betas"]
    if inst.q != q**r:
        raise InstanceError(f"instance domain {inst.q} is not {q}^{r}")
    lam = inst.vertex_weighting
    if lam is None:
        raise InstanceError("binarize-back needs the vertex weighting")
    expected = {(element_index(k, q),): v for k, v in g.table.items()}
    if lam.table != expected:
        raise InstanceError("vertex weighting does not match the recorded g table")

    coords = [(v, i) for v in inst.variables for i in range(1, r + 1)]
    classes = DisjointSet(coords)
    for c in inst.constraints:
        if len(c.scope) != 2:
            raise InstanceError(f"constraint on {c.function!r} is not binary")
        if c.function not in betas:
            raise InstanceError(f"relation {c.function!r} is not recorded in the certificate")
        i, k = betas[c.function]
        classes.merge((c.scope[0], i), (c.scope[1], k))

    label: dict[tuple[str, int], str] = {}
    variables: list[str] = []
    for coord in coords:
        rep = min(classes.subset(coord))
        name = f"{rep[0]}_{rep[1]}"
        if coord == rep:
            variables.append(name)
        label[coord] = name

    constraints = tuple(
        Constraint(g.name, tuple(label[(v, i)] for i in range(1, r + 1))) for v in inst.variables
    )
    out = Instance(q, {g.name: g}, tuple(variables), constraints)
    class_map = {f"{v}_{i}": name for (v, i), name in label.items()}
    return transformed("binarize-back", 1, out, classes=class_map)
