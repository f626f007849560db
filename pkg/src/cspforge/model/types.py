"""Core value types: weight functions, constraints and instances.

All weights are :class:`fractions.Fraction` values. The domain of an
instance with ``q`` elements is ``range(q)``; auxiliary elements created by
reductions are plain integers as well, and their human-readable names live
in reduction certificates.
"""

from __future__ import annotations

import os
import re
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Union

Weight = Union[Fraction, int]
Key = tuple[int, ...]

IDENT_RE = re.compile(r"^[A-Za-z0-9_]+$")

DEFAULT_CAP = 10**6


def default_cap() -> int:
    """Enumeration cap, overridable through ``CSPFORGE_CAP``."""
    raw = os.environ.get("CSPFORGE_CAP")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_CAP


def format_rational(x: Fraction | int) -> str:
    """Render ``p`` for integers and ``p/q`` otherwise."""
    return str(Fraction(x))


def all_tuples(q: int, arity: int) -> Iterable[Key]:
    return product(range(q), repeat=arity)


@dataclass(frozen=True, eq=False)
class WeightFunction:
    """A sparse table from ``arity``-tuples over the domain to weights.

    Missing entries are 0. Exact zeros are dropped on construction so that
    two functions with the same nonzero entries compare equal.
    """

    name: str
    arity: int
    table: Mapping[Key, Weight] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: dict[Key, Weight] = {}
        for key, value in self.table.items():
            key = tuple(key)
            if isinstance(value, int) and not isinstance(value, bool):
                value = Fraction(value)
            if value == 0:
                continue
            clean[key] = value
        object.__setattr__(self, "table", clean)

    @classmethod
    def dense(cls, name: str, arity: int, q: int, values: Sequence[Weight | str]) -> WeightFunction:
        """Build from values listed in lexicographic tuple order."""
        tuples = list(all_tuples(q, arity))
        if len(values) != len(tuples):
            raise ValueError(f"expected {len(tuples)} values, got {len(values)}")
        return cls(name, arity, {t: Fraction(v) for t, v in zip(tuples, values)})

    @classmethod
    def relation(cls, name: str, arity: int, tuples: Iterable[Sequence[int]]) -> WeightFunction:
        return cls(name, arity, {tuple(t): Fraction(1) for t in tuples})

    def __call__(self, *args: int) -> Fraction:
        return self.table.get(args, Fraction(0))

    def value(self, t: Sequence[int]) -> Fraction:
        return self.table.get(tuple(t), Fraction(0))

    def is_relation(self) -> bool:
        return all(v == 1 for v in self.table.values())

    def is_zero(self) -> bool:
        return not self.table

    def total(self) -> Fraction:
        """Sum of the function over all tuples."""
        return sum(self.table.values(), Fraction(0))

    def renamed(self, name: str) -> WeightFunction:
        return WeightFunction(name, self.arity, self.table)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightFunction):
            return NotImplemented
        return (self.name, self.arity, self.table) == (other.name, other.arity, other.table)

    def __repr__(self) -> str:
        return f"WeightFunction({self.name!r}, {self.arity}, <{len(self.table)} entries>)"


@dataclass(frozen=True)
class Constraint:
    function: str
    scope: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "scope", tuple(self.scope))


@dataclass(frozen=True, eq=False)
class Instance:
    """A weighted #CSP instance.

    ``variables`` keeps declaration order, but equality treats it as a set and
    ``constraints`` as a multiset. When ``vertex_weighting`` is set it is
    applied once to every variable and never appears in ``constraints``.
    """

    q: int
    functions: Mapping[str, WeightFunction]
    variables: tuple[str, ...]
    constraints: tuple[Constraint, ...]
    vertex_weighting: WeightFunction | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "functions", dict(self.functions))
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "constraints", tuple(self.constraints))

    @classmethod
    def build(
        cls,
        q: int,
        functions: Iterable[WeightFunction] = (),
        constraints: Iterable[tuple[str, Sequence[str]] | Constraint] = (),
        variables: Iterable[str] = (),
        vertex_weighting: WeightFunction | None = None,
    ) -> Instance:
        """Convenience constructor; scope variables are declared on first use."""
        cons = [c if isinstance(c, Constraint) else Constraint(c[0], tuple(c[1])) for c in constraints]
        seen: dict[str, None] = dict.fromkeys(variables)
        for c in cons:
            for v in c.scope:
                seen.setdefault(v, None)
        return cls(q, {f.name: f for f in functions}, tuple(seen), tuple(cons), vertex_weighting)

    def replace(self, **changes) -> Instance:
        fields = {
            "q": self.q,
            "functions": self.functions,
            "variables": self.variables,
            "constraints": self.constraints,
            "vertex_weighting": self.vertex_weighting,
        }
        fields.update(changes)
        return Instance(**fields)

    def used_variables(self) -> set[str]:
        return {v for c in self.constraints for v in c.scope}

    def used_functions(self) -> set[str]:
        return {c.function for c in self.constraints}

    def occurrences(self) -> Counter:
        """Number of scope positions each variable occupies."""
        counts: Counter = Counter({v: 0 for v in self.variables})
        for c in self.constraints:
            counts.update(c.scope)
        return counts

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.q == other.q
            and self.functions == other.functions
            and set(self.variables) == set(other.variables)
            and len(self.variables) == len(other.variables)
            and Counter(self.constraints) == Counter(other.constraints)
            and self.vertex_weighting == other.vertex_weighting
        )

    def __repr__(self) -> str:
        lam = "" if self.vertex_weighting is None else f", lambda={self.vertex_weighting.name!r}"
        return (
            f"Instance(q={self.q}, functions={sorted(self.functions)}, "
            f"|V|={len(self.variables)}, |C|={len(self.constraints)}{lam})"
        )


def validate_instance(inst: Instance) -> list[str]:
    """Return a list of invariant violations; empty means the instance is valid."""
    problems: list[str] = []
    if not isinstance(inst.q, int) or inst.q < 1:
        problems.append(f"domain size must be a positive integer, got {inst.q!r}")
        return problems

    def check_function(f: WeightFunction, where: str) -> None:
        if not IDENT_RE.match(f.name):
            problems.append(f"{where} {f.name!r}: invalid identifier")
        if f.arity < 1:
            problems.append(f"{where} {f.name!r}: arity must be positive")
        for key, value in f.table.items():
            if len(key) != f.arity or any(not isinstance(a, int) or not 0 <= a < inst.q for a in key):
                problems.append(f"{where} {f.name!r}: tuple {key} outside domain^{f.arity}")
            if not isinstance(value, Fraction):
                problems.append(f"{where} {f.name!r}: non-canonical rational {value!r} at {key}")
            elif value < 0:
                problems.append(f"{where} {f.name!r}: negative weight {value} at {key}")

    for name, f in inst.functions.items():
        if name != f.name:
            problems.append(f"function registered as {name!r} is named {f.name!r}")
        check_function(f, "function")
    if inst.vertex_weighting is not None:
        lam = inst.vertex_weighting
        if lam.arity != 1:
            problems.append(f"vertex weighting {lam.name!r} must be unary")
        check_function(lam, "vertex weighting")
        if any(c.function == lam.name and lam.name not in inst.functions for c in inst.constraints):
            problems.append("vertex weighting used as an explicit constraint")

    if len(set(inst.variables)) != len(inst.variables):
        problems.append("duplicate variable declaration")
    for v in inst.variables:
        if not isinstance(v, str) or not IDENT_RE.match(v):
            problems.append(f"invalid variable identifier {v!r}")
    declared = set(inst.variables)
    for i, c in enumerate(inst.constraints):
        f = inst.functions.get(c.function)
        if f is None:
            problems.append(f"constraint {i}: unknown function {c.function!r}")
            continue
        if len(c.scope) != f.arity:
            problems.append(f"constraint {i}: arity mismatch, {c.function!r} has arity {f.arity} but scope has {len(c.scope)}")
        for v in c.scope:
            if v not in declared:
                problems.append(f"constraint {i}: unknown variable {v!r}")
    return problems
