"""Line-oriented text format for instances.

Example::

    domain 2
    function f 2
    0 0 : 1/2
    1 1 : 3
    end
    relation E 2
    0 1
    end
    vertexweight lam
    0 : 1
    1 : 3
    end
    var u v
    constraint f u u

``#`` starts a comment. Unlisted table entries are 0.
"""

from __future__ import annotations

import re
from collections.abc import Iterable
from fractions import Fraction

from ..errors import ParseError
from .types import IDENT_RE, Constraint, Instance, WeightFunction, format_rational

_WEIGHT_RE = re.compile(r"^(\d+)(?:/(\d+))?$")


def _parse_weight(token: str, line: int) -> Fraction:
    if token.startswith("-"):
        raise ParseError(f"negative weight {token!r}", line)
    m = _WEIGHT_RE.match(token)
    if not m:
        raise ParseError(f"malformed weight {token!r}", line)
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ParseError(f"zero denominator in {token!r}", line)
    return Fraction(int(num), int(den) if den is not None else 1)


def _parse_int(token: str, line: int, what: str) -> int:
    if not token.isdigit():
        raise ParseError(f"expected nonnegative integer for {what}, got {token!r}", line)
    return int(token)


def _ident(token: str, line: int) -> str:
    if not IDENT_RE.match(token):
        raise ParseError(f"invalid identifier {token!r}", line)
    return token


def parse_instance(text: str | Iterable[str]) -> Instance:
    lines = text.splitlines() if isinstance(text, str) else [ln.rstrip("\n") for ln in text]

    q: int | None = None
    functions: dict[str, WeightFunction] = {}
    lam: WeightFunction | None = None
    variables: dict[str, None] = {}
    constraints: list[tuple[Constraint, int]] = []

    # Open block state: (kind, name, arity, table, start line)
    block: tuple[str, str, int, dict, int] | None = None

    for lineno, raw in enumerate(lines, start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue

        if block is not None:
            kind, name, arity, table, _ = block
            if tokens == ["end"]:
                wf = WeightFunction(name, arity, table)
                if kind == "vertexweight":
                    lam = wf
                else:
                    functions[name] = wf
                block = None
                continue
            if kind == "relation":
                point_tokens, value = tokens, Fraction(1)
            else:
                if ":" not in tokens:
                    raise ParseError("table line needs '<tuple> : <weight>'", lineno)
                sep = tokens.index(":")
                if sep != len(tokens) - 2:
                    raise ParseError("table line needs exactly one weight after ':'", lineno)
                point_tokens, value = tokens[:sep], _parse_weight(tokens[-1], lineno)
            if len(point_tokens) != arity:
                raise ParseError(f"arity mismatch: {name!r} has arity {arity}, tuple has {len(point_tokens)}", lineno)
            point = tuple(_parse_int(t, lineno, "domain element") for t in point_tokens)
            if any(a >= q for a in point):
                raise ParseError(f"tuple {point} outside domain of size {q}", lineno)
            if point in table:
                raise ParseError(f"duplicate entry for {point} in {name!r}", lineno)
            table[point] = value
            continue

        head, args = tokens[0], tokens[1:]
        if q is None and head != "domain":
            raise ParseError("first directive must be 'domain <q>'", lineno)

        if head == "domain":
            if q is not None:
                raise ParseError("duplicate 'domain' directive", lineno)
            if len(args) != 1:
                raise ParseError("usage: domain <q>", lineno)
            q = _parse_int(args[0], lineno, "domain size")
            if q < 1:
                raise ParseError("domain size must be at least 1", lineno)
        elif head in ("function", "relation"):
            if len(args) != 2:
                raise ParseError(f"usage: {head} <name> <arity>", lineno)
            name = _ident(args[0], lineno)
            arity = _parse_int(args[1], lineno, "arity")
            if arity < 1:
                raise ParseError("arity must be at least 1", lineno)
            if name in functions:
                raise ParseError(f"duplicate function {name!r}", lineno)
            block = (head, name, arity, {}, lineno)
        elif head == "vertexweight":
            if len(args) != 1:
                raise ParseError("usage: vertexweight <name>", lineno)
            if lam is not None:
                raise ParseError("at most one vertexweight block is allowed", lineno)
            block = (head, _ident(args[0], lineno), 1, {}, lineno)
        elif head == "var":
            for v in args:
                variables.setdefault(_ident(v, lineno), None)
        elif head == "constraint":
            if not args:
                raise ParseError("usage: constraint <fname> <v1> ... <vr>", lineno)
            fname = _ident(args[0], lineno)
            scope = tuple(_ident(v, lineno) for v in args[1:])
            for v in scope:
                variables.setdefault(v, None)
            constraints.append((Constraint(fname, scope), lineno))
        elif head == "end":
            raise ParseError("'end' without an open block", lineno)
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)

    if block is not None:
        raise ParseError(f"block {block[1]!r} opened here is never closed", block[4])
    if q is None:
        raise ParseError("missing 'domain' directive")
    if lam is not None and lam.name in functions:
        raise ParseError(f"vertex weighting name {lam.name!r} clashes with a function")

    for c, lineno in constraints:
        f = functions.get(c.function)
        if f is None:
            raise ParseError(f"undeclared function {c.function!r}", lineno)
        if len(c.scope) != f.arity:
            raise ParseError(f"arity mismatch: {c.function!r} has arity {f.arity}, scope has {len(c.scope)}", lineno)

    return Instance(q, functions, tuple(variables), tuple(c for c, _ in constraints), lam)


def _table_lines(f: WeightFunction, with_weights: bool) -> list[str]:
    out = []
    for point in sorted(f.table):
        coords = " ".join(map(str, point))
        out.append(f"{coords} : {format_rational(f.table[point])}" if with_weights else coords)
    return out


def serialize_instance(inst: Instance) -> str:
    """Canonical text: sorted functions, tuples, variables and constraints; zeros omitted."""
    out = [f"domain {inst.q}"]
    for name in sorted(inst.functions):
        f = inst.functions[name]
        is_rel = f.is_relation() and not f.is_zero()
        out.append(f"{'relation' if is_rel else 'function'} {name} {f.arity}")
        out.extend(_table_lines(f, with_weights=not is_rel))
        out.append("end")
    if inst.vertex_weighting is not None:
        out.append(f"vertexweight {inst.vertex_weighting.name}")
        out.extend(_table_lines(inst.vertex_weighting, with_weights=True))
        out.append("end")
    if inst.variables:
        out.append("var " + " ".join(sorted(inst.variables)))
    for c in sorted(inst.constraints, key=lambda c: (c.function, c.scope)):
        out.append(" ".join(["constraint", c.function, *c.scope]))
    return "\n".join(out) + "\n"
