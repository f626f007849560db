"""Export of a binary relational instance as simultaneous digraph homomorphisms.

Relation ``i`` is the target digraph ``H_i`` on the domain; the constraints
on it form the source digraph ``G_i`` on the variables. A labelling counts
when it is a homomorphism ``G_i -> H_i`` for every ``i`` at once.

Text form::

    digraphs <k> <domain-size>
    V <x>            # one line per variable, isolated ones included
    H <i> <u> <v>
    G <i> <x> <y>
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import CapExceeded, InstanceError, ParseError
from ..model import Instance

SEARCH_CAP = 10**7


@dataclass(frozen=True)
class DigraphProblem:
    domain_size: int
    vertices: tuple[str, ...]
    names: tuple[str, ...]
    targets: tuple[frozenset[tuple[int, int]], ...]  # H_1..H_k
    sources: tuple[frozenset[tuple[str, str]], ...]  # G_1..G_k

    @property
    def k(self) -> int:
        return len(self.targets)

    def to_text(self) -> str:
        out = [f"digraphs {self.k} {self.domain_size}"]
        out.extend(f"V {v}" for v in self.vertices)
        for i, h in enumerate(self.targets, start=1):
            out.extend(f"H {i} {u} {v}" for u, v in sorted(h))
        for i, g in enumerate(self.sources, start=1):
            out.extend(f"G {i} {x} {y}" for x, y in sorted(g))
        return "\n".join(out) + "\n"

    @classmethod
    def from_text(cls, text: str) -> DigraphProblem:
        lines = [ln.split() for ln in text.splitlines() if ln.split()]
        if not lines or lines[0][0] != "digraphs" or len(lines[0]) != 3:
            raise ParseError("expected header 'digraphs <k> <domain-size>'", 1)
        k, n = int(lines[0][1]), int(lines[0][2])
        vertices: dict[str, None] = {}
        targets: list[set] = [set() for _ in range(k)]
        sources: list[set] = [set() for _ in range(k)]
        for lineno, tok in enumerate(lines[1:], start=2):
            if tok[0] == "V" and len(tok) == 2:
                vertices.setdefault(tok[1], None)
            elif tok[0] == "H" and len(tok) == 4:
                targets[int(tok[1]) - 1].add((int(tok[2]), int(tok[3])))
            elif tok[0] == "G" and len(tok) == 4:
                sources[int(tok[1]) - 1].add((tok[2], tok[3]))
                vertices.setdefault(tok[2], None)
                vertices.setdefault(tok[3], None)
            else:
                raise ParseError(f"unrecognised line {' '.join(tok)!r}", lineno)
        names = tuple(f"H{i}" for i in range(1, k + 1))
        return cls(n, tuple(vertices), names, tuple(map(frozenset, targets)), tuple(map(frozenset, sources)))


def to_digraphs(inst: Instance) -> DigraphProblem:
    if inst.vertex_weighting is not None:
        raise InstanceError("digraph export needs an instance without vertex weighting")
    names = tuple(sorted(inst.functions))
    for name in names:
        f = inst.functions[name]
        if f.arity != 2 or not f.is_relation():
            raise InstanceError(f"function {name!r} is not a binary relation")
    targets = tuple(frozenset(inst.functions[n].table) for n in names)
    edges: dict[str, set[tuple[str, str]]] = {n: set() for n in names}
    for c in inst.constraints:
        edges[c.function].add((c.scope[0], c.scope[1]))
    sources = tuple(frozenset(edges[n]) for n in names)
    return DigraphProblem(inst.q, inst.variables, names, targets, sources)


def count_homomorphisms(problem: DigraphProblem, cap: int = SEARCH_CAP) -> int:
    """Count labellings of the vertices that are homomorphisms ``G_i -> H_i`` for all ``i``.

    Backtracking over vertices; an edge is checked as soon as both ends are
    labelled. ``cap`` bounds the number of search nodes visited.
    """
    order = list(problem.vertices)
    position = {v: i for i, v in enumerate(order)}
    # checks[d]: edges whose later endpoint is vertex d, as (other, d_is_tail, H).
    checks: list[list[tuple[int, bool, frozenset]]] = [[] for _ in order]
    for h, g in zip(problem.targets, problem.sources):
        for x, y in g:
            px, py = position[x], position[y]
            if px >= py:
                checks[px].append((py, True, h))
            else:
                checks[py].append((px, False, h))

    n, q = len(order), problem.domain_size
    labels = [0] * n
    visited = 0

    def extend(depth: int) -> int:
        nonlocal visited
        if depth == n:
            return 1
        total = 0
        for a in range(q):
            visited += 1
            if visited > cap:
                raise CapExceeded("homomorphism search nodes", visited, cap)
            labels[depth] = a
            if all(
                ((a, labels[other]) if tail else (labels[other], a)) in h
                for other, tail, h in checks[depth]
            ):
                total += extend(depth + 1)
        return total

    return extend(0)
