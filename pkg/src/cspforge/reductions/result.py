"""Reduction results and their certificates.

A forward or backward transform either returns :class:`Transformed`, with
``Z(source) == phi * Z(instance)``, or :class:`IdenticallyZero` when the
source partition function is provably 0 and no target instance is needed.

Certificates are written as JSON sidecar files::

    {"step": "unweight", "phi": "1", "data": {...}}

``phi`` is a ``p/q`` (or ``p``) string and every weight inside ``data`` is
stored the same way; naming maps are lists of pairs or records.
"""

from __future__ import annotations

import json
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Union

from ..errors import InstanceError
from ..model import Instance, WeightFunction, format_rational


@dataclass(frozen=True)
class Certificate:
    step: str
    phi: Fraction
    data: dict[str, Any] = field(default_factory=dict)

    def to_text(self) -> str:
        payload = {"step": self.step, "phi": format_rational(self.phi), "data": self.data}
        return json.dumps(payload, indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Certificate:
        try:
            payload = json.loads(text)
            return cls(payload["step"], Fraction(payload["phi"]), payload.get("data", {}))
        except (ValueError, KeyError, TypeError) as exc:
            raise InstanceError(f"malformed certificate: {exc}") from exc

    def expect(self, step: str) -> None:
        if self.step != step:
            raise InstanceError(f"certificate is for step {self.step!r}, expected {step!r}")


@dataclass(frozen=True)
class Transformed:
    phi: Fraction
    instance: Instance
    certificate: Certificate

    def __post_init__(self) -> None:
        if self.phi <= 0:
            raise ValueError(f"reduction factor must be positive, got {self.phi}")


@dataclass(frozen=True)
class IdenticallyZero:
    step: str
    reason: str = ""


ReductionResult = Union[Transformed, IdenticallyZero]


def function_to_data(f: WeightFunction) -> dict[str, Any]:
    return {
        "name": f.name,
        "arity": f.arity,
        "table": [[list(k), format_rational(f.table[k])] for k in sorted(f.table)],
    }


def function_from_data(data: dict[str, Any]) -> WeightFunction:
    return WeightFunction(
        data["name"], data["arity"], {tuple(k): Fraction(v) for k, v in data["table"]}
    )


def fresh_names(prefix: str, count: int, taken: Iterable[str]) -> list[str]:
    """``count`` names ``prefix1, prefix2, ...`` skipping any already taken."""
    taken = set(taken)
    out: list[str] = []
    i = 1
    while len(out) < count:
        name = f"{prefix}{i}"
        if name not in taken:
            out.append(name)
        i += 1
    return out


def transformed(step: str, phi: Fraction | int, instance: Instance, **data: Any) -> Transformed:
    phi = Fraction(phi)
    return Transformed(phi, instance, Certificate(step, phi, data))
