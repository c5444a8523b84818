"""Report records shared by every check.

A :class:`Report` states one relation ``lhs <rel> rhs`` between exact
numbers (``int`` or :class:`~fractions.Fraction`), the inputs needed to
recompute it, and whether it held. Numbers serialise as strings (``"7"`` or
``"49/3"``) so a JSON round trip is lossless.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Union

Number = Union[int, Fraction]

_RELATIONS = {"<=": operator.le, ">=": operator.ge, "==": operator.eq, "<": operator.lt, ">": operator.gt}


def fmt(x: Number) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_number(s: str) -> Fraction:
    return Fraction(s)


@dataclass
class Report:
    kind: str
    group: str
    inputs: dict[str, Any]
    lhs: Number
    rhs: Number
    relation: str = "<="
    theorem: bool = True
    extra: dict[str, Any] = field(default_factory=dict)
    seed: int | None = None
    instance: int | None = None

    @property
    def passed(self) -> bool:
        return bool(_RELATIONS[self.relation](Fraction(self.lhs), Fraction(self.rhs)))

    @property
    def slack(self) -> Fraction:
        """``rhs - lhs`` oriented so that a passing relation has nonnegative slack."""
        d = Fraction(self.rhs) - Fraction(self.lhs)
        return -d if self.relation in (">=", ">") else d

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "group": self.group,
            "seed": self.seed,
            "instance": self.instance,
            "inputs": self.inputs,
            "lhs": fmt(self.lhs),
            "rhs": fmt(self.rhs),
            "relation": self.relation,
            "slack": fmt(self.slack),
            "pass": self.passed,
            "theorem": self.theorem,
            "extra": self.extra,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Report":
        return cls(
            kind=d["kind"],
            group=d["group"],
            inputs=d["inputs"],
            lhs=parse_number(d["lhs"]),
            rhs=parse_number(d["rhs"]),
            relation=d["relation"],
            theorem=d["theorem"],
            extra=d.get("extra", {}),
            seed=d.get("seed"),
            instance=d.get("instance"),
        )
