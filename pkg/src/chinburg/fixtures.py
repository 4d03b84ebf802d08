"""Reference polynomials with their expected conductors and measure ratios."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from chinburg.polyz import IntPoly


@dataclass(frozen=True)
class FixtureEntry:
    label: str
    kind: str                          # "quadratic" | "linear"
    group: str                         # strong | known | example | counterexample
    first: IntPoly                     # a, or p for the linear form p*y + q
    second: IntPoly                    # b, or q
    conductors: tuple[int, ...]
    ratios: dict[int, Fraction]        # m = sum ratio_f * d_f
    proven: bool
    fails: int | None = None
    brv_permissible: bool = True

    @property
    def a(self) -> IntPoly:
        return self.first

    @property
    def b(self) -> IntPoly:
        return self.second


def raw_text() -> str:
    return resources.files("chinburg.data").joinpath("fixtures.json").read_text()


@lru_cache(maxsize=1)
def load() -> tuple[FixtureEntry, ...]:
    out = []
    for e in json.loads(raw_text()):
        quad = e["kind"] == "quadratic"
        out.append(FixtureEntry(
            label=e["label"], kind=e["kind"], group=e["group"],
            first=IntPoly.parse(e["a"] if quad else e["p"]),
            second=IntPoly.parse(e["b"] if quad else e["q"]),
            conductors=tuple(e["conductors"]),
            ratios={int(k): Fraction(v) for k, v in e["ratios"].items()},
            proven=e["proven"], fails=e.get("fails"),
            brv_permissible=e.get("brv_permissible", True),
        ))
    return tuple(out)


def get(label: str) -> FixtureEntry:
    for e in load():
        if e.label == label:
            return e
    raise KeyError(label)
