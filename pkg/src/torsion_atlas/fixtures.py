"""Curve records and the vendored regression fixtures.

A curve record carries either five a-invariants or a bare j-invariant, an
optional label, and (in fixture files only) the expected torsion structure.
The two fixture files hold the minimal-conductor examples for the 24 torsion
structures and the CM regression curves; models were reconstructed from the
published Cremona tables and re-verified locally (minimality, conductor via
Tate's algorithm, torsion points where applicable) before vendoring.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .catalog import TorsionStructure
from .numkernel import parse_rational
from .weierstrass import WeierstrassModel


@dataclass(frozen=True)
class CurveRecord:
    label: str | None
    ainvs: tuple[Fraction, ...] | None
    j: Fraction | None
    expected: TorsionStructure | None

    def __post_init__(self):
        if (self.ainvs is None) == (self.j is None):
            raise ValueError("exactly one of ainvs and j must be present")

    def model(self) -> WeierstrassModel:
        if self.ainvs is None:
            raise ValueError("record has no model")
        return WeierstrassModel.from_ainvs(self.ainvs)


def record_from_json(obj: dict) -> CurveRecord:
    label = obj.get("label")
    ainvs = obj.get("ainvs")
    j = obj.get("j")
    expected = obj.get("expected")
    return CurveRecord(
        label=label,
        ainvs=tuple(parse_rational(str(a)) for a in ainvs) if ainvs is not None else None,
        j=parse_rational(str(j)) if j is not None else None,
        expected=TorsionStructure(*expected) if expected is not None else None,
    )


def parse_record_line(line: str) -> CurveRecord:
    return record_from_json(json.loads(line))


def _load(name: str) -> list[CurveRecord]:
    text = resources.files("torsion_atlas.data").joinpath(name).read_text()
    return [parse_record_line(ln) for ln in text.splitlines() if ln.strip()]


def table1_fixtures() -> list[CurveRecord]:
    """The 24 minimal-conductor examples, one per torsion structure."""
    return _load("curves_table1.jsonl")


def cm_fixtures() -> list[CurveRecord]:
    """The 15 CM regression curves."""
    return _load("curves_cm.jsonl")
