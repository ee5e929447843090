"""The torsion-structure lattice and the vendored j-map catalog.

A torsion structure (a, b) with a | b stands for Z/aZ + Z/bZ; the trivial
group is (1, 1) and the cyclic group of order M is (1, M).  The catalog maps
each of the 24 possible structures to the rational functions (or finite j
sets) whose rational values are exactly the j-invariants of rational elliptic
curves realizing at least that structure over the big dihedral compositum.

The catalog itself is data, vendored in data/jmaps.json with coefficients
stored digit-for-digit as strings; tests re-expand spot rows from factored
form to guard against transcription damage.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .numkernel import RatFunc, parse_rational, poly_from_strings


class NonUniqueMaximum(RuntimeError):
    """A matched set without a unique maximal element: this would contradict
    the classification theorem and is surfaced, never swallowed."""


@dataclass(frozen=True, order=True)
class TorsionStructure:
    a: int
    b: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1 or self.b % self.a:
            raise ValueError(f"({self.a},{self.b}) is not of the form Z/a + Z/b with a | b")

    def order(self) -> int:
        return self.a * self.b

    def __str__(self):
        return f"Z/{self.a}+Z/{self.b}" if self.a > 1 else f"Z/{self.b}"


def torsion_leq(t1: TorsionStructure, t2: TorsionStructure) -> bool:
    """Subgroup containment: Z/a1+Z/b1 embeds into Z/a2+Z/b2 iff a1 | a2 and b1 | b2."""
    return t2.a % t1.a == 0 and t2.b % t1.b == 0


def torsion_max(structures) -> TorsionStructure:
    """The unique maximal element; raises NonUniqueMaximum when absent."""
    ts = list(structures)
    if not ts:
        raise ValueError("empty set has no maximum")
    best = ts[0]
    for t in ts[1:]:
        if torsion_leq(best, t):
            best = t
    for t in ts:
        if not torsion_leq(t, best):
            raise NonUniqueMaximum(f"{t} and {best} are incomparable")
    return best


def p_primary(t: TorsionStructure, p: int) -> TorsionStructure:
    def ppart(n):
        out = 1
        while n % p == 0:
            n //= p
            out *= p
        return out
    return TorsionStructure(ppart(t.a), ppart(t.b))


@dataclass(frozen=True)
class JMapEntry:
    torsion: TorsionStructure
    maps: tuple[RatFunc, ...]
    constants: frozenset[Fraction]

    def __post_init__(self):
        if not self.maps and not self.constants:
            raise ValueError("entry must carry maps or constants")


@dataclass(frozen=True)
class Catalog:
    entries: dict[TorsionStructure, JMapEntry]
    isogeny_whitelist: frozenset[int]
    cm_table: tuple[dict, ...]
    #: non-canonical map variants kept for the record (not used to classify)
    shelved_maps: dict[TorsionStructure, tuple[RatFunc, ...]]

    def structures(self) -> list[TorsionStructure]:
        return sorted(self.entries)


ISOGENY_WHITELIST = frozenset(range(1, 20)) | {21, 25, 27, 37, 43, 67, 163}


def _entry_from_json(rec) -> JMapEntry:
    t = TorsionStructure(*rec["torsion"])
    maps = tuple(RatFunc(poly_from_strings(m["num"]), poly_from_strings(m["den"]))
                 for m in rec.get("maps", []))
    consts = frozenset(parse_rational(s) for s in rec.get("constants", []))
    return JMapEntry(t, maps, consts)


def load_catalog(path=None) -> Catalog:
    if path is None:
        text = resources.files("torsion_atlas.data").joinpath("jmaps.json").read_text()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    data = json.loads(text)
    entries = {}
    shelved = {}
    for rec in data["entries"]:
        e = _entry_from_json(rec)
        entries[e.torsion] = e
        if rec.get("noncanonical_maps"):
            shelved[e.torsion] = tuple(
                RatFunc(poly_from_strings(m["num"]), poly_from_strings(m["den"]))
                for m in rec["noncanonical_maps"])
    whitelist = frozenset(int(x) for x in data["isogeny_whitelist"])
    cm = tuple(data["cm_table"])
    cat = Catalog(entries, whitelist, cm, shelved)
    _validate(cat)
    return cat


def _validate(cat: Catalog) -> None:
    if len(cat.entries) != 24:
        raise ValueError(f"catalog must have 24 entries, got {len(cat.entries)}")
    if cat.isogeny_whitelist != ISOGENY_WHITELIST:
        raise ValueError("isogeny whitelist does not match the classification theorem")
    for t, e in cat.entries.items():
        if e.torsion != t:
            raise ValueError("entry keyed under the wrong structure")
        if 240 % t.a:
            raise ValueError(f"full {t.a}-torsion is impossible: {t.a} does not divide 240")


_BUILTIN: Catalog | None = None


def builtin_catalog() -> Catalog:
    """The vendored catalog (loaded once; immutable thereafter)."""
    global _BUILTIN
    if _BUILTIN is None:
        _BUILTIN = load_catalog()
    return _BUILTIN
