"""The torsion classifier: from a j-invariant (or a Weierstrass model when
j = 0) to the torsion structure over the compositum of all D4 extensions.

For j != 0 the answer depends only on j: collect every catalog entry whose
finite j-set contains j or whose parameterization has a nonempty rational
fiber over j, then take the unique maximal structure of the matched set.  A
non-unique maximum would contradict the classification theorem, so it raises
rather than being papered over.

j = 0 requires a model: writing the curve as y^2 = x^3 + s, the structure is
decided by the cube trichotomy on s (full 3-torsion when 4s is a cube, the
large 2-and-3 structure when s is a cube, and the bare 3-torsion point
otherwise).  The two cube conditions exclude each other: both at once would
make 4 a rational cube.

Classification is pure and the catalog is immutable, so batch work is
embarrassingly parallel; matched sets are memoized per (catalog, j), which
makes reclassifying twists (same j) free.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .catalog import (
    Catalog,
    NonUniqueMaximum,
    TorsionStructure,
    builtin_catalog,
    torsion_leq,
    torsion_max,
)
from .numkernel import format_rational, is_nth_power, ratfunc_fiber
from .weierstrass import (
    WeierstrassModel,
    curve_invariants,
    has_rational_two_torsion,
)


class NeedsModel(ValueError):
    """j = 0 cannot be classified from the j-invariant alone."""


class InternalInconsistency(RuntimeError):
    """The matched set violated the unique-maximum guarantee."""


CONSTANT_WITNESS = "constant"
MODEL_WITNESS = "model"


@dataclass(frozen=True)
class Match:
    torsion: TorsionStructure
    witness: Fraction | str

    def witness_string(self) -> str:
        return self.witness if isinstance(self.witness, str) else format_rational(self.witness)


@dataclass(frozen=True)
class ClassifierReport:
    label: str | None
    j: Fraction | None
    matched: tuple[Match, ...]
    chosen: TorsionStructure
    diagnostics: tuple[str, ...] = ()

    def to_json(self) -> dict:
        out = {
            "label": self.label,
            "j": None if self.j is None else format_rational(self.j),
            "torsion": [self.chosen.a, self.chosen.b],
            "matched": [
                {"torsion": [m.torsion.a, m.torsion.b], "witness": m.witness_string()}
                for m in self.matched
            ],
            "diagnostics": list(self.diagnostics),
        }
        return out


def _matches_for_j(j0: Fraction, cat: Catalog) -> tuple[Match, ...]:
    out = []
    for t in sorted(cat.entries):
        entry = cat.entries[t]
        if j0 in entry.constants:
            out.append(Match(t, CONSTANT_WITNESS))
            continue
        for jmap in entry.maps:
            fiber = ratfunc_fiber(jmap, j0)
            if fiber:
                out.append(Match(t, min(fiber)))
                break
    return tuple(out)


_MATCH_CACHE: dict[tuple[int, Fraction], tuple[Match, ...]] = {}


def classify_j(j0: Fraction, cat: Catalog | None = None, label: str | None = None) -> ClassifierReport:
    """Classify by j-invariant (j0 != 0).

    Raises NeedsModel for j0 = 0 and InternalInconsistency if the matched
    set has no unique maximal element.
    """
    cat = cat or builtin_catalog()
    j0 = Fraction(j0)
    if j0 == 0:
        raise NeedsModel("j = 0 depends on the model; classify via classify_model")
    key = (id(cat), j0)
    matched = _MATCH_CACHE.get(key)
    if matched is None:
        matched = _matches_for_j(j0, cat)
        _MATCH_CACHE[key] = matched
    try:
        chosen = torsion_max(m.torsion for m in matched)
    except NonUniqueMaximum as exc:
        raise InternalInconsistency(f"matched set for j = {j0} violates uniqueness: {exc}") from exc
    return ClassifierReport(label, j0, matched, chosen)


def classify_model(m: WeierstrassModel, cat: Catalog | None = None, label: str | None = None) -> ClassifierReport:
    """Classify a curve given by a Weierstrass model (handles j = 0)."""
    cat = cat or builtin_catalog()
    inv = curve_invariants(m)  # raises SingularModel when degenerate
    if inv.j != 0:
        rep = classify_j(inv.j, cat, label)
        return rep
    # j = 0: short model y^2 = x^3 + s with s = -c6/864; sixth-power changes
    # of s do not move the cube tests, so no normalization is needed
    s = -inv.c6 / 864
    if is_nth_power(4 * s, 3):
        chosen = TorsionStructure(3, 3)
        note = "j=0: 4s is a cube"
    elif is_nth_power(s, 3):
        chosen = TorsionStructure(8, 24)
        note = "j=0: s is a cube"
    else:
        chosen = TorsionStructure(1, 3)
        note = "j=0: neither s nor 4s is a cube"
    matched = (Match(TorsionStructure(1, 1), Fraction(0)), Match(chosen, MODEL_WITNESS))
    return ClassifierReport(label, Fraction(0), matched, chosen,
                            (note, f"s = {format_rational(s)}"))


ALLOWED_TORSION_PRIMES = frozenset({2, 3, 5, 7, 13})


def consistency_audit(m: WeierstrassModel, report: ClassifierReport,
                      cat: Catalog | None = None) -> list[str]:
    """Cross-checks between the model and its report; violations are data.

    (i) a rational 2-torsion point must occur exactly when the chosen
    structure contains Z/4 + Z/4; (ii) only the primes 2, 3, 5, 7, 13 may
    divide the order; (iii) the chosen structure must be a catalog key.
    """
    cat = cat or builtin_catalog()
    out = []
    has2 = has_rational_two_torsion(m)
    contains44 = torsion_leq(TorsionStructure(4, 4), report.chosen)
    if has2 != contains44:
        out.append(
            f"2-torsion dichotomy violated: rational 2-torsion={has2} but "
            f"chosen={report.chosen}")
    n = report.chosen.order()
    p = 2
    while n > 1:
        while n % p == 0:
            if p not in ALLOWED_TORSION_PRIMES:
                out.append(f"prime {p} divides the torsion order {report.chosen}")
            n //= p
        p += 1 if p == 2 else 2
    if report.chosen not in cat.entries:
        out.append(f"chosen structure {report.chosen} is not one of the 24")
    return out
