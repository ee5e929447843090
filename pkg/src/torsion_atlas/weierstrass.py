"""Weierstrass models over Q: invariants, 2-division, and the 2-isogeny
discriminant square-class diagnostic.

Models are long Weierstrass equations y^2 + a1 xy + a3 y = x^3 + a2 x^2 +
a4 x + a6 with rational coefficients.  The b/c-invariant formulary is the
standard one; everything is computed exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .numkernel import IntPoly, poly, rational_roots, same_square_class


class SingularModel(ValueError):
    """The model has vanishing discriminant."""


class NoTwoTorsion(ValueError):
    """The curve has no rational point of order 2."""


@dataclass(frozen=True)
class WeierstrassModel:
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    @classmethod
    def from_ainvs(cls, ainvs) -> "WeierstrassModel":
        vals = [Fraction(a) for a in ainvs]
        if len(vals) != 5:
            raise ValueError("expected 5 a-invariants [a1,a2,a3,a4,a6]")
        return cls(*vals)

    def ainvs(self) -> tuple[Fraction, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)


@dataclass(frozen=True)
class CurveInvariants:
    b2: Fraction
    b4: Fraction
    b6: Fraction
    b8: Fraction
    c4: Fraction
    c6: Fraction
    delta: Fraction
    j: Fraction


def curve_invariants(m: WeierstrassModel) -> CurveInvariants:
    """The b-, c-invariants, discriminant and j-invariant of the model.

    Raises SingularModel when the discriminant vanishes.
    """
    a1, a2, a3, a4, a6 = m.ainvs()
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
    delta = (c4 ** 3 - c6 ** 2) / 1728
    if delta == 0:
        raise SingularModel("discriminant is zero")
    return CurveInvariants(b2, b4, b6, b8, c4, c6, delta, c4 ** 3 / delta)


def two_division_poly(m: WeierstrassModel) -> IntPoly:
    """4x^3 + b2 x^2 + 2 b4 x + b6, cleared to integer coefficients.

    Clearing denominators rescales the polynomial but not its root set.
    """
    inv = curve_invariants(m)
    cs = [inv.b6, 2 * inv.b4, inv.b2, Fraction(4)]
    den = lcm(*(c.denominator for c in cs))
    return poly(int(c * den) for c in cs)


def has_rational_two_torsion(m: WeierstrassModel) -> bool:
    return bool(rational_roots(two_division_poly(m)))


class SquareClass(enum.Enum):
    SAME = "same"
    NEGATIVE = "negative"
    NEITHER = "neither"


def two_isogeny_square_class(m: WeierstrassModel) -> list[tuple[Fraction, SquareClass]]:
    """Compare disc(E) with the discriminant of each 2-isogenous curve.

    For each rational 2-torsion x-coordinate x0 (in increasing order) the
    curve is moved to y^2 = x^3 + A x^2 + B x with the 2-torsion point at the
    origin; the Velu 2-isogenous curve is y^2 = x^3 - 2A x^2 + (A^2 - 4B) x.
    Returns [(x0, SAME | NEGATIVE | NEITHER), ...] according to whether
    disc(E) and +/-disc(E') agree modulo rational squares.  The choice of
    model changes each discriminant by a square, so the answer is well
    defined.  Raises NoTwoTorsion when there is no rational point of order 2.
    """
    inv = curve_invariants(m)
    roots = sorted(rational_roots(two_division_poly(m)))
    if not roots:
        raise NoTwoTorsion("no rational 2-torsion point")
    out = []
    for x0 in roots:
        a = 3 * x0 + inv.b2 / 4
        b = 3 * x0 * x0 + inv.b2 / 2 * x0 + inv.b4 / 2
        d = 16 * b * b * (a * a - 4 * b)
        d_iso = 256 * b * (a * a - 4 * b) ** 2
        if d_iso == 0:
            # isogenous curve singular: cannot happen for nonsingular input
            raise SingularModel("degenerate 2-isogeny")
        if same_square_class(d, d_iso):
            out.append((x0, SquareClass.SAME))
        elif same_square_class(d, -d_iso):
            out.append((x0, SquareClass.NEGATIVE))
        else:
            out.append((x0, SquareClass.NEITHER))
    return out


def quadratic_twist(m: WeierstrassModel, d: int) -> WeierstrassModel:
    """The quadratic twist by d, as the model y^2 = x^3 - 27 c4 d^2 x - 54 c6 d^3."""
    if d == 0:
        raise ValueError("twist by zero")
    inv = curve_invariants(m)
    z = Fraction(0)
    return WeierstrassModel(z, z, z, -27 * inv.c4 * d * d, -54 * inv.c6 * d ** 3)
