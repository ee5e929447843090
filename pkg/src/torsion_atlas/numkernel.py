"""Exact rational arithmetic, integer polynomials, and rational root finding.

This module is the computational substrate for every fiber query against the
j-map catalog.  Everything is exact: rationals are `fractions.Fraction`,
polynomials are tuples of Python ints indexed by degree (low to high), and
the root finder is complete by construction.

All values are immutable once built and every operation is a pure function,
so everything here can be shared and called across threads freely.

Root finding never factors integers.  Given a squarefree primitive f, we pick
a small prime p (> 3, not dividing the leading coefficient) such that f stays
squarefree mod p, read off the roots of f mod p by exhaustive scan, lift each
one by Newton-Hensel iteration to a modulus p^k exceeding 4*B^2*lc(f)^2
(B the Cauchy root bound), and recover rational candidates by half-extended
Euclidean rational reconstruction.  Candidates that fail exact re-evaluation
are silently discarded; they correspond to p-adic roots that are not rational.
Every rational root a/b survives this pipeline: b divides lc(f), |a| <= B*lc,
and the reconstruction modulus is large enough to make the candidate unique.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm

Rational = Fraction
IntPoly = tuple[int, ...]


class ZeroPolynomial(ValueError):
    """Raised when an operation requires a nonzero polynomial."""


class NoGoodPrime(RuntimeError):
    """The prime-selection loop exhausted its bound (diagnostic; should not occur)."""


class Pole(ArithmeticError):
    """A rational function was evaluated at a zero of its denominator."""


class ZeroArgument(ValueError):
    """Raised when a nonzero rational argument is required."""


PRIME_SEARCH_BOUND = 200  # admissible primes to try before giving up


# ----------------------------------------------------------------------
# rationals
# ----------------------------------------------------------------------

def parse_rational(s: str) -> Fraction:
    """Parse "p/q" or "p" (minus sign on the numerator only)."""
    return Fraction(s.strip())


def format_rational(q: Fraction) -> str:
    """Serialize as "p/q", or "p" when the denominator is 1."""
    return str(q)


# ----------------------------------------------------------------------
# integer polynomials (coefficient tuples, index = degree)
# ----------------------------------------------------------------------

def poly(coeffs) -> IntPoly:
    """Build a normalized IntPoly from any iterable of ints (low to high)."""
    cs = [int(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def poly_degree(f: IntPoly) -> int:
    """Degree, with the zero polynomial given degree -1."""
    return len(f) - 1


def poly_is_zero(f: IntPoly) -> bool:
    return not f


def poly_add(f: IntPoly, g: IntPoly) -> IntPoly:
    n = max(len(f), len(g))
    return poly((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)
                for i in range(n))


def poly_neg(f: IntPoly) -> IntPoly:
    return tuple(-c for c in f)


def poly_sub(f: IntPoly, g: IntPoly) -> IntPoly:
    return poly_add(f, poly_neg(g))


def poly_scale(f: IntPoly, k: int) -> IntPoly:
    if k == 0:
        return ()
    return tuple(c * k for c in f)


def poly_mul(f: IntPoly, g: IntPoly) -> IntPoly:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return poly(out)


def poly_pow(f: IntPoly, e: int) -> IntPoly:
    out: IntPoly = (1,)
    for _ in range(e):
        out = poly_mul(out, f)
    return out


def poly_eval(f: IntPoly, t: Fraction) -> Fraction:
    """Exact evaluation by Horner's rule over the rationals."""
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * t + c
    return acc


def poly_eval_int(f: IntPoly, x: int, mod: int | None = None) -> int:
    acc = 0
    if mod is None:
        for c in reversed(f):
            acc = acc * x + c
    else:
        for c in reversed(f):
            acc = (acc * x + c) % mod
    return acc


def poly_derivative(f: IntPoly) -> IntPoly:
    return poly(i * c for i, c in enumerate(f) if i >= 1)


def poly_content(f: IntPoly) -> int:
    """gcd of the coefficients (0 for the zero polynomial)."""
    c = 0
    for a in f:
        c = gcd(c, a)
        if c == 1:
            break
    return c


def poly_primitive(f: IntPoly) -> IntPoly:
    """Primitive part with positive leading coefficient."""
    if not f:
        return ()
    c = poly_content(f)
    if f[-1] < 0:
        c = -c
    return tuple(a // c for a in f)


def _pseudo_rem(f: IntPoly, g: IntPoly) -> IntPoly:
    # prem(f, g): lc(g)^(deg f - deg g + 1) * f reduced mod g, all over Z
    dg = poly_degree(g)
    lg = g[-1]
    r = list(f)
    while len(r) - 1 >= dg and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < dg:
            break
        shift = len(r) - 1 - dg
        top = r[-1]
        r = [c * lg for c in r]
        for i, b in enumerate(g):
            r[shift + i] -= top * b
        r.pop()
    return poly(r)


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd in Z[t] via the primitive polynomial remainder sequence."""
    if not f:
        return poly_primitive(g)
    if not g:
        return poly_primitive(f)
    a, b = poly_primitive(f), poly_primitive(g)
    if poly_degree(a) < poly_degree(b):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b)
        a, b = b, poly_primitive(r)
    return poly_primitive(a)


def squarefree_part(f: IntPoly) -> IntPoly:
    """Primitive part of f / gcd(f, f'): same roots, all simple.

    Raises ZeroPolynomial on the zero polynomial.
    """
    if not f:
        raise ZeroPolynomial("squarefree_part of the zero polynomial")
    if poly_degree(f) == 0:
        return (1,)
    fp = poly_primitive(f)
    g = poly_gcd(fp, poly_derivative(fp))
    if poly_degree(g) == 0:
        return fp
    return poly_primitive(_poly_divexact(fp, g))


def _poly_divexact(f: IntPoly, g: IntPoly) -> IntPoly:
    # exact division in Q[t], result cleared to a primitive integer polynomial
    df, dg = poly_degree(f), poly_degree(g)
    q = [Fraction(0)] * (df - dg + 1)
    r = [Fraction(c) for c in f]
    for k in range(df - dg, -1, -1):
        coef = r[k + dg] / g[dg]
        q[k] = coef
        for i, b in enumerate(g):
            r[k + i] -= coef * b
    den = lcm(*[c.denominator for c in q]) if q else 1
    return poly_primitive(poly(int(c * den) for c in q))


# ----------------------------------------------------------------------
# arithmetic mod p helpers for the root finder
# ----------------------------------------------------------------------

def _primes():
    yield 2
    yield 3
    n = 5
    while True:
        for d in range(3, isqrt(n) + 1, 2):
            if n % d == 0:
                break
        else:
            yield n
        n += 2


def _poly_mod(f: IntPoly, p: int) -> tuple[int, ...]:
    cs = [c % p for c in f]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _mod_gcd_is_one(f: tuple[int, ...], g: tuple[int, ...], p: int) -> bool:
    a, b = list(f), list(g)
    while b:
        inv = pow(b[-1], -1, p)
        b = [(c * inv) % p for c in b]
        while len(a) >= len(b):
            if a[-1]:
                top = a[-1]
                for i in range(len(b)):
                    a[len(a) - len(b) + i] = (a[len(a) - len(b) + i] - top * b[i]) % p
            a.pop()
            while a and a[-1] == 0:
                a.pop()
            if not a:
                break
        a, b = b, a
    return len(a) == 1


def _cauchy_bound(f: IntPoly) -> int:
    # integer ceiling of max(1, sum |a_i| / |lc|)
    lc = abs(f[-1])
    s = sum(abs(c) for c in f[:-1])
    return max(1, -(-s // lc))


def _rational_reconstruct(r: int, m: int, nbound: int, dbound: int):
    # half-extended Euclid: n = r*d mod m with |n| <= nbound, 0 < |d| <= dbound
    r0, s0 = m, 0
    r1, s1 = r % m, 1
    while r1 > nbound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > dbound:
        return None
    if s1 < 0:
        return -r1, -s1
    return r1, s1


def rational_roots(f: IntPoly) -> set[Fraction]:
    """The exact set {t in Q : f(t) = 0}, by Hensel lifting.

    Raises ZeroPolynomial if f = 0 and NoGoodPrime if no usable prime is
    found among the first PRIME_SEARCH_BOUND admissible ones (which cannot
    happen for squarefree input: only primes dividing the discriminant are
    rejected).
    """
    if not f:
        raise ZeroPolynomial("rational_roots of the zero polynomial")
    roots: set[Fraction] = set()
    if poly_degree(f) == 0:
        return roots
    # strip t^v so the constant term is nonzero
    v = 0
    while f[v] == 0:
        v += 1
    if v:
        roots.add(Fraction(0))
        f = f[v:]
    if poly_degree(f) == 0:
        return roots

    def _find_prime(g, budget):
        gp = poly_derivative(g)
        lc = g[-1]
        tried = 0
        for q in _primes():
            if q <= 3 or lc % q == 0:
                continue
            tried += 1
            if tried > budget:
                return None
            if _mod_gcd_is_one(_poly_mod(g, q), _poly_mod(gp, q), q):
                return q
        return None

    # a squarefree reduction mod p certifies that f itself is squarefree, so
    # try a few primes on f directly before paying for the Z[t] gcd
    g = poly_primitive(f)
    p = _find_prime(g, 25) if poly_degree(g) > 1 else None
    if p is None:
        g = squarefree_part(f)
        if poly_degree(g) == 0:
            return roots
        if poly_degree(g) > 1:
            p = _find_prime(g, PRIME_SEARCH_BOUND)
            if p is None:
                raise NoGoodPrime(
                    f"no squarefree reduction among {PRIME_SEARCH_BOUND} primes")
    if poly_degree(g) == 1:
        roots.add(Fraction(-g[0], g[1]))
        return roots

    lc = g[-1]
    gp = poly_derivative(g)

    bound = _cauchy_bound(g)
    target = 4 * bound * bound * lc * lc
    nbound = dbound = bound * abs(lc)
    for r0 in range(p):
        if poly_eval_int(g, r0, p) != 0:
            continue
        # Newton-Hensel lift of the simple root r0 to modulus > target
        m, r = p, r0
        while m <= target:
            m *= m
            fr = poly_eval_int(g, r, m)
            dr = poly_eval_int(gp, r, m)
            r = (r - fr * pow(dr, -1, m)) % m
        cand = _rational_reconstruct(r, m, nbound, dbound)
        if cand is None:
            continue
        n, d = cand
        t = Fraction(n, d)
        if poly_eval(g, t) == 0:
            roots.add(t)
    return roots


# ----------------------------------------------------------------------
# rational functions j(t)
# ----------------------------------------------------------------------

class RatFunc:
    """A reduced rational function num/den in Z[t].

    Normalized so that gcd(num, den) = 1 in Q[t], the pair is coprime in
    content, and den has positive leading coefficient.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        num, den = poly(num), poly(den)
        if poly_is_zero(den):
            raise ZeroDivisionError("zero denominator polynomial")
        g = poly_gcd(num, den)
        if poly_degree(g) > 0:
            num = _poly_divexact(num, g)
            den = _poly_divexact(den, g)
        cn, cd = poly_content(num), poly_content(den)
        c = gcd(cn, cd)
        if c > 1:
            num = tuple(a // c for a in num)
            den = tuple(a // c for a in den)
        if den[-1] < 0:
            num, den = poly_neg(num), poly_neg(den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RatFunc is immutable")

    def __eq__(self, other):
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc(num={list(self.num)}, den={list(self.den)})"

    def __call__(self, t: Fraction) -> Fraction:
        return ratfunc_eval(self, t)


def ratfunc_eval(j: RatFunc, t: Fraction) -> Fraction:
    """num(t)/den(t) in lowest terms; raises Pole when den(t) = 0."""
    d = poly_eval(j.den, t)
    if d == 0:
        raise Pole(f"t = {t} is a cusp of the parameterization")
    return poly_eval(j.num, t) / d


def ratfunc_fiber(j: RatFunc, j0: Fraction) -> set[Fraction]:
    """All rational t with den(t) != 0 and j(t) = j0."""
    a, b = j0.numerator, j0.denominator
    g = poly_sub(poly_scale(j.num, b), poly_scale(j.den, a))
    if poly_is_zero(g):
        raise ZeroPolynomial("fiber of a constant rational function")
    if poly_degree(g) == 0:
        return set()
    roots = rational_roots(g)
    for t in roots:
        # coprimality of num and den rules out poles among the roots
        assert poly_eval(j.den, t) != 0, "fiber root at a pole"
    return roots


# ----------------------------------------------------------------------
# multiplicative predicates
# ----------------------------------------------------------------------

def _iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0."""
    if n < 2:
        return n
    x = 1 << (n.bit_length() // k + 1)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def is_nth_power(q: Fraction, n: int) -> bool:
    """Whether q = r^n for some rational r (n = 2 or 3).

    Squares follow the real convention: negative q gives False.  Cubes allow
    negative q (signed integer cube roots).  q = 0 returns True.
    """
    if n not in (2, 3):
        raise ValueError("only squares and cubes are supported")
    if q == 0:
        return True
    num, den = q.numerator, q.denominator
    if n == 2:
        if num < 0:
            return False
        return isqrt(num) ** 2 == num and isqrt(den) ** 2 == den
    a = abs(num)
    return _iroot(a, 3) ** 3 == a and _iroot(den, 3) ** 3 == den


def same_square_class(a: Fraction, b: Fraction) -> bool:
    """Whether a and b differ by a nonzero rational square (a*b is a square)."""
    if a == 0 or b == 0:
        raise ZeroArgument("square classes are defined for nonzero rationals")
    return is_nth_power(a * b, 2)


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def carmichael_lambda(n: int) -> int:
    """Exponent of (Z/nZ)^x: lambda(2)=1, lambda(4)=2, lambda(2^e)=2^(e-2),
    lambda(p^e)=(p-1)p^(e-1) for odd p, glued by lcm."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    if n == 1:
        return 1
    out = 1
    for p, e in _factorize(n).items():
        if p == 2:
            lam = 1 if e == 1 else (2 if e == 2 else 1 << (e - 2))
        else:
            lam = (p - 1) * p ** (e - 1)
        out = lcm(out, lam)
    return out


# ----------------------------------------------------------------------
# serialization of polynomials (JSON arrays of coefficient strings)
# ----------------------------------------------------------------------

def poly_to_strings(f: IntPoly) -> list[str]:
    return [str(c) for c in f]


def poly_from_strings(ss) -> IntPoly:
    return poly(int(s) for s in ss)
