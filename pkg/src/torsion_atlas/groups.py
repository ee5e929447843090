"""Finite group computations for permutation groups and GL2(Z/NZ) subgroups.

Everything here is closure-based: a group is a finite generating set, and the
algorithms enumerate elements breadth-first up to a configurable cap.  That is
enough for the groups this project cares about (subgroups of D4^n for small n,
GL2 over Z/NZ for N up to 25), and it keeps the code free of any stabilizer
chain machinery.

Conventions: permutations act on {1, ..., m} and multiply left-to-right
((p*q)(x) = q(p(x))); the commutator is [g, h] = g^-1 h^-1 g h.  The dihedral
group of order 8 is fixed concretely as <(1 2 3 4), (2 4)>, matching the
embeddings used for the order-4/order-2 block generators tau_i and sigma_i.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import lcm

DEFAULT_CAP = 1 << 24
_CAP_ENV = "TORSION_ATLAS_MAX_CLOSURE"


def default_cap() -> int:
    env = os.environ.get(_CAP_ENV)
    return int(env) if env else DEFAULT_CAP


class CapExceeded(RuntimeError):
    """Closure enumeration exceeded the element cap."""


class NotNormal(ValueError):
    """The proposed kernel is not normalized by the group."""


class UnsupportedModulus(ValueError):
    """gl2_subgroup only supports the moduli the project uses."""


class _NotNilpotentType:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NotNilpotent"


NOT_NILPOTENT = _NotNilpotentType()


# ----------------------------------------------------------------------
# permutations
# ----------------------------------------------------------------------

class Perm:
    """A permutation of {1..m}, stored 0-based."""

    __slots__ = ("images",)

    def __init__(self, images):
        imgs = tuple(images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError("not a bijection of {1..m}")
        object.__setattr__(self, "images", imgs)

    def __setattr__(self, *a):
        raise AttributeError("Perm is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(range(degree))

    def __mul__(self, other: "Perm") -> "Perm":
        o = other.images
        if len(o) != len(self.images):
            raise ValueError("cannot multiply permutations of different degrees")
        return Perm(o[i] for i in self.images)

    def inverse(self) -> "Perm":
        out = [0] * len(self.images)
        for i, j in enumerate(self.images):
            out[j] = i
        return Perm(out)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        n = 1
        seen = [False] * len(self.images)
        for i in range(len(self.images)):
            if seen[i]:
                continue
            ln = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = self.images[j]
                ln += 1
            n = lcm(n, ln)
        return n

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def sort_key(self):
        return self.images

    def __repr__(self):
        return f"Perm({cycle_string(self)})"


def parse_perm(s: str, degree: int | None = None) -> Perm:
    """Parse cycle notation like "(1,2,3,4)(5,7)"; whitespace is ignored."""
    s = s.replace(" ", "")
    cycles = []
    maxpt = degree or 1
    i = 0
    while i < len(s):
        if s[i] != "(":
            raise ValueError(f"expected '(' at position {i} in {s!r}")
        j = s.index(")", i)
        body = s[i + 1:j]
        pts = [int(x) for x in body.split(",")] if body else []
        if any(p < 1 for p in pts):
            raise ValueError("points are 1-based positive integers")
        if len(set(pts)) != len(pts):
            raise ValueError(f"repeated point in cycle {body!r}")
        cycles.append(pts)
        maxpt = max([maxpt] + pts)
        i = j + 1
    deg = degree or maxpt
    images = list(range(deg))
    for cyc in cycles:
        for k, p in enumerate(cyc):
            q = cyc[(k + 1) % len(cyc)]
            if images[p - 1] != p - 1:
                raise ValueError("cycles are not disjoint")
            images[p - 1] = q - 1
    return Perm(images)


def cycle_string(p: Perm) -> str:
    seen = [False] * p.degree
    out = []
    for i in range(p.degree):
        if seen[i] or p.images[i] == i:
            seen[i] = True
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j + 1)
            j = p.images[j]
        out.append("(" + ",".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple[Perm, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("need at least one generator")
        if any(g.degree != self.degree for g in self.generators):
            raise ValueError("generators must share the degree")

    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    @classmethod
    def from_cycles(cls, strings, degree: int | None = None) -> "PermGroup":
        perms = [parse_perm(s) for s in strings]
        deg = degree or max(p.degree for p in perms)
        perms = [Perm(tuple(p.images) + tuple(range(p.degree, deg))) for p in perms]
        return cls(deg, tuple(perms))


# the concrete dihedral blocks: tau = 4-cycle, sigma = reflection (2 4)

def _block_perm(block: int, nblocks: int, images4) -> Perm:
    imgs = list(range(4 * nblocks))
    for k, v in enumerate(images4):
        imgs[4 * block + k] = 4 * block + v
    return Perm(imgs)


def tau(block: int, nblocks: int) -> Perm:
    return _block_perm(block, nblocks, (1, 2, 3, 0))


def sigma(block: int, nblocks: int) -> Perm:
    return _block_perm(block, nblocks, (0, 3, 2, 1))


def dihedral_d4() -> PermGroup:
    return PermGroup(4, (tau(0, 1), sigma(0, 1)))


def _prod(ps):
    out = ps[0]
    for p in ps[1:]:
        out = out * p
    return out


def free_gd4_generators(k: int) -> PermGroup:
    """Generators of the free exponent-4 class-2 group on k generators,
    embedded in a direct power of the dihedral group of order 8.

    The k = 2 and k = 3 embeddings are the explicit inductive ones (blocks of
    4 points per dihedral factor; 3 factors for k = 2, 9 for k = 3).
    """
    if k == 1:
        return PermGroup(4, (tau(0, 1),))
    if k == 2:
        n = 3
        return PermGroup(12, (_prod([tau(0, n), tau(1, n)]),
                              _prod([sigma(0, n), tau(2, n)])))
    if k == 3:
        n = 9
        return PermGroup(36, (
            _prod([sigma(3, n), tau(5, n), tau(6, n), tau(7, n)]),
            _prod([tau(0, n), tau(1, n), sigma(6, n), tau(8, n)]),
            _prod([sigma(0, n), tau(2, n), tau(3, n), tau(4, n)]),
        ))
    raise ValueError("k must be 1, 2 or 3")


# ----------------------------------------------------------------------
# GL2 over Z/N
# ----------------------------------------------------------------------

class GL2Elem:
    """An invertible 2x2 matrix over Z/NZ."""

    __slots__ = ("n", "a", "b", "c", "d")

    def __init__(self, n, a, b, c, d):
        a, b, c, d = a % n, b % n, c % n, d % n
        det = (a * d - b * c) % n
        from math import gcd as _gcd
        if _gcd(det, n) != 1:
            raise ValueError(f"determinant {det} is not a unit mod {n}")
        for name, v in zip(self.__slots__, (n, a, b, c, d)):
            object.__setattr__(self, name, v)

    def __setattr__(self, *a):
        raise AttributeError("GL2Elem is immutable")

    @classmethod
    def identity_mod(cls, n) -> "GL2Elem":
        return cls(n, 1, 0, 0, 1)

    def __mul__(self, o: "GL2Elem") -> "GL2Elem":
        n = self.n
        return GL2Elem(n,
                       self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                       self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inverse(self) -> "GL2Elem":
        n = self.n
        det = (self.a * self.d - self.b * self.c) % n
        i = pow(det, -1, n)
        return GL2Elem(n, self.d * i, -self.b * i, -self.c * i, self.a * i)

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.n

    def trace(self) -> int:
        return (self.a + self.d) % self.n

    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    def order(self) -> int:
        g = self
        n = 1
        while not g.is_identity():
            g = g * self
            n += 1
            if n > 10 ** 7:
                raise RuntimeError("runaway order computation")
        return n

    def apply(self, v: tuple[int, int]) -> tuple[int, int]:
        x, y = v
        return ((self.a * x + self.b * y) % self.n, (self.c * x + self.d * y) % self.n)

    def __eq__(self, o):
        return isinstance(o, GL2Elem) and \
            (self.n, self.a, self.b, self.c, self.d) == (o.n, o.a, o.b, o.c, o.d)

    def __hash__(self):
        return hash((self.n, self.a, self.b, self.c, self.d))

    def sort_key(self):
        return (self.a, self.b, self.c, self.d)

    def __repr__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]] mod {self.n}"


def parse_gl2(s: str) -> GL2Elem:
    """Parse "[[a,b],[c,d]] mod N"."""
    body, _, mod = s.partition("mod")
    if not mod.strip():
        raise ValueError("matrix string must end with 'mod N'")
    n = int(mod)
    rows = body.strip()
    import json
    mat = json.loads(rows.replace("(", "[").replace(")", "]"))
    (a, b), (c, d) = mat
    return GL2Elem(n, a, b, c, d)


@dataclass(frozen=True)
class MatGroup:
    modulus: int
    generators: tuple[GL2Elem, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("need at least one generator")
        if any(g.n != self.modulus for g in self.generators):
            raise ValueError("generators must share the modulus")

    def identity(self) -> GL2Elem:
        return GL2Elem.identity_mod(self.modulus)


SUPPORTED_MODULI = (2, 3, 4, 5, 8, 9, 16, 25)


def _unit_group_generators(n: int) -> list[int]:
    if n == 2:
        return [1]
    if n == 4:
        return [3]
    if n % 2 == 0 and n & (n - 1) == 0:  # 2^e, e >= 3
        return [n - 1, 5]
    # odd prime power: find a primitive root
    from .numkernel import carmichael_lambda, _factorize
    lam = carmichael_lambda(n)
    for g in range(2, n):
        from math import gcd as _gcd
        if _gcd(g, n) != 1:
            continue
        if all(pow(g, lam // q, n) != 1 for q in _factorize(lam)):
            return [g]
    raise RuntimeError(f"no primitive root mod {n}")


def units_mod(n: int) -> set[int]:
    from math import gcd as _gcd
    return {x for x in range(n) if _gcd(x, n) == 1}


def gl2_subgroup(n: int, which: str) -> MatGroup:
    """Named subgroups of GL2(Z/nZ): "full", "split_cartan",
    "cartan_normalizer", or "borel"."""
    if n not in SUPPORTED_MODULI:
        raise UnsupportedModulus(f"modulus {n} not supported")
    ugens = _unit_group_generators(n)
    diag = [GL2Elem(n, u, 0, 0, 1) for u in ugens] + [GL2Elem(n, 1, 0, 0, u) for u in ugens]
    which = which.lower()
    if which == "full":
        gens = [GL2Elem(n, 1, 1, 0, 1), GL2Elem(n, 1, 0, 1, 1)] + \
            [GL2Elem(n, u, 0, 0, 1) for u in ugens]
    elif which == "split_cartan":
        gens = diag
    elif which == "cartan_normalizer":
        gens = diag + [GL2Elem(n, 0, 1, 1, 0)]
    elif which == "borel":
        gens = diag + [GL2Elem(n, 1, 1, 0, 1)]
    else:
        raise ValueError(f"unknown subgroup name {which!r}")
    return MatGroup(n, tuple(gens))


# ----------------------------------------------------------------------
# generic closure machinery
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ElementSet:
    elements: frozenset
    complete: bool

    def __len__(self):
        return len(self.elements)


def close_elements(gens, identity, cap: int | None = None) -> ElementSet:
    """Breadth-first closure of a generating set under multiplication."""
    cap = cap if cap is not None else default_cap()
    if cap < 1:
        raise ValueError("cap must be positive")
    gens = [g for g in gens if not g.is_identity()]
    seen = {identity}
    frontier = []
    for g in gens:
        if g not in seen:
            seen.add(g)
            frontier.append(g)
    while frontier:
        if len(seen) > cap:
            raise CapExceeded(f"closure exceeded cap {cap}")
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    if len(seen) > cap:
        raise CapExceeded(f"closure exceeded cap {cap}")
    return ElementSet(frozenset(seen), True)


def close(group, cap: int | None = None) -> ElementSet:
    """Closure of a PermGroup or MatGroup; complete iff within cap."""
    return close_elements(group.generators, group.identity(), cap)


def group_order(group, cap=None) -> int:
    return len(close(group, cap))


def exponent(group, cap=None) -> int:
    """lcm of the element orders."""
    els = close(group, cap).elements
    e = 1
    for g in els:
        e = lcm(e, g.order())
    return e


def _normal_closure(seed, conjugators, identity, cap) -> frozenset:
    """Smallest subgroup containing seed and closed under conjugation by the
    given elements (the conjugators must generate the ambient group)."""
    gens = set(g for g in seed if not g.is_identity())
    while True:
        grp = close_elements(gens, identity, cap).elements
        new = set()
        for c in conjugators:
            ci = c.inverse()
            for x in grp:
                y = ci * x * c
                if y not in grp:
                    new.add(y)
        if not new:
            return grp
        gens |= new


def _commutator(g, h):
    return g.inverse() * h.inverse() * g * h


def nilpotency_class(group, cap=None):
    """Length of the lower central series; NOT_NILPOTENT if it stalls.

    gamma_1 = G, gamma_{k+1} = [G, gamma_k] (normal closure in G of the
    commutators of the generators of G with generators of gamma_k).
    """
    ident = group.identity()
    gens = list(group.generators)
    if all(g.is_identity() for g in gens):
        return 0
    if len(close(group, cap)) == 1:
        return 0
    gamma_gens = gens
    prev_size = None
    k = 1
    while True:
        comms = {_commutator(g, h) for g in gens for h in gamma_gens}
        nxt = _normal_closure(comms, gens, ident, cap)
        if len(nxt) == 1:
            return k
        if prev_size is not None and len(nxt) >= prev_size:
            return NOT_NILPOTENT
        prev_size = len(nxt)
        gamma_gens = sorted(nxt, key=lambda g: g.sort_key())
        k += 1


def _exponent_divides_four(group, cap=None) -> bool:
    # g^4 = e for all g, checked with 3 multiplications and early exit
    for g in close(group, cap).elements:
        g2 = g * g
        if not (g2 * g2).is_identity():
            return False
    return True


def is_gen_d4_type(group, cap=None) -> bool:
    """Exponent divides 4 and nilpotency class is at most 2."""
    if not _exponent_divides_four(group, cap):
        return False
    cls = nilpotency_class(group, cap)
    return cls is not NOT_NILPOTENT and cls <= 2


def quotient_group(group, kernel_gens, cap=None) -> PermGroup:
    """The action of the group on the right cosets of a normal subgroup.

    kernel_gens may be a sequence of elements or an ElementSet.  Raises
    NotNormal when a generator conjugate leaves the kernel.
    """
    ident = group.identity()
    if isinstance(kernel_gens, ElementSet):
        kset = set(kernel_gens.elements)
        kgens = list(kset)
    else:
        kgens = [g for g in kernel_gens]
        kset = set(close_elements(kgens, ident, cap).elements)
    for kg in kgens:
        for g in group.generators:
            if g.inverse() * kg * g not in kset:
                raise NotNormal(f"conjugate of {kg!r} escapes the kernel")
    els = close(group, cap).elements
    if len(els) % len(kset):
        raise NotNormal("kernel does not even divide the group order")
    # right cosets K*g, keyed by a canonical member
    coset_of = {}
    reps = []
    for g in sorted(els, key=lambda x: x.sort_key()):
        if g in coset_of:
            continue
        idx = len(reps)
        reps.append(g)
        for k in kset:
            coset_of[k * g] = idx
    perms = []
    for g in group.generators:
        perms.append(Perm([coset_of[rep * g] for rep in reps]))
    return PermGroup(len(reps), tuple(perms))


# ----------------------------------------------------------------------
# Galois-image predicates and audits
# ----------------------------------------------------------------------

def qualifies_as_image(group: MatGroup, cap=None) -> bool:
    """Surjective determinant plus a trace-0 determinant--1 element: the two
    necessary conditions for a subgroup of GL2(Z/NZ) to be the mod-N image of
    the Galois representation of a rational elliptic curve."""
    n = group.modulus
    els = close(group, cap).elements
    dets = {g.det() for g in els}
    if dets != units_mod(n):
        return False
    return any(g.trace() == 0 and g.det() == n - 1 for g in els)


def _two_part(n: int) -> int:
    t = 1
    while n % 2 == 0:
        n //= 2
        t *= 2
    return t


def _sylow_two(full_els, n, cap) -> frozenset:
    """A Sylow 2-subgroup, grown greedily from 2-power-order elements."""
    target = _two_part(len(full_els))
    ident = GL2Elem.identity_mod(n)
    two_els = sorted((g for g in full_els if _two_part(g.order()) == g.order()),
                     key=lambda g: (-g.order(), g.sort_key()))
    cur_gens: list[GL2Elem] = []
    cur = frozenset({ident})
    for g in two_els:
        if len(cur) == target:
            break
        if g in cur:
            continue
        trial = close_elements(cur_gens + [g], ident, cap).elements
        if len(trial) & (len(trial) - 1) == 0 and len(trial) <= target:
            cur_gens.append(g)
            cur = trial
    if len(cur) != target:
        raise RuntimeError("failed to locate a Sylow 2-subgroup")
    return cur


def _all_subgroups(els: frozenset, n: int, cap) -> list[frozenset]:
    """Every subgroup of a small group, by closing generator extensions."""
    ident = GL2Elem.identity_mod(n)
    base = frozenset({ident})
    seen = {base: []}
    frontier = [(base, [])]
    while frontier:
        nxt = []
        for sub, gens in frontier:
            for g in els:
                if g in sub:
                    continue
                new = close_elements(gens + [g], ident, cap).elements
                if new not in seen:
                    seen[new] = gens + [g]
                    nxt.append((new, gens + [g]))
        frontier = nxt
    return list(seen)


def _conjugacy_orbit(sub: frozenset, full_gens, cap=None) -> set[frozenset]:
    orbit = {sub}
    frontier = [sub]
    while frontier:
        nxt = []
        for s in frontier:
            for g in full_gens:
                gi = g.inverse()
                t = frozenset(gi * x * g for x in s)
                if t not in orbit:
                    orbit.add(t)
                    nxt.append(t)
        frontier = nxt
    return orbit


@dataclass(frozen=True)
class AuditRow:
    representative: MatGroup
    order: int
    contained_in_target: bool


def _gens_for(els: frozenset, n: int, cap) -> tuple[GL2Elem, ...]:
    ident = GL2Elem.identity_mod(n)
    gens: list[GL2Elem] = []
    have = frozenset({ident})
    for g in sorted(els, key=lambda x: (x.order(), x.sort_key()), reverse=True):
        if g in have:
            continue
        gens.append(g)
        have = close_elements(gens, ident, cap).elements
        if len(have) == len(els):
            break
    return tuple(gens) if gens else (ident,)


def audit_qualifying_subgroups(n: int, cap=None) -> list[AuditRow]:
    """Enumerate, up to GL2-conjugacy, the subgroups that both look like
    Galois images and have exponent dividing 4 with class at most 2; report
    whether each is conjugate into the expected maximal group.

    Exponent dividing 4 forces a 2-group, so only subgroups of one Sylow
    2-subgroup need to be listed; conjugation picks up the rest.
    """
    if n not in (3, 5):
        raise UnsupportedModulus("audits are defined for moduli 3 and 5")
    target_name = "cartan_normalizer" if n == 3 else "split_cartan"
    full = gl2_subgroup(n, "full")
    full_els = close(full, cap).elements
    target = close(gl2_subgroup(n, target_name), cap).elements
    sylow = _sylow_two(full_els, n, cap)
    canonical_seen = {}
    for sub in _all_subgroups(sylow, n, cap):
        grp = MatGroup(n, _gens_for(sub, n, cap))
        if not qualifies_as_image(grp, cap):
            continue
        if not is_gen_d4_type(grp, cap):
            continue
        orbit = _conjugacy_orbit(sub, full.generators, cap)
        canon = min(tuple(sorted(x.sort_key() for x in s)) for s in orbit)
        if canon in canonical_seen:
            continue
        contained = any(s <= target for s in orbit)
        canonical_seen[canon] = AuditRow(grp, len(sub), contained)
    return sorted(canonical_seen.values(), key=lambda r: (r.order, len(r.representative.generators)))


# ----------------------------------------------------------------------
# submodules of (Z/p^2)^2 and the order-p^3 normal-subgroup criterion
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ModuleSubgroup:
    modulus: int
    gens: tuple[tuple[int, int], ...]
    invariants: tuple[int, int]
    elements: frozenset


def _vec_add(u, v, n):
    return ((u[0] + v[0]) % n, (u[1] + v[1]) % n)


def _cyclic_span(v, n):
    out = {(0, 0)}
    cur = v
    while cur not in out:
        out.add(cur)
        cur = _vec_add(cur, v, n)
    return frozenset(out)


def _vec_order(v, n):
    k = 1
    cur = v
    while cur != (0, 0):
        cur = _vec_add(cur, v, n)
        k += 1
    return k


def submodules_with_invariants(n: int, d1: int, d2: int) -> list[ModuleSubgroup]:
    """All subgroups of (Z/n)^2 isomorphic to Z/d1 + Z/d2, enumerated as sums
    of pairs of cyclic subgroups and deduplicated by element set (cached)."""
    key = (n, d1, d2)
    if key in _SUBMODULE_CACHE:
        return _SUBMODULE_CACHE[key]
    vecs = [(x, y) for x in range(n) for y in range(n)]
    cyclic = {}
    for v in vecs:
        span = _cyclic_span(v, n)
        if span not in cyclic or _vec_order(v, n) >= len(span):
            cyclic.setdefault(span, v)
    found = {}
    spans = list(cyclic.items())
    for i, (s1, v1) in enumerate(spans):
        for s2, v2 in spans[i:]:
            total = set(s1)
            for a in s1:
                for b in s2:
                    total.add(_vec_add(a, b, n))
            total = frozenset(total)
            if total in found:
                continue
            if len(total) != d1 * d2:
                found[total] = None
                continue
            maxord = max(_vec_order(v, n) for v in total)
            if maxord == d2 and len(total) == d1 * d2:
                found[total] = ModuleSubgroup(n, (v1, v2), (d1, d2), total)
            else:
                found[total] = None
    out = [m for m in found.values() if m is not None]
    _SUBMODULE_CACHE[key] = out
    return out


_SUBMODULE_CACHE: dict = {}


def satisfies_prop2(group: MatGroup, p: int, cap=None) -> bool:
    """Whether the group has a normal subgroup acting trivially on some
    submodule of (Z/p^2)^2 isomorphic to Z/p + Z/p^2 with quotient of
    exponent dividing 4 and class at most 2.

    Testing the normal core of the pointwise stabilizer of each candidate
    submodule suffices: any valid normal subgroup is contained in that core,
    and the quotient condition is inherited by further quotients.
    """
    if p not in (3, 5):
        raise UnsupportedModulus("the criterion is used at p = 3 and 5")
    n = p * p
    if group.modulus != n:
        raise ValueError(f"group must live mod {n}")
    els = close(group, cap).elements
    gens = group.generators
    for mod_sub in submodules_with_invariants(n, p, n):
        stab = frozenset(g for g in els
                         if all(g.apply(v) == v for v in mod_sub.gens))
        core = _normal_core(stab, gens, els)
        quot = quotient_group(group, ElementSet(core, True), cap)
        if is_gen_d4_type(quot, cap):
            return True
    return False


def _normal_core(stab: frozenset, gens, els) -> frozenset:
    """Largest subgroup of stab normalized by the whole group: the elements
    whose full conjugacy orbit stays inside stab."""
    core = set()
    for s in stab:
        orbit = {s}
        frontier = [s]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = g.inverse() * x * g
                    if y not in stab:
                        ok = False
                        break
                    if y not in orbit:
                        orbit.add(y)
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if ok:
            core.add(s)
    return frozenset(core)
