"""Zariski lattice, boundary ideals, and Kronecker reduction.

Two backends:

* finite commutative rings (Z/n, F_p[x]/(f), finite products, raw tables),
  where primes, radicals, and lattice laws are settled by exhaustive
  enumeration; and
* F_p[t], where D(generators) is the squarefree part of their gcd, kept as a
  canonical monic representative.

Radicals over F_p[t] are computed by full trial-division factorization rather
than gcd with the derivative: in characteristic p the derivative of anything
in F_p[t^p] vanishes, which would break the squarefree step.

The reduction lemma behind `kronecker_reduce` is usually stated for domains,
but its inductive step passes to quotient rings that need not be domains; the
engines here exercise the commutative reading (finite commutative rings and
F_p[t]), where the boundary condition holds unconditionally and every scan is
backed by an explicit verification of the two radicals.

All searches scan candidates in the canonical enumeration order and return the
first verifying certificate, so sharded scans must reduce to the canonically
first hit to stay equivalent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InvalidRing, NotFoundWithinBound, PreconditionFailed
from .rings import PolynomialRing, PrimeField, QuotientRing, Ring

_EXHAUSTIVE_LIMIT = 64
_SUBSET_LIMIT = 16


class FiniteCommRing:
    """Finite commutative unital ring with enumerable elements.

    Ring laws are validated at construction: exhaustively up to
    64 elements, by seeded sampling above that.
    """

    def __init__(self, elements, add, mul, zero, one, label: str = "ring", _trusted=False):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise InvalidRing("duplicate elements in carrier")
        self._add = add
        self._mul = mul
        self.zero = zero
        self.one = one
        self.label = label
        self.size = len(self.elements)
        self._format = str
        self._parse = None
        self._neg = {}
        if not _trusted:
            self._validate()
        for a in self.elements:
            for b in self.elements:
                if add(a, b) == zero:
                    self._neg[a] = b
                    break
            else:
                raise InvalidRing(f"{a!r} has no additive inverse")

    def add(self, a, b):
        return self._add(a, b)

    def mul(self, a, b):
        return self._mul(a, b)

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        return self._add(a, self._neg[b])

    def is_unit(self, a) -> bool:
        return any(self._mul(a, b) == self.one for b in self.elements)

    def _validate(self):
        els = self.elements
        if self.zero not in self.index or self.one not in self.index:
            raise InvalidRing("carrier must contain 0 and 1")
        if self.size <= _EXHAUSTIVE_LIMIT:
            triples = itertools.product(els, repeat=3)
            pairs = itertools.product(els, repeat=2)
        else:
            import random as _random

            rng = _random.Random(9)
            triples = (tuple(rng.choice(els) for _ in range(3)) for _ in range(4000))
            pairs = (tuple(rng.choice(els) for _ in range(2)) for _ in range(4000))
        for a, b in pairs:
            if self._add(a, b) != self._add(b, a):
                raise InvalidRing(f"addition not commutative at {(a, b)!r}")
            if self._mul(a, b) != self._mul(b, a):
                raise InvalidRing(f"multiplication not commutative at {(a, b)!r}")
        for a, b, c in triples:
            if self._add(self._add(a, b), c) != self._add(a, self._add(b, c)):
                raise InvalidRing(f"addition not associative at {(a, b, c)!r}")
            if self._mul(self._mul(a, b), c) != self._mul(a, self._mul(b, c)):
                raise InvalidRing(f"multiplication not associative at {(a, b, c)!r}")
            if self._mul(a, self._add(b, c)) != self._add(self._mul(a, b), self._mul(a, c)):
                raise InvalidRing(f"distributivity fails at {(a, b, c)!r}")
        for a in els:
            if self._add(a, self.zero) != a or self._mul(a, self.one) != a:
                raise InvalidRing(f"identity laws fail at {a!r}")

    # -- constructors ------------------------------------------------------------

    @classmethod
    def from_ring(cls, ring: Ring, label: str | None = None) -> "FiniteCommRing":
        els = list(ring.elements())
        out = cls(els, ring.add, ring.mul, ring.zero, ring.one, label or ring.describe())
        out._format = ring.format
        return out

    @classmethod
    def zmod(cls, n: int) -> "FiniteCommRing":
        from .rings import ResidueRing

        out = cls.from_ring(ResidueRing(n), f"Z/{n}")
        out._parse = lambda text: int(text) % n
        return out

    @classmethod
    def fp(cls, p: int) -> "FiniteCommRing":
        out = cls.from_ring(PrimeField(p), f"F_{p}")
        out._parse = lambda text: int(text) % p
        return out

    @classmethod
    def quotient_poly(cls, p: int, modulus, gen_name: str = "x") -> "FiniteCommRing":
        ring = QuotientRing(p, modulus, gen_name)
        out = cls.from_ring(ring)

        def _parse(text):
            from .parsing import parse_scalar

            return ring._reduce(parse_scalar(text, ring.poly))

        out._parse = _parse
        return out

    @classmethod
    def product(cls, r1: "FiniteCommRing", r2: "FiniteCommRing") -> "FiniteCommRing":
        els = [(a, b) for a in r1.elements for b in r2.elements]
        return cls(
            els,
            lambda x, y: (r1.add(x[0], y[0]), r2.add(x[1], y[1])),
            lambda x, y: (r1.mul(x[0], y[0]), r2.mul(x[1], y[1])),
            (r1.zero, r2.zero),
            (r1.one, r2.one),
            f"{r1.label} x {r2.label}",
        )

    def quotient_by(self, ideal: "IdealFin") -> "FiniteCommRing":
        """Quotient ring on canonical coset representatives."""
        rep = {}
        for a in self.elements:
            if a in rep:
                continue
            coset = sorted((self.add(a, x) for x in ideal.elements), key=self.index.__getitem__)
            lead = coset[0]
            for c in coset:
                rep[c] = lead
        els = sorted(set(rep.values()), key=self.index.__getitem__)
        out = FiniteCommRing(
            els,
            lambda x, y: rep[self.add(x, y)],
            lambda x, y: rep[self.mul(x, y)],
            rep[self.zero],
            rep[self.one],
            f"{self.label}/{ideal.short()}",
            _trusted=True,
        )
        out._format = self._format
        return out, rep

    def format(self, a) -> str:
        return self._format(a)

    def element_from_text(self, text: str):
        if self._parse is None:
            raise ValueError(f"{self.label} has no element syntax; index elements instead")
        el = self._parse(text.strip())
        if el not in self.index:
            raise ValueError(f"{text!r} is not an element of {self.label}")
        return el

    def __repr__(self):
        return f"<{self.label}, {self.size} elements>"


@dataclass(frozen=True)
class IdealFin:
    """Ideal of a finite commutative ring, carried as its full element set."""

    ring: FiniteCommRing
    elements: frozenset
    gens: tuple

    def __contains__(self, a):
        return a in self.elements

    def __le__(self, other):
        return self.elements <= other.elements

    def is_whole(self) -> bool:
        return len(self.elements) == self.ring.size

    def sorted_elements(self):
        return sorted(self.elements, key=self.ring.index.__getitem__)

    def short(self) -> str:
        return "<" + ",".join(self.ring.format(g) for g in self.gens) + ">"

    def __eq__(self, other):
        return isinstance(other, IdealFin) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        els = ", ".join(self.ring.format(a) for a in self.sorted_elements())
        return "{" + els + "}"


def ideal_generated(gens, ring: FiniteCommRing) -> IdealFin:
    """Smallest ideal containing the generators, by closure iteration."""
    gens = tuple(gens)
    current = {ring.zero}
    for g in gens:
        for r in ring.elements:
            current.add(ring.mul(r, g))
    while True:
        fresh = set()
        cur = list(current)
        for a in cur:
            for b in cur:
                s = ring.add(a, b)
                if s not in current:
                    fresh.add(s)
        if not fresh:
            break
        current |= fresh
        # re-close under ring multiples of the new sums
        more = set()
        for a in list(current):
            for r in ring.elements:
                v = ring.mul(r, a)
                if v not in current:
                    more.add(v)
        current |= more
    return IdealFin(ring, frozenset(current), gens)


def _ideal_cache(ring: FiniteCommRing) -> dict:
    cache = getattr(ring, "_zar_cache", None)
    if cache is None:
        cache = {}
        ring._zar_cache = cache
    return cache


def all_ideals(ring: FiniteCommRing) -> list[IdealFin]:
    """Every ideal, as the sum-closure of the principal ideals.

    Each ideal is a finite sum of principal ideals of its own elements, so
    closing the principal ideals under pairwise ideal sums reaches them all.
    """
    cache = _ideal_cache(ring)
    if "ideals" in cache:
        return cache["ideals"]
    principal = {}
    for a in ring.elements:
        I = ideal_generated((a,), ring)
        principal.setdefault(I.elements, I)
    pool = dict(principal)
    frontier = list(principal.values())
    while frontier:
        nxt = []
        for I in frontier:
            for J in list(principal.values()):
                s = frozenset(
                    ring.add(x, y) for x in I.elements for y in J.elements
                )
                if s not in pool:
                    K = IdealFin(ring, s, tuple(I.gens) + tuple(J.gens))
                    pool[s] = K
                    nxt.append(K)
        frontier = nxt
    out = sorted(
        pool.values(),
        key=lambda I: (len(I.elements), [ring.index[a] for a in I.sorted_elements()]),
    )
    cache["ideals"] = out
    return out


def enumerate_primes(ring: FiniteCommRing) -> list[IdealFin]:
    """All proper ideals P with xy in P implying x in P or y in P."""
    cache = _ideal_cache(ring)
    if "primes" in cache:
        return cache["primes"]
    primes = []
    for I in all_ideals(ring):
        if I.is_whole():
            continue
        outside = [a for a in ring.elements if a not in I.elements]
        is_prime = True
        for x in outside:
            for y in outside:
                if ring.mul(x, y) in I.elements:
                    is_prime = False
                    break
            if not is_prime:
                break
        if is_prime:
            primes.append(I)
    cache["primes"] = primes
    return primes


def zariski_D(gens, ring: FiniteCommRing) -> IdealFin:
    """Intersection of the primes containing the generators (whole ring if none)."""
    gens = tuple(gens)
    gen_set = set(gens)
    containing = [P for P in enumerate_primes(ring) if gen_set <= P.elements]
    if not containing:
        return IdealFin(ring, frozenset(ring.elements), gens)
    acc = set(containing[0].elements)
    for P in containing[1:]:
        acc &= P.elements
    return IdealFin(ring, frozenset(acc), gens)


def rad_zero(ring: FiniteCommRing) -> IdealFin:
    return zariski_D((), ring)


def colon_to_radzero(v, ring: FiniteCommRing) -> frozenset:
    """{x : v x lies in D(0)} (the commutative quotient by the principal ideal)."""
    d0 = rad_zero(ring).elements
    return frozenset(x for x in ring.elements if ring.mul(v, x) in d0)


def boundary_ideal(v, ring: FiniteCommRing) -> IdealFin:
    """<v> plus everything that multiplies v into D(0)."""
    pv = ideal_generated((v,), ring)
    col = colon_to_radzero(v, ring)
    # elementwise sum of two ideals is closed: no extra closure pass needed
    total = {ring.add(x, y) for x in col for y in pv.elements}
    return IdealFin(ring, frozenset(total), (v,))


def check_boundary_condition(ring: FiniteCommRing) -> dict:
    """Dimension zero forces I_v = S for every v; checked exhaustively."""
    bad = [v for v in ring.elements if not boundary_ideal(v, ring).is_whole()]
    return {
        "ring": ring.label,
        "elements": ring.size,
        "violations": [ring.format(v) for v in bad],
        "ok": not bad,
    }


# -- lattice laws -----------------------------------------------------------------


def _zar_elements(ring: FiniteCommRing) -> list[IdealFin]:
    cache = _ideal_cache(ring)
    if "zar" not in cache:
        seen = {}
        for I in all_ideals(ring):
            D = zariski_D(tuple(I.sorted_elements()), ring)
            seen.setdefault(D.elements, D)
        cache["zar"] = sorted(
            seen.values(), key=lambda I: (len(I.elements), [ring.index[a] for a in I.sorted_elements()])
        )
    return cache["zar"]


def _join(ring, Z1: IdealFin, Z2: IdealFin) -> IdealFin:
    return zariski_D(tuple(Z1.elements | Z2.elements), ring)


def _meet(Z1: IdealFin, Z2: IdealFin, ring) -> IdealFin:
    return IdealFin(ring, Z1.elements & Z2.elements, Z1.gens + Z2.gens)


def _ideal_product(I: IdealFin, J: IdealFin, ring) -> IdealFin:
    prods = {ring.mul(a, b) for a in I.elements for b in J.elements}
    return ideal_generated(tuple(sorted(prods, key=ring.index.__getitem__)), ring)


def _ideal_sum(I: IdealFin, J: IdealFin, ring) -> IdealFin:
    return IdealFin(
        ring,
        frozenset(ring.add(a, b) for a in I.elements for b in J.elements),
        I.gens + J.gens,
    )


def check_lattice_laws(ring: FiniteCommRing, mode: str = "exhaustive", seed: int = 9) -> dict:
    """Verify the twelve Zariski-lattice laws over a finite commutative ring.

    `exhaustive` settles every law over all ideals/elements; the
    generators-vs-ideal law enumerates every subset only for rings with at
    most 16 elements and falls back to seeded sampling above that.
    """
    import random as _random

    rng = _random.Random(seed)
    ideals = all_ideals(ring)
    rad = rad_zero(ring)
    whole = frozenset(ring.elements)
    results = []

    def law(name, cases, failures):
        results.append(
            {"law": name, "cases": cases, "failures": failures[:3], "ok": not failures}
        )

    sampled = mode != "exhaustive"
    if sampled:
        ideals_used = [rng.choice(ideals) for _ in range(min(len(ideals), 6))]
        elements_used = [rng.choice(ring.elements) for _ in range(min(ring.size, 12))]
    else:
        ideals_used = ideals
        elements_used = list(ring.elements)

    # (i) D of a generating set equals D of the ideal it generates
    fails, cases = [], 0
    if ring.size <= _SUBSET_LIMIT and not sampled:
        subsets = []
        els = list(ring.elements)
        for mask in range(1 << len(els)):
            subsets.append(tuple(els[i] for i in range(len(els)) if mask >> i & 1))
    else:
        subsets = [
            tuple(rng.sample(list(ring.elements), rng.randint(0, min(3, ring.size))))
            for _ in range(400)
        ]
    for X in subsets:
        cases += 1
        if zariski_D(X, ring) != zariski_D(ideal_generated(X, ring).sorted_elements(), ring):
            fails.append(repr(X))
    law("generating-set-vs-ideal", cases, fails)

    # (ii) D(I) = D(0) exactly for ideals inside D(0)
    fails = []
    for I in ideals_used:
        inside = I.elements <= rad.elements
        collapses = zariski_D(I.sorted_elements(), ring) == rad
        if inside != collapses:
            fails.append(I.short())
    law("radical-zero-characterization", len(ideals_used), fails)

    # (iii) D(I) is everything exactly for the unit ideal
    fails = []
    for I in ideals_used:
        if (zariski_D(I.sorted_elements(), ring).elements == whole) != I.is_whole():
            fails.append(I.short())
    law("unit-ideal-detection", len(ideals_used), fails)

    # (iv) closure operator: extensive, idempotent, monotone
    fails, cases = [], 0
    dvals = {I: zariski_D(I.sorted_elements(), ring) for I in ideals}
    for I in ideals_used:
        cases += 1
        D = dvals[I]
        if not I.elements <= D.elements:
            fails.append(f"not extensive at {I.short()}")
        if zariski_D(D.sorted_elements(), ring) != D:
            fails.append(f"not idempotent at {I.short()}")
    for I in ideals_used:
        for J in ideals_used:
            cases += 1
            if I.elements <= J.elements and not dvals[I].elements <= dvals[J].elements:
                fails.append(f"not monotone at {I.short()},{J.short()}")
    law("closure-operator", cases, fails)

    # (v) D(I + J) is the join, elementwise version included
    fails, cases = [], 0
    zar = _zar_elements(ring)
    for I in ideals_used:
        for J in ideals_used:
            cases += 1
            DIJ = zariski_D(_ideal_sum(I, J, ring).sorted_elements(), ring)
            if not (dvals[I].elements <= DIJ.elements and dvals[J].elements <= DIJ.elements):
                fails.append(f"{I.short()}+{J.short()} not an upper bound")
                continue
            for Z in zar:
                if dvals[I].elements <= Z.elements and dvals[J].elements <= Z.elements:
                    if not DIJ.elements <= Z.elements:
                        fails.append(f"{I.short()}+{J.short()} not least")
                        break
    for x in elements_used:
        for y in elements_used:
            cases += 1
            if zariski_D((x, y), ring) != _join(ring, zariski_D((x,), ring), zariski_D((y,), ring)):
                fails.append(f"join of D({x!r}),D({y!r})")
    law("sum-is-join", cases, fails)

    # (vi) D(I J) is the meet (set intersection)
    fails, cases = [], 0
    for I in ideals_used:
        for J in ideals_used:
            cases += 1
            DIJ = zariski_D(_ideal_product(I, J, ring).sorted_elements(), ring)
            if DIJ.elements != (dvals[I].elements & dvals[J].elements):
                fails.append(f"{I.short()}*{J.short()}")
    law("product-is-meet", cases, fails)

    # (vii) D(x + y) inside D(x, y)
    fails, cases = [], 0
    for x in elements_used:
        for y in elements_used:
            cases += 1
            if not zariski_D((ring.add(x, y),), ring).elements <= zariski_D((x, y), ring).elements:
                fails.append(f"({x!r},{y!r})")
    law("sum-inside-pair", cases, fails)

    # (viii) equality when the product of the two principals lies in D(0)
    fails, cases = [], 0
    for x in elements_used:
        for y in elements_used:
            px = ideal_generated((x,), ring)
            py = ideal_generated((y,), ring)
            if all(ring.mul(a, b) in rad.elements for a in px.elements for b in py.elements):
                cases += 1
                if zariski_D((x, y), ring) != zariski_D((ring.add(x, y),), ring):
                    fails.append(f"({x!r},{y!r})")
    law("orthogonal-sum-equality", cases, fails)

    # (ix) members of D(I) are absorbed
    fails, cases = [], 0
    for I in ideals_used:
        D = dvals[I]
        for x in D.sorted_elements():
            cases += 1
            if zariski_D(tuple(I.sorted_elements()) + (x,), ring) != D:
                fails.append(f"{I.short()} absorb {x!r}")
                break
    law("member-absorption", cases, fails)

    # (x) D commutes with passing to a quotient
    fails, cases = [], 0
    for I in ideals_used:
        Q, rep = ring.quotient_by(I)
        for J in ideals_used:
            if not I.elements <= J.elements:
                continue
            cases += 1
            DJ = zariski_D(J.sorted_elements(), ring)
            pushed = frozenset(rep[a] for a in DJ.elements)
            DbarJ = zariski_D(sorted({rep[a] for a in J.elements}, key=Q.index.__getitem__), Q)
            if pushed != DbarJ.elements:
                fails.append(f"{I.short()} then {J.short()}")
    law("quotient-compatibility", cases, fails)

    # (xi) membership in D(I) means a power lands in I
    fails, cases = [], 0
    for I in ideals_used:
        D = dvals[I]
        for u in elements_used:
            cases += 1
            member = u in D.elements
            k = _nilpotency_exponent(u, I, ring)
            if member != (k is not None):
                fails.append(f"{I.short()} vs {u!r}")
    law("radical-membership-power", cases, fails)

    # (xii) distributivity of the lattice of D-values
    fails, cases = [], 0
    zar_used = zar if not sampled else zar[: min(len(zar), 5)]
    for Z1 in zar_used:
        for Z2 in zar_used:
            for Z3 in zar_used:
                cases += 1
                lhs = _meet(Z1, _join(ring, Z2, Z3), ring)
                rhs = _join(ring, _meet(Z1, Z2, ring), _meet(Z1, Z3, ring))
                if lhs.elements != rhs.elements:
                    fails.append("meet-over-join")
                    continue
                lhs2 = _join(ring, Z1, _meet(Z2, Z3, ring))
                rhs2 = _meet(
                    _join(ring, Z1, Z2), _join(ring, Z1, Z3), ring
                )
                if lhs2.elements != rhs2.elements:
                    fails.append("join-over-meet")
    law("distributivity", cases, fails)

    return {
        "ring": ring.label,
        "mode": mode,
        "laws": results,
        "ok": all(r["ok"] for r in results),
    }


def _nilpotency_exponent(u, I: IdealFin, ring: FiniteCommRing):
    """Smallest k >= 1 with u^k in I, or None; powers cycle within ring.size steps."""
    acc = u
    for k in range(1, ring.size + 2):
        if acc in I.elements:
            return k
        acc = ring.mul(acc, u)
    return None


def radical_membership_finite(a, gens, ring: FiniteCommRing):
    I = ideal_generated(tuple(gens), ring)
    if a not in zariski_D(tuple(gens), ring).elements:
        return False, None
    return True, _nilpotency_exponent(a, I, ring)


# -- Kronecker reduction, finite backend -------------------------------------------


@dataclass
class KroneckerCertificate:
    shifts: tuple
    constructive: bool
    fallback_used: bool


def kronecker_reduce_dim0(u1, u, ring: FiniteCommRing) -> KroneckerCertificate:
    """One-generator reduction x1 with D(u1 + x1 u) = D(u1, u).

    The constructive pick follows the boundary-ideal decomposition
    1 = a u1 + x1 with x1 in (D(0) : <u1>); an exhaustive scan backs it up
    should verification ever fail.
    """
    target = zariski_D((u1, u), ring)
    if u == ring.zero:
        # any shift works; keep the canonical zero certificate
        return KroneckerCertificate((ring.zero,), True, False)
    col = colon_to_radzero(u1, ring)
    pv = ideal_generated((u1,), ring).elements
    pick = None
    for x1 in sorted(col, key=ring.index.__getitem__):
        if ring.sub(ring.one, x1) in pv:
            pick = x1
            break
    if pick is not None and zariski_D((ring.add(u1, ring.mul(pick, u)),), ring) == target:
        return KroneckerCertificate((pick,), True, False)
    for x1 in ring.elements:
        if zariski_D((ring.add(u1, ring.mul(x1, u)),), ring) == target:
            return KroneckerCertificate((x1,), False, True)
    raise PreconditionFailed("no reduction exists; the ring violates the dimension-zero case")


def _kronecker_finite(us, u, ring: FiniteCommRing):
    us = tuple(us)
    target = zariski_D(us + (u,), ring)
    for xs in itertools.product(ring.elements, repeat=len(us)):
        shifted = tuple(ring.add(ui, ring.mul(xi, u)) for ui, xi in zip(us, xs))
        if zariski_D(shifted, ring) == target:
            return xs
    raise PreconditionFailed("exhausted the ring without a verifying shift tuple")


# -- F_p[t] backend -----------------------------------------------------------------


@dataclass(frozen=True)
class RadicalClass:
    """Canonical radical of an ideal of F_p[t]: a monic squarefree generator.

    () is the zero class (radical of the zero ideal); the constant one marks
    the unit class D = S.
    """

    p: int
    poly: tuple

    def is_unit_class(self) -> bool:
        return len(self.poly) == 1

    def is_zero_class(self) -> bool:
        return self.poly == ()


class FptBackend:
    """Radical arithmetic for F_p[t]: gcds, squarefree parts, shift scans."""

    def __init__(self, p: int):
        self.p = p
        self.ring = PolynomialRing(PrimeField(p), "t")

    def parse(self, text: str):
        from .parsing import parse_scalar

        return parse_scalar(text, self.ring)

    def format(self, a) -> str:
        return self.ring.format(a)

    def gcd_many(self, gens) -> tuple:
        g = ()
        for a in gens:
            g = self.ring.gcd(g, a)
        return g

    def irreducible_factors(self, f: tuple) -> list[tuple]:
        """Distinct monic irreducible factors, by trial division."""
        R = self.ring
        f = R.monic(f)
        factors = []
        d = 1
        while R.deg(f) >= 1:
            if d > R.deg(f) // 2:
                # nothing of degree <= half divides what is left: irreducible
                factors.append(f)
                break
            for cand in _monic_polys(R, d):
                q, rem = R.divmod(f, cand)
                if rem != ():
                    continue
                factors.append(cand)
                while rem == ():
                    f = q
                    if R.deg(f) == 0:
                        break
                    q, rem = R.divmod(f, cand)
                if R.deg(f) == 0:
                    break
            d += 1
        return factors

    def squarefree_part(self, f: tuple) -> tuple:
        if f == ():
            return ()
        f = self.ring.monic(f)
        if self.ring.deg(f) == 0:
            return self.ring.one
        key = (self.p, f)
        hit = _SQUAREFREE_CACHE.get(key)
        if hit is None:
            out = self.ring.one
            for q in self.irreducible_factors(f):
                out = self.ring.mul(out, q)
            hit = self.ring.monic(out)
            _SQUAREFREE_CACHE[key] = hit
        return hit

    def radical_class(self, gens) -> RadicalClass:
        g = self.gcd_many(tuple(gens))
        return RadicalClass(self.p, self.squarefree_part(g))

    def polys_up_to(self, max_deg: int) -> list[tuple]:
        return self.ring.polys_up_to(max_deg)


_SQUAREFREE_CACHE: dict = {}


def _monic_polys(R: PolynomialRing, d: int):
    base = list(R.base.elements())
    for code in range(len(base) ** d):
        cs = []
        v = code
        for _ in range(d):
            cs.append(base[v % len(base)])
            v //= len(base)
        yield tuple(cs) + (R.base.one,)


def radical_membership_fpt(a, gens, backend: FptBackend):
    """a in D(<gens>)?  With the smallest power exponent on success."""
    R = backend.ring
    h = backend.gcd_many(tuple(gens))
    if h == ():
        return (a == (), 1 if a == () else None)
    if R.deg(h) == 0:
        return True, 1
    g = backend.squarefree_part(h)
    if R.divmod(a, g)[1] != ():
        return False, None
    acc = R.divmod(a, h)[1]
    power = acc
    for k in range(1, R.deg(h) + 2):
        if power == ():
            return True, k
        power = R.divmod(R.mul(power, acc), h)[1]
    return True, None


def kronecker_reduce(us, u, backend, degree_bound: int | None = None):
    """Shift tuple xs with D(u_i + x_i u) = D(us, u), verified before returning.

    Finite backend: any arity, exhaustive scan, always succeeds.  F_p[t]
    backend: two generators, scan by increasing degree up to the bound.
    """
    if isinstance(backend, FiniteCommRing):
        return _kronecker_finite(us, u, backend)
    if not isinstance(backend, FptBackend):
        raise TypeError("backend must be a finite ring or an F_p[t] backend")
    us = tuple(us)
    if len(us) != 2:
        raise PreconditionFailed(
            "the polynomial backend implements the dimension-one case: exactly two generators"
        )
    if degree_bound is None:
        raise PreconditionFailed("the polynomial backend needs a degree bound")
    R = backend.ring
    u1, u2 = us
    target = backend.radical_class((u1, u2, u))
    unit_target = target.is_unit_class()
    for stage in range(degree_bound + 1):
        polys = backend.polys_up_to(stage)
        for x1 in polys:
            x1_seen = stage > 0 and R.deg(x1) < stage
            s1 = R.add(u1, R.mul(x1, u))
            for x2 in polys:
                if x1_seen and R.deg(x2) < stage:
                    continue  # both candidates already tried at an earlier stage
                s2 = R.add(u2, R.mul(x2, u))
                g = R.gcd(s1, s2)
                if unit_target:
                    if R.deg(g) == 0:
                        return (x1, x2)
                    continue
                if g == ():
                    if target.is_zero_class():
                        return (x1, x2)
                    continue
                if RadicalClass(backend.p, backend.squarefree_part(g)) == target:
                    return (x1, x2)
    raise NotFoundWithinBound(
        f"no shift tuple of degree <= {degree_bound} reproduces the radical"
    )


def generates_whole(us, backend) -> bool:
    if isinstance(backend, FiniteCommRing):
        return ideal_generated(tuple(us), backend).is_whole()
    g = backend.gcd_many(tuple(us))
    return backend.ring.deg(g) == 0 and g != ()


def unimodular_shrink(us, backend, degree_bound: int | None = None):
    """Drop the last generator of a unimodular tuple, shifting the others.

    Requires <us> = S; the shifted tuple it returns generates S again.
    """
    us = tuple(us)
    if len(us) < 2:
        raise PreconditionFailed("need at least two generators")
    if not generates_whole(us, backend):
        raise PreconditionFailed("the input tuple does not generate the whole ring")
    return kronecker_reduce(us[:-1], us[-1], backend, degree_bound)


def radical_membership(a, gens, backend):
    if isinstance(backend, FiniteCommRing):
        return radical_membership_finite(a, gens, backend)
    return radical_membership_fpt(a, gens, backend)


# -- ring spec mini-grammar ----------------------------------------------------------


def parse_ring_spec(text: str) -> FiniteCommRing:
    """Zmod:n | Fp:p | quot:F<p>:poly | prod:spec*spec (also with 'x' as separator)."""
    text = text.strip()
    if text.startswith("prod:"):
        body = text[len("prod:"):]
        for sep in ("×", "*"):
            if sep in body:
                left, right = body.split(sep, 1)
                return FiniteCommRing.product(parse_ring_spec(left), parse_ring_spec(right))
        raise ValueError("product spec needs '*' between the factors")
    parts = text.split(":")
    if parts[0] == "Zmod" and len(parts) == 2:
        return FiniteCommRing.zmod(int(parts[1]))
    if parts[0] == "Fp" and len(parts) == 2:
        return FiniteCommRing.fp(int(parts[1]))
    if parts[0] == "quot" and len(parts) in {3, 4}:
        if len(parts) == 4 and parts[1] == "Fp":
            p, poly_text = int(parts[2]), parts[3]
        elif parts[1].startswith("F"):
            p, poly_text = int(parts[1][1:]), parts[2]
        else:
            raise ValueError("quotient spec looks like quot:F2:x^3")
        from .parsing import parse_scalar, tokenize

        gen = next(t.text for t in tokenize(poly_text) if t.kind == "name")
        modulus = parse_scalar(poly_text, PolynomialRing(PrimeField(p), gen))
        return FiniteCommRing.quotient_poly(p, modulus, gen)
    raise ValueError(f"cannot parse ring spec {text!r}")


def parse_backend_spec(text: str):
    text = text.strip()
    if text.startswith("fpt:"):
        return FptBackend(int(text.split(":", 1)[1]))
    return parse_ring_spec(text)
