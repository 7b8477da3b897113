"""PBW normal forms for skew polynomial presentations.

Elements live in the free left module over the coefficient ring with basis the
standard monomials x_1^a1 ... x_n^an (exponent tuples).  A presentation stores,
for every out-of-order adjacent pair x_j x_i with j > i, the rewrite

    x_j x_i  ->  c * x_i x_j + d_1 x_1 + ... + d_n x_n + d_0

together with per-variable endomorphism/derivation actions on coefficients:

    x_i r  ->  sigma_i(r) x_i + delta_i(r)

Rewriting terminates: each step either lowers total degree or keeps it while
strictly reducing the number of out-of-order adjacent variable pairs.  The
engine evaluates words right-to-left through cached single-variable products,
which realizes an innermost-leftmost strategy with deterministic output.

Presentations and polynomials are immutable; all operations are pure, so
independent products may be evaluated concurrently with identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import SemanticError
from .rings import DerivationSpec, EndoSpec, Ring

NEG_INF = -math.inf

DEFAULT_SEED = 101

Monomial = tuple  # exponent vector, length n


def var_atom(i: int):
    return ("v", i)


def coeff_atom(r):
    return ("c", r)


class SkewPoly:
    """Element in PBW normal form: map from exponent tuples to nonzero coefficients."""

    __slots__ = ("pres", "terms")

    def __init__(self, pres: "Presentation", terms: dict):
        self.pres = pres
        self.terms = terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return self.pres == other.pres and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        R = self.pres.ring
        return SkewPoly(self.pres, {m: R.neg(c) for m, c in self.terms.items()})

    def __add__(self, other):
        self._same_pres(other)
        R = self.pres.ring
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = R.add(out.get(m, R.zero), c)
            if s == R.zero:
                out.pop(m, None)
            else:
                out[m] = s
        return SkewPoly(self.pres, out)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SkewPoly):
            self._same_pres(other)
            return self.pres.multiply(self, other)
        return NotImplemented

    def _same_pres(self, other):
        if self.pres != other.pres:
            raise SemanticError("operands belong to different presentations")

    def scale_left(self, r) -> "SkewPoly":
        R = self.pres.ring
        out = {}
        for m, c in self.terms.items():
            v = R.mul(r, c)
            if v != R.zero:
                out[m] = v
        return SkewPoly(self.pres, out)

    def degree(self):
        """Total degree in the variables; the zero element reports -inf."""
        if not self.terms:
            return NEG_INF
        return max(sum(m) for m in self.terms)

    def constant_coefficient(self):
        zero_m = (0,) * self.pres.n
        return self.terms.get(zero_m, self.pres.ring.zero)

    def is_scalar(self) -> bool:
        return not self.terms or set(self.terms) == {(0,) * self.pres.n}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        R = self.pres.ring
        names = self.pres.names
        pieces = []
        for m, c in self.sorted_terms():
            vars_s = "*".join(
                nm if e == 1 else f"{nm}^{e}" for nm, e in zip(names, m) if e
            )
            cs = R.format(c)
            if not vars_s:
                pieces.append(cs)
                continue
            if cs == "1":
                pieces.append(vars_s)
            else:
                if " + " in cs or " - " in cs:
                    cs = f"({cs})"
                pieces.append(f"{cs}*{vars_s}")
        return " + ".join(pieces)

    def __repr__(self):
        return f"<{self}>"


class Presentation:
    """Presentation data for a skew polynomial extension.

    `c[(i, j)]` and `lower[(i, j)]` with i < j describe the rewrite of
    x_j x_i; `lower` entries are pairs (d0, dks) with dks a length-n tuple.
    Treated as immutable after construction.
    """

    def __init__(self, ring: Ring, names, sigma, delta, c, lower, bijective=False):
        self.ring = ring
        self.names = tuple(names)
        self.n = len(self.names)
        if len(set(self.names)) != self.n or self.n == 0:
            raise SemanticError("variable names must be nonempty and distinct")
        self.sigma = tuple(sigma)
        self.delta = tuple(delta)
        if len(self.sigma) != self.n or len(self.delta) != self.n:
            raise SemanticError("need one sigma and one delta per variable")
        self.c = dict(c)
        self.lower = dict(lower)
        for i in range(self.n):
            for j in range(i + 1, self.n):
                self.c.setdefault((i, j), ring.one)
                self.lower.setdefault((i, j), (ring.zero, (ring.zero,) * self.n))
        for (i, j), cv in self.c.items():
            if not (0 <= i < j < self.n):
                raise SemanticError(f"bad variable pair {(i, j)}")
            if cv == ring.zero:
                raise SemanticError(
                    f"constant for {self.names[j]}*{self.names[i]} must be nonzero"
                )
        for (i, j), (d0, dks) in self.lower.items():
            if not (0 <= i < j < self.n):
                raise SemanticError(f"bad variable pair {(i, j)}")
            if len(dks) != self.n:
                raise SemanticError("lower-term data must cover every variable")
        self.bijective = bool(bijective)
        self._mono_cache: dict = {}
        self._desc = None
        self._sigma_triv = tuple(s.is_identity for s in self.sigma)
        self._delta_zero = tuple(d.is_zero for d in self.delta)

    # -- identity and constructors -------------------------------------------------

    def descriptor(self):
        if self._desc is None:
            self._desc = (
                self.ring.descriptor(),
                self.names,
                tuple((s.gen_image, s.injective) for s in self.sigma),
                tuple(d.gen_image for d in self.delta),
                tuple(sorted(self.c.items())),
                tuple(sorted(self.lower.items())),
                self.bijective,
            )
        return self._desc

    def __eq__(self, other):
        return isinstance(other, Presentation) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(self.descriptor())

    def __repr__(self):
        return f"<presentation {'*'.join(self.names)} over {self.ring.describe()}>"

    def zero(self) -> SkewPoly:
        return SkewPoly(self, {})

    def one(self) -> SkewPoly:
        return SkewPoly(self, {(0,) * self.n: self.ring.one})

    def scalar(self, r) -> SkewPoly:
        if r == self.ring.zero:
            return self.zero()
        return SkewPoly(self, {(0,) * self.n: r})

    def var(self, which) -> SkewPoly:
        i = self.names.index(which) if isinstance(which, str) else which
        m = tuple(1 if k == i else 0 for k in range(self.n))
        return SkewPoly(self, {m: self.ring.one})

    def monomial(self, exponents, coeff=None) -> SkewPoly:
        m = tuple(exponents)
        if len(m) != self.n or any(e < 0 for e in m):
            raise SemanticError("exponent vector has wrong shape")
        c = self.ring.one if coeff is None else coeff
        if c == self.ring.zero:
            return self.zero()
        return SkewPoly(self, {m: c})

    def var_index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise SemanticError(f"unknown variable {name!r}") from None

    # -- rewriting core -------------------------------------------------------------

    def _mono_lmul(self, i: int, mono: Monomial) -> dict:
        """x_i * x^mono as a normal-form term dict (cached)."""
        key = (i, mono)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        R = self.ring
        j = next((k for k, e in enumerate(mono) if e), None)
        if j is None or i <= j:
            out = {bump(mono, i): R.one}
        else:
            rest = bump(mono, j, -1)
            inner = self._mono_lmul(i, rest)
            cv = self.c[(j, i)]
            d0, dks = self.lower[(j, i)]
            out: dict = {}
            _acc_scaled(R, out, cv, self._lmul_var_dict(j, inner))
            if d0 != R.zero:
                _acc_term(R, out, rest, d0)
            for k, dk in enumerate(dks):
                if dk != R.zero:
                    _acc_scaled(R, out, dk, self._mono_lmul(k, rest))
        self._mono_cache[key] = out
        return out

    def _lmul_var_dict(self, i: int, terms: dict) -> dict:
        R = self.ring
        sig, dlt = self.sigma[i], self.delta[i]
        sig_id, dlt_zero = self._sigma_triv[i], self._delta_zero[i]
        out: dict = {}
        for m, cf in terms.items():
            s = cf if sig_id else sig.apply(cf)
            if s != R.zero:
                _acc_scaled(R, out, s, self._mono_lmul(i, m))
            if not dlt_zero:
                d = dlt.apply(cf)
                if d != R.zero:
                    _acc_term(R, out, m, d)
        return out

    def _lmul_scalar_dict(self, r, terms: dict) -> dict:
        R = self.ring
        out = {}
        for m, cf in terms.items():
            v = R.mul(r, cf)
            if v != R.zero:
                out[m] = v
        return out

    def from_word(self, atoms) -> SkewPoly:
        """Normal form of a word of ('v', index) / ('c', payload) atoms."""
        acc = {(0,) * self.n: self.ring.one}
        for tag, val in reversed(tuple(atoms)):
            if tag == "v":
                acc = self._lmul_var_dict(val, acc)
            elif tag == "c":
                acc = self._lmul_scalar_dict(val, acc)
            else:
                raise SemanticError(f"bad word atom {(tag, val)!r}")
            if not acc:
                break
        return SkewPoly(self, acc)

    def normalize_terms(self, word_terms) -> SkewPoly:
        """Normal form of a formal sum of words."""
        total = self.zero()
        for atoms in word_terms:
            total = total + self.from_word(atoms)
        return total

    def multiply(self, f: SkewPoly, g: SkewPoly) -> SkewPoly:
        R = self.ring
        out: dict = {}
        for alpha, cf in f.terms.items():
            part = g.terms
            for i in range(self.n - 1, -1, -1):
                for _ in range(alpha[i]):
                    part = self._lmul_var_dict(i, part)
            _acc_scaled(R, out, cf, part)
        return SkewPoly(self, out)

    def random_poly(self, rng, degree_bound: int, nonzero: bool = False) -> SkewPoly:
        monos = monomials_up_to(self.n, degree_bound)
        while True:
            out = {}
            for m in monos:
                if rng.random() < 0.4:
                    c = self.ring.random_element(rng)
                    if c != self.ring.zero:
                        out[m] = c
            if out or not nonzero:
                return SkewPoly(self, out)


def bump(mono: Monomial, i: int, by: int = 1) -> Monomial:
    out = list(mono)
    out[i] += by
    return tuple(out)


def _acc_term(R, out: dict, m: Monomial, c):
    s = R.add(out.get(m, R.zero), c)
    if s == R.zero:
        out.pop(m, None)
    else:
        out[m] = s


def _acc_scaled(R, out: dict, r, terms: dict):
    for m, c in terms.items():
        _acc_term(R, out, m, R.mul(r, c))


def monomials_up_to(n: int, degree_bound: int) -> list[Monomial]:
    """Exponent vectors of total degree <= bound, graded-lex order."""
    out = [()]
    for _ in range(n):
        out = [m + (e,) for m in out for e in range(degree_bound + 1 - sum(m))]
    return sorted(out, key=lambda m: (sum(m), m))


def add(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    return f + g


def multiply(f: SkewPoly, g: SkewPoly, pres: Presentation | None = None) -> SkewPoly:
    return (pres or f.pres).multiply(f, g)


def degree(f: SkewPoly):
    return f.degree()


def is_quasi_commutative(P: Presentation) -> bool:
    """True iff every derivation is zero and every pair rewrite has no lower part."""
    if not all(d.is_zero for d in P.delta):
        return False
    R = P.ring
    for d0, dks in P.lower.values():
        if d0 != R.zero or any(dk != R.zero for dk in dks):
            return False
    return True


def associated_graded(P: Presentation) -> Presentation:
    """Degree-filtration graded presentation: drop derivations and lower terms."""
    R = P.ring
    zero_delta = tuple(DerivationSpec(R, s) for s in P.sigma)
    zero_lower = {k: (R.zero, (R.zero,) * P.n) for k in P.lower}
    return Presentation(R, P.names, P.sigma, zero_delta, dict(P.c), zero_lower, P.bijective)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class PresentationReport:
    checks: list[CheckResult] = field(default_factory=list)
    seed: int = DEFAULT_SEED

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, passed, detail=""):
        self.checks.append(CheckResult(name, bool(passed), detail))

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def as_dict(self):
        return {
            "ok": self.ok,
            "seed": self.seed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks
            ],
        }


def validate_presentation(P: Presentation, samples: int = 200, seed: int = DEFAULT_SEED) -> PresentationReport:
    """Consistency report: constants, coefficient actions, associativity.

    Associativity is checked on every generator triple x_k x_j x_i with
    k > j > i, and on sampled (x_j, x_i, r) mixes.  These are necessary
    conditions; passing them is evidence, not a completeness theorem.
    """
    import random as _random

    from .rings import check_derivation_laws, check_endo_laws

    rng = _random.Random(seed)
    rep = PresentationReport(seed=seed)
    R = P.ring

    for (i, j), cv in sorted(P.c.items()):
        label = f"constant {P.names[j]}*{P.names[i]}"
        if cv == R.zero:
            rep.add(label, False, "zero constant")
        elif P.bijective and not R.is_unit(cv):
            rep.add(label, False, f"{R.format(cv)} is not a unit but the presentation is bijective")
        else:
            rep.add(label, True)

    for i, (sg, dl) in enumerate(zip(P.sigma, P.delta)):
        bad = check_endo_laws(sg, rng, samples)
        rep.add(f"sigma[{P.names[i]}] ring map", not bad, "; ".join(bad))
        if P.bijective:
            known = sg.bijectivity_known()
            ok = known if known is not None else sg.injective
            rep.add(
                f"sigma[{P.names[i]}] bijective",
                bool(ok),
                "" if ok else "generator image is not invertible",
            )
        bad = check_derivation_laws(dl, rng, samples)
        rep.add(f"delta[{P.names[i]}] twisted Leibniz", not bad, "; ".join(bad))

    for k in range(P.n - 1, -1, -1):
        for j in range(k - 1, -1, -1):
            for i in range(j - 1, -1, -1):
                xk, xj, xi = P.var(k), P.var(j), P.var(i)
                left = (xk * xj) * xi
                right = xk * (xj * xi)
                name = f"associativity ({P.names[k]}*{P.names[j]})*{P.names[i]}"
                if left == right:
                    rep.add(name, True)
                else:
                    rep.add(name, False, f"left={left} right={right}")

    r_samples = max(4, samples // 25)
    for j in range(P.n):
        for i in range(j):
            xj, xi = P.var(j), P.var(i)
            ok = True
            detail = ""
            for _ in range(r_samples):
                r = P.scalar(R.random_nonzero(rng))
                left = (xj * xi) * r
                right = xj * (xi * r)
                if left != right:
                    ok = False
                    detail = f"r={r}: left={left} right={right}"
                    break
            rep.add(f"associativity ({P.names[j]}*{P.names[i]})*r", ok, detail)
    return rep


@dataclass
class ProbeReport:
    trials: int
    degree_bound: int
    seed: int
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def as_dict(self):
        return {
            "trials": self.trials,
            "degree_bound": self.degree_bound,
            "seed": self.seed,
            "counterexamples": [(str(f), str(g)) for f, g in self.counterexamples],
            "ok": self.ok,
        }


def zero_divisor_probe(P: Presentation, trials: int, degree_bound: int, seed: int = DEFAULT_SEED) -> ProbeReport:
    """Random nonzero products; any vanishing product falsifies the presentation."""
    import random as _random

    if not P.ring.is_domain:
        raise SemanticError("zero-divisor probe needs a domain coefficient ring")
    rng = _random.Random(seed)
    rep = ProbeReport(trials=trials, degree_bound=degree_bound, seed=seed)
    for _ in range(trials):
        f = P.random_poly(rng, degree_bound, nonzero=True)
        g = P.random_poly(rng, degree_bound, nonzero=True)
        if not (f * g):
            rep.counterexamples.append((f, g))
    return rep
