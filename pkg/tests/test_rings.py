import random
from fractions import Fraction

import pytest

from skewpbw.errors import InfiniteRing, KindMismatch, NotAUnit
from skewpbw.rings import (
    DerivationSpec,
    EndoSpec,
    PolynomialRing,
    PrimeField,
    QuotientRing,
    Rationals,
    ResidueRing,
    check_derivation_laws,
    check_endo_laws,
)


def test_residue_arithmetic():
    Z12 = ResidueRing(12)
    assert Z12.add(5, 9) == 2
    assert Z12.inv(5) == 5
    with pytest.raises(NotAUnit):
        Z12.inv(4)
    assert Z12.neg(0) == 0


def test_unit_witnesses():
    F11 = PrimeField(11)
    w = F11.unit_inverse(7)
    assert w == 8 and F11.mul(7, w) == 1
    F5t = PolynomialRing(PrimeField(5))
    assert not F5t.is_unit(F5t.generator)
    assert ResidueRing(12).unit_inverse(6) is None


def test_rationals_exact():
    Q = Rationals()
    assert Q.add(Fraction(1, 3), Fraction(1, 6)) == Fraction(1, 2)
    assert Q.inv(Fraction(-2, 7)) == Fraction(-7, 2)
    with pytest.raises(NotAUnit):
        Q.inv(Fraction(0))


def test_poly_ring_basics():
    R = PolynomialRing(PrimeField(5), "t")
    t = R.generator
    assert R.mul(t, t) == (0, 0, 1)
    assert R.add(t, R.neg(t)) == ()
    q, rem = R.divmod((1, 0, 0, 1), (1, 1))  # (t^3+1) / (t+1)
    assert R.add(R.mul(q, (1, 1)), rem) == (1, 0, 0, 1)
    assert R.gcd((0, 0, 1), (0, 1)) == (0, 1)


def test_quotient_ring():
    F4 = QuotientRing(2, (1, 1, 1))  # F_2[x]/(x^2+x+1), a field
    assert F4.is_field
    x = F4.generator
    assert F4.mul(x, x) == F4.add(x, F4.one)  # x^2 = x + 1
    R8 = QuotientRing(2, (0, 0, 0, 1))  # F_2[x]/(x^3), nilpotents
    assert not R8.is_field
    assert R8.unit_inverse(R8.generator) is None
    assert R8.is_unit(R8.add(R8.one, R8.generator))


def test_apply_endo_examples():
    R = PolynomialRing(Rationals(), "t")
    t = R.generator
    shift = EndoSpec(R, R.add(t, R.one))  # t -> t + 1
    assert shift.apply(R.mul(t, t)) == R.add(R.mul(t, t), R.add(R.add(t, t), R.one))
    ident = EndoSpec(R)
    a = (Fraction(3), Fraction(0), Fraction(2))
    assert ident.apply(a) == a
    F5t = PolynomialRing(PrimeField(5), "t")
    doubling = EndoSpec(F5t, F5t.scale(2, F5t.generator))  # t -> 2t
    assert doubling.apply((0, 0, 0, 3)) == (0, 0, 0, 4)  # 3*(2t)^3 = 24 t^3 = 4 t^3


def test_apply_derivation_examples():
    R = PolynomialRing(Rationals(), "t")
    ddt = DerivationSpec(R, EndoSpec(R), R.one)
    t3 = (Fraction(0), Fraction(0), Fraction(0), Fraction(1))
    assert ddt.apply(t3) == (Fraction(0), Fraction(0), Fraction(3))
    # twisted: sigma(t) = q t, delta(t) = 1 forces delta(t^2) = (q+1) t
    F5t = PolynomialRing(PrimeField(5), "t")
    q = 2
    tw = DerivationSpec(F5t, EndoSpec(F5t, F5t.scale(q, F5t.generator)), F5t.one)
    assert tw.apply((0, 0, 1)) == (0, (q + 1) % 5)
    assert tw.apply((4,)) == ()  # constants die


def test_enumeration():
    assert list(ResidueRing(4).elements()) == [0, 1, 2, 3]
    F2x = QuotientRing(2, (0, 0, 1))
    assert list(F2x.elements()) == [(), (1,), (0, 1), (1, 1)]  # 0, 1, x, x+1
    with pytest.raises(InfiniteRing):
        list(Rationals().elements())
    with pytest.raises(InfiniteRing):
        PolynomialRing(Rationals()).polys_up_to(1)


def test_enumeration_counts():
    for ring in (ResidueRing(12), PrimeField(7), QuotientRing(3, (0, 1, 1))):
        els = list(ring.elements())
        assert len(els) == ring.size == len(set(els))


@pytest.mark.parametrize(
    "ring",
    [
        PrimeField(7),
        Rationals(),
        ResidueRing(12),
        PolynomialRing(PrimeField(5)),
        PolynomialRing(Rationals()),
        QuotientRing(2, (1, 1, 1)),
    ],
    ids=lambda r: r.describe(),
)
def test_canonical_arithmetic_samples(ring):
    rng = random.Random(7)
    for _ in range(1000):
        a = ring.random_element(rng)
        assert ring.add(a, ring.neg(a)) == ring.zero
        w = ring.unit_inverse(a)
        if w is not None:
            assert ring.mul(a, w) == ring.one and ring.mul(w, a) == ring.one
        ring.check(a)


def test_endo_law_sampling():
    F5t = PolynomialRing(PrimeField(5), "t")
    rng = random.Random(3)
    good = EndoSpec(F5t, (1, 2))  # t -> 2t + 1 extends to a ring map
    assert check_endo_laws(good, rng, 500) == []
    # quotient map that is not well defined: x -> x + 1 in F_2[x]/(x^2)
    Q = QuotientRing(2, (0, 0, 1))
    broken = EndoSpec(Q, (1, 1))
    assert check_endo_laws(broken, random.Random(3), 200) != []


def test_derivation_law_sampling():
    F5t = PolynomialRing(PrimeField(5), "t")
    rng = random.Random(3)
    sig = EndoSpec(F5t, F5t.scale(3, F5t.generator))
    spec = DerivationSpec(F5t, sig, (2, 1))
    assert check_derivation_laws(spec, rng, 500) == []


def test_injectivity_verdicts():
    F5t = PolynomialRing(PrimeField(5), "t")
    assert EndoSpec(F5t, (1, 2)).injectivity_known() is True
    assert EndoSpec(F5t, (3,)).injectivity_known() is False  # constant image
    assert EndoSpec(F5t, (0, 0, 1)).bijectivity_known() is False  # t -> t^2
    assert EndoSpec(F5t, (1, 2)).bijectivity_known() is True


def test_kind_mismatch():
    with pytest.raises(KindMismatch):
        PrimeField(5).check(7)
    with pytest.raises(KindMismatch):
        PolynomialRing(PrimeField(5)).check((1, 0))  # trailing zero
    with pytest.raises(KindMismatch):
        Rationals().check(1)  # must be a Fraction
