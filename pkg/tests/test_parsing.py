import pytest

from skewpbw.catalog import build, catalog_names, parse_presentation_file, serialize
from skewpbw.errors import ParseError, SemanticError
from skewpbw.parsing import eval_expr, parse_presentation, parse_scalar
from skewpbw.rings import PolynomialRing, PrimeField, Rationals

WEYL_FILE = """
# one-variable commutation over F_7
ring Fp 7
vars t x
c x t = 1
rel x t = 1 * t x + 1
bijective true
"""


def test_parse_weyl_file():
    P = parse_presentation(WEYL_FILE)
    assert P == build("weyl", p=7)


def test_rel_rejects_zero_constant():
    text = "ring Fp 7\nvars x1 x2\nrel x2 x1 = 0 * x1 x2 + 1\n"
    with pytest.raises(SemanticError, match="nonzero"):
        parse_presentation(text)


def test_rel_rejects_quadratic_lower_terms():
    text = "ring Fp 7\nvars x1 x2 x3\nrel x3 x1 = 1 * x1 x3 + x3 x3\n"
    with pytest.raises(SemanticError, match="degree >= 2"):
        parse_presentation(text)


def test_conflicting_c_and_rel():
    text = "ring Fp 7\nvars t x\nc x t = 2\nrel x t = 1 * t x + 1\n"
    with pytest.raises(SemanticError, match="conflicting"):
        parse_presentation(text)


def test_in_order_relation_rejected():
    text = "ring Fp 7\nvars t x\nrel t x = 1 * t x\n"
    with pytest.raises(SemanticError, match="out-of-order"):
        parse_presentation(text)


def test_residue_coefficients_rejected():
    with pytest.raises(SemanticError, match="residue"):
        parse_presentation("ring Zmod 12\nvars x\n")


def test_bijective_mode_needs_unit_constants():
    text = "ring poly Fp 5 t\nvars u v\nrel v u = t * u v\nbijective true\n"
    with pytest.raises(SemanticError, match="unit"):
        parse_presentation(text)
    # same relation without the flag is fine: t is nonzero in a domain
    assert not parse_presentation(text.replace("bijective true", "bijective false")).bijective


def test_roundtrip_catalog():
    for name in catalog_names():
        P = build(name, p=7)
        assert parse_presentation_file(serialize(P)) == P
    Pq = build("weyl", rationals=True)
    assert parse_presentation_file(serialize(Pq)) == Pq


def test_roundtrip_with_delta_over_polyring():
    text = "ring poly Q t\nvars x\nsigma x t -> t\ndelta x t -> 1\nbijective true\n"
    P = parse_presentation(text)
    assert parse_presentation_file(serialize(P)) == P


def test_expression_grammar():
    P = build("weyl", p=7)
    t, x = P.var("t"), P.var("x")
    assert eval_expr("x*x*t - 3*t", P) == (x * x) * t - t.scale_left(3)
    assert eval_expr("x x t - 3 t", P) == eval_expr("x*x*t - 3*t", P)  # juxtaposition
    assert eval_expr("(t + x)^2", P) == (t + x) * (t + x)
    assert eval_expr("-t", P) == -t


def test_expression_division():
    P = build("weyl", rationals=True)
    t = P.var("t")
    half_t = eval_expr("t/2", P)
    assert half_t + half_t == t
    with pytest.raises(SemanticError):
        eval_expr("t/x", P)


def test_parse_errors_carry_position():
    P = build("weyl", p=7)
    with pytest.raises(ParseError) as err:
        eval_expr("x*(t", P)
    assert err.value.col == 5
    with pytest.raises(ParseError):
        eval_expr("x $ t", P)
    with pytest.raises(SemanticError, match="unknown name"):
        eval_expr("x*z", P)


def test_scalar_parsing():
    F5t = PolynomialRing(PrimeField(5), "t")
    assert parse_scalar("t^2 + 3*t + 1", F5t) == (1, 3, 1)
    assert parse_scalar("-1/2", Rationals()) == Rationals().from_int(-1) / 2
    with pytest.raises(SemanticError):
        parse_scalar("u + 1", F5t)


def test_default_pairs_commute():
    text = "ring Fp 5\nvars a b c\nrel b a = 2 * a b\n"
    P = parse_presentation(text)
    cb, ca = P.var("c") * P.var("b"), P.var("c") * P.var("a")
    assert cb.terms == {(0, 1, 1): 1}
    assert ca.terms == {(1, 0, 1): 1}
    assert (P.var("b") * P.var("a")).terms == {(1, 1, 0): 2}


def test_quotient_coefficient_ring_file():
    text = "ring quot Fp 2 x^3+x+1\nvars u v\nrel v u = 1 * u v + x\n"
    P = parse_presentation(text)
    assert P.ring.size == 8 and P.ring.is_field  # x^3+x+1 is irreducible over F_2
    assert parse_presentation_file(serialize(P)) == P
