from fractions import Fraction

import pytest

from mfring.cyclo import cyclo_context
from mfring.errors import CatalogError, UnknownForm
from mfring.exprs import (
    Evaluator,
    parse_character,
    parse_expr,
    parse_poly,
    parse_scalar,
)

C1 = cyclo_context(1)
C4 = cyclo_context(4)
C10 = cyclo_context(10)


def test_parse_expr_shapes():
    ast = parse_expr("(scale 1/1728 (sub (pow E4 3) (pow E6 2)))")
    assert ast[0] == "scale" and ast[1] == "1/1728"
    assert parse_expr("(v 2 theta)") == ("v", 2, ("atom", "theta"))
    assert parse_expr("(mul f[1;pow(chi11,3)] x)")[1][0] == ("atom", "f[1;pow(chi11,3)]")
    with pytest.raises(CatalogError):
        parse_expr("(frobnicate x y)")
    with pytest.raises(CatalogError):
        parse_expr("(add x)")
    with pytest.raises(CatalogError):
        parse_expr("(sub x y) trailing")


def test_parse_scalar():
    assert parse_scalar("1/1728", C1) == Fraction(1, 1728)
    assert parse_scalar("-3", C1) == -3
    assert parse_scalar("z4/2", C4) == C4.zeta_power(1) * Fraction(1, 2)
    assert parse_scalar("1-z4", C4) == C4.one - C4.zeta_power(1)
    phi = parse_scalar("-4*z10^4+5*z10^3+z10", C10)
    z = C10.zeta_power(1)
    assert phi == z**4 * (-4) + z**3 * 5 + z


def test_parse_poly():
    terms = parse_poly("(1+z4)*x^2 - 2*x*y + y^2/2", ["x", "y"], C4)
    assert terms[(2, 0)] == C4.one + C4.zeta_power(1)
    assert terms[(1, 1)] == -2
    assert terms[(0, 2)] == Fraction(1, 2)
    assert parse_poly("x - x", ["x"], C1) == {}
    with pytest.raises(CatalogError):
        parse_poly("x + unknown", ["x"], C1)
    with pytest.raises(CatalogError):
        parse_poly("x / y", ["x", "y"], C1)


def test_parse_character_expressions():
    assert parse_character("chi5").order() == 4
    assert parse_character("pow(chi13,3)").order() == 4
    assert parse_character("conj(chi5)") == parse_character("pow(chi5,3)")
    prod = parse_character("mul(rho3,rho4)")
    assert prod.modulus == 12 and prod.parity() == 1
    with pytest.raises(KeyError):
        parse_character("chi6")


def test_evaluator_precision_contract():
    ev = Evaluator(C1)
    # the V-operator child is rebuilt at reduced precision, output exact to prec
    out = ev.series("(v 3 E4)", 10)
    assert out.prec == 10
    assert out.coefficient(3) == 240
    assert all(out.coefficient(n).is_zero() for n in (1, 2, 4, 5, 7, 8))
    with pytest.raises(UnknownForm):
        ev.series("nosuchform", 5)


def test_evaluator_caching_returns_truncations():
    ev = Evaluator(C1)
    long = ev.series("E4", 20)
    short = ev.series("E4", 5)
    assert short.prec == 5 and short.coeffs == long.coeffs[:5]
