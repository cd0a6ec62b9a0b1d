import random

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from qtwo import curves
from qtwo.errors import ConfigurationError, PreconditionError
from qtwo.exact_algebra import F9, GF, QQ, parse_poly

R = curves.MAP_RING


def P(text):
    return parse_poly(text, R)


def _to_sympy(p):
    syms = [sp.Symbol(n) for n in p.ring.names]
    out = 0
    for e, c in p.terms.items():
        term = sp.Rational(c.numerator, c.denominator) if hasattr(c, "denominator") else sp.Integer(c)
        for s_, k in zip(syms, e):
            term *= s_ ** k
        out += term
    return sp.expand(out)


# --------------------------------------------------------------------------
# induced maps

def test_displayed_map_images():
    assert curves.induced_map("psi_d").image("q2") == P("-2*q2")
    assert curves.induced_map("psi_d").image("q4") == P("q2^2 - 4*q4")
    assert curves.induced_map("psi_d").image("r") is None
    assert curves.induced_map("psi_2").image("r") == P("4*r")
    assert curves.induced_map("phi_f").image("r") == P("0")


def test_map_relations():
    dd = curves.compose(curves.induced_map("psi_d"), curves.induced_map("psi_d"))
    p2 = curves.induced_map("psi_2")
    assert dd.image("q2") == p2.image("q2") and dd.image("q4") == p2.image("q4")
    assert curves.compose(curves.induced_map("phi_f"), curves.induced_map("psi_d")) == curves.induced_map("phi_q")
    inv = curves.compose(curves.induced_map("psi_2"), curves.induced_map("psi_2_inverse"))
    assert all(inv.image(v) == R.gen(v) for v in ("q2", "q4", "r"))


def test_maps_preserve_weight():
    for name in curves.MAP_TABLE:
        assert curves.induced_map(name).check_weights()


def test_eta_r_matches_translation():
    assert curves.derived_eta_r() == curves.induced_map("eta_R")


def test_unknown_map_is_a_configuration_error():
    with pytest.raises(ConfigurationError):
        curves.induced_map("psi_7")


def test_mu_lambda_scales_by_weight():
    lam = F9.omega
    m = curves.mu_lambda(lam)
    assert m.image("q4") == m.image("q4").ring.gen("q4") * lam ** 4


# --------------------------------------------------------------------------
# quotient and discriminant

def test_quotient_identity_has_zero_residue():
    assert curves.quotient_identity_residue().is_zero()


def test_quotient_q_form_equals_psi_d():
    _, qf = curves.quotient_by_canonical_2torsion(curves.WeierstrassQ.symbolic(QQ))
    assert qf.q2 == parse_poly("-2*q2", qf.ring)
    assert qf.q4 == parse_poly("q2^2 - 4*q4", qf.ring)


def test_quotient_curve_by_sympy():
    x, q2, q4, y = sp.symbols("x q2 q4 y")
    x1 = x + q4 / x
    y1 = y - q4 * y / x ** 2
    rel = {y ** 2: 4 * x * (x ** 2 + q2 * x + q4)}
    lhs = sp.expand(y1 ** 2).subs(rel)
    rhs = 4 * x1 ** 3 + 4 * q2 * x1 ** 2 - 16 * q4 * x1 - 16 * q2 * q4
    assert sp.simplify(lhs - rhs) == 0


def test_discriminant_and_resultant_by_sympy():
    c = curves.WeierstrassQ.symbolic(QQ)
    r_, q2, q4 = sp.symbols("r q2 q4")
    f = r_ ** 3 + q2 * r_ ** 2 + q4 * r_
    oracle = sp.expand(sp.resultant(f, sp.diff(f, r_), r_))
    res = curves.etale_resultant_check(c)
    assert _to_sympy(res) == oracle
    assert sp.expand(16 * oracle + q4 ** 2 * (16 * q2 ** 2 - 64 * q4)) == 0


def test_discriminant_unit_check():
    assert curves.WeierstrassQ.of(0, 1).check_unit_discriminant() is True
    assert curves.WeierstrassQ.of(2, 1).check_unit_discriminant() is False
    assert curves.WeierstrassQ.symbolic().check_unit_discriminant() is None


def test_b_form_discriminant_agrees():
    c = curves.WeierstrassQ.of(0, 1)
    assert curves.discriminant(c).constant() == -64


# --------------------------------------------------------------------------
# points

def _brute_count(k):
    F = GF(k)
    n = 1
    for x in F.elements():
        for y in F.elements():
            if y * y == x ** 3 - x:
                n += 1
    return n


def test_point_counts():
    assert len(curves.supersingular_curve(2).points()) == _brute_count(2) == 16
    assert len(curves.supersingular_curve(4).points()) == 64


def test_odd_extension_rejected():
    with pytest.raises(PreconditionError):
        curves.supersingular_curve(3)


@given(st.integers(0, 15), st.integers(0, 15), st.integers(0, 15))
def test_group_law_on_f9(i, j, k):
    pts = curves.supersingular_curve(2).points()
    a, b, c = pts[i], pts[j], pts[k]
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a - a == a.curve.infinity


def test_group_exponent_on_f9():
    # the supersingular curve over F_9 has group (Z/4)^2
    for p in curves.supersingular_curve(2).points():
        assert curves.point_arith("mul", p, m=4).is_infinity


def test_point_not_on_curve():
    E = curves.supersingular_curve(2)
    with pytest.raises(PreconditionError):
        E(0, 1)


# --------------------------------------------------------------------------
# endomorphisms

def _statuses(k):
    return {r["relation"]: r for r in curves.endo_relation_report(k)}


def test_relations_on_f9():
    rep = _statuses(2)
    for name in ("F^2 = [-3]", "t^2 = [-1]", "Ft = -tF", "st = ts^2", "sigma t sigma^-1 = -t", "s^3 = 1"):
        assert rep[name]["status"] == "pass"
    assert rep["s = (1 + F)/2"]["variant"].startswith("both")


def test_relations_on_f81_pin_the_sign_variant():
    rep = _statuses(4)
    assert rep["s = -(1 + F)/2"]["status"] == "pass"
    assert rep["s = (1 + F)/2"]["status"] == "fail"
    assert rep["s = (1 + F)/2"]["variant"] == "2s = -(1 + F)"
    assert rep["sigma t sigma^-1 = -t"]["status"] == "pass"
    assert rep["F^2 = [-3]"]["points_checked"] == 64


def test_endomorphisms_are_homomorphisms():
    E = curves.supersingular_curve(4)
    pts = E.points()
    rng = random.Random(0x5EED)
    for _ in range(40):
        a, b = rng.choice(pts), rng.choice(pts)
        for e in ("t", "F", "s"):
            assert curves.endo_apply(e, a + b) == curves.endo_apply(e, a) + curves.endo_apply(e, b)


def test_unknown_endomorphism():
    E = curves.supersingular_curve(2)
    with pytest.raises(ConfigurationError):
        curves.endo_apply("q", E.points()[1])
