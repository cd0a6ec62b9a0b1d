import random
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, strategies as st

from qtwo import quaternions as qt
from qtwo.errors import PreconditionError, SingularBasisError
from qtwo.exact_algebra import W
from qtwo.quaternions import I, J, ONE, O3Element, QuaternionElement

# --------------------------------------------------------------------------
# oracle: D embeds in 2x2 matrices over Q(sqrt -3), with Nrd = det

R3 = sp.sqrt(-3)
MI = sp.Matrix([[R3, 0], [0, -R3]])
MJ = sp.Matrix([[0, -1], [1, 0]])


def _mat(q):
    x0, x1, x2, x3 = (sp.Rational(c.numerator, c.denominator) for c in q.c)
    return sp.expand(x0 * sp.eye(2) + x1 * MI + x2 * MJ + x3 * MI * MJ)


coord = st.integers(-6, 6).map(lambda k: Fraction(k, 2))
quat = st.builds(QuaternionElement, coord, coord, coord, coord)


@given(quat, quat)
def test_product_matches_matrix_model(a, b):
    assert (_mat(a * b) - _mat(a) * _mat(b)).expand() == sp.zeros(2, 2)
    assert sp.expand(_mat(a).det() - sp.Rational(a.nrd().numerator, a.nrd().denominator)) == 0


@given(quat, quat)
def test_norm_and_conjugation(a, b):
    assert (a * b).nrd() == a.nrd() * b.nrd()
    assert (a * b).conj() == b.conj() * a.conj()
    assert a * a.conj() == QuaternionElement(a.nrd())


def test_named_elements():
    assert I * I == -3 and J * J == -1 and I * J == -(J * I)
    assert qt.quat_arith("nrd", ONE + qt.T_Q) == 2
    assert (ONE + qt.T_Q) * (ONE - qt.T_Q) == 2
    with pytest.raises(PreconditionError):
        QuaternionElement(Fraction(1, 3))


# --------------------------------------------------------------------------
# orders

def test_quoted_bases_are_singular():
    assert qt.lattice_rank(qt.PIZER_QUOTED) == 3
    assert set(qt.PIZER_QUOTED) == set(qt.STFT_QUOTED)
    with pytest.raises(SingularBasisError):
        qt.order_check(qt.PIZER_QUOTED)


def test_repaired_order():
    rep = qt.order_check(qt.PIZER_CORRECTED)
    assert rep.closed and rep.contains_one and rep.reduced_discriminant == 3
    assert qt.is_unimodular_change(qt.STFT_CORRECTED, qt.PIZER_CORRECTED)


def test_standard_order_discriminant():
    rep = qt.order_check(qt.STANDARD)
    assert rep.closed and rep.reduced_discriminant == 12
    # it sits with index 4 inside the maximal order
    _, det = qt.change_of_basis(qt.STANDARD, qt.PIZER_CORRECTED)
    assert abs(det) == 4


# --------------------------------------------------------------------------
# O_3 against a 4x4 matrix model on the basis 1, w, S, wS

def _o3_matrix(x: O3Element):
    R = x.a.ring
    a, mod = R.a, R.mod
    lw = np.array([[0, 1, 0, 0], [1, a, 0, 0], [0, 0, 0, 1], [0, 0, 1, a]], dtype=object)
    ls = np.array([[0, 0, 3, 3 * a], [0, 0, 0, -3], [1, a, 0, 0], [0, -1, 0, 0]], dtype=object)
    eye = np.eye(4, dtype=object)
    m = x.a.x * eye + x.a.y * lw + x.b.x * ls + x.b.y * lw.dot(ls)
    return m % mod


def _random_o3(rng, n):
    R = W(n)
    return O3Element(R(rng.randrange(R.mod), rng.randrange(R.mod)), R(rng.randrange(R.mod), rng.randrange(R.mod)))


def test_o3_product_matches_matrix_model():
    rng = random.Random(0x5EED)
    for n in (1, 2, 4):
        mod = 3 ** n
        for _ in range(60):
            x, y = _random_o3(rng, n), _random_o3(rng, n)
            assert np.array_equal(_o3_matrix(x * y), _o3_matrix(x).dot(_o3_matrix(y)) % mod)


def test_o3_norm_and_sigma_on_seeded_pairs():
    rng = random.Random(0x5EED)
    for _ in range(200):
        x, y = _random_o3(rng, 4), _random_o3(rng, 4)
        assert (x * y).nrd() == x.nrd() * y.nrd()
        assert (x * y).sigma() == x.sigma() * y.sigma()
        assert x.sigma().sigma() == x
        if x.is_unit():
            assert x * x.inverse() == O3Element.of(4, 1)


def test_o3_dictionary_relations():
    d = qt.o3_dictionary(5)
    one, F, t, s = d["1"], d["F"], d["t"], d["s"]
    assert F * F == O3Element.of(5, -3)
    assert t * t == -one and F * t == -(t * F)
    assert s ** 3 == -one
    assert d["sqrt2"].nrd() == W(5)(-2)


# --------------------------------------------------------------------------
# subgroups

@pytest.mark.parametrize("gens,order", [(["t", "sigma"], 8), (["omega", "sigma"], 16), (["s", "t"], 12),
                                        (["s_minus", "t"], 12), (["s", "t", "sigma"], 24)])
def test_subgroup_orders_are_stable(gens, order):
    assert qt.stable_order(gens, 4) == {"order": order, "precision": 4, "stable_at": 5}


def test_multiplication_table_is_a_group():
    g = qt.subgroup_closure(["omega", "sigma"], 3)
    tab, n = g["table"], g["order"]
    assert all(sorted(row) == list(range(n)) for row in tab)
    assert all(sorted(col) == list(range(n)) for col in zip(*tab))
    assert all(tab[tab[a][b]][c] == tab[a][tab[b][c]] for a in range(n) for b in range(n) for c in range(n))


def test_element_orders():
    assert qt.element_order(qt.named_generator("t", 4)) == 4
    assert qt.element_order(qt.named_generator("omega", 4)) == 8
    assert qt.element_order(qt.named_generator("sigma", 4)) == 2
    with pytest.raises(PreconditionError):
        qt.ExtendedElement(qt.o3_dictionary(4)["S"])
    with pytest.raises(PreconditionError):
        qt.named_generator("u", 4)


# --------------------------------------------------------------------------
# group rings and projectors

def _naive_nilpotence(p, k):
    n = p ** k
    x = [0] * n
    x[0], x[1 % n] = p - 1, 1
    power, m = list(x), 1
    while any(power):
        power = [sum(power[i] * x[(j - i) % n] for i in range(n)) % p for j in range(n)]
        m += 1
    return m


@pytest.mark.parametrize("p,k", [(2, 1), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)])
def test_nilpotence_matches_naive(p, k):
    assert qt.group_ring_nilpotence(p, k) == _naive_nilpotence(p, k) == p ** k


def test_nilpotence_errors():
    with pytest.raises(PreconditionError):
        qt.group_ring_nilpotence(4, 1)
    with pytest.raises(PreconditionError):
        qt.group_ring_nilpotence(3, 7)


@given(st.lists(st.integers(0, 80), min_size=2, max_size=2))
def test_chi_projector_on_cosets(x):
    mats, chi, cosets = qt.sd16_over_d8(3)
    assert len(cosets) == 2 and len(mats) == 16 and chi.count(1) == 8
    for c in (chi, [1] * 16):
        y = qt.chi_average(mats, c, x, 3)
        assert np.array_equal(qt.chi_average(mats, c, y, 3), y)
        assert all(np.array_equal(m @ y % 27, ci * y % 27) for m, ci in zip(mats, c))
    plus = qt.chi_average(mats, [1] * 16, x, 3)
    minus = qt.chi_average(mats, chi, x, 3)
    assert np.array_equal((plus + minus) % 27, np.asarray(x) % 27)


def test_chi_average_needs_invertible_order():
    with pytest.raises(PreconditionError):
        qt.chi_average([np.eye(1)] * 3, [1, 1, 1], [1], 2)


# --------------------------------------------------------------------------
# battery

def test_battery_outcomes_match_expectations():
    rows = qt.relation_battery(4)
    assert all(r["status"] == r["expected"] for r in rows), [r for r in rows if r["status"] != r["expected"]]
    fails = {r["check"] for r in rows if r["expected"] == "fail"}
    assert fails == {"Nrd((1+t)/sqrt2) = 1 mod 3^4", "Pizer basis closed, reduced discriminant 3",
                     "{s,t,ts,tF} to Pizer change of basis unimodular"}


def test_unit_over_sqrt2_has_norm_minus_one():
    d = qt.o3_dictionary(4)
    u = (d["1"] + d["t"]) * d["sqrt2"].inverse()
    assert u.nrd() == W(4)(-1)
