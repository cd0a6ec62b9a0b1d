import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qtwo import patterns, ss_engine
from qtwo.errors import IntegrityError, PreconditionError
from qtwo.ss_engine import Monomial, TotalComplex

from test_kernels import _oracle_rank

# bidegrees (s, t) of the E2 module generators and of the polynomial generators
GENS = {"1": (0, 0), "alpha": (1, 4), "h1": (1, 12), "b1": (2, 36)}


def _count_monomials(s, t16, zeta):
    n = 0
    for a, e, g in itertools.product(range(s + 1), (0, 1) if zeta else (0,), GENS):
        gs, gt = GENS[g]
        if 2 * a + e + gs == s and (12 * a + gt - t16) % 16 == 0:
            n += 1
    return n


def _oracle_cohomology(tc, n, w):
    dim = len(tc.basis(n, w))
    out = tc.differential(n, w)
    inc = tc.differential(n - 1, w) if n else np.zeros((dim, 0), dtype=np.int64)
    r_out = _oracle_rank(out.tolist(), 3) if out.size else 0
    r_in = _oracle_rank(inc.tolist(), 3) if inc.size else 0
    return dim - r_out - r_in


@pytest.mark.parametrize("kind", ["q2", "qbar"])
def test_e2_ranks_match_monomial_counts(kind):
    tc = TotalComplex(kind)
    for s in range(9):
        for t16 in range(0, 16, 2):
            assert _oracle_cohomology(tc, s, t16 // 2) == _count_monomials(s, t16, kind == "q2"), (s, t16)
    page = ss_engine.e2_table(tc, s_max=8)
    assert sum(page.ranks.values()) == sum(_count_monomials(s, t, kind == "q2")
                                           for s in range(9) for t in range(0, 16, 2))


@pytest.mark.parametrize("kind", ["q2", "qbar"])
def test_total_differential_squares_to_zero(kind):
    assert TotalComplex(kind).d_squared_zero(8, range(-12, 13))


def test_horizontal_composite_vanishes():
    assert ss_engine.horizontal_composite_vanishes()


def test_low_degree_differentials():
    tc = TotalComplex("q2")
    for k in range(-4, 5):
        assert tc.D0(k) == ((0, 0, 1) if k % 2 else (0, 0, 0))
        assert tc.D1(1, 0, k) == (0, 0, -1)
        assert tc.D1(0, 1, k) == ((0, 0, -1) if k % 2 == 0 else (0, 0, 0))


def test_e8_sign_is_immaterial_for_ranks():
    a, b = TotalComplex("qbar", e8_sign=-1), TotalComplex("qbar", e8_sign=1)
    for n in range(5):
        for w in range(0, 16, 2):
            assert a.cohomology_rank(n, w) == b.cohomology_rank(n, w)


@given(st.integers(0, 8), st.integers(-40, 40), st.integers(0, 1), st.sampled_from(sorted(GENS)))
def test_rules_shift_bidegree_by_r(a, k, e, g):
    m = Monomial(a, k, e, g)
    for rule in ss_engine.RULES:
        if rule.applies(m):
            tgt = rule(m)
            assert (tgt.s - m.s, tgt.t - m.t) == (rule.r, rule.r - 1)


def test_h1_rule_without_b1_is_rejected():
    literal = ss_engine.DifferentialRule(9, "h1", frozenset({3, 7, 8}),
                                         lambda m: Monomial(m.a + 4, m.k - 4, m.e, "1"))
    rules = ss_engine.RULES[:3] + (literal,)
    with pytest.raises(IntegrityError):
        ss_engine.run_differentials(ss_engine.e2_page("q2", (-5, 150)), rules=rules)


@pytest.mark.parametrize("kind,target", [("q2", "Q2"), ("qbar", "Qbar")])
def test_einf_matches_assembled_patterns(kind, target):
    einf = ss_engine.einf_page(kind, (-5, 150))
    dims = ss_engine.stem_dimensions(einf)
    assert patterns.compare(patterns.assemble(target, (-5, 150)), dims, (-5, 150)) == []


def test_differentials_are_consistent():
    einf = ss_engine.einf_page("q2", (-5, 150))
    sources = {d.source for d in einf.differentials}
    targets = {d.target for d in einf.differentials}
    assert not sources & targets
    assert not (sources | targets) & set(einf.monomials)
    assert all(not rule.applies(m) for m in einf.monomials for rule in ss_engine.RULES)


def test_pages_by_number():
    page2 = ss_engine.e2_page("q2", (0, 60))
    e5 = ss_engine.run_differentials(page2, until=5)
    e9 = ss_engine.run_differentials(page2, until=9)
    assert {d.r for d in e5.differentials} == {5}
    assert {d.r for d in e9.differentials} == {9}


def test_engine_errors():
    with pytest.raises(PreconditionError):
        TotalComplex("q3")
    with pytest.raises(PreconditionError):
        ss_engine.e2_table(TotalComplex(), s_max=ss_engine.E2_S_MAX + 1)
    with pytest.raises(PreconditionError):
        ss_engine.run_differentials(ss_engine.e2_table(TotalComplex(), s_max=2))
    with pytest.raises(PreconditionError):
        ss_engine.stem_dimensions(ss_engine.e2_page("q2", (0, 10)))
    shallow = ss_engine.einf_page("q2", (-5, 150), s_max=12)
    with pytest.raises(IntegrityError):
        ss_engine.stem_dimensions(shallow)
