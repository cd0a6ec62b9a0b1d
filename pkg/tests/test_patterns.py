import pytest
from hypothesis import given, strategies as st

from qtwo import patterns
from qtwo.errors import PreconditionError
from qtwo.patterns import Element, PatternSpace, pattern_op


def test_block_sizes():
    p = patterns.standard_patterns()
    assert (len(p["X"]), len(p["Y"]), len(p["Z"])) == (9, 10, 9)
    assert (len(p["A"]), len(p["B"]), len(p["C"])) == (27, 29, 28)


def test_x_block_stems():
    # 1, alpha, beta, alpha beta, beta^2, bracket, beta^3, bracket, beta^4
    assert patterns.standard_patterns()["X"].stems == [0, 3, 10, 13, 20, 27, 30, 37, 40]


def test_element_stems_and_products():
    vb = Element.of(v2=-1, b1=1)
    assert vb.stem == 18
    assert Element.of(1, beta=2).stem == 27
    assert Element.of(beta=1).times(Element.of(beta=2)) == Element.of(beta=3)


def _space(stems):
    return PatternSpace([(f"e{i}", s) for i, s in enumerate(stems)])


small = st.lists(st.integers(-40, 40), max_size=6)


@given(small, small)
def test_tensor_convolves_dimensions(a, b):
    p, q = _space(a), _space(b)
    assert sorted(pattern_op("tensor", p, q).stems) == sorted(x + y for x in a for y in b)


@given(small, st.integers(-50, 50))
def test_suspend_and_dualize(a, k):
    p = _space(a)
    assert pattern_op("suspend", p, k=k).stems == sorted(s + k for s in a)
    assert pattern_op("dualize", pattern_op("dualize", p)).stems == p.stems
    assert len(pattern_op("sum", p, p)) == 2 * len(p)


@pytest.mark.parametrize("target", patterns.TARGETS)
def test_period(target):
    tab = patterns.assemble(target, (-200, 350))
    assert all(tab[n] == tab[n + patterns.PERIOD] for n in range(-200, 201))


def test_sphere_splits():
    s, q, qp = (patterns.assemble(t, (-200, 200)) for t in ("Sphere", "Q2", "Qprime2"))
    assert all(s[n] == q[n] + qp[n] for n in range(-200, 201))


@given(st.integers(-300, 300))
def test_q_prime_is_dual_of_q(n):
    q = patterns.assemble("Q2", (-400, 400))
    qp = patterns.assemble("Qprime2", (-400, 400))
    assert qp[n] == q[28 - n]


def test_total_dimension_per_period():
    assert sum(patterns.assemble("Q2", (0, 143)).values()) == 2 * (29 + 28)
    assert sum(patterns.assemble("Qbar", (0, 143)).values()) == 29 + 28
    assert sum(patterns.assemble("TMF", (0, 143)).values()) == 2 * 27


def test_low_stems_of_q2():
    q = patterns.assemble("Q2", (-5, 20))
    assert (q[-1], q[0], q[2], q[3], q[10]) == (1, 1, 1, 1, 2)


def test_errors():
    with pytest.raises(PreconditionError):
        patterns.assemble("KO")
    with pytest.raises(PreconditionError):
        pattern_op("wedge", _space([0]))
    with pytest.raises(PreconditionError):
        PatternSpace([("a", 0), ("a", 1)])
    assert patterns.compare({0: 1}, {0: 1, 1: 2}) == [1]
