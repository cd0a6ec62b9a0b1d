from functools import reduce

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qtwo import cobar
from qtwo.errors import PreconditionError

from test_kernels import _oracle_rank

# --------------------------------------------------------------------------
# oracle: the cobar complex of the reduced coalgebra span{r, r^2} built from
# Kronecker products, split by the parity of the total r-exponent

RBAR = np.array([[0, 2], [0, 0], [0, 0], [0, 0]])      # r^2 -> 2 r|r; rows r|r, r|r^2, r^2|r, r^2|r^2


def _kron_d(s):
    terms = []
    for i in range(s):
        sign = 1 if i % 2 else -1
        parts = [np.eye(2, dtype=np.int64)] * i + [RBAR] + [np.eye(2, dtype=np.int64)] * (s - 1 - i)
        terms.append(sign * reduce(np.kron, parts))
    return sum(terms) % 3


def _exponent_sum(index, s):
    return sum(1 + ((index >> (s - 1 - k)) & 1) for k in range(s))


def _oracle_rank_h(s, parity):
    keep = [i for i in range(2 ** s) if _exponent_sum(i, s) % 2 == parity]
    if not keep:
        return 0
    tgt = [i for i in range(2 ** (s + 1)) if _exponent_sum(i, s + 1) % 2 == parity]
    rank_out = _oracle_rank(_kron_d(s)[np.ix_(tgt, keep)].tolist(), 3)
    rank_in = 0
    if s >= 2:
        src = [i for i in range(2 ** (s - 1)) if _exponent_sum(i, s - 1) % 2 == parity]
        rank_in = _oracle_rank(_kron_d(s - 1)[np.ix_(keep, src)].tolist(), 3)
    return len(keep) - rank_out - rank_in


def _oracle_h(s, weight):
    if weight % 2:
        return 0
    if s == 0:
        return 1 if weight % 4 == 0 else 0
    return _oracle_rank_h(s, (weight // 2) % 2)


def test_cohomology_matches_kronecker_oracle():
    table = cobar.cohomology(6, range(-20, 21))
    for s in range(7):
        for w in range(-20, 21):
            assert table.rank(s, 2 * w) == _oracle_h(s, w), (s, w)


def test_cohomology_has_the_expected_shape():
    table = cobar.cohomology(6, range(-20, 21))
    for s in range(7):
        ts = [t for (ss, t), e in table.entries.items() if ss == s and e.rank]
        base = 12 * (s // 2) + 4 * (s % 2)
        assert ts and all((t - base) % 8 == 0 for t in ts)
    assert table[1, 4].names == ["α"]
    assert table[2, 12].names == ["β"]


def test_d_squared_zero():
    assert cobar.d_squared_zero(6, range(-24, 25))


@given(st.lists(st.tuples(st.lists(st.sampled_from([1, 2]), min_size=3, max_size=3), st.integers(1, 2)),
                max_size=6))
def test_d_squared_on_random_elements(terms):
    e = cobar.CobarElement(3, {})
    for w, c in terms:
        e = e + cobar.CobarElement.word(*w, coeff=c)
    assert cobar.cobar_d(cobar.cobar_d(e)).is_zero()


@given(st.lists(st.sampled_from([1, 2]), min_size=1, max_size=3),
       st.lists(st.sampled_from([1, 2]), min_size=1, max_size=3))
def test_d_is_a_derivation(u, v):
    x, y = cobar.CobarElement.word(*u), cobar.CobarElement.word(*v)
    sign = -1 if len(u) % 2 else 1
    assert cobar.cobar_d(x * y) == cobar.cobar_d(x) * y + sign * (x * cobar.cobar_d(y))


def test_hopf_structure():
    H = cobar.ReducedHopfData
    assert H.check_coassociative() and H.check_counit() and H.check_right_unit()
    assert H.mul(2, 2) == {2: (2, 1)}           # r^4 = -q4 r^2


def test_products_of_classes():
    table = cobar.cohomology(4, range(-20, 21))
    alpha, beta = table[1, 4], table[2, 12]
    assert cobar.class_product(alpha, alpha).is_zero
    ab = cobar.class_product(alpha, beta)
    assert not ab.is_zero and ab.name == "αβ"
    bb = cobar.class_product(beta, beta)
    assert not bb.is_zero and (bb.s, bb.t) == (4, 24)


def test_vector_round_trip():
    e = cobar.CobarElement.word(1, 2) + cobar.CobarElement.word(2, 1, coeff=2)
    w = e.weight
    assert cobar.CobarElement.from_vector(2, w, e.to_vector(w)) == e


def test_errors():
    with pytest.raises(PreconditionError):
        cobar.cohomology(cobar.S_MAX + 1)
    with pytest.raises(PreconditionError):
        cobar.CobarElement(2, {(1,): 1})
    with pytest.raises(PreconditionError):
        cobar.class_product(cobar.CobarElement.word(2), cobar.CobarElement.word(1))
