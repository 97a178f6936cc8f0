from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nodalcount.combinatorics import (
    ThetaTable,
    binomial,
    compositions,
    homog_monomials,
    set_partitions,
    stirling_split,
    theta_closed,
    theta_recursive,
)


def brute_force_splits(k_star, k):
    return sum(1 for p in set_partitions(list(range(k_star))) if len(p) == k)


@pytest.mark.parametrize("n,k,expected", [(5, 2, 10), (4, 0, 1), (3, 5, 0), (3, -1, 0)])
def test_binomial(n, k, expected):
    assert binomial(n, k) == expected


def test_stirling_examples():
    assert stirling_split(3, 3) == 1
    assert stirling_split(3, 2) == brute_force_splits(3, 2) == 3
    assert stirling_split(4, 1) == brute_force_splits(4, 1) == 1
    assert stirling_split(2, 5) == 0


@pytest.mark.parametrize("k_star", range(1, 8))
def test_stirling_matches_enumeration(k_star):
    counts = Counter(len(p) for p in set_partitions(list(range(k_star))))
    for k in range(1, k_star + 1):
        assert stirling_split(k_star, k) == counts[k]
        if k >= 2:
            assert stirling_split(k_star, k) == k * stirling_split(k_star - 1, k) + stirling_split(k_star - 1, k - 1)


def test_set_partitions_are_partitions():
    for p in set_partitions([1, 2, 3, 4]):
        assert sorted(x for block in p for x in block) == [1, 2, 3, 4]
        assert all(block for block in p)


def test_theta_examples():
    assert theta_recursive(1, 0) == 1
    assert theta_recursive(1, 1) == -1
    # -(1*1*1*1 + 1*1*1*(-1) + 1*2*1*(-1)) by hand
    assert theta_recursive(2, 1) == 2
    assert theta_closed(2, 0) == -1
    assert theta_closed(1, 4) == 1
    assert theta_closed(3, 0) == 2


def test_theta_one_row_alternates():
    assert [theta_recursive(1, m) for m in range(6)] == [1, -1, 1, -1, 1, -1]


def test_theta_table_is_independent():
    table = ThetaTable()
    assert len(table) == 1
    assert table.get(3, 2) == theta_closed(3, 2)
    assert (2, 2) in table
    assert all(isinstance(v, Fraction) for v in table.entries().values())


def test_theta_rejects_bad_index():
    with pytest.raises(ValueError):
        theta_recursive(0, 1)
    with pytest.raises(ValueError):
        theta_closed(1, -1)


@given(st.integers(1, 6), st.integers(0, 8))
def test_theta_identity_property(k, m):
    assert theta_recursive(k, m) == theta_closed(k, m)


@given(st.integers(1, 12))
def test_alternating_binomial_sum_vanishes(m_star):
    assert sum((-1) ** m * binomial(m_star, m) for m in range(m_star + 1)) == 0


def test_homog_monomials_examples():
    assert homog_monomials(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert homog_monomials(4, 0) == [(0, 0, 0, 0)]
    assert homog_monomials(1, 3) == [(3,)]


@given(st.integers(1, 5), st.integers(0, 6))
def test_homog_monomials_count(k, l):
    monos = homog_monomials(k, l)
    assert len(monos) == binomial(k + l - 1, l)
    assert len(set(monos)) == len(monos)
    assert all(len(v) == k and sum(v) == l and min(v) >= 0 for v in monos)
    assert monos == sorted(monos, reverse=True)


def test_compositions_examples():
    # canonical order is lexicographically descending
    assert compositions(3, 2) == [(2, 1), (1, 2)]
    assert compositions(2, 2) == [(1, 1)]
    assert compositions(1, 2) == []


@given(st.integers(1, 8), st.integers(1, 4))
def test_compositions_count(d, k):
    comps = compositions(d, k)
    assert len(comps) == binomial(d - 1, k - 1)
    assert all(sum(c) == d and min(c) >= 1 for c in comps)
