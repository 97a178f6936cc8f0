from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from nodalcount.genus0 import (
    DescendantSpec,
    count_rational,
    descendant,
    engine,
    j_function_oracle,
    plane_recursion_oracle,
    psi_moduli_closed,
    psi_moduli_oracle,
    schubert_lines_oracle,
)
from nodalcount.problem import DimensionMismatchError, ProblemSpec, constraint_tuples


def test_count_rational_examples():
    assert count_rational(ProblemSpec(2, 1, [2, 2])) == 1
    assert count_rational(ProblemSpec(3, 1, [3, 2, 2])) == 1
    assert count_rational(ProblemSpec(2, 3, [2] * 8)) == 12


def test_count_rational_classical_values():
    # conics meeting 8 lines, twisted cubics through 6 points, lines meeting 4 lines
    assert count_rational(ProblemSpec(3, 2, [2] * 8)) == 92
    assert count_rational(ProblemSpec(3, 3, [3] * 6)) == 1
    assert count_rational(ProblemSpec(3, 1, [2] * 4)) == 2


def test_count_rational_dimension_error():
    with pytest.raises(DimensionMismatchError):
        count_rational(ProblemSpec(2, 2, [2, 2]))


def test_count_rational_permutation_invariant():
    base = [4, 3, 3, 2, 2, 2, 2]
    spec_values = {count_rational(ProblemSpec(4, 2, list(p))) for p in set(permutations(base))}
    assert len(spec_values) == 1


@pytest.mark.parametrize("n", range(2, 7))
def test_lines_match_schubert(n):
    for mu in constraint_tuples(n, 2 * n - 2):
        assert count_rational(ProblemSpec(n, 1, mu)) == schubert_lines_oracle(n, mu.codims)


@pytest.mark.parametrize("d", range(1, 6))
def test_plane_curves_match_recursion(d):
    assert count_rational(ProblemSpec(2, d, [2] * (3 * d - 1))) == plane_recursion_oracle(d)


def test_schubert_examples():
    assert schubert_lines_oracle(3, [2, 2, 2, 2]) == 2
    assert schubert_lines_oracle(2, [2, 2]) == 1
    assert schubert_lines_oracle(4, [4, 3, 2]) == 1
    assert schubert_lines_oracle(4, [3, 3, 3]) == 1


def test_schubert_dimension_error():
    # three conditions of total degree 5 leave a curve of lines in G(2,5)
    with pytest.raises(DimensionMismatchError):
        schubert_lines_oracle(4, [3, 3, 2])


def test_plane_recursion_values():
    assert [plane_recursion_oracle(d) for d in (1, 2, 3)] == [1, 1, 12]


def test_psi_oracle_examples():
    assert psi_moduli_oracle([1, 0, 0, 0]) == 1
    assert psi_moduli_oracle([0, 0, 0]) == 1
    assert psi_moduli_oracle([1, 1, 0, 0, 0]) == 2
    with pytest.raises(DimensionMismatchError):
        psi_moduli_oracle([1, 0, 0])


@pytest.mark.parametrize("m", range(3, 9))
def test_psi_oracle_matches_multinomial(m):
    from nodalcount.combinatorics import bounded_compositions

    for exps in bounded_compositions(m - 3, m, 0, m - 3):
        assert psi_moduli_oracle(exps) == psi_moduli_closed(exps)


def test_descendant_examples():
    assert descendant(DescendantSpec(2, 1, 0, 2, [2])) == 1
    assert descendant(DescendantSpec(2, 1, 1, 2, [])) == 1
    assert j_function_oracle(2, 1, 1, 2) == 1
    # dimension mismatch is a zero, not an error
    assert descendant(DescendantSpec(2, 1, 2, 2, [])) == 0
    assert descendant(DescendantSpec(3, 2, 0, 3, [2, 2])) == 0


def test_descendant_can_be_fractional():
    # P^1, degree 2: coefficient of z^-4 in (h+z)^-2 (h+2z)^-2
    assert engine(1).descendant(2, 2, 1, ()) == Fraction(1, 4)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_one_point_descendants_match_j_function(n):
    for d in (1, 2, 3):
        for c in range(n + 1):
            b = (n + 1) * d + n - 2 - c
            assert engine(n).descendant(d, b, c, ()) == j_function_oracle(n, d, b, c)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_psi_free_descendant_is_rational_count(n):
    for d in (1, 2):
        for mu in constraint_tuples(n, d * (n + 1) + n - 3):
            codims = mu.codims
            for i, c in enumerate(codims):
                rest = codims[:i] + codims[i + 1 :]
                assert descendant(DescendantSpec(n, d, 0, c, rest)) == count_rational(ProblemSpec(n, d, codims))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_dilaton_equation(n):
    eng = engine(n)
    for d in (1, 2, 3):
        for mu in constraint_tuples(n, d * (n + 1) + n - 3):
            assert eng.descendant(d, 1, 0, mu.codims) == (len(mu) - 2) * eng.primary(d, mu.codims)


def test_trr_is_independent_of_pivot_choice():
    # the engine always pivots on the two largest codims; pivot on the two smallest instead
    eng = engine(3)
    d, b, c, classes = 2, 2, 1, (3, 3, 2, 2)
    assert sum(classes) + b + c == eng.vdim(d, len(classes) + 1)
    via_smallest = eng._trr(d, b, c, 2, 2, (3, 3))
    assert via_smallest != 0
    assert via_smallest == eng.descendant(d, b, c, classes)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 4), st.integers(1, 2), st.data())
def test_descendant_permutation_invariant(n, d, data):
    classes = data.draw(st.lists(st.integers(2, n), min_size=0, max_size=5))
    c = data.draw(st.integers(0, n))
    b = engine(n).vdim(d, len(classes) + 1) - c - sum(classes)
    shuffled = data.draw(st.permutations(classes))
    assert descendant(DescendantSpec(n, d, b, c, classes)) == descendant(DescendantSpec(n, d, b, c, shuffled))
