from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from findet.field import GF, QQ, FieldError, is_prime
from findet.linalg import det, rank, row_echelon


def test_prime_detection():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    with pytest.raises(FieldError):
        GF(4)


def test_rational_normalization():
    assert QQ.convert(Fraction(4, 2)) == 2 and isinstance(QQ.convert(Fraction(4, 2)), int)
    assert QQ.div(1, 2) == Fraction(1, 2)
    assert str(QQ) == "Q" and str(GF(7)) == "F_7"


@given(st.integers(1, 10**6))
def test_prime_field_inverse(a):
    F = GF(32003)
    if a % 32003:
        assert F.mul(a, F.inv(a)) == 1


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        GF(5).inv(0)


def test_det_and_rank():
    assert det([[1, 2], [3, 4]], QQ) == -2
    assert det([[1, 2], [3, 4]], GF(2)) == 0
    assert rank([[1, 2, 3], [2, 4, 6], [0, 1, 1]], QQ) == 2
    rows, pivots, _ = row_echelon([[0, 1], [1, 0]], QQ)
    assert pivots == [0, 1]


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_multilinear_sign(m):
    swapped = [m[1], m[0], m[2]]
    assert det(swapped, QQ) == -det(m, QQ)
