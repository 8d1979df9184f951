import random
import warnings
from fractions import Fraction
from math import gcd

import pytest
from sympy import Poly, Symbol

from rational_fourfolds.errors import DomainError
from rational_fourfolds.series import (
    GradedDims,
    TruncatedSeries,
    mobius,
    newton_recurrence_holds,
    pbw_hilbert,
    power_sums,
    tensor_hilbert,
    witt_decompose,
)


def poly(*coefficients) -> TruncatedSeries:
    return TruncatedSeries.from_coefficients(coefficients, len(coefficients) - 1)


@pytest.mark.parametrize(
    "n, expected", [(1, 1), (2, -1), (3, -1), (4, 0), (6, 1), (12, 0), (30, -1), (9973, -1)]
)
def test_mobius_values(n, expected):
    assert mobius(n) == expected


def test_mobius_raises_no_deprecation_warning():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert [mobius(n) for n in (1, 2, 30, 9973)] == [1, -1, -1, -1]


def test_mobius_rejects_zero():
    with pytest.raises(DomainError):
        mobius(0)


def test_mobius_is_multiplicative_on_coprime_pairs():
    table = {n: mobius(n) for n in range(1, 10_001)}
    for a in range(1, 101):
        for b in range(1, 101):
            if gcd(a, b) == 1:
                assert table[a * b] == table[a] * table[b]


@pytest.mark.parametrize(
    "q, count, expected",
    [
        (poly(1, -2), 3, [2, 4, 8]),
        (poly(1, -1), 2, [1, 1]),
        (poly(1, -3, 0, 1), 4, [3, 9, 24, 69]),
        (poly(1), 3, [0, 0, 0]),
    ],
)
def test_power_sums_known_values(q, count, expected):
    assert power_sums(q, count) == expected


@pytest.mark.parametrize(
    "coefficients", [(1, -3, 0, 1), (1, -2), (1, -1, 1), (1, 2, -1, 0, 3), (1, 0, -5, 0, 4)]
)
def test_power_sums_match_numeric_roots(coefficients):
    # Q(t) = prod(1 - alpha t), so the alpha are the roots of t^deg Q(1/t)
    roots = [complex(r) for r in Poly(list(coefficients), Symbol("x")).nroots()]
    sums = power_sums(poly(*coefficients), 8)
    for d, s in enumerate(sums, start=1):
        assert complex(s) == pytest.approx(sum(r**d for r in roots), rel=1e-9, abs=1e-9)


def test_power_sums_satisfy_newton_recurrence():
    rng = random.Random(7)
    for _ in range(25):
        degree = rng.randint(1, 6)
        q = poly(1, *(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(degree)))
        sums = power_sums(q, 10)
        assert newton_recurrence_holds(q, sums)


def test_power_sums_need_unit_constant_term():
    with pytest.raises(DomainError):
        power_sums(poly(2, 1), 3)
    with pytest.raises(DomainError):
        power_sums(poly(1, 1), 0)


def test_newton_recurrence_detects_wrong_sums():
    assert not newton_recurrence_holds(poly(1, -2), [2, 4, 9])


def test_invert():
    one_minus_t = poly(1, -1, 0, 0, 0, 0)
    assert one_minus_t.invert().as_integers() == [1] * 6
    s = poly(3, 1, -2, 5)
    assert s * s.invert() == TruncatedSeries.one(3)
    with pytest.raises(DomainError):
        poly(0, 1).invert()


def test_arithmetic_truncates_to_common_order():
    a = poly(1, 1, 1)
    b = poly(1, 2)
    assert (a + b).order == 1
    assert (a * b).as_integers() == [1, 3]
    assert (2 - a).as_integers() == [1, -1, -1]
    assert a[10] == 0


def test_non_integral_series_refuses_integer_view():
    s = poly(1, Fraction(1, 2))
    assert not s.is_integral()
    with pytest.raises(DomainError):
        s.as_integers()


def test_witt_single_odd_generator():
    dims = witt_decompose(GradedDims.from_counts({1: 1}, 6), 6)
    assert dims.items() == [(1, 1), (2, 1)]


def test_witt_two_generators_of_degree_one():
    dims = witt_decompose(GradedDims.from_counts({1: 2}, 3), 3)
    assert [dims.dim(k) for k in (1, 2, 3)] == [2, 3, 2]


def test_witt_single_even_generator():
    dims = witt_decompose(GradedDims.from_counts({2: 1}, 10), 10)
    assert dims.items() == [(2, 1)]


def test_witt_on_no_generators_is_empty():
    dims = witt_decompose(GradedDims.from_counts({}, 5), 5)
    assert dims.items() == []


def test_graded_dims_validation():
    with pytest.raises(DomainError):
        GradedDims.from_counts({0: 1}, 3)
    with pytest.raises(DomainError):
        GradedDims(odd={2: 1}, even={}, order=3)
    with pytest.raises(DomainError):
        GradedDims.from_counts({3: -1}, 3)


def test_pbw_known_series():
    assert pbw_hilbert(GradedDims.from_counts({1: 2}, 4), 4).as_integers() == [1, 2, 1, 0, 0]
    assert pbw_hilbert(GradedDims.from_counts({2: 1}, 6), 6).as_integers() == [1, 0, 1, 0, 1, 0, 1]
    mixed = pbw_hilbert(GradedDims.from_counts({1: 1, 4: 1}, 6), 6)
    assert mixed.as_integers() == [1, 1, 0, 0, 1, 1, 0]


@pytest.mark.parametrize(
    "counts", [{1: 1}, {1: 3}, {2: 2}, {1: 2, 3: 1}, {2: 1, 3: 2, 5: 1}, {4: 1}]
)
def test_pbw_of_witt_recovers_tensor_algebra(counts):
    order = 12
    generators = GradedDims.from_counts(counts, order)
    lie = witt_decompose(generators, order)
    assert pbw_hilbert(lie, order) == tensor_hilbert(generators, order)
