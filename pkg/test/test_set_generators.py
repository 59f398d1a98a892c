#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""集合族枚举测试"""

import math

import pytest
from pydantic import ValidationError

import config
from errors import SpecValidationError
from set_generators import (ArithmeticProgression, Explicit, FloorPoly, GammaAB, GammaSingle, IntPoly,
                            PolyOfPrimes, PolyPowerProduct, PowerSTimesPowerT, PowerTimesFinite,
                            SortedSet, dump_setspec, enumerate_set, finite_products, floor_poly_value,
                            kth_difference, parse_setspec, primes_up_to)

SQUARE = IntPoly(coeffs=[0, 0, 1])


@pytest.mark.parametrize("spec, bound, expected", [
    (GammaAB(a=2, b=3), 20, (1, 2, 3, 4, 6, 8, 9, 12, 16, 18)),
    (GammaSingle(a=3), 30, (1, 3, 9, 27)),
    (PolyOfPrimes(P=SQUARE), 100, (4, 9, 25, 49)),
    (ArithmeticProgression(start=5, step=5), 26, (5, 10, 15, 20, 25)),
    (Explicit(elements=[9, 1, 4, 4, 100]), 50, (1, 4, 9)),
])
def test_enumerate_examples(spec, bound, expected):
    assert enumerate_set(spec, bound).elements == expected


def test_gamma23_up_to_100_has_twenty_elements():
    A = enumerate_set(GammaAB(a=2, b=3), 100)
    assert len(A) == 20
    assert A.to_text().count("\n") == 20


def test_two_base_squares_count():
    spec = PolyPowerProduct(bases=[2, 3], polys=[SQUARE, SQUARE])
    assert len(enumerate_set(spec, 10 ** 6)) == 17


def test_enumerate_is_monotone_in_bound():
    spec = GammaAB(a=2, b=5)
    small = enumerate_set(spec, 10 ** 4)
    large = enumerate_set(spec, 10 ** 6)
    assert large.elements[:len(small)] == small.elements
    assert large.prefix(10 ** 4) == small


def test_gamma_matches_pair_count():
    bound = 10 ** 9
    A = enumerate_set(GammaAB(a=2, b=3), bound)
    pairs = sum(1 for n in range(31) for m in range(20) if 2 ** n * 3 ** m <= bound)
    assert len(A) == pairs


def test_gamma_matches_power_times_finite():
    bound = 10 ** 7
    bs = [3 ** m for m in range(20) if 3 ** m <= bound]
    assert enumerate_set(GammaAB(a=2, b=3), bound) == enumerate_set(PowerTimesFinite(a=2, bs=bs), bound)


def test_floor_poly_with_integer_coefficients_is_direct_evaluation():
    A = enumerate_set(FloorPoly(coeffs=[0, 0, 1]), 1000)
    assert A.elements == tuple(n * n for n in range(1, 32))


def test_floor_poly_guard_recomputes_exactly():
    # 0.29 * 100 在双精度下是 28.999999999999996
    assert floor_poly_value([0, 0.29], 100) == 29


def test_power_st_with_index_set():
    spec = PowerSTimesPowerT(a=2, b=3, S=ArithmeticProgression(start=3, step=3), T=[0, 1])
    A = enumerate_set(spec, 1000)
    assert A.elements == (8, 24, 64, 192, 512)


def test_overflow_is_counted_not_wrapped():
    A = enumerate_set(GammaSingle(a=2), config.ELEMENT_LIMIT)
    assert len(A) == 63
    assert A.overflow_count == 1


@pytest.mark.parametrize("document", [
    {"family": "gamma", "a": 1, "b": 3},
    {"family": "gamma-single", "a": 2, "extra": 1},
    {"family": "geometric-union", "S": [2, 4]},
    {"family": "poly-product", "bases": [2], "polys": [{"coeffs": [1, 1]}]},
    {"family": "explicit", "elements": [0, 3]},
    {"family": "nope"},
])
def test_invalid_specs_are_rejected(document):
    with pytest.raises(SpecValidationError):
        parse_setspec(document)


def test_bound_zero_is_rejected():
    with pytest.raises(SpecValidationError):
        enumerate_set(GammaSingle(a=2), 0)


def test_setspec_round_trip():
    spec = PolyPowerProduct(bases=[2, 3], polys=[IntPoly(coeffs=[0, -1, 1], denominator=2), SQUARE])
    assert parse_setspec(dump_setspec(spec)) == spec
    nested = PowerSTimesPowerT(a=2, b=3, S=GammaSingle(a=2), T=[0, 2])
    assert parse_setspec(dump_setspec(nested)) == nested


def test_int_poly_denominator():
    binomial = IntPoly(coeffs=[0, -1, 1], denominator=2)
    assert binomial(5) == 10
    assert binomial.is_natural()
    with pytest.raises(ValidationError):
        IntPoly(coeffs=[0, 1], denominator=2)
    with pytest.raises(ValidationError):
        IntPoly(coeffs=[3])


def test_int_poly_natural_membership():
    assert SQUARE.is_natural()
    assert not IntPoly(coeffs=[1, 1]).is_natural()
    assert not IntPoly(coeffs=[0, -5, 1]).is_natural()


@pytest.mark.parametrize("n, expected", [
    (10, (2, 3, 5, 7)),
    (2, (2,)),
    (30, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)),
    (1, ()),
])
def test_primes_up_to(n, expected):
    assert primes_up_to(n).elements == expected


def test_kth_difference_examples():
    assert kth_difference([n * n for n in range(1, 7)], 2) == [2, 2, 2, 2]
    assert kth_difference(list(range(1, 6)), 1) == [1, 1, 1, 1]
    table = [math.isqrt(n ** 3) for n in range(1, 101)]
    second = kth_difference(table, 2)
    assert len(second) == 98
    assert all(-2 <= v <= 2 for v in second)


def test_kth_difference_needs_longer_table():
    with pytest.raises(SpecValidationError):
        kth_difference([1, 2, 3], 3)


@pytest.mark.parametrize("S, bound, expected", [
    ([2, 3, 5], 40, (2, 3, 5, 6, 10, 15, 30)),
    ([7], 100, (7,)),
    ([2, 3], 5, (2, 3)),
])
def test_finite_products(S, bound, expected):
    assert finite_products(S, bound).elements == expected


def test_finite_products_rejects_duplicates():
    with pytest.raises(SpecValidationError):
        finite_products([2, 2, 3], 100)


def test_sorted_set_rejects_unsorted():
    with pytest.raises(SpecValidationError):
        SortedSet((3, 2), 10)
    with pytest.raises(SpecValidationError):
        SortedSet((1, 20), 10)
