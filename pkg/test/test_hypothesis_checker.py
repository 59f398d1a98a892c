#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""完备性假设检查测试"""

import math
import random
from fractions import Fraction

import pytest
import sympy

from diophantine_lab import angle_make
from errors import PrecisionBudgetError, SpecValidationError
from fs_engine import residue_fs
from hypothesis_checker import (CONSISTENT, REFUTED, SATISFIED, TREND_BOUNDED, TREND_GROWING, begl_check,
                                certify, condition1_sup, density_hypothesis_scan, divergence_probe,
                                partition3, polynomial_family_check, polynomial_prime_witness,
                                power_family_check, residue_conditions, sublacunarity, window_count,
                                zannier_scan, zannier_witness)
from set_generators import (ArithmeticProgression, Explicit, FloorPoly, GammaAB, GammaSingle, IntPoly,
                            SortedSet, enumerate_set, primes_up_to)

SQUARE = IntPoly(coeffs=[0, 0, 1])


# 条件 (I)

def test_powers_of_two_have_bounded_defect():
    r = condition1_sup(enumerate_set(GammaSingle(a=2), 2 ** 20))
    assert r.sup_value == 1
    assert r.trend == TREND_BOUNDED


def test_powers_of_three_grow():
    r = condition1_sup(enumerate_set(GammaSingle(a=3), 10 ** 6))
    assert r.trend == TREND_GROWING
    assert r.witness == 3 ** 12


def test_gamma23_defect_is_bounded(gamma23):
    r = condition1_sup(gamma23)
    assert r.sup_value == 1
    assert r.trend == TREND_BOUNDED


def test_window_count():
    naturals = enumerate_set(ArithmeticProgression(start=1, step=1), 1000)
    assert window_count(naturals, 1).minimum >= 1
    assert window_count(enumerate_set(GammaSingle(a=2), 2 ** 20), 1).minimum == 1
    assert window_count(enumerate_set(GammaSingle(a=4), 4 ** 10), 1).minimum == 0


def test_partition3_of_powers_of_two():
    parts = partition3(enumerate_set(GammaSingle(a=2), 2 ** 20))
    assert [len(p) for p, _ in parts] == [7, 7, 7]
    assert parts[0][0].elements[:3] == (1, 8, 64)
    assert all(r.trend == TREND_GROWING for _, r in parts)


def test_partition3_needs_three_elements():
    with pytest.raises(SpecValidationError):
        partition3(SortedSet((1, 2), 10))


def test_sublacunarity():
    lacunary = sublacunarity(enumerate_set(GammaSingle(a=3), 10 ** 6))
    assert lacunary.tail_max == pytest.approx(3.0)
    assert not lacunary.cbrt2
    naturals = sublacunarity(range(1, 1001))
    assert naturals.tail_max == pytest.approx(501 / 500)
    assert naturals.cbrt2


def test_gamma23_is_sublacunary(gamma23):
    assert sublacunarity(gamma23).tail_max < 1.5


# 条件 (III)

def test_gamma23_descent_to_one(gamma23):
    record = residue_conditions(gamma23.prefix(1000), 6)[-1]
    assert record.q == 6
    assert record.full
    assert [(s.q, s.r, s.method, s.witnesses) for s in record.path] == [
        (6, 3, "count", (3,)),
        (3, 1, "count", (1, 2)),
    ]
    assert record.pigeonhole


def test_even_numbers_fail_modulus_two():
    evens = enumerate_set(ArithmeticProgression(start=2, step=2), 100)
    record = residue_conditions(evens, 2)[0]
    assert not record.full
    assert not record.chain_found


def test_residue_record_matches_brute_force():
    rng = random.Random(3)
    for _ in range(200):
        C = sorted(set(rng.randint(1, 200) for _ in range(rng.randint(1, 12))))
        qmax = rng.randint(2, 30)
        for record in residue_conditions(C, qmax):
            assert record.full == residue_fs(C, record.q).full


def test_count_criterion_implies_coverage():
    rng = random.Random(5)
    for _ in range(200):
        C = [rng.randint(1, 300) for _ in range(rng.randint(1, 15))]
        q = rng.randint(2, 24)
        for r in sympy.divisors(q)[:-1]:
            witnesses = [n for n in C if math.gcd(n, q) == r]
            if len(witnesses) >= q // r - 1:
                reached = residue_fs(witnesses, q, include_empty=True).reached
                assert reached >= set(range(0, q, r))


def test_residue_conditions_parallel_matches_serial(gamma23):
    C = gamma23.prefix(5000)
    serial = [r.to_dict() for r in residue_conditions(C, 20)]
    parallel = [r.to_dict() for r in residue_conditions(C, 20, jobs=4)]
    assert serial == parallel


# 条件 (II)

def test_divergence_on_naturals(sqrt2):
    naturals = range(1, 10 ** 4 + 1)
    summary = divergence_probe(naturals, sqrt2)
    assert summary.trend == "growing"
    assert summary.slope == pytest.approx(0.25, abs=0.02)
    assert summary.heuristic


def test_divergence_on_convergent_denominators(sqrt2):
    pell = [1, 2, 5, 12, 29, 70, 169, 408, 985, 2378, 5741, 13860, 33461, 80782]
    summary = divergence_probe(pell, sqrt2)
    assert summary.trend == "plateauing"


def test_divergence_respects_precision_budget():
    alpha = angle_make("sqrt:2", 128)
    with pytest.raises(PrecisionBudgetError):
        divergence_probe([2 ** 100], alpha)


# S₁..S₄

def test_begl_example():
    result = begl_check([2], [3, 4, 5, 6, 7], [8, 9, 10], [11, 13])
    assert result.sums[1] == Fraction(87, 60)
    assert result.parts_ok[:2] == (True, True)
    assert not result.parts_ok[2]
    assert result.gcd_ok


def test_begl_gcd_failure():
    result = begl_check([2], [3], [4, 5, 6], [10, 12])
    assert result.gcd_s4 == 2
    assert not result.holds


def test_begl_rejects_bad_parts():
    with pytest.raises(SpecValidationError):
        begl_check([1], [3], [4], [5])
    with pytest.raises(SpecValidationError):
        begl_check([2], [2], [4], [5])


# 线性组合见证

def test_zannier_found_on_beatty_sequence():
    A = enumerate_set(FloorPoly(coeffs=[0, math.sqrt(2)]), 10 ** 4)
    result = zannier_witness(A, 2, 2, zmax=1, floor_N=100)
    assert result.status == "found"
    assert result.witness.z == (-1, 1)
    assert 0 < abs(result.witness.value) <= 2


def test_zannier_scan_on_beatty_sequence():
    A = enumerate_set(FloorPoly(coeffs=[0, math.sqrt(2)]), 10 ** 4)
    results = zannier_scan(A, 2, 2, zmax=1)
    assert results
    assert all(r.status == "found" for r in results)


def test_zannier_absent_on_multiples_of_five():
    A = enumerate_set(ArithmeticProgression(start=5, step=5), 10 ** 4)
    assert zannier_witness(A, 2, 4, zmax=3).status == "absent"
    assert zannier_witness(A, 3, 4, zmax=2, window=20).status == "absent"


def test_zannier_cap():
    A = enumerate_set(ArithmeticProgression(start=1, step=1), 1000)
    result = zannier_witness(A, 2, 1, zmax=1, cap=10)
    assert result.status == "inconclusive"


def test_polynomial_prime_witness():
    result = polynomial_prime_witness(SQUARE, 1000)
    assert result.status == "found"
    assert result.witness.value != 0
    assert sum(z * x for z, x in zip(result.witness.z, result.witness.x)) == result.witness.value


# 集合族的假设组合

def test_power_family_check():
    ok = power_family_check(2, [1, 3, 9, 27])
    assert ok.distinct_logs and ok.holds
    bad = power_family_check(2, [1, 2])
    assert not bad.distinct_logs
    assert not bad.holds


def test_polynomial_family_check():
    ok = polynomial_family_check([2, 3], [SQUARE, SQUARE])
    assert ok.holds and ok.rank == 2
    dependent = polynomial_family_check([2, 4], [SQUARE, SQUARE])
    assert not dependent.independent
    assert dependent.gcd_value == 2


def test_density_hypothesis():
    naturals = enumerate_set(ArithmeticProgression(start=1, step=1), 10 ** 4)
    result = density_hypothesis_scan(SQUARE, naturals, [10 ** 2, 10 ** 3, 10 ** 4])
    assert result.delta == Fraction(1, 7)
    assert all(ok for _, _, _, ok in result.rows)
    primes = density_hypothesis_scan(SQUARE, primes_up_to(10 ** 4), [10 ** 4])
    assert primes.rows[0][1] == 1229


# 证书

def test_certify_gamma23():
    cert = certify(GammaAB(a=2, b=3), 2 ** 14, qmax=9, jobs=2)
    assert cert.verdicts["partial-sum-defect"] == CONSISTENT
    assert cert.verdicts["residue-coverage"] == SATISFIED
    assert cert.coverage["verdict"] == "empirically-complete"
    assert sum(cert.partition["sizes"]) == len(enumerate_set(GammaAB(a=2, b=3), 2 ** 14))
    assert set(cert.to_dict()["checks"]) == {"partial-sum-defect", "orbit-divergence", "residue-coverage"}


def test_certify_powers_of_three_is_refuted():
    cert = certify(GammaSingle(a=3), 10 ** 6, jobs=2)
    assert cert.verdicts["partial-sum-defect"] == REFUTED
    assert cert.coverage["verdict"] == "sparse"
    assert cert.exit_code == 1


def test_certify_gamma36_fails_modulus_three():
    cert = certify(GammaAB(a=3, b=6), 10 ** 6, jobs=2)
    failed = [m["q"] for m in cert.cond3 if not m["full"]]
    assert 3 in failed
    assert cert.verdicts["residue-coverage"] == REFUTED
    assert cert.coverage["verdict"] != "empirically-complete"
    assert cert.exit_code == 1


def test_certify_modulus_partition():
    cert = certify(GammaAB(a=2, b=3), 2 ** 14, partition_strategy="modulus", qmax=6, jobs=2)
    assert cert.partition["strategy"] == "modulus"
    assert cert.verdicts["partial-sum-defect"] == CONSISTENT


def test_certify_modulus_partition_rejects_other_families():
    with pytest.raises(SpecValidationError):
        certify(Explicit(elements=[1, 2, 3, 4, 5, 6]), 10, partition_strategy="modulus")
