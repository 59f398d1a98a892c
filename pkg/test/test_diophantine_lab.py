#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""丢番图逼近工具测试"""

import math
import random

import pytest

from diophantine_lab import (adversarial_thick, angle_make, cantor_pairs, circle_norm, convergents, eps_probe,
                             example_ncd_build, min_norm_in_range, observation_sequence, orbit, orbit_points,
                             vandermonde_witness)
from errors import ConstructionError, PrecisionBudgetError, PreconditionError, SpecValidationError
from fs_engine import coverage_report, fs_coverage
from hypothesis_checker import sublacunarity
from set_generators import GammaAB, GammaSingle, IntPoly, enumerate_set

SQUARE = IntPoly(coeffs=[0, 0, 1])
LINEAR = IntPoly(coeffs=[0, 1])


# 角度

def test_rational_angle_is_exact():
    third = angle_make("rational:1/3")
    assert third.value == (1 << 256) // 3
    assert third.err_ulps == 1
    assert third.is_rational


def test_surd_and_cf_values(sqrt2, golden):
    assert sqrt2.as_float() == pytest.approx(0.41421356237309503)
    assert golden.as_float() == pytest.approx(0.6180339887498949)
    assert sqrt2.partial_quotient_bound == 2
    assert golden.partial_quotient_bound == 1
    assert angle_make("cf:[0;1,1,1,…]").value == golden.value


@pytest.mark.parametrize("origin", ["sqrt:4", "sqrt:x", "cf:[0;]", "rational:1/0", "pi", "lacunary:1"])
def test_invalid_angles(origin):
    with pytest.raises(SpecValidationError):
        angle_make(origin)


def test_precision_must_be_power_of_two():
    with pytest.raises(SpecValidationError):
        angle_make("sqrt:2", 100)


@pytest.mark.parametrize("origin", ["sqrt:2", "sqrt:7", "cf:[0;1,...]", "lacunary:2", "rational:5/7"])
def test_angle_error_is_sound_across_precisions(origin):
    low = angle_make(origin, 256)
    high = angle_make(origin, 512)
    diff = abs((low.value << 256) - high.value)
    assert diff <= (low.err_ulps << 256) + high.err_ulps


# 轨道

def test_orbit_of_one_third():
    stats = orbit([1, 2], angle_make("rational:1/3"))
    assert stats.count == 2
    assert stats.max_gap == pytest.approx(2 / 3, abs=1e-9)


def test_orbit_single_point_gap_is_full_circle(sqrt2):
    assert orbit([5], sqrt2).max_gap == 1.0


def test_orbit_of_first_hundred(sqrt2):
    assert orbit(range(1, 101), sqrt2).max_gap < 0.03


def test_orbit_gap_shrinks_with_bound(sqrt2):
    spec = GammaAB(a=2, b=3)
    gaps = [orbit(enumerate_set(spec, N), sqrt2).max_gap for N in (10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6)]
    assert all(b <= a for a, b in zip(gaps, gaps[1:]))
    assert gaps[0] < 0.08
    assert gaps[2] < 0.05 and gaps[-1] < 0.05


def test_orbit_gap_of_union_is_smaller(sqrt2):
    A = enumerate_set(GammaSingle(a=2), 10 ** 6)
    B = enumerate_set(GammaSingle(a=3), 10 ** 6)
    union = sorted(set(A) | set(B))
    assert orbit(union, sqrt2).max_gap <= orbit(A, sqrt2).max_gap


def test_orbit_points_agree_across_precisions():
    A = enumerate_set(GammaAB(a=2, b=3), 10 ** 6)
    for origin in ("sqrt:2", "cf:[0;1,...]", "lacunary:2"):
        low = orbit_points(A, angle_make(origin, 256))
        high = orbit_points(A, angle_make(origin, 512))
        scale = 1 << 512
        for (n, x1, e1), (_, x2, e2) in zip(low, high):
            assert circle_norm((x1 << 256) - x2, scale) <= (e1 << 256) + e2


def test_orbit_refuses_when_precision_is_short():
    alpha = angle_make("sqrt:2", 256)
    with pytest.raises(PrecisionBudgetError) as info:
        orbit([2 ** 250], alpha)
    assert info.value.required_bits > 256


def test_orbit_csv_header(sqrt2):
    assert orbit([1, 2, 3], sqrt2).to_csv().startswith("point\n")


# 连分数

def test_sqrt2_convergents(sqrt2):
    result = convergents(sqrt2, 5)
    assert result.pairs == ((0, 1), (1, 2), (2, 5), (5, 12), (12, 29))
    assert not result.truncated


def test_sqrt2_deep_convergents_solve_pell(sqrt2):
    result = convergents(sqrt2, 40)
    assert len(result.pairs) == 40
    assert not result.truncated
    # frac(√2) 的渐近分数 p/q 对应 √2 的 (p+q)/q
    assert all(abs((p + q) ** 2 - 2 * q * q) == 1 for p, q in result.pairs)


def test_golden_convergents_have_fibonacci_denominators(golden):
    qs = [q for _, q in convergents(golden, 10).pairs]
    assert qs == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55]


def test_rational_convergents_terminate():
    result = convergents(angle_make("rational:1/3"), 10)
    assert result.pairs == ((0, 1), (1, 3))
    assert not result.truncated


def test_finite_cf_literal_truncates():
    assert convergents(angle_make("cf:[0;1,1,1]"), 10).truncated


def test_convergents_approximate_well(sqrt2):
    pairs = convergents(sqrt2, 12).pairs
    for (_, q), (_, q_next) in zip(pairs, pairs[1:]):
        norm, _ = sqrt2.norm_of(q)
        assert norm * q_next < sqrt2.scale


# 区间最小值与观测序列

def test_min_norm_examples(sqrt2):
    assert min_norm_in_range(sqrt2, 8, 27).n == 12
    assert min_norm_in_range(sqrt2, 1, 2, beta=sqrt2).n == 1
    assert min_norm_in_range(angle_make("rational:1/7"), 1, 10).n == 7
    assert min_norm_in_range(angle_make("rational:1/7"), 1, 10).norm_ulps == 0


def test_min_norm_decreases_over_cubes(golden):
    norms = [min_norm_in_range(golden, k ** 3, (k + 1) ** 3).norm for k in range(3, 7)]
    assert all(b < a for a, b in zip(norms, norms[1:]))


def test_min_norm_range_validation(sqrt2):
    with pytest.raises(SpecValidationError):
        min_norm_in_range(sqrt2, 5, 5)


@pytest.mark.parametrize("origin", ["sqrt:2", "cf:[0;1,...]"])
def test_observation_within_window_bound(origin):
    alpha = angle_make(origin)
    steps = observation_sequence(alpha, None, [k * k for k in range(5, 32)])
    assert len(steps) == 26
    for step in steps:
        assert step.lo <= step.n < step.hi
        assert step.norm <= step.window_bound


def test_observation_needs_increasing_ms(sqrt2):
    with pytest.raises(SpecValidationError):
        observation_sequence(sqrt2, None, [4, 4, 9])


# 次缺项非完备构造

def test_ncd_construction(sqrt2):
    built = example_ncd_build(sqrt2, 1, 99)
    assert built.sigma < 0.5
    assert built.C == 3
    assert len(built.A) == 99
    assert sublacunarity(built.A).tail_max < 1.2
    report = coverage_report(fs_coverage(built.A, 10 ** 6))
    assert report.missing_count > 10 ** 5


def test_ncd_requires_bounded_partial_quotients():
    with pytest.raises(PreconditionError):
        example_ncd_build(angle_make("lacunary:2"), 1, 10)


def test_ncd_with_short_range_fails(sqrt2):
    with pytest.raises(ConstructionError) as info:
        example_ncd_build(sqrt2, 1, 1)
    assert info.value.hint.startswith("k0")


# Vandermonde 见证

def test_vandermonde_linear():
    w = vandermonde_witness(LINEAR, [5, 7])
    assert w.z == (1, -1)
    assert w.D == -2
    assert w.c == 1


def test_vandermonde_square_is_translation_invariant():
    a = vandermonde_witness(SQUARE, [5, 6, 7])
    b = vandermonde_witness(SQUARE, [0, 1, 2])
    assert a.z == b.z == (-2, 4, -2)
    assert a.D == b.D == -4
    assert a.c == 2


def test_vandermonde_random_batch():
    rng = random.Random(1234)
    ratios = []
    for _ in range(1000):
        d = rng.randint(1, 4)
        coeffs = [rng.randint(-9, 9) for _ in range(d)] + [rng.randint(1, 9)]
        P = IntPoly(coeffs=coeffs)
        base = rng.randint(1, 1000)
        nodes = sorted(rng.sample(range(base, base + 31), d + 1))
        w = vandermonde_witness(P, nodes)
        assert w.D != 0
        assert sum(z * P(n) for z, n in zip(w.z, nodes)) == w.value == w.D
        assert w.bounds_ok
        assert max(abs(z) for z in w.z) <= w.bound
        for i, z in enumerate(w.z):
            others = math.prod(nodes[i] - m for m in nodes if m != nodes[i])
            assert z * coeffs[-1] * others == w.D
        ratios.append(w.z_ratio)
    # 整批共用一个有限常数
    fitted = max(ratios)
    assert 0 < fitted < math.inf
    assert all(r <= fitted for r in ratios)


def test_vandermonde_rejects_bad_nodes():
    with pytest.raises(SpecValidationError):
        vandermonde_witness(SQUARE, [1, 1, 2])
    with pytest.raises(SpecValidationError):
        vandermonde_witness(SQUARE, [1, 2])


# 对抗性厚集

def test_cantor_pairs():
    assert cantor_pairs(4) == [(1, 1), (1, 2), (2, 1), (1, 3)]


def test_adversarial_depth_two(sqrt2):
    log = adversarial_thick([2, 3], sqrt2, depth=2)
    assert log.depth_achieved == 2
    assert [s.N for s in log.steps] == [1, 7]
    assert [s.base for s in log.steps] == [2, 2]
    assert log.verified
    assert log.products_checked == 11


def test_adversarial_depth_zero(sqrt2):
    log = adversarial_thick([2, 3], sqrt2, depth=0)
    assert log.steps == []
    assert log.verified


def test_adversarial_rejects_rational():
    with pytest.raises(PreconditionError):
        adversarial_thick([2, 3], angle_make("rational:1/7"), depth=2)


# ε-稠密探测

def test_eps_probe_matches_max_gap():
    rows = eps_probe(GammaAB(a=2, b=3), ["sqrt:2", "cf:[0;1,...]"], 10 ** 6, 0.08, jobs=2)
    assert [r.alpha for r in rows] == ["sqrt:2", "cf:[0;1,...]"]
    for r in rows:
        assert r.eps_dense == (r.max_gap <= 0.08)


def test_eps_probe_lacunary_angle_is_not_dense():
    rows = eps_probe(GammaSingle(a=2), ["lacunary:2"], 10 ** 6, 0.1)
    assert not rows[0].eps_dense


def test_eps_probe_rejects_rational():
    with pytest.raises(PreconditionError):
        eps_probe(GammaSingle(a=2), ["rational:1/3"], 100, 0.1)
