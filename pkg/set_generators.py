#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
整数集合族生成模块
把各类集合族(乘法半群、多项式幂积、取整多项式、有限积等)
枚举成有序去重的元素列表
"""

import bisect
import json
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Annotated, Dict, Iterable, List, Literal, Sequence, Tuple, Union

import numpy as np
import sympy
from pydantic import (BaseModel, ConfigDict, Field, NonNegativeInt, PositiveInt,
                      TypeAdapter, ValidationError, field_validator, model_validator)

import config
from errors import SpecValidationError

logger = logging.getLogger(__name__)

Base = Annotated[int, Field(ge=2)]


# ============================================
# 元素集合
# ============================================

@dataclass(frozen=True)
class SortedSet:
    """严格递增的正整数序列，枚举到 bound 为止"""

    elements: Tuple[int, ...]
    bound: int
    overflow_count: int = 0

    def __post_init__(self):
        prev = 0
        for x in self.elements:
            if x <= prev:
                raise SpecValidationError("SortedSet 元素必须是严格递增的正整数")
            prev = x
        if self.elements and self.elements[-1] > self.bound:
            raise SpecValidationError(f"元素 {self.elements[-1]} 超过上界 {self.bound}")

    @classmethod
    def from_values(cls, values: Iterable[int], bound: int, overflow_count: int = 0) -> "SortedSet":
        """排序、去重并截断到 [1, bound]"""
        if isinstance(values, range) and values.step > 0 and values.start >= 1:
            kept = values[:len(range(values.start, bound + 1, values.step))]
        else:
            kept = sorted({v for v in values if 1 <= v <= bound})
        return cls(tuple(kept), bound, overflow_count)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __contains__(self, x):
        i = bisect.bisect_left(self.elements, x)
        return i < len(self.elements) and self.elements[i] == x

    def count_upto(self, x: int) -> int:
        """#(A ∩ [1, x])"""
        return bisect.bisect_right(self.elements, x)

    def prefix(self, bound: int) -> "SortedSet":
        """截断到更小的上界"""
        bound = min(bound, self.bound)
        return SortedSet(self.elements[:self.count_upto(bound)], bound)

    def max(self) -> int:
        return self.elements[-1] if self.elements else 0

    def to_text(self) -> str:
        """每行一个十进制数"""
        return "".join(f"{x}\n" for x in self.elements)


# ============================================
# 整系数多项式
# ============================================

class IntPoly(BaseModel):
    """
    整值多项式 P(x) = Σ coeffs[i]·x^i / denominator

    coeffs 的下标就是幂次，末尾的零会被去掉
    """

    model_config = ConfigDict(frozen=True)

    coeffs: List[int]
    denominator: PositiveInt = 1

    @field_validator("coeffs")
    @classmethod
    def _strip(cls, v):
        v = list(v)
        while v and v[-1] == 0:
            v.pop()
        if len(v) < 2:
            raise ValueError("polynomial must be nonconstant")
        return v

    @model_validator(mode="after")
    def _integer_valued(self):
        # 在 deg+1 个连续整数上取整数值即整值
        for n in range(self.degree + 1):
            if self.numerator_at(n) % self.denominator:
                raise ValueError(f"polynomial is not integer-valued at {n}")
        return self

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return Fraction(self.coeffs[-1], self.denominator)

    def numerator_at(self, n: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    def __call__(self, n: int) -> int:
        num = self.numerator_at(n)
        if num % self.denominator:
            raise SpecValidationError(f"polynomial value at {n} is not an integer")
        return num // self.denominator

    def root_bound(self) -> int:
        """Cauchy 界: 所有实根的绝对值都小于它"""
        lead = abs(self.coeffs[-1])
        return 1 + math.ceil(max(Fraction(abs(c), lead) for c in self.coeffs[:-1]))

    def increasing_from(self) -> int:
        """从这个整数开始 P 严格递增(要求首项系数为正)"""
        deriv = [i * c for i, c in enumerate(self.coeffs)][1:]
        while deriv and deriv[-1] == 0:
            deriv.pop()
        if len(deriv) < 2:
            return 0
        lead = abs(deriv[-1])
        return 1 + math.ceil(max(Fraction(abs(c), lead) for c in deriv[:-1]))

    def is_natural(self, probe_bound: int = None) -> bool:
        """
        𝒫_ℕ 成员检查: P(0) = 0，首项系数为正，在 [0, probe_bound] 上取非负值

        超过最大实根之后符号由首项系数决定，所以只需检查到 Cauchy 界
        """
        if probe_bound is None:
            probe_bound = config.NATURAL_PROBE_BOUND
        if self(0) != 0 or self.coeffs[-1] <= 0:
            return False
        horizon = min(probe_bound, self.root_bound())
        return all(self(n) >= 0 for n in range(horizon + 1))

    def describe(self) -> str:
        terms = [f"{c}x^{i}" for i, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms)
        return body if self.denominator == 1 else f"({body})/{self.denominator}"


# ============================================
# 集合族描述 SetSpec
# ============================================

class _Spec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class GammaAB(_Spec):
    """Γ(a,b) = {aⁿbᵐ : n,m ≥ 0}"""
    family: Literal["gamma"] = "gamma"
    a: Base
    b: Base


class GammaSingle(_Spec):
    """Γ(a) = {aⁿ : n ≥ 0}"""
    family: Literal["gamma-single"] = "gamma-single"
    a: Base


class PowerTimesFinite(_Spec):
    """{aⁿ b_m : n ≥ 0, b_m ∈ bs}"""
    family: Literal["power-finite"] = "power-finite"
    a: Base
    bs: List[PositiveInt] = Field(min_length=1)


class PolyPowerProduct(_Spec):
    """{∏ aᵢ^{Pᵢ(nᵢ)} : nᵢ ≥ 0}, Pᵢ ∈ 𝒫_ℕ"""
    family: Literal["poly-product"] = "poly-product"
    bases: List[Base] = Field(min_length=1)
    polys: List[IntPoly] = Field(min_length=1)

    @model_validator(mode="after")
    def _check(self):
        if len(self.bases) != len(self.polys):
            raise ValueError("bases and polys must have the same length")
        for p in self.polys:
            if not p.is_natural():
                raise ValueError(f"polynomial {p.describe()} is not in P_N (P(0)=0, P(N0) ⊂ N0)")
        return self


class GeometricUnion(_Spec):
    """S^ℕ₀ = ∪_{a∈S} Γ(a)"""
    family: Literal["geometric-union"] = "geometric-union"
    S: List[Base] = Field(min_length=1)

    @model_validator(mode="after")
    def _check(self):
        roots = {}
        for a in self.S:
            root = minimal_root(a)
            if root in roots:
                raise ValueError(f"{roots[root]} and {a} are powers of the same integer {root}")
            roots[root] = a
        return self


class FloorPoly(_Spec):
    """{⌊P(n)⌋ : n ≥ 1}，P 为实系数多项式"""
    family: Literal["floor-poly"] = "floor-poly"
    coeffs: List[float]

    @field_validator("coeffs")
    @classmethod
    def _check(cls, v):
        v = list(v)
        while v and v[-1] == 0:
            v.pop()
        if len(v) < 2:
            raise ValueError("floor polynomial must have degree >= 1")
        if v[-1] <= 0:
            raise ValueError("leading coefficient must be positive")
        return v


class PolyOfPrimes(_Spec):
    """P(D)，D 为素数集"""
    family: Literal["poly-primes"] = "poly-primes"
    P: IntPoly

    @model_validator(mode="after")
    def _check(self):
        if self.P.coeffs[-1] <= 0:
            raise ValueError("leading coefficient must be positive")
        return self


class FloorTabulated(_Spec):
    """{⌊f(n)⌋}，f 由有限表给出"""
    family: Literal["floor-table"] = "floor-table"
    table: Dict[PositiveInt, float] = Field(min_length=1)

    @field_validator("table")
    @classmethod
    def _check(cls, v):
        for n, value in v.items():
            if not value > 0 or math.isinf(value):
                raise ValueError(f"table value at {n} must be a positive real")
        return v


class PowerSTimesPowerT(_Spec):
    """a^S b^T = {aˢ bᵗ : s ∈ S, t ∈ T}"""
    family: Literal["power-st"] = "power-st"
    a: Base
    b: Base
    S: Union[List[NonNegativeInt], "SetSpec"]
    T: List[NonNegativeInt] = Field(min_length=1)


class FiniteProduct(_Spec):
    """FP(S): S 中不同元素的非空乘积"""
    family: Literal["finite-product"] = "finite-product"
    S: List[Base] = Field(min_length=1)

    @field_validator("S")
    @classmethod
    def _distinct(cls, v):
        if len(set(v)) != len(v):
            raise ValueError("finite product generators must be distinct")
        return v


class Explicit(_Spec):
    """直接给出的元素"""
    family: Literal["explicit"] = "explicit"
    elements: List[PositiveInt]


class ArithmeticProgression(_Spec):
    """{start + k·step : k ≥ 0}"""
    family: Literal["arithmetic"] = "arithmetic"
    start: PositiveInt
    step: PositiveInt


SetSpec = Annotated[
    Union[GammaAB, GammaSingle, PowerTimesFinite, PolyPowerProduct, GeometricUnion,
          FloorPoly, PolyOfPrimes, FloorTabulated, PowerSTimesPowerT, FiniteProduct,
          Explicit, ArithmeticProgression],
    Field(discriminator="family"),
]

PowerSTimesPowerT.model_rebuild()

_SPEC_ADAPTER = TypeAdapter(SetSpec)


def parse_setspec(document) -> SetSpec:
    """
    解析 SetSpec(字典或 JSON 字符串)

    Raises:
        SpecValidationError: 描述无效
    """
    try:
        if isinstance(document, (str, bytes)):
            return _SPEC_ADAPTER.validate_json(document)
        return _SPEC_ADAPTER.validate_python(document)
    except ValidationError as e:
        raise SpecValidationError(f"无效的集合描述: {e}")


def dump_setspec(spec) -> dict:
    """SetSpec → 可 JSON 序列化的字典"""
    return _SPEC_ADAPTER.dump_python(spec, mode="json")


def setspec_schema() -> str:
    return json.dumps(_SPEC_ADAPTER.json_schema(), indent=2, ensure_ascii=False)


def minimal_root(a: int) -> int:
    """a = r^k 中最小的 r"""
    pp = sympy.perfect_power(a)
    return int(pp[0]) if pp else a


# ============================================
# 枚举
# ============================================

class _Tally:
    """记录超出 64 位范围而被丢弃的候选"""

    def __init__(self):
        self.overflow = 0

    def past(self, x: int, bound: int) -> bool:
        if x > bound:
            if x > config.ELEMENT_LIMIT:
                self.overflow += 1
            return True
        return False


def _log_floor(a: int, bound: int) -> int:
    """最大的 e 使 a^e ≤ bound(bound ≥ 1)"""
    e, x = 0, a
    while x <= bound:
        e += 1
        x *= a
    return e


def enumerate_set(spec, bound: int) -> SortedSet:
    """
    枚举 {x ∈ 集合族 : 1 ≤ x ≤ bound}

    Args:
        spec: SetSpec(或可解析为 SetSpec 的字典)
        bound: 上界

    Returns:
        SortedSet
    """
    if isinstance(spec, dict):
        spec = parse_setspec(spec)
    if not isinstance(bound, int) or bound < 1:
        raise SpecValidationError(f"bound 必须是正整数, 当前值: {bound}")
    if bound > config.ELEMENT_LIMIT:
        raise SpecValidationError(f"bound 超过 64 位元素范围: {bound}")

    tally = _Tally()
    handler = _ENUMERATORS[spec.family]
    values = handler(spec, bound, tally)
    result = SortedSet.from_values(values, bound, tally.overflow)
    logger.debug(f"{spec.family} 枚举到 {bound}: {len(result)} 个元素")
    if tally.overflow:
        logger.warning(f"{spec.family}: {tally.overflow} 个候选超出 64 位范围被丢弃")
    return result


def _enum_gamma(spec: GammaAB, bound, tally):
    out = []
    pa = 1
    while not tally.past(pa, bound):
        x = pa
        while not tally.past(x, bound):
            out.append(x)
            x *= spec.b
        pa *= spec.a
    return out


def _enum_gamma_single(spec: GammaSingle, bound, tally):
    out = []
    x = 1
    while not tally.past(x, bound):
        out.append(x)
        x *= spec.a
    return out


def _enum_power_finite(spec: PowerTimesFinite, bound, tally):
    out = []
    for b in spec.bs:
        x = b
        while not tally.past(x, bound):
            out.append(x)
            x *= spec.a
    return out


def _factor_values(a: int, poly: IntPoly, bound: int) -> List[int]:
    """{a^{P(n)} ≤ bound : n ≥ 0}"""
    max_exp = _log_floor(a, bound)
    start = poly.increasing_from()
    exps = set()
    n = 0
    while True:
        e = poly(n)
        if e <= max_exp:
            exps.add(e)
        elif n >= start:
            break
        n += 1
    return sorted(a ** e for e in exps)


def _enum_poly_product(spec: PolyPowerProduct, bound, tally):
    # 底数大的因子放外层，剪枝最快
    factors = sorted(zip(spec.bases, spec.polys), key=lambda t: -t[0])
    tables = [_factor_values(a, p, bound) for a, p in factors]
    out = set()

    def walk(i, acc):
        if i == len(tables):
            out.add(acc)
            return
        for v in tables[i]:
            x = acc * v
            if tally.past(x, bound):
                break
            walk(i + 1, x)

    walk(0, 1)
    return out


def _enum_geometric_union(spec: GeometricUnion, bound, tally):
    out = set()
    for a in spec.S:
        out.update(_enum_gamma_single(GammaSingle(a=a), bound, tally))
    return out


def floor_poly_value(coeffs: Sequence[float], n: int) -> int:
    """
    ⌊P(n)⌋，双精度计算，小数部分靠近整数时用有理数重算
    """
    v = 0.0
    for c in reversed(coeffs):
        v = v * n + c
    frac = v - math.floor(v)
    guard = 2.0 ** -config.FLOOR_GUARD_BITS
    if frac < guard or frac > 1 - guard:
        exact = Fraction(0)
        for c in reversed(coeffs):
            exact = exact * n + Fraction(repr(c))
        return math.floor(exact)
    return math.floor(v)


def _enum_floor_poly(spec: FloorPoly, bound, tally):
    coeffs = spec.coeffs
    deriv = np.polynomial.polynomial.polyder(np.array(coeffs, dtype=float))
    lead = abs(deriv[-1])
    start = 1 + int(math.ceil(max((abs(c) / lead for c in deriv[:-1]), default=0.0)))
    out = []
    n = 1
    while True:
        v = floor_poly_value(coeffs, n)
        if 1 <= v <= bound:
            out.append(v)
        elif v > bound and n >= start:
            break
        n += 1
    return out


def _enum_poly_primes(spec: PolyOfPrimes, bound, tally):
    P = spec.P
    start = P.increasing_from()
    n_max = 1
    n = 1
    while True:
        v = P(n)
        if v <= bound:
            n_max = n
        elif n >= start:
            break
        n += 1
    return [v for v in (P(p) for p in primes_up_to(n_max)) if 1 <= v <= bound]


def _enum_floor_table(spec: FloorTabulated, bound, tally):
    return [math.floor(v) for v in spec.table.values()]


def _enum_power_st(spec: PowerSTimesPowerT, bound, tally):
    max_s = _log_floor(spec.a, bound)
    if isinstance(spec.S, list):
        s_exps = [s for s in spec.S if s <= max_s]
    elif max_s >= 1:
        s_exps = list(enumerate_set(spec.S, max_s).elements)
    else:
        s_exps = []
    out = []
    for s in sorted(set(s_exps)):
        head = spec.a ** s
        for t in sorted(set(spec.T)):
            x = head * spec.b ** t
            if tally.past(x, bound):
                break
            out.append(x)
    return out


def _enum_finite_product(spec: FiniteProduct, bound, tally):
    return finite_products(spec.S, bound).elements


def _enum_explicit(spec: Explicit, bound, tally):
    return [x for x in spec.elements if x <= bound]


def _enum_arithmetic(spec: ArithmeticProgression, bound, tally):
    return range(spec.start, bound + 1, spec.step)


_ENUMERATORS = {
    "gamma": _enum_gamma,
    "gamma-single": _enum_gamma_single,
    "power-finite": _enum_power_finite,
    "poly-product": _enum_poly_product,
    "geometric-union": _enum_geometric_union,
    "floor-poly": _enum_floor_poly,
    "poly-primes": _enum_poly_primes,
    "floor-table": _enum_floor_table,
    "power-st": _enum_power_st,
    "finite-product": _enum_finite_product,
    "explicit": _enum_explicit,
    "arithmetic": _enum_arithmetic,
}


# ============================================
# 素数、差分与有限积
# ============================================

def primes_up_to(n: int) -> SortedSet:
    """埃拉托斯特尼筛法，返回所有 ≤ n 的素数"""
    if n < 2:
        return SortedSet((), max(n, 1))
    is_prime = np.ones(n + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if is_prime[p]:
            is_prime[p * p: n + 1: p] = False
    return SortedSet(tuple(int(p) for p in np.flatnonzero(is_prime)), n)


def kth_difference(values: Sequence[int], k: int) -> List[int]:
    """
    k 阶前向差分 Δᵏf

    Args:
        values: f(1), f(2), ... 的表
        k: 阶数

    Returns:
        长度为 len(values) - k 的表
    """
    if k < 1:
        raise SpecValidationError(f"k 必须是正整数, 当前值: {k}")
    if k >= len(values):
        raise SpecValidationError(f"表长 {len(values)} 必须大于 k = {k}")
    arr = np.array([int(v) for v in values], dtype=object)
    return [int(v) for v in np.diff(arr, n=k)]


def finite_products(S: Sequence[int], bound: int) -> SortedSet:
    """
    FP(S): S 中不同元素的非空乘积中 ≤ bound 的部分
    """
    if not S:
        raise SpecValidationError("S 不能为空")
    if len(set(S)) != len(S):
        raise SpecValidationError(f"S 中有重复元素: {list(S)}")
    if any(s < 2 for s in S):
        raise SpecValidationError("S 的元素必须 ≥ 2")
    gens = sorted(S)
    out = set()

    def walk(i, acc):
        for j in range(i, len(gens)):
            x = acc * gens[j]
            if x > bound:
                break
            out.add(x)
            walk(j + 1, x)

    walk(0, 1)
    return SortedSet.from_values(out, bound)
