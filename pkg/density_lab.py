#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
增长率与密度实验模块
元素个数与闭式上界对比，并用位向量引擎精确计算 FS(A) 的密度
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

import config
from errors import SpecValidationError
from fs_engine import fs_coverage
from set_generators import (GammaAB, GammaSingle, IntPoly, PolyPowerProduct, SortedSet,
                            enumerate_set, parse_setspec)

logger = logging.getLogger(__name__)

SQUARE = IntPoly(coeffs=[0, 0, 1])

# 预置实验
PRESETS = {
    "squares": PolyPowerProduct(bases=[2, 3], polys=[SQUARE, SQUARE]),
    "binomial": PolyPowerProduct(bases=[2, 3], polys=[IntPoly(coeffs=[0, -1, 1], denominator=2)] * 2),
}

CSV_COLUMNS = ["N", "element_count", "element_bound", "fs_count", "fs_fraction", "exponent"]


@dataclass(frozen=True)
class DensityReport:
    N: int
    element_count: int
    element_bound: Optional[float]
    fs_count: int
    fs_fraction: float
    exponent: Optional[float]

    @property
    def subset_bound_ok(self) -> bool:
        """#FS ≤ 2^#A"""
        if self.element_count >= self.N.bit_length():
            return True
        return self.fs_count <= 1 << self.element_count

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "element_count": self.element_count,
            "element_bound": self.element_bound,
            "fs_count": self.fs_count,
            "fs_fraction": self.fs_fraction,
            "exponent": self.exponent,
            "subset_bound_ok": self.subset_bound_ok,
        }

    def to_csv_row(self) -> str:
        cells = [self.N, self.element_count, self.element_bound, self.fs_count, self.fs_fraction, self.exponent]
        return ",".join("" if c is None else str(c) for c in cells)


def growth_constant(P: IntPoly, grid: int = 1000) -> int:
    """最小的正整数 C 使 C·P(x) ≥ x^d − C² 在 0..grid 上成立"""
    d = P.degree
    C = 1
    while any(C * P(x) < x ** d - C * C for x in range(grid + 1)):
        C += 1
    return C


def _is_square_family(spec: PolyPowerProduct) -> bool:
    return len(spec.bases) == 2 and all(p == SQUARE for p in spec.polys)


def element_bound(spec, N: int) -> Optional[float]:
    """
    #(A ∩ [1,N]) 的闭式上界，没有公式的集合族返回 None

      Γ(a)                  ⌊log_a N⌋ + 1
      Γ(a,b)                (log_a N + 1)(log_b N + 1)
      {a^{n²} b^{m²}}       √(log_a N)·√(log_b N)，只对照不断言
      其它 poly-product     ∏((Cᵢ log_{aᵢ} N + Cᵢ²)^{1/dᵢ} + 1)

    指数 nᵢ 从 0 开始取，满足 n^d ≤ X 的 n 有 ⌊X^{1/d}⌋ + 1 个，
    所以每个因子是 X^{1/d} + 1 而不是只数 n ≥ 1 时的 (X + 1)^{1/d}
    """
    if isinstance(spec, GammaSingle):
        return float(math.floor(math.log(N, spec.a) + 1e-12) + 1)
    if isinstance(spec, GammaAB):
        return (math.log(N, spec.a) + 1) * (math.log(N, spec.b) + 1)
    if isinstance(spec, PolyPowerProduct):
        if _is_square_family(spec):
            a, b = spec.bases
            if a == b:
                return None
            return math.sqrt(math.log(N, a)) * math.sqrt(math.log(N, b))
        bound = 1.0
        for a, p in zip(spec.bases, spec.polys):
            C = growth_constant(p)
            bound *= (C * math.log(N, a) + C * C) ** (1 / p.degree) + 1
        return bound
    return None


def comparison_exponent(spec) -> Optional[float]:
    """#FS(A ∩ [1,N]) ≲ N^exponent 中的指数"""
    if isinstance(spec, GammaSingle):
        return math.log(2, spec.a)
    if isinstance(spec, PolyPowerProduct):
        if _is_square_family(spec):
            a, b = spec.bases
            return math.sqrt(math.log(2, a) * math.log(2, b))
        return float(sum(Fraction(1, p.degree) for p in spec.polys))
    return None


def _report(spec, A: SortedSet, N: int, mem_cap: Optional[int]) -> DensityReport:
    part = A.prefix(N)
    fs_count = fs_coverage(part, N, mem_cap).count()
    return DensityReport(
        N=N,
        element_count=len(part),
        element_bound=element_bound(spec, N),
        fs_count=fs_count,
        fs_fraction=fs_count / N,
        exponent=comparison_exponent(spec),
    )


def density_scan(spec, Ns: Sequence[int], mem_cap: Optional[int] = None,
                 jobs: Optional[int] = None) -> List[DensityReport]:
    """
    对每个 N 给出元素个数、闭式上界和 FS 计数

    Raises:
        ResourceLimitError: 某个 N 超出位向量上限
    """
    if isinstance(spec, dict):
        spec = parse_setspec(spec)
    Ns = list(Ns)
    if not Ns or any(N < 1 for N in Ns):
        raise SpecValidationError("Ns 必须是非空的正整数列表")
    A = enumerate_set(spec, max(Ns))
    jobs = jobs or config.JOBS
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        reports = list(pool.map(lambda N: _report(spec, A, N, mem_cap), Ns))
    for r in reports:
        logger.info(f"N={r.N}: {r.element_count} 个元素, FS 密度 {r.fs_fraction:.6f}")
        if not r.subset_bound_ok:
            logger.warning(f"N={r.N}: FS 计数 {r.fs_count} 超过 2^{r.element_count}")
    return reports


@dataclass(frozen=True)
class DegreeSumResult:
    total: Fraction
    reports: List[DensityReport]

    @property
    def holds(self) -> bool:
        return self.total < 1

    @property
    def decreasing(self) -> Optional[bool]:
        if len(self.reports) < 2:
            return None
        fractions = [r.fs_fraction for r in self.reports]
        return all(b < a for a, b in zip(fractions, fractions[1:]))

    def to_dict(self) -> dict:
        return {
            "degree_sum": str(self.total),
            "holds": self.holds,
            "decreasing": self.decreasing,
            "reports": [r.to_dict() for r in self.reports],
        }


def degree_sum_check(bases: Sequence[int], polys: Sequence[IntPoly], Ns: Optional[Sequence[int]] = None,
                     mem_cap: Optional[int] = None) -> DegreeSumResult:
    """
    Σ 1/deg(Pᵢ) < 1 时 A 不完备；给出 Ns 时同时做密度扫描

    Σ 1/deg 恰为 1 是边界情况，条件不成立
    """
    if not polys:
        raise SpecValidationError("polys 不能为空")
    total = sum((Fraction(1, p.degree) for p in polys), Fraction(0))
    reports = []
    if Ns:
        reports = density_scan(PolyPowerProduct(bases=list(bases), polys=list(polys)), sorted(Ns), mem_cap)
    return DegreeSumResult(total, reports)
