#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
完备性假设检查模块
对分解 A = B₁ ∪ B₂ ∪ B₃ ∪ C 逐项检查:
  (I)   各 Bᵢ 的部分和缺口 sup(n − Σ{m ∈ Bᵢ : m < n}) 有界
  (II)  Σ_{n∈C} ‖nα‖ 发散(启发式)
  (III) FS(C) + qℤ = ℤ(剩余类下降链)
并检查若干集合族定理的假设组合，输出带见证的证书
"""

import bisect
import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

import config
from diophantine_lab import Angle, angle_make, vandermonde_witness
from errors import PrecisionBudgetError, SpecValidationError
from fs_engine import coverage_report, fs_coverage, residue_mask
from set_generators import (GammaAB, IntPoly, PowerTimesFinite, SortedSet, dump_setspec,
                            enumerate_set, parse_setspec, primes_up_to)

logger = logging.getLogger(__name__)

CONSISTENT = "consistent-at-bound"
REFUTED = "refuted-at-bound"
INCONCLUSIVE = "inconclusive"
SATISFIED = "satisfied"

TREND_BOUNDED = "bounded"
TREND_GROWING = "growing"


# ============================================
# 条件 (I): 部分和缺口
# ============================================

@dataclass(frozen=True)
class Condition1Result:
    sup_value: int
    trend: str
    head_max: Optional[int]
    tail_max: Optional[int]
    witness: Optional[int]

    def to_dict(self) -> dict:
        return {
            "sup": self.sup_value,
            "trend": self.trend,
            "head_max": self.head_max,
            "tail_max": self.tail_max,
            "witness": self.witness,
        }


def condition1_sup(B: Sequence[int]) -> Condition1Result:
    """
    d(n) = n − Σ{m ∈ B : m < n}

    后四分之一的最大值超过前四分之三最大值的 TREND_FACTOR 倍时判为 growing，
    witness 是后段中 d 最大的元素
    """
    elements = list(B)
    if not elements:
        raise SpecValidationError("B 不能为空")
    defects = []
    running = 0
    for n in elements:
        defects.append(n - running)
        running += n

    split = max(1, (3 * len(defects)) // 4)
    head, tail = defects[:split], defects[split:]
    head_max = max(head)
    if not tail:
        return Condition1Result(max(defects), TREND_BOUNDED, head_max, None, None)
    tail_max = max(tail)
    growing = tail_max > config.TREND_FACTOR * max(head_max, 1)
    witness = elements[split + tail.index(tail_max)] if growing else None
    trend = TREND_GROWING if growing else TREND_BOUNDED
    return Condition1Result(max(defects), trend, head_max, tail_max, witness)


@dataclass(frozen=True)
class WindowCount:
    L: int
    minimum: Optional[int]
    at: Optional[int]


def window_count(B: SortedSet, L: int) -> WindowCount:
    """
    min_N #(B ∩ (N, (L+1)N])

    只需在元素值及其前一个整数处取 N；右端超出上界的窗口不计
    """
    if L < 1:
        raise SpecValidationError(f"L 必须 ≥ 1, 当前值: {L}")
    el = B.elements
    candidates = {1}
    for b in el:
        candidates.add(b)
        if b > 1:
            candidates.add(b - 1)
    best, at = None, None
    for N in sorted(candidates):
        if (L + 1) * N > B.bound:
            break
        cnt = bisect.bisect_right(el, (L + 1) * N) - bisect.bisect_right(el, N)
        if best is None or cnt < best:
            best, at = cnt, N
    return WindowCount(L, best, at)


def partition3(B: SortedSet) -> List[Tuple[SortedSet, Condition1Result]]:
    """按排序后下标轮流分成三部分，每部分附带条件 (I) 的扫描结果"""
    if len(B) < 3:
        raise SpecValidationError("B 至少需要 3 个元素")
    parts = []
    for r in range(3):
        part = SortedSet(B.elements[r::3], B.bound)
        parts.append((part, condition1_sup(part)))
    return parts


# ============================================
# 次缺项性
# ============================================

@dataclass(frozen=True)
class RatioStats:
    ratios: Tuple[float, ...]
    tail_max: float
    lambda_fit: float
    fit_index: int
    cbrt2: bool

    def to_dict(self) -> dict:
        return {
            "count": len(self.ratios) + 1,
            "tail_max": self.tail_max,
            "lambda_fit": self.lambda_fit,
            "fit_index": self.fit_index,
            "cbrt2_sublacunary": self.cbrt2,
        }


def sublacunarity(A: Sequence[int]) -> RatioStats:
    """相邻比 n_{k+1}/n_k；后半段最大值即拟合的 λ"""
    elements = list(A)
    if len(elements) < 2:
        raise SpecValidationError("至少需要 2 个元素")
    ratios = tuple(b / a for a, b in zip(elements, elements[1:]))
    index = len(ratios) // 2
    tail_max = max(ratios[index:])
    return RatioStats(ratios, tail_max, tail_max, index, tail_max <= 2 ** (1 / 3))


# ============================================
# 条件 (III): 剩余类下降链
# ============================================

@dataclass(frozen=True)
class DescentStep:
    q: int
    r: int
    method: str
    witnesses: Tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {"from": self.q, "to": self.r, "method": self.method, "witnesses": list(self.witnesses)}


@dataclass(frozen=True)
class ResidueRecord:
    q: int
    path: Tuple[DescentStep, ...]
    chain_found: bool
    zero_reached: bool
    pigeonhole: bool
    full: bool

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "full": self.full,
            "chain_found": self.chain_found,
            "zero_reached": self.zero_reached,
            "pigeonhole": self.pigeonhole,
            "path": [s.to_dict() for s in self.path],
        }


def _descent_step(elements: List[int], m: int, r: int) -> Optional[DescentStep]:
    """验证 FS₀(C ∩ rℕ) + mℤ = rℤ(FS₀ 含空和)"""
    need = m // r - 1
    witnesses = [n for n in elements if math.gcd(n, m) == r]
    if len(witnesses) >= need:
        return DescentStep(m, r, "count", tuple(witnesses[:need]))
    sub = [n for n in elements if n % r == 0]
    target = sum(1 << k for k in range(0, m, r))
    if residue_mask(sub, m, include_empty=True) == target:
        return DescentStep(m, r, "dp")
    return None


def _residue_record(elements: List[int], q: int) -> ResidueRecord:
    memo: Dict[int, Optional[List[DescentStep]]] = {1: []}

    def chain(m: int) -> Optional[List[DescentStep]]:
        if m in memo:
            return memo[m]
        memo[m] = None
        for r in reversed(sympy.divisors(m)[:-1]):
            step = _descent_step(elements, m, r)
            if step is None:
                continue
            rest = chain(r)
            if rest is not None:
                memo[m] = [step] + rest
                return memo[m]
        return None

    path = chain(q)
    zero = bool(residue_mask(elements, q) & 1)
    nondivisible = sum(1 for n in elements if n % q)
    slots = sum(q // r - 2 for r in sympy.divisors(q)[:-1])
    return ResidueRecord(
        q=q,
        path=tuple(path or ()),
        chain_found=path is not None,
        zero_reached=zero,
        pigeonhole=nondivisible > slots,
        full=path is not None and zero,
    )


def residue_conditions(C: Sequence[int], qmax: int, jobs: int = 1) -> List[ResidueRecord]:
    """
    对 q = 2..qmax 寻找下降链 q = q₀ > q₁ > … > 1

    每一步 q → r (r | q) 由计数判据 #{n ∈ C : gcd(n,q) = r} ≥ q/r − 1 或
    对 C ∩ rℕ 的模 q 动态规划给出。最终 full 还要求 0 能由非空子集达到
    """
    if qmax < 2:
        raise SpecValidationError(f"qmax 必须 ≥ 2, 当前值: {qmax}")
    elements = list(C)
    qs = range(2, qmax + 1)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(lambda q: _residue_record(elements, q), qs))
    else:
        records = [_residue_record(elements, q) for q in qs]
    failed = [r.q for r in records if not r.full]
    if failed:
        logger.info(f"剩余类覆盖失败的模数: {failed[:10]}")
    return records


# ============================================
# 条件 (II): 发散探测
# ============================================

@dataclass(frozen=True)
class DivergenceSummary:
    alpha: str
    terms: int
    total: float
    slope: float
    trend: str
    curve: Tuple[Tuple[int, float], ...]
    heuristic: bool = True

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "terms": self.terms,
            "total": self.total,
            "slope": self.slope,
            "trend": self.trend,
            "curve": [list(p) for p in self.curve],
            "heuristic": self.heuristic,
        }


def divergence_probe(C: Sequence[int], alpha: Angle, terms: Optional[int] = None) -> DivergenceSummary:
    """
    Σ_{n∈C} ‖nα‖ 的部分和曲线

    后半段 ‖nα‖ 的平均值(斜率) ≥ DIVERGENCE_SLOPE_FLOOR 判为 growing，否则 plateauing。
    这是启发式结论，有限前缀无法判定发散

    Raises:
        PrecisionBudgetError: 精度不足以覆盖最大元素
    """
    if terms is None:
        terms = config.DIVERGENCE_TERMS
    elements = list(C)[:terms]
    if not elements:
        raise SpecValidationError("C 不能为空")
    alpha.check_budget(max(elements))

    norms = [alpha.norm_of(n)[0] / alpha.scale for n in elements]
    partial = list(itertools.accumulate(norms))
    half = len(norms) // 2
    tail = norms[half:]
    slope = sum(tail) / len(tail)
    trend = "growing" if slope >= config.DIVERGENCE_SLOPE_FLOOR else "plateauing"

    step = max(1, len(partial) // 32)
    picks = list(range(step - 1, len(partial), step))
    if picks[-1] != len(partial) - 1:
        picks.append(len(partial) - 1)
    curve = tuple((elements[i], partial[i]) for i in picks)
    return DivergenceSummary(alpha.origin, len(elements), partial[-1], slope, trend, curve)


# ============================================
# S₁..S₄ 的倒数和检查
# ============================================

@dataclass(frozen=True)
class BeglResult:
    sums: Tuple[Fraction, ...]
    parts_ok: Tuple[bool, ...]
    gcd_s4: int
    gcd_ok: bool

    @property
    def holds(self) -> bool:
        return all(self.parts_ok) and self.gcd_ok

    def to_dict(self) -> dict:
        return {
            "sums": [str(s) for s in self.sums],
            "parts_ok": list(self.parts_ok),
            "gcd_s4": self.gcd_s4,
            "gcd_ok": self.gcd_ok,
            "holds": self.holds,
        }


def begl_check(S1: Sequence[int], S2: Sequence[int], S3: Sequence[int], S4: Sequence[int]) -> BeglResult:
    """
    i = 1,2,3: Σ_{a∈Sᵢ} 1/(a−1) ≥ 1(精确有理数)；gcd(S₄) = 1
    """
    parts = [list(S1), list(S2), list(S3), list(S4)]
    seen = {}
    for i, part in enumerate(parts, start=1):
        for a in part:
            if a < 2:
                raise SpecValidationError(f"S{i} 的元素必须 ≥ 2, 当前值: {a}")
            if a in seen and seen[a] != i:
                raise SpecValidationError(f"{a} 同时出现在 S{seen[a]} 和 S{i}")
            seen[a] = i
    sums = tuple(sum((Fraction(1, a - 1) for a in part), Fraction(0)) for part in parts[:3])
    g = reduce(math.gcd, parts[3], 0)
    return BeglResult(sums, tuple(s >= 1 for s in sums), g, g == 1)


# ============================================
# 线性组合见证
# ============================================

@dataclass(frozen=True)
class ZannierWitness:
    z: Tuple[int, ...]
    x: Tuple[int, ...]
    value: int

    def to_dict(self) -> dict:
        return {"z": list(self.z), "x": list(self.x), "value": self.value}


@dataclass(frozen=True)
class ZannierResult:
    status: str
    floor: int
    witness: Optional[ZannierWitness] = None
    combinations: int = 0
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "floor": self.floor,
            "witness": self.witness.to_dict() if self.witness else None,
            "combinations": self.combinations,
            "note": self.note,
        }


def zannier_witness(A: SortedSet, k: int, b: int, zmax: Optional[int] = None, floor_N: int = 1,
                    window: Optional[int] = None, cap: Optional[int] = None) -> ZannierResult:
    """
    在 floor_N 之上的 W 个元素中穷举 x₁ < … < x_k 和 |zᵢ| ≤ zmax，
    寻找 0 < |Σ zᵢxᵢ| ≤ b，返回字典序第一个见证

    最后一个系数由前面的部分和直接解出，只需枚举 (2·zmax+1)^(k−1) 种前缀
    """
    zmax = config.ZANNIER_ZMAX if zmax is None else zmax
    window = config.ZANNIER_WINDOW if window is None else window
    cap = config.ZANNIER_CAP if cap is None else cap
    if k < 2:
        raise SpecValidationError(f"k 必须 ≥ 2, 当前值: {k}")
    if b < 1 or zmax < 1:
        raise SpecValidationError("b 与 zmax 必须为正")

    start = bisect.bisect_left(A.elements, floor_N)
    win = A.elements[start:start + window]
    if len(win) < k:
        return ZannierResult("inconclusive", floor_N, note=f"floor {floor_N} 之上只有 {len(win)} 个元素")
    combos = math.comb(len(win), k) * (2 * zmax + 1) ** (k - 1)
    if combos > cap:
        return ZannierResult("inconclusive", floor_N, combinations=combos,
                             note=f"搜索空间 {combos} 超过上限 {cap}")

    coeffs = range(-zmax, zmax + 1)
    for xs in itertools.combinations(win, k):
        last = xs[-1]
        for head in itertools.product(coeffs, repeat=k - 1):
            s = sum(z * x for z, x in zip(head, xs))
            lo = max(-zmax, -((b + s) // last))
            hi = min(zmax, (b - s) // last)
            for zk in range(lo, hi + 1):
                value = s + zk * last
                if 0 < abs(value) <= b:
                    return ZannierResult("found", floor_N, ZannierWitness(head + (zk,), xs, value), combos)
    return ZannierResult("absent", floor_N, combinations=combos)


def zannier_scan(A: SortedSet, k: int, b: int, zmax: Optional[int] = None,
                 floors: Optional[Sequence[int]] = None, window: Optional[int] = None,
                 cap: Optional[int] = None) -> List[ZannierResult]:
    """在若干几何分布的下限上重复搜索"""
    window = config.ZANNIER_WINDOW if window is None else window
    if floors is None:
        if len(A) == 0:
            raise SpecValidationError("A 不能为空")
        lo = A[0]
        hi = A[max(0, len(A) - window)]
        count = config.ZANNIER_FLOORS
        if hi <= lo or count < 2:
            floors = [lo]
        else:
            floors = sorted({round(lo * (hi / lo) ** (i / (count - 1))) for i in range(count)})
    return [zannier_witness(A, k, b, zmax, f, window, cap) for f in floors]


def polynomial_prime_witness(P: IntPoly, floor_N: int, window: Optional[int] = None) -> ZannierResult:
    """
    P(素数) 上的见证: 在 floor_N 之上的 W 个素数里取跨度最小的 d+1 个连续素数，
    用 Vandermonde 系数得到 Σ zᵢP(pᵢ) = D ≠ 0
    """
    window = config.ZANNIER_WINDOW if window is None else window
    d = P.degree
    limit = max(2 * floor_N, floor_N + 1000)
    primes = primes_up_to(limit)
    while primes.count_upto(limit) - primes.count_upto(floor_N - 1) < max(window, d + 1):
        limit *= 2
        primes = primes_up_to(limit)
    start = bisect.bisect_left(primes.elements, floor_N)
    win = primes.elements[start:start + window]
    best = min(range(len(win) - d), key=lambda i: (win[i + d] - win[i], i))
    nodes = win[best:best + d + 1]
    vw = vandermonde_witness(P, nodes)
    xs = tuple(P(n) for n in nodes)
    return ZannierResult("found", floor_N, ZannierWitness(vw.z, xs, vw.value), 1,
                         note=f"nodes={list(nodes)} bound={vw.bound}")


# ============================================
# 集合族定理的假设组合
# ============================================

def _is_power_of(q: int, a: int) -> bool:
    while q % a == 0:
        q //= a
    return q == 1


@dataclass(frozen=True)
class PowerFamilyCheck:
    a: int
    distinct_logs: bool
    gcd_value: Optional[int]
    gcd_ok: bool
    coprime_count: int
    coprime_ok: bool
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.distinct_logs and self.gcd_ok and self.coprime_ok

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "distinct_logs": self.distinct_logs,
            "gcd": self.gcd_value,
            "gcd_ok": self.gcd_ok,
            "coprime_count": self.coprime_count,
            "coprime_ok": self.coprime_ok,
            "holds": self.holds,
            "note": self.note,
        }


def power_family_check(a: int, bs: Sequence[int]) -> PowerFamilyCheck:
    """
    {aⁿ b_m} 的假设:
      log_a b_m 两两模 1 不同(即 b_i/b_j 不是 a 的整数次幂)；
      gcd(b_0, …, b_M) = 1 且 #{m ≤ M : gcd(a, b_m) = 1} ≥ a − 1，M = N − 3(a−1)
    """
    if a < 2 or not bs or any(b < 1 for b in bs):
        raise SpecValidationError("需要 a ≥ 2 和非空的正整数 bs")
    distinct = True
    for x, y in itertools.combinations(bs, 2):
        hi, lo = max(x, y), min(x, y)
        if hi % lo == 0 and _is_power_of(hi // lo, a):
            distinct = False
            break
    M = len(bs) - 1 - 3 * (a - 1)
    if M < 0:
        return PowerFamilyCheck(a, distinct, None, False, 0, False,
                                note=f"至少需要 {3 * (a - 1) + 1} 个 b_m")
    head = list(bs[:M + 1])
    g = reduce(math.gcd, head, 0)
    coprime = sum(1 for b in head if math.gcd(a, b) == 1)
    return PowerFamilyCheck(a, distinct, g, g == 1, coprime, coprime >= a - 1)


@dataclass(frozen=True)
class PolynomialFamilyCheck:
    gcd_value: int
    independent: bool
    rank: int
    natural: Tuple[bool, ...]
    degrees: Tuple[int, ...]

    @property
    def holds(self) -> bool:
        return self.gcd_value == 1 and self.independent and all(self.natural)

    def to_dict(self) -> dict:
        return {
            "gcd": self.gcd_value,
            "independent": self.independent,
            "rank": self.rank,
            "natural": list(self.natural),
            "degrees": list(self.degrees),
            "holds": self.holds,
        }


def polynomial_family_check(bases: Sequence[int], polys: Sequence[IntPoly]) -> PolynomialFamilyCheck:
    """
    A_s 的假设: gcd(底数) = 1，log aᵢ 在 ℚ 上线性无关
    (素因子指数矩阵满秩)，每个多项式属于 𝒫_ℕ
    """
    if len(bases) != len(polys) or not bases:
        raise SpecValidationError("bases 与 polys 长度必须相同且非空")
    g = reduce(math.gcd, bases, 0)
    factored = [sympy.factorint(a) for a in bases]
    primes = sorted(set().union(*factored))
    matrix = sympy.Matrix([[f.get(p, 0) for p in primes] for f in factored])
    rank = matrix.rank()
    return PolynomialFamilyCheck(
        gcd_value=g,
        independent=rank == len(bases),
        rank=rank,
        natural=tuple(p.is_natural() for p in polys),
        degrees=tuple(p.degree for p in polys),
    )


@dataclass(frozen=True)
class DensityHypothesis:
    delta: Fraction
    rows: Tuple[Tuple[int, int, float, bool], ...]

    def to_dict(self) -> dict:
        return {
            "delta": str(self.delta),
            "rows": [{"N": N, "count": c, "required": r, "ok": ok} for N, c, r, ok in self.rows],
        }


def density_hypothesis_scan(P: IntPoly, D: SortedSet, Ns: Sequence[int]) -> DensityHypothesis:
    """#(D ∩ [1,N]) ≥ N^{1−δ}，δ = 1/(1 + 2·C(d+1,2))"""
    delta = Fraction(1, 1 + 2 * math.comb(P.degree + 1, 2))
    rows = []
    for N in Ns:
        count = D.count_upto(N)
        required = N ** (1 - float(delta))
        rows.append((N, count, required, count >= required))
    return DensityHypothesis(delta, tuple(rows))


# ============================================
# 证书
# ============================================

@dataclass
class Certificate:
    spec: dict
    bound: int
    partition: dict
    cond1: List[dict] = field(default_factory=list)
    windows: List[dict] = field(default_factory=list)
    cond2: List[dict] = field(default_factory=list)
    cond3: List[dict] = field(default_factory=list)
    coverage: dict = field(default_factory=dict)
    verdicts: Dict[str, str] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        values = list(self.verdicts.values())
        if REFUTED in values:
            return 1
        if INCONCLUSIVE in values:
            return 2
        return 0

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "bound": self.bound,
            "partition": self.partition,
            "checks": {
                "partial-sum-defect": {"parts": self.cond1, "windows": self.windows,
                                       "verdict": self.verdicts.get("partial-sum-defect")},
                "orbit-divergence": {"probes": self.cond2, "heuristic": True,
                                     "verdict": self.verdicts.get("orbit-divergence")},
                "residue-coverage": {"moduli": self.cond3,
                                     "verdict": self.verdicts.get("residue-coverage")},
            },
            "coverage": self.coverage,
            "exit_code": self.exit_code,
        }


def _head(elements: Sequence[int], n: int = 8) -> List[int]:
    return list(elements[:n])


def _partition(spec, A: SortedSet, strategy: str, bound: int):
    """返回 ([B₁, B₂, B₃], C, 描述)"""
    if strategy == "round-robin":
        el = A.elements
        parts = [SortedSet(el[r::4], A.bound) for r in (1, 2, 3)]
        C = SortedSet(el[0::4], A.bound)
        rule = "sorted index mod 4: 0 -> C, 1..3 -> B1..B3"
    elif strategy == "modulus":
        if isinstance(spec, GammaAB):
            bs, x = [], 1
            while x <= bound:
                bs.append(x)
                x *= spec.b
            a = spec.a
        elif isinstance(spec, PowerTimesFinite):
            a, bs = spec.a, list(spec.bs)
        else:
            raise SpecValidationError("modulus 划分只支持 gamma 与 power-finite")
        size = a - 1
        M = len(bs) - 3 * size
        if M < 1:
            raise SpecValidationError(f"modulus 划分至少需要 {3 * size + 1} 个 b_m, 当前 {len(bs)} 个")
        groups = [bs[M + i * size:M + (i + 1) * size] for i in range(3)]
        parts = [enumerate_set(PowerTimesFinite(a=a, bs=g), bound) for g in groups]
        used = set().union(*(p.elements for p in parts))
        C = SortedSet(tuple(x for x in A.elements if x not in used), A.bound)
        rule = f"b_m with m >= {M} split into three groups of {size}; C = rest"
    else:
        raise SpecValidationError(f"未知的划分策略: {strategy}")
    info = {
        "strategy": strategy,
        "rule": rule,
        "sizes": [len(p) for p in parts] + [len(C)],
        "heads": {"B1": _head(parts[0]), "B2": _head(parts[1]), "B3": _head(parts[2]), "C": _head(C)},
    }
    return parts, C, info


def certify(spec, bound: int, partition_strategy: Optional[str] = None, qmax: Optional[int] = None,
            alphas: Optional[Sequence] = None, jobs: Optional[int] = None,
            mem_cap: Optional[int] = None, terms: Optional[int] = None) -> Certificate:
    """
    汇总各项检查，生成证书

    (I)、(II) 是极限命题，结论只会是 consistent-at-bound 或 refuted-at-bound；
    (III) 只有所有 q ≤ qmax 都 full 时才是 satisfied
    """
    if isinstance(spec, dict):
        spec = parse_setspec(spec)
    strategy = partition_strategy or config.PARTITION_STRATEGY
    qmax = qmax or config.QMAX
    jobs = jobs or config.JOBS
    angles = [angle_make(a) if isinstance(a, str) else a for a in (alphas or config.DEFAULT_ALPHAS)]

    A = enumerate_set(spec, bound)
    if len(A) < 4:
        raise SpecValidationError(f"元素太少({len(A)} 个)，无法划分")
    parts, C, info = _partition(spec, A, strategy, bound)
    logger.info(f"证书: {spec.family} 上界 {bound}, {len(A)} 个元素, 划分 {info['sizes']}")

    cert = Certificate(spec=dump_setspec(spec), bound=bound, partition=info)

    # (I)
    results1 = [condition1_sup(p) if len(p) else None for p in parts]
    cert.cond1 = [r.to_dict() if r else None for r in results1]
    cert.windows = [{"L": 1, "minimum": w.minimum, "at": w.at}
                    for w in (window_count(p, 1) for p in parts)]
    if any(r is None or r.trend == TREND_GROWING for r in results1):
        cert.verdicts["partial-sum-defect"] = REFUTED
    else:
        cert.verdicts["partial-sum-defect"] = CONSISTENT

    # (II) 与 (III) 分发到线程池
    def probe(alpha):
        try:
            return divergence_probe(C, alpha, terms)
        except PrecisionBudgetError as e:
            logger.warning(f"{alpha.origin}: {e}")
            return None

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        probe_futures = [pool.submit(probe, alpha) for alpha in angles]
        residue_future = pool.submit(residue_conditions, C, qmax, 1)
        coverage_future = pool.submit(lambda: coverage_report(fs_coverage(A, bound, mem_cap)))
        probes = [f.result() for f in probe_futures]
        records = residue_future.result()
        report = coverage_future.result()

    cert.cond2 = [p.to_dict() if p else {"alpha": a.origin, "trend": None} for p, a in zip(probes, angles)]
    if any(p is None for p in probes):
        cert.verdicts["orbit-divergence"] = INCONCLUSIVE
    elif all(p.trend == "growing" for p in probes):
        cert.verdicts["orbit-divergence"] = CONSISTENT
    else:
        cert.verdicts["orbit-divergence"] = REFUTED

    cert.cond3 = [r.to_dict() for r in records]
    cert.verdicts["residue-coverage"] = SATISFIED if all(r.full for r in records) else REFUTED

    cert.coverage = report.to_dict()
    logger.info(f"证书结论: {cert.verdicts}, 覆盖 {report.verdict}")
    return cert
