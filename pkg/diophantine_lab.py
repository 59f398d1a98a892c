#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
圆周上的丢番图实验模块
带误差跟踪的定点角度、轨道间隙(ε-稠密)测量、连分数、
以及几个显式构造(非完备的次缺项集合、对抗性厚集、Vandermonde 整数见证)
"""

import itertools
import logging
import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import gmpy2
import numpy as np
import sympy

import config
from errors import ConstructionError, PrecisionBudgetError, PreconditionError, SpecValidationError
from set_generators import IntPoly, SortedSet, enumerate_set, parse_setspec

logger = logging.getLogger(__name__)

KIND_RATIONAL = "rational"
KIND_SURD = "surd"
KIND_CF = "cf"
KIND_LACUNARY = "lacunary"


# ============================================
# 定点角度
# ============================================

@dataclass(frozen=True)
class Angle:
    """
    𝕋 = ℝ/ℤ 中的点，以 P 位定点数保存

    value / 2^P 与真实值之差不超过 err_ulps / 2^P。
    乘以整数 n 后误差变为 n·err_ulps + 1
    """

    value: int
    precision: int
    err_ulps: int
    origin: str
    kind: str
    exact: Optional[Fraction] = None
    partial_quotient_bound: Optional[int] = None

    @property
    def scale(self) -> int:
        return 1 << self.precision

    @property
    def err(self) -> Fraction:
        return Fraction(self.err_ulps, self.scale)

    @property
    def is_rational(self) -> bool:
        return self.kind == KIND_RATIONAL

    @property
    def badly_approximable(self) -> bool:
        return self.partial_quotient_bound is not None

    def as_float(self) -> float:
        return self.value / self.scale

    def at_precision(self, precision: int) -> "Angle":
        return angle_make(self.origin, precision)

    def multiple(self, n: int) -> Tuple[int, int]:
        """nα mod 1 的定点值及其误差(ulp)"""
        return (n * self.value) % self.scale, n * self.err_ulps + 1

    def norm_of(self, n: int) -> Tuple[int, int]:
        """‖nα‖ 的定点值及其误差(ulp)"""
        x, e = self.multiple(n)
        return circle_norm(x, self.scale), e

    def required_bits(self, n: int) -> int:
        return (n * self.err_ulps + 1).bit_length() + config.ORBIT_ERROR_BUDGET_BITS

    def within_budget(self, n: int) -> bool:
        return (n * self.err_ulps + 1) << config.ORBIT_ERROR_BUDGET_BITS <= self.scale

    def check_budget(self, n: int):
        """
        n·err ≤ 2^-32

        Raises:
            PrecisionBudgetError: 精度不够，异常中带有所需位数
        """
        if not self.within_budget(n):
            need = self.required_bits(n)
            raise PrecisionBudgetError(
                f"{self.origin}: P={self.precision} 位不足以处理 n={n}, 至少需要 {need} 位",
                required_bits=need,
            )


def circle_norm(x: int, scale: int) -> int:
    """到最近整数的距离(定点)"""
    x %= scale
    return min(x, scale - x)


def precision_for(bits: int) -> int:
    """不小于 bits 的 2 的幂，至少为默认精度"""
    p = config.DEFAULT_PRECISION
    while p < bits:
        p *= 2
    return p


def _check_precision(precision: int):
    if precision & (precision - 1) or not config.MIN_PRECISION <= precision <= config.MAX_PRECISION:
        raise SpecValidationError(
            f"精度必须是 [{config.MIN_PRECISION}, {config.MAX_PRECISION}] 中的 2 的幂, 当前值: {precision}"
        )


def _fixed(frac: Fraction, precision: int) -> int:
    return (frac.numerator << precision) // frac.denominator


def _sqrt_period(m: int) -> List[int]:
    """√m 连分数的周期部分"""
    a0 = math.isqrt(m)
    period = []
    num, den, a = 0, 1, a0
    while a != 2 * a0:
        num = den * a - num
        den = (m - num * num) // den
        a = (a0 + num) // den
        period.append(a)
    return period


def _convergent(quotients: Sequence[int]) -> Tuple[int, int]:
    p, q, p_prev, q_prev = 1, 0, 0, 1
    for a in quotients:
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
    return p, q


_CF_PATTERN = re.compile(r"^\[\s*(-?\d+)\s*(?:;(.*))?\]$")


def angle_make(origin: str, precision: Optional[int] = None) -> Angle:
    """
    由文本描述构造角度

    支持:
      rational:p/q          有理数
      sqrt:m                frac(√m)，m 不能是完全平方数
      cf:[a0;a1,...,am]     有限连分数，视为以此为前缀的无理数
      cf:[a0;a1,...,am,...] a1..am 周期重复(二次无理数)
      lacunary:b            Σ_{k≥1} b^(-k²)
    """
    if precision is None:
        precision = config.DEFAULT_PRECISION
    _check_precision(precision)
    text = origin.strip()
    kind, _, body = text.partition(":")
    body = body.strip()
    scale = 1 << precision

    if kind == "rational":
        try:
            frac = Fraction(body)
        except (ValueError, ZeroDivisionError):
            raise SpecValidationError(f"无效的有理数: {body!r}")
        frac -= math.floor(frac)
        return Angle(_fixed(frac, precision), precision, 1, text, KIND_RATIONAL, exact=frac)

    if kind == "sqrt":
        if not body.isdigit() or int(body) < 1:
            raise SpecValidationError(f"根号下必须是正整数: {body!r}")
        m = int(body)
        if gmpy2.is_square(m):
            raise SpecValidationError(f"{m} 是完全平方数, √{m} 是有理数")
        value = int(gmpy2.isqrt(gmpy2.mpz(m) << (2 * precision))) - (math.isqrt(m) << precision)
        return Angle(value, precision, 1, text, KIND_SURD, partial_quotient_bound=max(_sqrt_period(m)))

    if kind == "cf":
        match = _CF_PATTERN.match(body)
        if not match:
            raise SpecValidationError(f"无效的连分数: {body!r}")
        tokens = [t.strip() for t in (match.group(2) or "").split(",") if t.strip()]
        periodic = bool(tokens) and tokens[-1] in ("...", "…")
        if periodic:
            tokens = tokens[:-1]
        try:
            quotients = [int(t) for t in tokens]
        except ValueError:
            raise SpecValidationError(f"连分数的部分商必须是整数: {body!r}")
        if not quotients or any(a < 1 for a in quotients):
            raise SpecValidationError(f"连分数至少需要一个正的部分商: {body!r}")
        if periodic:
            # [0; a1, a2, …] 展开到 q² > 2^(P+1)
            p, q, p_prev, q_prev = 0, 1, 1, 0
            for a in itertools.cycle(quotients):
                p, p_prev = a * p + p_prev, p
                q, q_prev = a * q + q_prev, q
                if q * q > scale << 1:
                    break
            value = ((p << precision) // q) % scale
            return Angle(value, precision, 2, text, KIND_CF, partial_quotient_bound=max(quotients))
        p, q = _convergent([0] + quotients)
        value = ((p << precision) // q) % scale
        err = 1 + -(-scale // (q * q))
        return Angle(value, precision, err, text, KIND_CF)

    if kind == "lacunary":
        if not body.isdigit() or int(body) < 2:
            raise SpecValidationError(f"lacunary 的底数必须 ≥ 2: {body!r}")
        b = int(body)
        value, terms, k = 0, 0, 1
        while b ** (k * k) <= scale:
            value += scale // b ** (k * k)
            terms += 1
            k += 1
        return Angle(value % scale, precision, terms + 2, text, KIND_LACUNARY)

    raise SpecValidationError(f"未知的角度类型: {origin!r}")


# ============================================
# 轨道与间隙
# ============================================

def orbit_points(A: Sequence[int], alpha: Angle) -> List[Tuple[int, int, int]]:
    """每个 n ∈ A 的 (n, nα mod 1 的定点值, 误差 ulp)"""
    elements = list(A)
    if not elements:
        raise SpecValidationError("A 不能为空")
    alpha.check_budget(max(elements))
    return [(n,) + alpha.multiple(n) for n in elements]


@dataclass(frozen=True)
class OrbitStats:
    points: Tuple[int, ...]
    precision: int
    err_ulps: int
    max_gap_ulps: int
    count: int
    origin: str = ""

    @property
    def scale(self) -> int:
        return 1 << self.precision

    @property
    def max_gap(self) -> float:
        return self.max_gap_ulps / self.scale

    def eps_dense(self, eps: float) -> bool:
        return self.max_gap <= eps

    def histogram(self, bins: int = 32) -> List[int]:
        values = np.array([p / self.scale for p in self.points], dtype=float)
        counts, _ = np.histogram(values, bins=bins, range=(0.0, 1.0))
        return counts.tolist()

    def to_dict(self) -> dict:
        return {
            "alpha": self.origin,
            "count": self.count,
            "distinct": len(self.points),
            "max_gap": self.max_gap,
            "err": self.err_ulps / self.scale,
            "precision": self.precision,
            "histogram": self.histogram(),
        }

    def to_csv(self) -> str:
        lines = ["point"]
        lines.extend(repr(p / self.scale) for p in self.points)
        return "\n".join(lines) + "\n"


def orbit(A: Sequence[int], alpha: Angle) -> OrbitStats:
    """
    Aα 的排序点列和最大圆周间隙

    间隙包括从最后一个点绕回第一个点的弧；0 不算作轨道点

    Raises:
        PrecisionBudgetError: max(A)·err 超出 2^-32
    """
    pts = orbit_points(A, alpha)
    scale = alpha.scale
    values = sorted({x for _, x, _ in pts})
    if len(values) == 1:
        gap = scale
    else:
        gap = max(b - a for a, b in zip(values, values[1:]))
        gap = max(gap, scale - values[-1] + values[0])
    err = max(e for _, _, e in pts)
    return OrbitStats(tuple(values), alpha.precision, err, gap, len(pts), alpha.origin)


# ============================================
# 连分数
# ============================================

@dataclass(frozen=True)
class ConvergentList:
    pairs: Tuple[Tuple[int, int], ...]
    truncated: bool

    def to_dict(self) -> dict:
        return {"pairs": [list(p) for p in self.pairs], "truncated": self.truncated}


def convergents(alpha: Angle, depth: int) -> ConvergentList:
    """
    前 depth 个渐近分数 p/q

    有理角度精确展开直到终止；其它角度同时对误差区间两端做辗转相除，
    部分商不一致时停止并标记 truncated。每一项都验证 |α − p/q| < 1/q²
    """
    if depth < 1:
        raise SpecValidationError(f"depth 必须是正整数, 当前值: {depth}")
    if alpha.is_rational:
        x, quotients = alpha.exact, []
        while len(quotients) < depth:
            a = math.floor(x)
            quotients.append(a)
            if x == a:
                break
            x = 1 / (x - a)
        pairs = tuple(_convergent(quotients[:i + 1]) for i in range(len(quotients)))
        return ConvergentList(pairs, False)

    scale = alpha.scale
    alpha_lo = Fraction(alpha.value - alpha.err_ulps, scale)
    alpha_hi = Fraction(alpha.value + alpha.err_ulps, scale)
    # lo, hi 是余项区间, 逐步取倒数; 验证始终针对 α 本身的区间
    lo, hi = alpha_lo, alpha_hi
    quotients, pairs = [], []
    truncated = False
    while len(pairs) < depth:
        a = math.floor(lo)
        if a != math.floor(hi):
            truncated = True
            break
        quotients.append(a)
        p, q = _convergent(quotients)
        if max(abs(alpha_lo - Fraction(p, q)), abs(alpha_hi - Fraction(p, q))) >= Fraction(1, q * q):
            truncated = True
            break
        pairs.append((p, q))
        if lo == a or hi == a:
            truncated = True
            break
        lo, hi = 1 / (hi - a), 1 / (lo - a)
    if truncated:
        logger.info(f"{alpha.origin}: 精度 {alpha.precision} 位只支持 {len(pairs)} 个渐近分数")
    return ConvergentList(tuple(pairs), truncated)


# ============================================
# 区间内的最小范数
# ============================================

@dataclass(frozen=True)
class RangeMinimum:
    n: int
    norm_ulps: int
    err_ulps: int
    precision: int

    @property
    def norm(self) -> float:
        return self.norm_ulps / (1 << self.precision)

    @property
    def norm_fraction(self) -> Fraction:
        return Fraction(self.norm_ulps, 1 << self.precision)

    @property
    def err_fraction(self) -> Fraction:
        return Fraction(self.err_ulps, 1 << self.precision)


def _exact_min(alpha: Angle, lo: int, hi: int, beta: Optional[Angle]) -> RangeMinimum:
    target = beta.exact if beta is not None else Fraction(0)
    best_n, best = None, None
    for n in range(lo, hi):
        x = (n * alpha.exact - target) % 1
        d = min(x, 1 - x)
        if best is None or d < best:
            best_n, best = n, d
    return RangeMinimum(best_n, _fixed(best, alpha.precision), 0, alpha.precision)


def min_norm_in_range(alpha: Angle, lo: int, hi: int, beta: Optional[Angle] = None) -> RangeMinimum:
    """
    argmin_{lo ≤ n < hi} ‖nα − β‖，相同时取较小的 n

    最小值与次小值之差不超过 2·err 时把精度翻倍重算，直到 MAX_PRECISION

    Raises:
        PrecisionBudgetError: 精度上限内无法区分或无法满足误差预算
    """
    if lo < 1 or hi <= lo:
        raise SpecValidationError(f"需要 1 ≤ lo < hi, 当前为 [{lo}, {hi})")
    if alpha.is_rational and (beta is None or beta.is_rational):
        return _exact_min(alpha, lo, hi, beta)

    P = max(alpha.precision, beta.precision if beta is not None else 0)
    while True:
        a = alpha if P == alpha.precision else alpha.at_precision(P)
        b = None
        if beta is not None:
            b = beta if P == beta.precision else beta.at_precision(P)
        if a.within_budget(hi):
            scale = a.scale
            shift = b.value if b is not None else 0
            extra = b.err_ulps if b is not None else 0
            err = hi * a.err_ulps + 1 + extra
            first = second = None
            for n in range(lo, hi):
                d = circle_norm(n * a.value - shift, scale)
                if first is None or d < first[0]:
                    first, second = (d, n), first
                elif second is None or d < second[0]:
                    second = (d, n)
            if second is None or second[0] - first[0] > 2 * err:
                return RangeMinimum(first[1], first[0], err, P)
            logger.debug(f"{alpha.origin}: n={first[1]} 与 n={second[1]} 在误差内, 提升精度")
        if P * 2 > config.MAX_PRECISION:
            raise PrecisionBudgetError(
                f"{alpha.origin}: 在 {config.MAX_PRECISION} 位内无法确定 [{lo}, {hi}) 的最小值",
                required_bits=P * 2,
            )
        P *= 2
        logger.info(f"{alpha.origin}: 精度提升到 {P} 位")


@dataclass(frozen=True)
class ObservationStep:
    k: int
    lo: int
    hi: int
    n: int
    norm: float
    window_bound: Optional[float]

    def to_dict(self) -> dict:
        return {"k": self.k, "lo": self.lo, "hi": self.hi, "n": self.n,
                "norm": self.norm, "window_bound": self.window_bound}


def observation_sequence(alpha: Angle, beta: Optional[Angle], ms: Sequence[int]) -> List[ObservationStep]:
    """
    n_k ∈ [m_k, m_{k+1}) 使 ‖n_kα − β‖ 最小

    部分商有界(≤ K)时，长为 L 的窗口保证 ‖n_kα − β‖ ≤ (K+1)/L
    """
    ms = list(ms)
    if len(ms) < 2 or any(b <= a for a, b in zip(ms, ms[1:])):
        raise SpecValidationError("ms 必须严格递增且至少有两项")
    steps = []
    for k, (lo, hi) in enumerate(zip(ms, ms[1:])):
        r = min_norm_in_range(alpha, lo, hi, beta)
        bound = None
        if alpha.badly_approximable:
            bound = (alpha.partial_quotient_bound + 1) / (hi - lo)
        steps.append(ObservationStep(k, lo, hi, r.n, r.norm, bound))
    return steps


# ============================================
# 次缺项但非完备、非分散的构造
# ============================================

@dataclass(frozen=True)
class NcdConstruction:
    A: SortedSet
    sigma: Fraction
    measured: Fraction
    tail: Fraction
    C: int
    picks: Tuple[Tuple[int, int, float], ...]

    def to_dict(self) -> dict:
        return {
            "elements": list(self.A.elements),
            "sigma": float(self.sigma),
            "measured": float(self.measured),
            "tail": str(self.tail),
            "C": self.C,
            "picks": [{"k": k, "n": n, "norm": x} for k, n, x in self.picks],
        }


def example_ncd_build(alpha: Angle, k0: int, kmax: int) -> NcdConstruction:
    """
    对 k0 ≤ k ≤ kmax 在 [k³, (k+1)³) 中取 ‖nα‖ 最小的 n_k

    sigma = Σ(‖n_kα‖ + err) + C/(3(kmax+1))，C = K+1 控制 kmax 之后的尾项。
    sigma < 1/2 时 FS(A) 的每个元素 m 都满足 ‖mα‖ < 1/2，A 不完备

    Raises:
        PreconditionError: α 没有部分商上界
        ConstructionError: sigma ≥ 1/2
    """
    if not alpha.badly_approximable:
        raise PreconditionError(f"{alpha.origin} 没有部分商上界, 需要二次无理数")
    if k0 < 1 or kmax < k0:
        raise SpecValidationError(f"需要 1 ≤ k0 ≤ kmax, 当前 k0={k0}, kmax={kmax}")
    C = alpha.partial_quotient_bound + 1
    measured = Fraction(0)
    picks, elements = [], []
    for k in range(k0, kmax + 1):
        r = min_norm_in_range(alpha, k ** 3, (k + 1) ** 3)
        measured += r.norm_fraction + r.err_fraction
        picks.append((k, r.n, r.norm))
        elements.append(r.n)
    tail = Fraction(C, 3 * (kmax + 1))
    sigma = measured + tail
    if sigma >= Fraction(1, 2):
        hint = f"k0 ≥ {2 * C // 3 + 1}"
        raise ConstructionError(f"sigma = {float(sigma):.4f} ≥ 1/2", hint=hint)
    logger.info(f"构造完成: {len(elements)} 个元素, sigma = {float(sigma):.6f}")
    return NcdConstruction(SortedSet(tuple(elements), (kmax + 1) ** 3), sigma, measured, tail, C, tuple(picks))


# ============================================
# Vandermonde 见证
# ============================================

@dataclass(frozen=True)
class VandermondeWitness:
    z: Tuple[int, ...]
    D: int
    M: int
    value: int
    c: int
    bound: int
    z_ratio: float
    bounds_ok: bool

    def to_dict(self) -> dict:
        return {
            "z": list(self.z),
            "D": self.D,
            "M": self.M,
            "value": self.value,
            "c": self.c,
            "bound": self.bound,
            "z_ratio": self.z_ratio,
            "bounds_ok": self.bounds_ok,
        }


_X = sympy.Symbol("x")


def vandermonde_witness(P: IntPoly, nodes: Sequence[int]) -> VandermondeWitness:
    """
    整数 z₀..z_d 使 Σ zᵢP(nᵢ) = D ≠ 0

    a_ij 是 P(x + mᵢ) 中 x^j 的系数(mᵢ = nᵢ − n₀)，D = det(a_ij)，
    z 是方程组 Σᵢ zᵢ a_ij = D·[j = 0] 的解，即 adj(aᵀ) 的第一列。
    |D| = |lc|^(d+1)·∏ C(d,j)·∏_{i<k} |m_k − m_i|

    z 与所有次数 < d 的多项式正交，所以 zᵢ = D / (lc·∏_{k≠i}(mᵢ − m_k))，
    max|zᵢ| 和 |value| 都不超过 c·M^C(d+1,2)
    """
    nodes = list(nodes)
    d = P.degree
    if len(set(nodes)) != len(nodes):
        raise SpecValidationError(f"节点必须互不相同: {nodes}")
    if len(nodes) != d + 1:
        raise SpecValidationError(f"{d} 次多项式需要 {d + 1} 个节点, 当前 {len(nodes)} 个")

    base = sympy.Poly(list(reversed(P.coeffs)), _X)
    rows = []
    for n in nodes:
        shifted = [int(c) for c in reversed(base.shift(n - nodes[0]).all_coeffs())]
        rows.append(shifted + [0] * (d + 1 - len(shifted)))
    A = sympy.Matrix(rows)
    D = int(A.det(method="bareiss"))
    z = tuple(int(v) for v in A.T.adjugate()[:, 0])

    numerator = sum(zi * P.numerator_at(n) for zi, n in zip(z, nodes))
    if D == 0 or numerator != D:
        raise AssertionError(f"Vandermonde 见证不一致: D={D}, Σ z·P = {numerator}")
    value = Fraction(numerator, P.denominator)

    M = max(nodes) - min(nodes)
    c = abs(P.coeffs[-1]) ** (d + 1) * math.prod(math.comb(d, j) for j in range(d + 1))
    spread = math.prod(abs(b - a) for a, b in itertools.combinations(nodes, 2))
    if abs(D) != c * spread:
        raise AssertionError(f"|D| = {abs(D)} 与闭式 {c * spread} 不一致")
    power = M ** math.comb(d + 1, 2)
    return VandermondeWitness(
        z=z,
        D=D,
        M=M,
        value=int(value) if value.denominator == 1 else value,
        c=c,
        bound=c * power,
        z_ratio=max(abs(v) for v in z) / power,
        bounds_ok=max(abs(v) for v in z) <= c * power and abs(numerator) <= c * power,
    )


# ============================================
# 对抗性厚集构造
# ============================================

def cantor_pairs(count: int) -> List[Tuple[int, int]]:
    """ℕ → ℕ×ℕ 的对角线枚举: (1,1), (1,2), (2,1), (1,3), …"""
    pairs = []
    s = 2
    while len(pairs) < count:
        for i in range(1, s):
            pairs.append((i, s - i))
            if len(pairs) == count:
                break
        s += 1
    return pairs


@dataclass(frozen=True)
class ThickStep:
    k: int
    index: int
    length: int
    base: int
    N: int
    M: int
    norm: float
    precision: int

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "set": self.index,
            "block": [self.N, self.N + self.length],
            "base": self.base,
            "N": self.N,
            "M": str(self.M),
            "norm": self.norm,
            "precision": self.precision,
        }


@dataclass
class ThickConstruction:
    depth: int
    steps: List[ThickStep] = field(default_factory=list)
    products_checked: int = 0
    verified: bool = True
    note: str = ""

    @property
    def depth_achieved(self) -> int:
        return len(self.steps)

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "depth_achieved": self.depth_achieved,
            "steps": [s.to_dict() for s in self.steps],
            "products_checked": self.products_checked,
            "verified": self.verified,
            "note": self.note,
        }


def _power_search(alpha: Angle, a: int, limit: int, cap: int) -> Optional[Tuple[int, int, int]]:
    """
    找最小的 N ≥ 1 使 ‖a^N α‖ + err ≤ 2^P / limit

    精度不够时翻倍重算，返回 (N, norm_ulps, precision)
    """
    P = max(alpha.precision, precision_for(limit.bit_length() + config.ORBIT_ERROR_BUDGET_BITS))
    N = 1
    while N <= cap:
        if P > config.MAX_PRECISION:
            return None
        angle = alpha if P == alpha.precision else alpha.at_precision(P)
        scale = angle.scale
        power = a ** N
        x = (power * angle.value) % scale
        err = power * angle.err_ulps
        while N <= cap:
            if err << config.ORBIT_ERROR_BUDGET_BITS > scale:
                P *= 2
                break
            norm = circle_norm(x, scale)
            if (norm + err) * limit <= scale:
                return N, norm, P
            N += 1
            x = (x * a) % scale
            err = err * a + 1
    return None


def adversarial_thick(a_list: Sequence[int], alpha: Angle, depth: Optional[int] = None) -> ThickConstruction:
    """
    递归构造 N_k: 第 k 步的底数 a = a_{π₁(k)}，
    M_k = a^{π₂(k)}·∏_{j<k} a_{π₁(j)}^{N_j + π₂(j)}，
    N_k 取使 ‖a^{N_k}α‖ ≤ 1/(k·M_k) 的最小值。
    集合 S_i 是 π₁(k) = i 的各块 N_k + {0..π₂(k)} 的并

    最后对所有非空 F ⊆ {1..depth}、0 ≤ s_k ≤ π₂(k) 的乘积 n 检查 ‖nα‖ ≤ 1/max F

    Raises:
        PreconditionError: α 是有理数
    """
    if alpha.is_rational:
        raise PreconditionError(f"{alpha.origin} 是有理数, 轨道有限")
    if depth is None:
        depth = config.THICK_MAX_DEPTH
    if not a_list or any(a < 2 for a in a_list):
        raise SpecValidationError("a_list 的元素必须 ≥ 2")
    log = ThickConstruction(depth)
    if depth == 0:
        return log

    pairs = cantor_pairs(depth)
    bases = [a_list[(i - 1) % len(a_list)] for i, _ in pairs]
    prior = 1
    for k, ((i, length), a) in enumerate(zip(pairs, bases), start=1):
        M = a ** length * prior
        found = _power_search(alpha, a, k * M, config.THICK_SEARCH_CAP)
        if found is None:
            log.note = f"第 {k} 步在搜索上限 {config.THICK_SEARCH_CAP} 或精度上限内未找到 N_k"
            logger.warning(log.note)
            break
        N, norm, P = found
        log.steps.append(ThickStep(k, i, length, a, N, M, norm / (1 << P), P))
        logger.info(f"第 {k} 步: a={a}, N={N}, 精度 {P} 位")
        prior *= a ** (N + length)

    _verify_products(alpha, log)
    return log


def _verify_products(alpha: Angle, log: ThickConstruction):
    steps = log.steps
    if not steps:
        return
    choices = [[None] + list(range(s.length + 1)) for s in steps]
    for picks in itertools.product(*choices):
        used = [k for k, s in enumerate(picks) if s is not None]
        if not used:
            continue
        n = math.prod(steps[k].base ** (steps[k].N + picks[k]) for k in used)
        top = steps[used[-1]].k
        bits = alpha.required_bits(n)
        if bits > config.MAX_PRECISION:
            log.verified = False
            log.note = f"乘积需要 {bits} 位精度, 超出上限"
            return
        angle = alpha.at_precision(precision_for(bits)) if not alpha.within_budget(n) else alpha
        norm, err = angle.norm_of(n)
        log.products_checked += 1
        if (norm + err) * top > angle.scale:
            log.verified = False
            log.note = f"乘积 n 在第 {top} 层不满足 ‖nα‖ ≤ 1/{top}"
            logger.warning(log.note)
            return


# ============================================
# ε-稠密探测
# ============================================

@dataclass(frozen=True)
class EpsProbeRow:
    alpha: str
    count: int
    max_gap: float
    eps: float
    eps_dense: bool

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "count": self.count, "max_gap": self.max_gap,
                "eps": self.eps, "eps_dense": self.eps_dense}


def eps_probe(spec, alphas: Sequence, bound: int, eps: float, jobs: Optional[int] = None) -> List[EpsProbeRow]:
    """
    对每个 α 计算 Aα 的最大间隙

    Raises:
        PreconditionError: 有理角度(分散性只对无理数定义)
    """
    if isinstance(spec, dict):
        spec = parse_setspec(spec)
    angles = [angle_make(a) if isinstance(a, str) else a for a in alphas]
    for a in angles:
        if a.is_rational:
            raise PreconditionError(f"{a.origin} 是有理数, 分散性只对无理角度有定义")
    A = enumerate_set(spec, bound)
    jobs = jobs or config.JOBS
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        stats = list(pool.map(lambda a: orbit(A, a), angles))
    rows = [EpsProbeRow(s.origin, s.count, s.max_gap, eps, s.eps_dense(eps)) for s in stats]
    for r in rows:
        logger.info(f"{r.alpha}: 最大间隙 {r.max_gap:.6f}, ε={eps} {'稠密' if r.eps_dense else '不稠密'}")
    return rows
