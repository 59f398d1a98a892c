#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
有限和集计算模块
用大整数位向量做移位或(shift-OR)动态规划，计算 FS(A) 的覆盖情况，
并派生出余有限阈值、最大间隙、贪心表示、剩余类覆盖和等差数列检测
"""

import bisect
import logging
import math
import struct
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

import gmpy2
import numpy as np

import config
from errors import ResourceLimitError, SpecValidationError
from set_generators import SortedSet

logger = logging.getLogger(__name__)

FSBS_MAGIC = b"FSBS"

VERDICT_COMPLETE = "empirically-complete"
VERDICT_SYNDETIC = "syndetic-only"
VERDICT_SPARSE = "sparse"


# ============================================
# 覆盖位向量
# ============================================

@dataclass(frozen=True)
class SumCoverage:
    """
    FS(A ∩ [1,N]) 的位向量

    第 n-1 位为 1 当且仅当 n 是 A 中不同元素之和
    """

    bits: object
    bound: int
    source_count: int

    def covered(self, n: int) -> bool:
        return 1 <= n <= self.bound and gmpy2.bit_test(self.bits, n - 1)

    def count(self) -> int:
        return int(gmpy2.popcount(self.bits))

    def uncovered(self):
        """[1,N] 中未覆盖整数的位向量"""
        mask = (gmpy2.mpz(1) << self.bound) - 1
        return mask ^ self.bits

    def prefix(self, m: int) -> "SumCoverage":
        m = min(m, self.bound)
        return SumCoverage(self.bits & ((gmpy2.mpz(1) << m) - 1), m, self.source_count)


def fs_coverage(A: Iterable[int], bound: int, mem_cap: Optional[int] = None) -> SumCoverage:
    """
    计算 FS(A) ∩ [1, bound]

    元素按递增顺序处理: bits ← bits | (bits << x)，再置上 x 自己的位。
    第 n 位只依赖 ≤ n 的元素，所以上界内的结果是精确的

    Args:
        A: 递增的正整数
        bound: 上界 N
        mem_cap: 位数上限，默认取环境变量或 config.MEM_CAP_BITS

    Raises:
        ResourceLimitError: bound 超过位数上限
    """
    if bound < 1:
        raise SpecValidationError(f"bound 必须是正整数, 当前值: {bound}")
    cap = mem_cap if mem_cap is not None else config.mem_cap_from_env()
    if bound > cap:
        # 移位时同时存在三份位向量
        required = 3 * ((bound + 7) // 8)
        raise ResourceLimitError(
            f"bound {bound} 超过位向量上限 {cap} 位, 约需 {required} 字节",
            required_bytes=required,
        )

    mask = (gmpy2.mpz(1) << bound) - 1
    bits = gmpy2.mpz(0)
    consumed = 0
    prev = 0
    for x in A:
        if x <= prev:
            raise SpecValidationError("元素必须严格递增")
        prev = x
        if x > bound:
            break
        bits = ((bits << x) | bits) & mask
        bits = gmpy2.bit_set(bits, x - 1)
        consumed += 1
    logger.debug(f"FS 覆盖: {consumed} 个元素, 上界 {bound}, 覆盖 {gmpy2.popcount(bits)} 个整数")
    return SumCoverage(bits, bound, consumed)


def coverage_elements(c: SumCoverage) -> SortedSet:
    """被覆盖的整数"""
    arr = _to_bit_array(c.bits, c.bound)
    return SortedSet(tuple(int(n) + 1 for n in np.flatnonzero(arr)), c.bound)


def _to_bytes(bits, bound: int) -> np.ndarray:
    nbytes = (bound + 7) // 8
    return np.frombuffer(int(bits).to_bytes(nbytes, "little"), dtype=np.uint8)


def _to_bit_array(bits, bound: int) -> np.ndarray:
    return np.unpackbits(_to_bytes(bits, bound), bitorder="little")[:bound]


# ============================================
# 覆盖报告
# ============================================

@dataclass(frozen=True)
class CoverageReport:
    bound: int
    covered_count: int
    threshold: Optional[int]
    missing_count: int
    max_gap: int
    verdict: str

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "covered_count": self.covered_count,
            "threshold": self.threshold,
            "missing_count": self.missing_count,
            "max_gap": self.max_gap,
            "verdict": self.verdict,
        }


def coverage_report(c: SumCoverage) -> CoverageReport:
    """
    阈值、缺失数、最大间隙和结论

    结论规则:
      empirically-complete  阈值存在且 ≤ N/2
      syndetic-only         否则, FS 非空且最大间隙 ≤ ⌊√N⌋
      sparse                其余情况
    """
    N = c.bound
    inv = c.uncovered()
    if inv == 0:
        return CoverageReport(N, N, 1, 0, 0, VERDICT_COMPLETE)

    top = int(inv.bit_length())
    threshold = top + 1 if top + 1 <= N else None
    missing = int(gmpy2.popcount(inv))

    max_gap = 0
    pos = 0
    while True:
        start = gmpy2.bit_scan1(inv, pos)
        if start is None:
            break
        end = gmpy2.bit_scan0(inv, start)
        max_gap = max(max_gap, int(end - start))
        pos = end

    covered = N - missing
    if threshold is not None and 2 * threshold <= N:
        verdict = VERDICT_COMPLETE
    elif covered > 0 and max_gap <= math.isqrt(N):
        verdict = VERDICT_SYNDETIC
    else:
        verdict = VERDICT_SPARSE
    return CoverageReport(N, covered, threshold, missing, max_gap, verdict)


# ============================================
# 贪心表示
# ============================================

@dataclass(frozen=True)
class GreedyResult:
    subset: Tuple[int, ...]
    slack: int


def greedy_representation(B: SortedSet, n: int) -> GreedyResult:
    """
    贪心: 每一步取尚未使用且不超过剩余量的最大元素

    被选中的元素递减，所以下一步只需在上一步位置之前二分查找
    """
    if len(B) == 0:
        raise SpecValidationError("B 不能为空")
    picked = []
    remaining = n
    hi = len(B)
    while remaining > 0 and hi > 0:
        i = bisect.bisect_right(B.elements, remaining, 0, hi) - 1
        if i < 0:
            break
        picked.append(B[i])
        remaining -= B[i]
        hi = i
    return GreedyResult(tuple(picked), remaining)


# ============================================
# 剩余类覆盖
# ============================================

@dataclass(frozen=True)
class ResidueCoverage:
    q: int
    reached: frozenset
    full: bool

    def to_dict(self) -> dict:
        return {"q": self.q, "reached": sorted(self.reached), "full": self.full}


def residue_mask(C: Iterable[int], q: int, include_empty: bool = False) -> int:
    """FS(C) mod q 的可达集合，用 q 位整数表示并做循环移位"""
    full = (1 << q) - 1
    reached = 1 if include_empty else 0
    for x in C:
        s = x % q
        if s:
            rotated = ((reached << s) | (reached >> (q - s))) & full
        else:
            rotated = reached
        reached |= rotated | (1 << s)
        if reached == full:
            break
    return reached


def residue_fs(C: Iterable[int], q: int, include_empty: bool = False) -> ResidueCoverage:
    """
    FS(C) + qℤ 在 ℤ/qℤ 中的像

    默认不含空和: 0 只有在某个非空子集的和是 q 的倍数时才可达
    """
    if q < 2:
        raise SpecValidationError(f"模数 q 必须 ≥ 2, 当前值: {q}")
    mask = residue_mask(C, q, include_empty)
    reached = frozenset(r for r in range(q) if mask >> r & 1)
    return ResidueCoverage(q, reached, mask == (1 << q) - 1)


# ============================================
# 等差数列检测与 syndetic 常数
# ============================================

def ap_detect(c: SumCoverage, qmax: int, min_terms: int = 1) -> List[Tuple[int, int, int]]:
    """
    找出所有 (q, i, onset): q ≤ qmax, 0 ≤ i < q,
    [onset, N] 中所有 ≡ i (mod q) 的整数都被覆盖，onset 取最小

    从高位向低位分块扫描未覆盖的整数，记录每个剩余类中最大的未覆盖数
    """
    if qmax < 1:
        raise SpecValidationError(f"qmax 必须 ≥ 1, 当前值: {qmax}")
    N = c.bound
    pending = {(q, i) for q in range(1, qmax + 1) for i in range(q)}
    largest = {}
    inv = c.uncovered()
    if inv != 0:
        buf = _to_bytes(inv, N)
        chunk = 1 << 17
        hi = len(buf)
        while pending and hi > 0:
            lo = max(0, hi - chunk)
            block = buf[lo:hi]
            if block.any():
                bits = np.unpackbits(block, bitorder="little")
                ints = (np.flatnonzero(bits) + 8 * lo + 1)[::-1]
                ints = ints[ints <= N]
                for q in range(1, qmax + 1):
                    residues, first = np.unique(ints % q, return_index=True)
                    for r, idx in zip(residues.tolist(), first.tolist()):
                        if (q, r) in pending:
                            largest[(q, r)] = int(ints[idx])
                            pending.discard((q, r))
            hi = lo

    found = []
    for q in range(1, qmax + 1):
        for i in range(q):
            if (q, i) in largest:
                onset = largest[(q, i)] + q
            else:
                onset = i if i >= 1 else q
            if onset <= N and (N - onset) // q + 1 >= min_terms:
                found.append((q, i, onset))
    return found


def syndeticity_constant(s: Iterable[int]) -> int:
    """相邻元素间隙减一的最大值(界内估计)"""
    elements = list(s)
    if not elements:
        raise SpecValidationError("集合不能为空")
    return max((b - a - 1 for a, b in zip(elements, elements[1:])), default=0)


# ============================================
# 位向量导出
# ============================================

def dump_coverage(c: SumCoverage) -> bytes:
    """
    FSBS 格式: 魔数 "FSBS", u32 版本, u64 上界, 然后 ⌈N/64⌉ 个小端 u64
    流中第 n-1 位对应整数 n
    """
    words = (c.bound + 63) // 64
    header = FSBS_MAGIC + struct.pack("<I", config.FSBS_VERSION) + struct.pack("<Q", c.bound)
    return header + int(c.bits).to_bytes(words * 8, "little")


def load_coverage(data: bytes) -> SumCoverage:
    if data[:4] != FSBS_MAGIC:
        raise SpecValidationError("不是 FSBS 位向量文件")
    version, = struct.unpack("<I", data[4:8])
    if version != config.FSBS_VERSION:
        raise SpecValidationError(f"不支持的 FSBS 版本: {version}")
    bound, = struct.unpack("<Q", data[8:16])
    words = (bound + 63) // 64
    payload = data[16:16 + words * 8]
    if len(payload) != words * 8:
        raise SpecValidationError("FSBS 文件被截断")
    bits = gmpy2.mpz(int.from_bytes(payload, "little"))
    return SumCoverage(bits, bound, -1)
