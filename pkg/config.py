#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
配置文件 - sumsetlab 有限和集实验工具
默认参数集中在这里，命令行参数和 JSON 配置文件可以覆盖
"""

import json
import os
from typing import List, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator

from errors import SpecValidationError

# ============================================
# 定点数精度配置
# ============================================

# 默认精度(二进制位数)
DEFAULT_PRECISION = 256

# 允许的精度范围，自动提升精度时每次翻倍
MIN_PRECISION = 128
MAX_PRECISION = 8192

# 轨道计算误差预算: max(A)·err ≤ 2^-32
ORBIT_ERROR_BUDGET_BITS = 32

# 没有指定 --alpha 时使用的角度
DEFAULT_ALPHAS = ("sqrt:2", "cf:[0;1,...]")

# ============================================
# 内存与元素范围配置
# ============================================

# 位向量上限(位)，默认 2^31 位 = 256 MiB
MEM_CAP_BITS = 2 ** 31

# 环境变量，作为 --mem-cap 的后备
MEM_CAP_ENV = "SUMSETLAB_MEM_CAP"

# 元素上限: 64 位有符号整数
ELEMENT_LIMIT = 2 ** 63 - 1

# 𝒫_ℕ 成员检查的探测范围
NATURAL_PROBE_BOUND = 10 ** 6

# ⌊P(n)⌋ 的精确性保护: 小数部分距整数 2^-20 以内时改用有理数重算
FLOOR_GUARD_BITS = 20

# ============================================
# 假设检查配置
# ============================================

# 剩余类检查的最大模数
QMAX = 64

# fs 命令检测等差数列的默认最大公差(显式给出 --qmax 时以其为准)
AP_QMAX = 8

# 增长趋势判定: 后四分之一最大值 > 2 × 前四分之三最大值
TREND_FACTOR = 2

# 发散探测: 后半段 ‖nα‖ 平均值低于此值视为趋平
DIVERGENCE_SLOPE_FLOOR = 1 / 32

# 发散探测默认项数
DIVERGENCE_TERMS = 10 ** 5

# 划分策略: "round-robin" 或 "modulus"
PARTITION_STRATEGY = "round-robin"

# Zannier 见证搜索: 窗口大小、系数范围、组合数上限、几何分布的下限个数
ZANNIER_WINDOW = 40
ZANNIER_ZMAX = 8
ZANNIER_CAP = 10 ** 8
ZANNIER_FLOORS = 5

# ============================================
# 构造实验配置
# ============================================

# 对抗性厚集构造: 默认深度与每层的搜索步数上限
THICK_MAX_DEPTH = 4
THICK_SEARCH_CAP = 4096

# ============================================
# 并行配置
# ============================================

# 工作线程数
JOBS = 4

# ============================================
# 日志配置
# ============================================

# 日志级别: "DEBUG", "INFO", "WARNING", "ERROR"
LOG_LEVEL = "INFO"

# 日志文件路径
LOG_FILE = "sumsetlab.log"

# 日志格式
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# ============================================
# 输出配置
# ============================================

# 报告目录
REPORT_DIR = "reports"

# 运行记录目录(按日期追加 JSONL)
RUN_LOG_DIR = "runs"

# 报告格式版本
REPORT_FORMAT_VERSION = "1.0"

# 位向量导出格式版本
FSBS_VERSION = 1

# 输出格式
VALID_FORMATS = ["json", "csv", "bits"]

VALID_COMMANDS = ["gen", "fs", "certify", "orbit", "density", "witness", "construct"]


# ============================================
# 配置验证函数
# ============================================

def validate_config():
    """
    验证配置是否正确
    返回: (是否有效, 错误信息列表)
    """
    errors = []

    if not _is_power_of_two(DEFAULT_PRECISION):
        errors.append(f"⚠️  DEFAULT_PRECISION 必须是 2 的幂, 当前值: {DEFAULT_PRECISION}")

    if not MIN_PRECISION <= DEFAULT_PRECISION <= MAX_PRECISION:
        errors.append("⚠️  DEFAULT_PRECISION 必须位于 MIN_PRECISION 与 MAX_PRECISION 之间")

    if MEM_CAP_BITS < 64:
        errors.append("⚠️  MEM_CAP_BITS 至少为 64")

    if QMAX < 2:
        errors.append("⚠️  QMAX 必须大于等于2")

    if AP_QMAX < 1:
        errors.append("⚠️  AP_QMAX 必须大于等于1")

    if PARTITION_STRATEGY not in ["round-robin", "modulus"]:
        errors.append(f"⚠️  PARTITION_STRATEGY 必须是 'round-robin' 或 'modulus', 当前值: {PARTITION_STRATEGY}")

    if ZANNIER_WINDOW < 2 or ZANNIER_ZMAX < 1:
        errors.append("⚠️  ZANNIER_WINDOW 至少为2, ZANNIER_ZMAX 至少为1")

    if JOBS < 1:
        errors.append("⚠️  JOBS 必须大于等于1")

    if LOG_LEVEL not in ["DEBUG", "INFO", "WARNING", "ERROR"]:
        errors.append(f"⚠️  无效的日志级别: {LOG_LEVEL}")

    return len(errors) == 0, errors


def print_config():
    """打印当前配置"""
    print("=" * 60)
    print("当前配置:")
    print("=" * 60)
    print(f"默认精度: {DEFAULT_PRECISION} 位 (上限 {MAX_PRECISION})")
    print(f"位向量上限: {mem_cap_from_env()} 位")
    print(f"最大模数: {QMAX}")
    print(f"等差数列最大公差: {AP_QMAX}")
    print(f"划分策略: {PARTITION_STRATEGY}")
    print(f"Zannier 搜索: 窗口 {ZANNIER_WINDOW}, |z| ≤ {ZANNIER_ZMAX}, 上限 {ZANNIER_CAP}")
    print(f"工作线程: {JOBS}")
    print(f"日志级别: {LOG_LEVEL}")
    print(f"报告目录: {REPORT_DIR}")
    print("=" * 60)


def mem_cap_from_env() -> int:
    """读取环境变量中的内存上限，没有设置时返回默认值"""
    raw = os.environ.get(MEM_CAP_ENV)
    if raw is None or raw.strip() == "":
        return MEM_CAP_BITS
    try:
        value = int(raw.strip())
    except ValueError:
        raise SpecValidationError(f"{MEM_CAP_ENV} 必须是整数, 当前值: {raw!r}")
    if value < 64:
        raise SpecValidationError(f"{MEM_CAP_ENV} 至少为 64, 当前值: {value}")
    return value


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


# ============================================
# 作业配置
# ============================================

class JobConfig(BaseModel):
    """一次命令行调用的完整配置"""

    command: str
    spec: Optional[dict] = None
    bound: int = 10 ** 6
    qmax: int = QMAX
    alphas: List[str] = Field(default_factory=list)
    precision: int = DEFAULT_PRECISION
    mem_cap: Optional[int] = None
    out: Optional[str] = None
    format: str = "json"
    jobs: int = JOBS
    options: dict = Field(default_factory=dict)

    @field_validator("command")
    @classmethod
    def _check_command(cls, v):
        if v not in VALID_COMMANDS:
            raise ValueError(f"unknown command {v!r}")
        return v

    @field_validator("bound")
    @classmethod
    def _check_bound(cls, v):
        if not 1 <= v <= ELEMENT_LIMIT:
            raise ValueError(f"bound must lie in [1, 2^63-1], got {v}")
        return v

    @field_validator("precision")
    @classmethod
    def _check_precision(cls, v):
        if not _is_power_of_two(v) or not MIN_PRECISION <= v <= MAX_PRECISION:
            raise ValueError(f"precision must be a power of two in [{MIN_PRECISION}, {MAX_PRECISION}], got {v}")
        return v

    @field_validator("qmax")
    @classmethod
    def _check_qmax(cls, v):
        if v < 2:
            raise ValueError("qmax must be at least 2")
        return v

    @field_validator("format")
    @classmethod
    def _check_format(cls, v):
        if v not in VALID_FORMATS:
            raise ValueError(f"format must be one of {VALID_FORMATS}, got {v!r}")
        return v

    @field_validator("jobs")
    @classmethod
    def _check_jobs(cls, v):
        if v < 1:
            raise ValueError("jobs must be at least 1")
        return v

    @field_validator("out")
    @classmethod
    def _check_out(cls, v):
        if v is None:
            return v
        parent = os.path.dirname(os.path.abspath(v)) or "."
        if os.path.exists(parent) and not os.access(parent, os.W_OK):
            raise ValueError(f"output directory is not writable: {parent}")
        return v

    def effective_mem_cap(self) -> int:
        """--mem-cap 优先，其次环境变量，最后默认值"""
        if self.mem_cap is not None:
            return self.mem_cap
        return mem_cap_from_env()

    def effective_alphas(self) -> List[str]:
        return list(self.alphas) if self.alphas else list(DEFAULT_ALPHAS)


def load_config_file(path: str) -> dict:
    """
    读取 JSON 配置文件

    Args:
        path: 文件路径

    Returns:
        配置字典(键与 JobConfig 字段一致)
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise SpecValidationError(f"无法读取配置文件 {path}: {e}")
    if not isinstance(data, dict):
        raise SpecValidationError(f"配置文件必须是 JSON 对象: {path}")
    return data


def build_job_config(flags: dict, file_values: Optional[dict] = None) -> JobConfig:
    """
    合并配置文件和命令行参数(命令行优先)

    Args:
        flags: 命令行中显式给出的参数(未给出的不要放进来)
        file_values: 配置文件内容
    """
    merged = dict(file_values or {})
    merged_options = dict(merged.pop("options", {}) or {})
    merged_options.update(flags.pop("options", {}) or {})
    merged.update(flags)
    merged["options"] = merged_options
    try:
        return JobConfig(**merged)
    except ValidationError as e:
        raise SpecValidationError(f"作业配置无效: {e}")


# ============================================
# 测试代码
# ============================================

if __name__ == "__main__":
    is_valid, errors = validate_config()
    if is_valid:
        print("✓ 配置验证通过!\n")
        print_config()
    else:
        print("✗ 配置验证失败:\n")
        for error in errors:
            print(f"  {error}")
