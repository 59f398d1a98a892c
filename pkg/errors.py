#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
异常定义
各模块共用，命令行根据异常类型决定退出码
"""

from typing import Optional


class SumsetLabError(Exception):
    """所有 sumsetlab 异常的基类"""


class SpecValidationError(SumsetLabError, ValueError):
    """集合描述、参数或配置无效"""


class ResourceLimitError(SumsetLabError):
    """超出内存上限或搜索上限"""

    def __init__(self, message: str, required_bytes: Optional[int] = None):
        super().__init__(message)
        self.required_bytes = required_bytes


class PrecisionBudgetError(SumsetLabError):
    """定点数误差预算不足"""

    def __init__(self, message: str, required_bits: Optional[int] = None):
        super().__init__(message)
        self.required_bits = required_bits


class PreconditionError(SumsetLabError):
    """数学前提不成立(例如有理角度)"""


class ConstructionError(SumsetLabError):
    """构造无法满足预算"""

    def __init__(self, message: str, hint: Optional[str] = None):
        super().__init__(message)
        self.hint = hint
