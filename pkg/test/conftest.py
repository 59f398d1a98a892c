#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
测试公共配置: 把项目根目录放进 sys.path，并提供常用的角度和集合
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from diophantine_lab import angle_make  # noqa: E402
from set_generators import GammaAB, enumerate_set  # noqa: E402


@pytest.fixture(scope="session")
def sqrt2():
    """frac(√2) = √2 − 1"""
    return angle_make("sqrt:2")


@pytest.fixture(scope="session")
def golden():
    """黄金分割共轭 [0; 1, 1, 1, …]"""
    return angle_make("cf:[0;1,...]")


@pytest.fixture(scope="session")
def gamma23():
    """Γ(2,3) ∩ [1, 10⁶]"""
    return enumerate_set(GammaAB(a=2, b=3), 10 ** 6)
