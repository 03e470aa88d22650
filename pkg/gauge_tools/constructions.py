# gauge_tools/constructions.py
"""필트레이션의 리스 구성과 기본 게이지: 구조 게이지 O, 마천루 δ, 초특이 H"""
import logging
from typing import Sequence

import numpy as np

from gauge_tools.base import BKTwist, FGauge, GradedUTModule
from gauge_tools.witt import WittRing
from modules.exceptions import GaugeStructureError
from modules.linalg import identity, int_matrix

logger = logging.getLogger(__name__)


def uniformizer(p: int) -> np.ndarray:
    """ϖ·e1 = p·e2, ϖ·e2 = e1 (ϖ² = p)"""
    return int_matrix([[0, 1], [p, 0]])


def rees_of_filtration(p: int, filtration: Sequence, rank: int, name: str = "") -> GradedUTModule:
    """
    Fil^0 = Z^r ⊇ Fil^1 ⊇ … ⊇ Fil^N 의 리스 가군

    M_n = Fil^n, t 는 포함, u 는 p 배이다. n ≤ 0 에서는 Fil^n = Z^r,
    n > N 에서는 Fil^n = p^{n−N}·Fil^N 으로 안정화한다.

    Args:
        p: 소수
        filtration: Fil^1, …, Fil^N 의 기저 (열벡터)
        rank: 주변 계수 r

    Raises:
        GaugeStructureError: Fil^n ⊇ Fil^{n+1} ⊇ p·Fil^n 이 깨질 때 (witness 에 가중치)
    """
    lattices = {0: identity(rank)}
    for n, lattice in enumerate(filtration, start=1):
        lattices[n] = lattice
    try:
        return GradedUTModule(p, rank, lattices, name=name)
    except GaugeStructureError as e:
        logger.error(f"리스 구성 {name} 실패: {str(e)}")
        raise


def constant_module(p: int, lattice, name: str = "") -> GradedUTModule:
    """모든 가중치 ≤ 0 에서 주어진 격자, 그 위로는 p 배 (격자 ⊗ O)"""
    lattice = int_matrix(lattice)
    return GradedUTModule(p, lattice.shape[0], {0: lattice}, name=name)


def structure_gauge(witt: WittRing, name: str = "O") -> FGauge:
    """자명한 필트레이션의 W(k), 붙임 1"""
    return FGauge(rees_of_filtration(witt.p, [], 1, name=name), [[1]], witt, name=name)


def bk_twist(X: FGauge, n: int) -> FGauge:
    return BKTwist(n=n).apply(X)


def skyscraper(witt: WittRing, twist: int = 0) -> FGauge:
    """
    δ{twist}: 가중치 −twist 에만 k 가 놓이고 u = t = 0

    꼬임 전 δ 는 창 [−1, 1] 에서 L = (Z, Z, pZ), L' = (Z, pZ, pZ) 이다.
    """
    p = witt.p
    module = GradedUTModule(p, 1, {-1: [[1]], 0: [[1]], 1: [[p]]}, {-1: [[1]], 0: [[p]], 1: [[p]]}, name="δ")
    delta = FGauge(module, [[p]], witt, name="δ")
    return delta.twist(twist) if twist else delta


def supersingular_h(witt: WittRing, name: str = "H") -> FGauge:
    """
    계수 2 의 H: Fil^n = ϖ·p^{n−1}·H (n ≥ 1), 붙임 ϖ

    t 는 가중치 ≤ 0 에서, u 는 가중치 1 이상에서 동형이다.
    """
    p = witt.p
    varpi = uniformizer(p)
    module = rees_of_filtration(p, [varpi], 2, name=name)
    return FGauge(module, varpi, witt, name=name)
