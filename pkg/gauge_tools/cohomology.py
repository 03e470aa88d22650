# gauge_tools/cohomology.py
"""
k = F_p 위 게이지의 대역 단면 (mod p)

가중치 0 에서 x ↦ loc_u(x) − F(loc_t(x)) 인 F_p-선형사상
M_0/p → M[1/u]_0/p 의 핵과 여핵을 H⁰, H¹ 로 둔다.
"""
import logging
from typing import List, NamedTuple

import numpy as np

from gauge_tools.base import FGauge
from modules.exceptions import UnsupportedConfigurationError
from modules.linalg import Subquotient, fp_rank, lattice_sum

logger = logging.getLogger(__name__)


class GlobalSections(NamedTuple):
    h0: int
    h1: int
    matrix: List[List[int]]


def _localize_u(vector: np.ndarray, p: int, hi: int) -> np.ndarray:
    """가중치 0 원소를 가중치 hi 로 (hi < 0 이면 나누어떨어지는 나눗셈)"""
    if hi >= 0:
        return vector * p ** hi
    return np.array([int(x) // p ** (-hi) for x in vector], dtype=object)


def global_sections(X: FGauge) -> GlobalSections:
    """
    Raises:
        UnsupportedConfigurationError: k ≠ F_p (f > 1)
    """
    if X.witt.f != 1:
        raise UnsupportedConfigurationError(f"대역 단면은 k = F_p 에서만 계산합니다: f = {X.witt.f}",
                                            witness={"f": X.witt.f})
    module, p = X.module, X.p
    hi = module.hi
    L0, L_hi = module.lattice(0), module.lattice(hi)
    source = Subquotient(L0, lattice_sum(module.sublattice(0), L0 * p))
    target = Subquotient(L_hi, lattice_sum(module.sublattice(hi), L_hi * p))

    columns = []
    for j in range(len(source.moduli)):
        x = source.generators[:, j]
        difference = _localize_u(x, p, hi) - X.gluing.dot(x)
        columns.append(list(target.coordinates(difference)))
    rows = [[columns[j][i] for j in range(len(columns))] for i in range(len(target.moduli))]
    rank = fp_rank(rows, p, len(columns))
    h0, h1 = len(columns) - rank, len(target.moduli) - rank
    logger.debug(f"{X.name} 대역 단면: H⁰ = {h0}, H¹ = {h1}")
    return GlobalSections(h0, h1, rows)
