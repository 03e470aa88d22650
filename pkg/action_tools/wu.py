# action_tools/wu.py
"""쌍대성으로 정의한 Wu 류: ∫Sq^i(α) = ∫(v_i·α)"""
import logging
from typing import List

import numpy as np

from action_tools.base import PDRing, SteenrodAction
from models.report import VerificationReport
from modules.exceptions import ConfigurationError, DualityFailureError
from modules.linalg import fp_inverse

logger = logging.getLogger(__name__)


def wu_class(ring: PDRing, action: SteenrodAction, i: int) -> np.ndarray:
    """
    v_i ∈ H^{i, ⌊i/2⌋}

    Raises:
        DualityFailureError: 상보 이중차수와의 쌍짓기 행렬이 가역이 아닐 때
    """
    if ring.p != 2:
        raise ConfigurationError(f"Wu 류는 p = 2 에서만 계산합니다: p={ring.p}")
    piece = ring.piece((i, i // 2))
    if not piece:
        return ring.zero()
    top_degree, top_weight = ring.top_bidegree
    complement = ring.piece((top_degree - i, top_weight - i // 2))
    matrix = [[ring.integrate(ring.multiply(ring.basis_vector(k), ring.basis_vector(j))) for k in piece]
              for j in complement]
    inverse = fp_inverse(matrix, 2) if len(piece) == len(complement) else None
    if inverse is None:
        raise DualityFailureError(f"H^{{{i},{i // 2}}} 의 쌍짓기 행렬이 가역이 아닙니다",
                                  witness={"bidegree": [i, i // 2], "matrix": matrix})
    rhs = [ring.integrate(action.sq(i, ring.basis_vector(j))) for j in complement]
    solution = np.array(inverse, dtype=np.int64).dot(np.array(rhs, dtype=np.int64)) % 2
    v = ring.zero()
    for coefficient, k in zip(solution, piece):
        v[k] = coefficient
    return v


def wu_classes(ring: PDRing, action: SteenrodAction) -> List[np.ndarray]:
    """v_0 … v_{2d+1} (d 보다 큰 차수에서는 0)"""
    try:
        classes = [wu_class(ring, action, i) for i in range(ring.top_bidegree[0] + 1)]
    except DualityFailureError as e:
        logger.error(f"Wu 류 계산 실패: {str(e)}")
        raise
    logger.debug(f"{ring.name}: Wu 류 {[ring.format(v) for v in classes]}")
    return classes


def total_wu_class(ring: PDRing, action: SteenrodAction) -> np.ndarray:
    total = ring.zero()
    for v in wu_classes(ring, action):
        total = (total + v) % 2
    return total


def verify_wu_duality(ring: PDRing, action: SteenrodAction) -> VerificationReport:
    """모든 i 와 기저 α 에 대해 ∫Sq^i(α) = ∫(v_i·α)"""
    report = VerificationReport(name=f"wu duality {ring.name}".strip())
    classes = wu_classes(ring, action)
    for i, v in enumerate(classes):
        for k in range(ring.rank):
            alpha = ring.basis_vector(k)
            lhs = ring.integrate(action.sq(i, alpha))
            rhs = ring.integrate(ring.multiply(v, alpha))
            if lhs != rhs:
                report.add("Wu duality", i=i, element=ring.labels[k], expected=lhs, value=rhs)
    report.details = {"wu": [ring.format(v) for v in classes]}
    return report
