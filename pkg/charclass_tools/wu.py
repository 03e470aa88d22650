# charclass_tools/wu.py
"""w = Sq(v) 의 차수별 역산: v_j = w_j − Σ_{i≥1} Sq^i(v_{j−i})"""
import logging
from typing import List, Optional

from charclass_tools.base import SWPolynomial
from charclass_tools.squares import sq_on_sw, total_sq

logger = logging.getLogger(__name__)


def wu_from_sw(degree_bound: int, total: Optional[SWPolynomial] = None) -> List[SWPolynomial]:
    """
    v_0 … v_N

    Args:
        degree_bound: N
        total: 전체 SW 류 (없으면 일반 w = 1 + w_2 + w_4 + …)
    """
    if total is None:
        total = SWPolynomial.one()
        for j in range(2, degree_bound + 1, 2):
            total = total + SWPolynomial.variable(j)
    classes: List[SWPolynomial] = []
    for j in range(degree_bound + 1):
        v = total.degree_part(j)
        for i in range(1, j + 1):
            v = v - sq_on_sw(i, classes[j - i])
        classes.append(v)
    logger.debug(f"wu_from_sw({degree_bound}): {[repr(v) for v in classes]}")
    return classes


def total_wu(classes: List[SWPolynomial]) -> SWPolynomial:
    return sum(classes, SWPolynomial.zero())


def check_round_trip(degree_bound: int) -> bool:
    """Sq(v) 가 w 급수를 차수 N 까지 복원하는지"""
    classes = wu_from_sw(degree_bound)
    recovered = SWPolynomial.zero()
    for v in classes:
        recovered = recovered + total_sq(v, degree_bound)
    expected = SWPolynomial.one()
    for j in range(2, degree_bound + 1, 2):
        expected = expected + SWPolynomial.variable(j)
    truncated = sum((recovered.degree_part(d) for d in range(degree_bound + 1)), SWPolynomial.zero())
    return truncated == expected
