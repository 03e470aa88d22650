# charclass_tools/verify.py
"""Wu 정리 w(T) = Sq(v) 와 SW 위 Sq 표 검증"""
import itertools
import logging
from typing import List

import numpy as np

from action_tools.action import validate_action
from action_tools.wu import wu_classes
from charclass_tools.base import SWPolynomial
from charclass_tools.models import CharacteristicModel, evaluate_sw
from charclass_tools.squares import sq_on_sw, wu_formula
from charclass_tools.wu import wu_from_sw
from models.report import VerificationReport

logger = logging.getLogger(__name__)


def verify_wu_theorem(model: CharacteristicModel) -> VerificationReport:
    """
    쌍대성으로 구한 v 에 전체 Sq 를 적용해 w(T) 와 비교하고,
    wu_from_sw 를 접다발 류에 대입한 값과도 비교한다
    """
    ring, action = model.ring, model.action
    report = VerificationReport(name=f"wu theorem {model.name}".strip())
    axioms = validate_action(ring, action)
    if not axioms.passed:
        report.merge(axioms)
        return report

    classes = wu_classes(ring, action)
    total_v = ring.zero()
    for v in classes:
        total_v = (total_v + v) % 2
    sq_v = action.total_square(total_v)
    w = model.total_tangent()
    if not np.array_equal(sq_v, w):
        report.add("Wu theorem", expected=ring.format(w), value=ring.format(sq_v))

    symbolic = wu_from_sw(ring.top_bidegree[0])
    for j, (v, formula) in enumerate(zip(classes, symbolic)):
        evaluated = evaluate_sw(formula, ring, model.tangent)
        if not np.array_equal(evaluated, v):
            report.add("Wu routes", degree=j, duality=ring.format(v), formula=repr(formula),
                       evaluated=ring.format(evaluated))

    report.details = {
        "v": [ring.format(v) for v in classes],
        "Sq(v)": ring.format(sq_v),
        "w": ring.format(w),
    }
    logger.info(f"{report.name}: {'통과' if report.passed else '실패'}")
    return report


def _monomials(degree: int) -> List[SWPolynomial]:
    """차수 degree 의 짝수 w 단항식 전체"""
    result = []
    parts = range(2, degree + 1, 2)

    def grow(remaining: int, smallest: int, current: List[int]) -> None:
        if remaining == 0:
            term = SWPolynomial.one()
            for index in current:
                term = term * SWPolynomial.variable(index)
            result.append(term)
            return
        for index in parts:
            if smallest <= index <= remaining:
                grow(remaining - index, index, current + [index])

    grow(degree, 2, [])
    return result


def verify_sq_on_sw(degree_bound: int) -> VerificationReport:
    """생성원 위에서 Wu 공식과 비교하고, 단항식 쌍에서 Cartan 공식을 확인"""
    report = VerificationReport(name=f"sq on sw (deg <= {degree_bound})")
    for index in range(2, degree_bound + 1, 2):
        for i in range(0, index // 2 + 1):
            if index + 2 * i > degree_bound:
                break
            got = sq_on_sw(2 * i, SWPolynomial.variable(index))
            expected = wu_formula(i, index)
            if got != expected:
                report.add("Wu formula", operation=f"Sq{2 * i}", generator=f"w{index}",
                           expected=repr(expected), value=repr(got))
    for d1, d2 in itertools.combinations_with_replacement(range(2, degree_bound // 2 + 1, 2), 2):
        for m1, m2 in itertools.product(_monomials(d1), _monomials(d2)):
            product = m1 * m2
            for k in range(0, d1 + d2 + 1, 2):
                if d1 + d2 + k > degree_bound:
                    break
                cartan = sum((sq_on_sw(i, m1) * sq_on_sw(k - i, m2) for i in range(0, k + 1, 2)),
                             SWPolynomial.zero())
                if sq_on_sw(k, product) != cartan:
                    report.add("Cartan", operation=f"Sq{k}", left=repr(m1), right=repr(m2))
    return report
