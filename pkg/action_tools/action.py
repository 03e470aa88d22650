# action_tools/action.py
"""
스틴로드 작용 구성과 공리 검증

from_generators 는 생성원 값을 Cartan 공식으로 전체 기저에 확장하고,
validate_action 은 P^0, 이중차수, 단위원, p 제곱 법칙, 불안정성, Cartan, Adem, β² 을 확인한다.
"""
import logging
from typing import Dict, List, Optional, Sequence

import numpy as np

from action_tools.base import PDRing, SteenrodAction, koszul_sign
from models.report import VerificationReport
from modules.exceptions import ActionTableError, ConfigurationError
from modules.linalg import fp_inverse, fp_rref
from steenrod_tools.adem import adem_reduce
from steenrod_tools.base import BETA, SteenrodElement
from steenrod_tools.words import bidegree_of, format_word, from_sq

logger = logging.getLogger(__name__)


def _cartan_values(ring: PDRing, max_index: int, x_values: Dict[int, np.ndarray],
                   y_values: Dict[int, np.ndarray], x_degree: int, x: np.ndarray, y: np.ndarray) -> Dict[int, np.ndarray]:
    """전체 P 는 곱셈적, β 는 부호 있는 미분"""
    values = {}
    for k in range(1, max_index + 1):
        total = ring.zero()
        for i in range(k + 1):
            left = x if i == 0 else x_values[i]
            right = y if i == k else y_values[k - i]
            total = total + ring.multiply(left, right)
        values[k] = total % ring.p
    sign = 1 if x_degree % 2 == 0 else -1
    values[BETA] = (ring.multiply(x_values[BETA], y) + sign * ring.multiply(x, y_values[BETA])) % ring.p
    return values


def _degree(ring: PDRing, x: np.ndarray) -> int:
    degrees = {b[0] for b in ring.support_bidegrees(x)}
    return degrees.pop() if len(degrees) == 1 else 0


def from_generators(ring: PDRing, values: Dict[str, Dict[int, Sequence[int]]]) -> SteenrodAction:
    """
    생성원 값으로부터 작용 테이블 구성

    Args:
        ring: 대상 환
        values: 생성원 이름 -> {BETA 또는 i >= 1: 상(image) 벡터}. 없는 값은 0.

    Raises:
        ActionTableError: 생성원이 환을 생성하지 않거나 값이 Cartan 확장과 모순될 때
    """
    p, n = ring.p, ring.rank
    max_index = (ring.top_bidegree[0] // (2 * (p - 1))) + 1
    letters = [BETA] + list(range(1, max_index + 1))

    def filled(table: Dict[int, Sequence[int]]) -> Dict[int, np.ndarray]:
        result = {letter: ring.zero() for letter in letters}
        for letter, vector in table.items():
            letter = int(letter)
            if letter > max_index:
                continue
            result[letter] = np.array(vector, dtype=np.int64) % p
        return result

    generators = []
    for label, table in values.items():
        if label not in ring.labels:
            raise ActionTableError(f"알 수 없는 생성원입니다: {label}", witness={"entry": label})
        generators.append((ring.basis_vector(label), filled(table)))

    unit = ring.unit_vector()
    items = [(unit, filled({}))]
    checks = list(items)
    spanned: List[List[int]] = [list(unit)]
    rank = 1
    queue = 0
    for g in generators:
        checks.append(g)
        if len(fp_rref(spanned + [list(g[0])], p, n)[1]) > rank:
            spanned.append(list(g[0]))
            rank += 1
            items.append(g)
    while queue < len(items):
        x, x_values = items[queue]
        queue += 1
        for g, g_values in generators:
            product = ring.multiply(x, g)
            product_values = _cartan_values(ring, max_index, x_values, g_values, _degree(ring, x), x, g)
            checks.append((product, product_values))
            if not product.any():
                continue
            if len(fp_rref(spanned + [list(product)], p, n)[1]) > rank:
                spanned.append(list(product))
                rank += 1
                items.append((product, product_values))
    if rank < n:
        raise ActionTableError(f"생성원이 환을 생성하지 않습니다 (랭크 {rank} < {n})",
                               witness={"entry": "generators", "rank": rank})

    columns = np.array([v for v, _ in items], dtype=np.int64).T
    inverse = fp_inverse(columns.tolist(), p)
    if inverse is None:
        raise ActionTableError("생성된 벡터가 기저를 이루지 않습니다", witness={"entry": "generators"})
    inverse = np.array(inverse, dtype=np.int64)
    tables = {}
    for letter in letters:
        images = np.array([vals[letter] for _, vals in items], dtype=np.int64).T
        tables[letter] = images.dot(inverse) % p

    for vector, vals in checks:
        for letter in letters:
            if not np.array_equal(tables[letter].dot(vector) % p, vals[letter] % p):
                raise ActionTableError(f"생성원 값이 Cartan 확장과 모순됩니다: {ring.format(vector)}",
                                       witness={"entry": ring.format(vector), "letter": letter})
    beta = tables.pop(BETA)
    logger.debug(f"{ring.name}: 생성원 {len(generators)}개로 작용 테이블 구성 (P^1..P^{max_index})")
    return SteenrodAction(ring, beta, tables)


def apply_operation(ring: PDRing, action: SteenrodAction, x: np.ndarray, element: SteenrodElement) -> np.ndarray:
    """
    스틴로드 원소를 환 원소에 적용 (K-점에서는 τ 항이 0 으로 작용)
    """
    if element.p != ring.p:
        raise ConfigurationError(f"소수가 다릅니다: 원소 p={element.p}, 환 p={ring.p}")
    result = ring.zero()
    for (word, tau), c in element.items():
        if tau:
            continue
        result = (result + c * action.apply_word(word, x)) % ring.p
    return result


def total_square_action(ring: PDRing, action: SteenrodAction, x: np.ndarray) -> np.ndarray:
    if ring.p != 2:
        raise ConfigurationError(f"전체 Sq 는 p = 2 에서만 정의됩니다: p={ring.p}")
    return action.total_square(x)


def einfty_edge_value(ring: PDRing, i: int, x: np.ndarray) -> Optional[np.ndarray]:
    """
    E∞ 연산 Pe^i 의 경계값: 2i = a 이면 x^p, 2i > a 이면 0, 나머지는 결정되지 않음 (None)
    """
    bidegrees = ring.support_bidegrees(x)
    if not bidegrees:
        return ring.zero()
    degrees = {a for a, _ in bidegrees}
    if len(degrees) != 1:
        raise ConfigurationError(f"동차 원소가 아닙니다: {ring.format(x)}")
    a = degrees.pop()
    if 2 * i > a:
        return ring.zero()
    if 2 * i == a:
        return ring.power(x, ring.p)
    return None


def _operator_bidegree(letter: int, p: int):
    return bidegree_of((letter,), p)


def _inadmissible_composites(p: int, top_degree: int) -> List[tuple]:
    """범위 안의 길이 2 (홀수 p 는 P^a β P^b 포함) 비허용 합성"""
    result = []
    if p == 2:
        for a in range(1, top_degree + 1):
            for b in range(1, top_degree + 1 - a):
                if a < 2 * b:
                    result.append(from_sq([a, b]))
        return result
    step = 2 * (p - 1)
    result.append((BETA, BETA))
    for a in range(1, top_degree // step + 1):
        for b in range(1, top_degree // step + 1):
            if (a + b) * step <= top_degree and a < p * b:
                result.append((a, b))
            if (a + b) * step + 1 <= top_degree and a <= p * b:
                result.append((a, BETA, b))
    return result


def validate_action(ring: PDRing, action: SteenrodAction) -> VerificationReport:
    """
    작용 테이블의 공리 검증

    Raises:
        ActionTableError: 환 구조 자체가 잘못되었을 때 (검증 이전 단계)
    """
    report = VerificationReport(name=f"validate_action {ring.name}".strip())
    try:
        ring.check()
        if action.ring.rank != ring.rank or action.p != ring.p:
            raise ActionTableError("작용 테이블이 다른 환에 대한 것입니다", witness={"entry": "ring"})
    except ActionTableError as e:
        logger.error(f"작용 검증 실패: {str(e)}")
        raise

    p, n = ring.p, ring.rank
    identity = np.eye(n, dtype=np.int64)
    basis = [ring.basis_vector(k) for k in range(n)]
    max_index = action.max_index
    letters = [BETA] + list(range(1, max_index + 1))

    if 0 in action.powers and not np.array_equal(action.powers[0], identity):
        for k in range(n):
            if not np.array_equal(action.powers[0][:, k], identity[:, k]):
                report.add("P^0 = id", element=ring.labels[k], value=ring.format(action.powers[0][:, k]))

    for letter in letters:
        shift = _operator_bidegree(letter, p)
        matrix = action.operator(letter)
        for k in range(n):
            a, b = ring.bidegrees[k]
            image = matrix[:, k]
            if image.any() and not ring.in_piece(image, (a + shift[0], b + shift[1])):
                report.add("bidegree", operation=format_word((letter,), p), element=ring.labels[k],
                           value=ring.format(image))

    unit = ring.unit_vector()
    for letter in letters:
        if action.apply(letter, unit).any():
            report.add("unit", operation=format_word((letter,), p), element=ring.labels[ring.unit_index])

    for k in range(n):
        a, b = ring.bidegrees[k]
        x = basis[k]
        if a % 2 == 0 and a == 2 * b and b >= 1:
            expected = ring.power(x, p)
            got = action.apply(b, x) if b <= max_index else ring.zero()
            if not np.array_equal(got, expected):
                report.add("p-th power law", operation=format_word((b,), p), element=ring.labels[k],
                           expected=ring.format(expected), value=ring.format(got))
        for i in range(1, max_index + 1):
            if 2 * i > a and i >= b and action.apply(i, x).any():
                report.add("instability", operation=format_word((i,), p), element=ring.labels[k],
                           value=ring.format(action.apply(i, x)))

    for j in range(n):
        for k in range(n):
            x, y = basis[j], basis[k]
            xy = ring.multiply(x, y)
            sign = koszul_sign(ring.bidegrees[j][0], 1)
            derivation = (ring.multiply(action.apply(BETA, x), y) + sign * ring.multiply(x, action.apply(BETA, y))) % p
            if not np.array_equal(action.apply(BETA, xy), derivation):
                report.add("Cartan", operation=format_word((BETA,), p), left=ring.labels[j], right=ring.labels[k])
            for m in range(1, max_index + 1):
                expected = ring.zero()
                for i in range(m + 1):
                    left = x if i == 0 else action.apply(i, x)
                    right = y if i == m else action.apply(m - i, y)
                    expected = (expected + ring.multiply(left, right)) % p
                if not np.array_equal(action.apply(m, xy), expected):
                    report.add("Cartan", operation=format_word((m,), p), left=ring.labels[j], right=ring.labels[k])

    for word in _inadmissible_composites(p, ring.top_bidegree[0]):
        relation = adem_reduce(word, p, "k")
        for k in range(n):
            lhs = action.apply_word(word, basis[k])
            rhs = apply_operation(ring, action, basis[k], relation)
            if not np.array_equal(lhs, rhs):
                axiom = "beta squared" if word == (BETA, BETA) else "Adem"
                report.add(axiom, operation=format_word(word, p), element=ring.labels[k],
                           expected=ring.format(rhs), value=ring.format(lhs))

    report.details = {"rank": n, "max_index": max_index, "violations": len(report.violations)}
    if report.passed:
        logger.info(f"{report.name}: 모든 공리 통과")
    else:
        logger.warning(f"{report.name}: 위반 {len(report.violations)}건")
    return report
