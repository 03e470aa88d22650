# action_tools/pairing.py
"""
유한 수준 쌍짓기 ⟨u, v⟩_n = ∫(u·β_n v) 와 최고 차수 공식 검증

dim = 2d 인 인스턴스에서 u, v ∈ H^{2d,d} 이고, u·β_n u = [2^{n-1}] Pe^d(β_n(u)‾) 를 확인한다.
"""
import itertools
import logging
from typing import Dict, List

import numpy as np

from action_tools.base import PDRingModN, koszul_sign
from action_tools.wu import wu_class
from models.report import VerificationReport
from modules.exceptions import ArgumentError, ConfigurationError

logger = logging.getLogger(__name__)


def middle_bidegree(ring: PDRingModN):
    if ring.dim % 2:
        raise ArgumentError(f"쌍짓기는 짝수 차원에서만 정의됩니다: dim={ring.dim}", witness={"dim": ring.dim})
    return ring.dim, ring.dim // 2


def _check_middle(ring: PDRingModN, *vectors: np.ndarray) -> None:
    bidegree = middle_bidegree(ring)
    for x in vectors:
        if len(x) != ring.rank or not ring.in_piece(x, bidegree):
            raise ArgumentError(f"인자가 이중차수 {bidegree} 에 있지 않습니다: {ring.format(np.array(x) % ring.modulus)}",
                                witness={"bidegree": list(bidegree)})


def pairing_n(ring: PDRingModN, u, v) -> int:
    u = np.array(u, dtype=np.int64) % ring.modulus
    v = np.array(v, dtype=np.int64) % ring.modulus
    _check_middle(ring, u, v)
    return ring.integrate(ring.multiply(u, ring.beta_n(v)))


def pairing_matrix_n(ring: PDRingModN) -> List[List[int]]:
    piece = ring.piece(middle_bidegree(ring))
    return [[pairing_n(ring, ring.basis_vector(i), ring.basis_vector(j)) for j in piece] for i in piece]


def middle_elements(ring: PDRingModN):
    """H^{2d,d}(Z/2^n) 의 모든 원소"""
    piece = ring.piece(middle_bidegree(ring))
    for coefficients in itertools.product(range(ring.modulus), repeat=len(piece)):
        u = ring.zero()
        for c, k in zip(coefficients, piece):
            u[k] = c
        yield u


def validate_mod_n(ring: PDRingModN) -> VerificationReport:
    """β_n² = 0, 이중차수, 미분 규칙, 최고 조각 소멸, 쌍짓기 반대칭"""
    report = VerificationReport(name=f"validate_mod_n {ring.name}".strip())
    N, n = ring.modulus, ring.rank
    square = ring.bockstein.dot(ring.bockstein) % N
    for k in zip(*np.nonzero(square)):
        report.add("beta_n squared", element=ring.labels[int(k[1])])
    for k in range(n):
        image = ring.beta_n(ring.basis_vector(k))
        a, b = ring.bidegrees[k]
        if image.any() and not ring.in_piece(image, (a + 1, b)):
            report.add("bidegree", element=ring.labels[k], value=ring.format(image))
    for i in range(n):
        for j in range(n):
            x, y = ring.basis_vector(i), ring.basis_vector(j)
            lhs = ring.beta_n(ring.multiply(x, y))
            sign = koszul_sign(ring.bidegrees[i][0], 1)
            rhs = (ring.multiply(ring.beta_n(x), y) + sign * ring.multiply(x, ring.beta_n(y))) % N
            if not np.array_equal(lhs, rhs):
                report.add("derivation", left=ring.labels[i], right=ring.labels[j])
    if ring.dim % 2 == 0:
        below_top = (ring.top_bidegree[0] - 1, ring.top_bidegree[1])
        for k in ring.piece(below_top):
            if ring.beta_n(ring.basis_vector(k)).any():
                report.add("top boundary", element=ring.labels[k])
        matrix = pairing_matrix_n(ring)
        for i, row in enumerate(matrix):
            for j, value in enumerate(row):
                if (value + matrix[j][i]) % N:
                    report.add("skew-symmetry", left=i, right=j, value=value, transposed=matrix[j][i])
        report.details["pairing"] = matrix
    return report


def _require_action(ring: PDRingModN):
    action = ring.action()
    if action is None:
        raise ConfigurationError(f"{ring.name}: mod 2 작용 테이블이 없어 [2^(n-1)] Pe^d 를 계산할 수 없습니다")
    return action


def top_formula_sides(ring: PDRingModN, u: np.ndarray):
    """(u·β_n u, [2^{n-1}] P^d(β_n(u)‾))"""
    action = _require_action(ring)
    d = ring.dim // 2
    beta_u = ring.beta_n(u)
    lhs = ring.multiply(u, beta_u)
    rhs = ring.lift_half(action.power(d).dot(ring.reduce(beta_u)) % 2)
    return lhs, rhs


def verify_top_formula(ring: PDRingModN, u=None) -> VerificationReport:
    """
    u·β_n(u) = [2^{n-1}]∘Pe^d(β_n(u)‾) 검증 (u 가 없으면 H^{2d,d} 전체)

    Raises:
        ConfigurationError: mod 2 작용이 없을 때
    """
    _require_action(ring)
    report = VerificationReport(name=f"verify_top_formula {ring.name}".strip())
    if u is None:
        candidates = list(middle_elements(ring))
    else:
        u = np.array(u, dtype=np.int64) % ring.modulus
        _check_middle(ring, u)
        candidates = [u]
    for x in candidates:
        lhs, rhs = top_formula_sides(ring, x)
        if not np.array_equal(lhs, rhs):
            report.add("top formula", u=ring.format(x), lhs=ring.format(lhs), rhs=ring.format(rhs))
    report.details = {"checked": len(candidates), "level": ring.level}
    if not report.passed:
        logger.warning(f"{report.name}: 위반 {len(report.violations)}건")
    return report


def reduction_chain_steps(ring: PDRingModN, u) -> VerificationReport:
    """
    u·β_n u = 0 에 이르는 단계별 값

    1. u·β_n u
    2. [2^{n-1}] Pe^d(β̄)
    3. [2^{n-1}] Sq^{2d}(β̄)
    4. [2^{n-1}] (v_{2d}·β̄)
    5. ([2^{n-1}]v)·β_n u
    6. β_n(([2^{n-1}]v)·u) − β_n([2^{n-1}]v)·u
    7. −β_n([2^{n-1}]v)·u
    각 단계가 이전 단계와 같아야 하며 마지막으로 β_n([2^{n-1}]v) = 0 을 확인한다.
    """
    action = _require_action(ring)
    u = np.array(u, dtype=np.int64) % ring.modulus
    _check_middle(ring, u)
    d = ring.dim // 2
    N = ring.modulus
    reduction = ring.reduction()

    beta_u = ring.beta_n(u)
    beta_bar = ring.reduce(beta_u)
    v = wu_class(reduction, action, 2 * d)
    half_v = ring.lift_half(v)
    beta_half_v = ring.beta_n(half_v)

    steps: List[Dict] = []

    def record(name: str, value: np.ndarray) -> None:
        steps.append({"step": name, "value": ring.format(value % N), "vector": (value % N).tolist()})

    record("u·β_n u", ring.multiply(u, beta_u))
    record("[2^(n-1)] Pe^d(β̄)", ring.lift_half(action.power(d).dot(beta_bar) % 2))
    record("[2^(n-1)] Sq^2d(β̄)", ring.lift_half(action.sq(2 * d, beta_bar)))
    record("[2^(n-1)] (v_2d·β̄)", ring.lift_half(reduction.multiply(v, beta_bar)))
    record("([2^(n-1)]v)·β_n u", ring.multiply(half_v, beta_u))
    record("β_n(([2^(n-1)]v)·u) − β_n([2^(n-1)]v)·u",
           ring.beta_n(ring.multiply(half_v, u)) - ring.multiply(beta_half_v, u))
    record("−β_n([2^(n-1)]v)·u", -ring.multiply(beta_half_v, u))

    report = VerificationReport(name=f"reduction_chain {ring.name}".strip())
    for previous, current in zip(steps, steps[1:]):
        if previous["vector"] != current["vector"]:
            report.add("chain step", before=previous["step"], after=current["step"],
                       left=previous["value"], right=current["value"])
    if beta_half_v.any():
        report.add("β_n([2^(n-1)]v) = 0", value=ring.format(beta_half_v))
    report.details = {"u": ring.format(u), "wu": reduction.format(v),
                      "steps": [{"step": s["step"], "value": s["value"]} for s in steps]}
    return report


def verify_alternating(ring: PDRingModN) -> VerificationReport:
    """모든 u ∈ H^{2d,d} 에 대해 ⟨u, u⟩_n = 0"""
    report = VerificationReport(name=f"alternating {ring.name}".strip())
    for u in middle_elements(ring):
        value = pairing_n(ring, u, u)
        if value:
            report.add("alternating", u=ring.format(u), value=value)
    return report
