# bockstein_tools/verify.py
"""
사슬 수준 복슈타인 항등식 검증

- verify_mat_form_general: β_n^{(2)}(2^{n−1}u²) ≡ u·β_n(u) − [2^{n−1}]Pe^a(β_n(u)‾) (mod im β_n)
- compare_bocksteins: β_n([2^{n−1}]v) = β_{2,2^n}(v)
- reduction_chain: 내보낸 인스턴스 위에서 ⟨u, u⟩_n = 0 에 이르는 단계 전체
"""
import logging
from typing import Optional

import numpy as np

from action_tools.pairing import (middle_bidegree, middle_elements, reduction_chain_steps, validate_mod_n,
                                  verify_alternating, verify_top_formula)
from action_tools.wu import wu_class
from bockstein_tools.complexes import (GradedComplex, ModnClass, bockstein_image, bockstein_n, check_chain_map,
                                       cohomology, connecting_map, difference, is_trivial, push_class,
                                       secondary_bockstein)
from bockstein_tools.dga import CommutativeDGA, power_operation
from bockstein_tools.equivariant import classifying_map, total_power, universal_classes
from bockstein_tools.export import export_with_representatives
from models.report import VerificationReport
from modules.exceptions import ArgumentError, BocksteinObstructionError

logger = logging.getLogger(__name__)


def _same_class(x: ModnClass, y: ModnClass, modulo=()) -> bool:
    if not x.complex.piece(x.bidegree):
        return True
    return is_trivial(difference(x, y), modulo)


def mat_form_sides(algebra: CommutativeDGA, u: ModnClass, n: int):
    """
    Returns:
        (s = 2^{n−1}u², β_n^{(2)}(s), u·β_n(u) − [2^{n−1}]Pe^a(β̄))
    """
    N, half = 2 ** n, 2 ** (n - 1)
    degree, weight = u.bidegree
    if degree % 2:
        raise ArgumentError(f"u 는 짝수 차수여야 합니다: {u.bidegree}", witness={"bidegree": list(u.bidegree)})
    a = degree // 2
    square = algebra.multiply(u.representative, u.representative)
    s = ModnClass(algebra, N, (2 * degree, 2 * weight), np.array([(half * c) % N for c in square], dtype=object))
    beta = bockstein_n(n, u)
    pe = power_operation(algebra, beta, a)
    product = algebra.multiply(u.representative, beta.representative)
    expected = np.array([(x - half * y) % N for x, y in zip(product, pe.representative)], dtype=object)
    rhs = ModnClass(algebra, N, (2 * degree + 1, 2 * weight), expected)
    return s, secondary_bockstein(n, s), rhs


def verify_mat_form_general(algebra: CommutativeDGA, u: ModnClass, n: int,
                            truncation: Optional[int] = None) -> VerificationReport:
    """
    짝수 차수 u ∈ H^{2a,b}(A/2^n) 에 대한 일반 MAT 형식

    보편 모델 M_{a+1,b} 의 동변 제곱 위에서 같은 항등식과 ψ_u 에 의한 상도 함께 확인한다.

    Raises:
        ArgumentError: u 가 홀수 차수이거나 Z/2^n 계수가 아닐 때
    """
    if u.modulus != 2 ** n:
        raise ArgumentError(f"u 는 Z/{2 ** n} 계수여야 합니다: modulus={u.modulus}")
    report = VerificationReport(name=f"mat_form {algebra.name} u={u.format()}")
    N, half = 2 ** n, 2 ** (n - 1)
    degree, weight = u.bidegree

    try:
        s, secondary, rhs = mat_form_sides(algebra, u, n)
    except BocksteinObstructionError as e:
        report.add("beta_n(2^(n-1)u^2) = 0", u=u.format(), error=str(e))
        return report
    image = bockstein_image(algebra, n, rhs.bidegree)
    if not _same_class(secondary, rhs, image):
        report.add("secondary Bockstein", u=u.format(), lhs=secondary.format(), rhs=rhs.format())

    a = degree // 2
    square, s_universal, expected = universal_classes(degree, weight, n, truncation)
    s_class = ModnClass(square, N, square.bidegree_of(s_universal), s_universal % N)
    if not is_trivial(bockstein_n(n, s_class)):
        report.add("beta_n(2^(n-1)x^2) = 0", square=square.name)
    else:
        universal = secondary_bockstein(n, s_class)
        target = ModnClass(square, N, universal.bidegree, expected % N)
        if not _same_class(universal, target, bockstein_image(square, n, universal.bidegree)):
            report.add("universal secondary Bockstein", square=square.name,
                       lhs=universal.format(), rhs=target.format())

    model, phi = classifying_map(algebra, u, n)
    square, psi = total_power(phi, model, algebra, truncation)
    beta = bockstein_n(n, u)
    xy = push_class(psi, algebra, ModnClass(square, N, rhs.bidegree, square.element(0, "x", "y")))
    u_beta = ModnClass(algebra, N, rhs.bidegree,
                       np.array([c % N for c in algebra.multiply(u.representative, beta.representative)], dtype=object))
    if not _same_class(xy, u_beta):
        report.add("psi(e0 x y) = u·beta_n(u)", lhs=xy.format(), rhs=u_beta.format())
    yy = np.array([c % 2 for c in psi.dot(square.element(1, "y", "y"))], dtype=object)
    pe = power_operation(algebra, beta, a)
    if not np.array_equal(yy % 2, pe.representative % 2):
        report.add("psi(e1 y y) = Pe^a(beta)", lhs=algebra.format(yy, 2), rhs=pe.format())

    report.details = {"u": u.format(), "beta_n(u)": beta.format(), "s": s.format(),
                      "secondary": secondary.format(), "rhs": rhs.format(), "half": half}
    if not report.passed:
        logger.warning(f"{report.name}: 위반 {len(report.violations)}건")
    return report


def verify_mat_form_all(algebra: CommutativeDGA, n: int, truncation: Optional[int] = None) -> VerificationReport:
    """짝수 차수 mod 2^n 코호몰로지의 모든 생성원과 그 합에 대해 verify_mat_form_general"""
    report = VerificationReport(name=f"mat_form {algebra.name} n={n}")
    checked = 0
    for bidegree, group in sorted(cohomology(algebra, 2 ** n).items()):
        if bidegree[0] % 2:
            continue
        generators = group.generators()
        candidates = list(generators)
        if len(generators) > 1:
            candidates.append(sum(generators[1:], generators[0]))
        for g in candidates:
            u = ModnClass(algebra, 2 ** n, bidegree, np.array([c % 2 ** n for c in g], dtype=object))
            report.merge(verify_mat_form_general(algebra, u, n, truncation))
            checked += 1
    report.details["checked"] = checked
    return report


def compare_bocksteins(v: ModnClass, n: int) -> VerificationReport:
    """β_n([2^{n−1}]v) 와 0 → Z/2^n → Z/2^{n+1} → Z/2 → 0 의 연결 사상 β_{2,2^n}(v) 비교"""
    if v.modulus != 2:
        raise ArgumentError(f"v 는 Z/2 계수여야 합니다: modulus={v.modulus}")
    N, half = 2 ** n, 2 ** (n - 1)
    report = VerificationReport(name=f"compare_bocksteins {v.complex.name} n={n}")
    lifted = ModnClass(v.complex, N, v.bidegree, np.array([(half * c) % N for c in v.representative], dtype=object))
    lhs = bockstein_n(n, lifted)
    rhs = connecting_map(v, N, 2)
    if not _same_class(lhs, rhs):
        report.add("bocksteins equal", v=v.format(), lhs=lhs.format(), rhs=rhs.format())
    report.details = {"v": v.format(), "beta_n": lhs.format(), "beta_2_2n": rhs.format(),
                      "trivial": is_trivial(rhs)}
    return report


def verify_naturality(matrix, source: GradedComplex, target: GradedComplex, n: int) -> VerificationReport:
    """사슬사상 f 에 대해 β_n(f_*u) = f_*β_n(u) (u 는 H(source/2^n) 의 생성원)"""
    f = check_chain_map(matrix, source, target)
    report = VerificationReport(name=f"naturality {source.name} -> {target.name}")
    N = 2 ** n
    for bidegree, group in sorted(cohomology(source, N).items()):
        for g in group.generators():
            u = ModnClass(source, N, bidegree, np.array([c % N for c in g], dtype=object))
            lhs = bockstein_n(n, push_class(f, target, u))
            rhs = push_class(f, target, bockstein_n(n, u))
            if not _same_class(lhs, rhs):
                report.add("naturality", u=u.format(), lhs=lhs.format(), rhs=rhs.format())
    return report


def reduction_chain(algebra: CommutativeDGA, n: int) -> VerificationReport:
    """
    내보낸 인스턴스에서 MAT 형식, 단계별 환원, 복슈타인 비교, 교대성을 모두 확인

    Raises:
        ExportError: 인스턴스를 내보낼 수 없을 때
    """
    exported = export_with_representatives(algebra, n)
    ring = exported.ring
    report = VerificationReport(name=f"reduction_chain {algebra.name} n={n}")
    report.merge(validate_mod_n(ring))
    report.merge(verify_top_formula(ring))
    for u in middle_elements(ring):
        steps = reduction_chain_steps(ring, u)
        for violation in steps.violations:
            report.add(violation.axiom, **violation.witness)

    reduction = ring.reduction()
    v = wu_class(reduction, ring.action(), ring.dim)
    chain_v = algebra.zero()
    for k, c in enumerate(v):
        if c % 2:
            chain_v = chain_v + exported.representatives[ring.labels[k]]
    bidegree = middle_bidegree(ring)
    wu = ModnClass(algebra, 2, bidegree, np.array([c % 2 for c in chain_v], dtype=object))
    comparison = compare_bocksteins(wu, n)
    report.merge(comparison)
    if not comparison.details["trivial"]:
        report.add("beta_2_2n(v) = 0", v=wu.format(), value=comparison.details["beta_2_2n"])
    report.merge(verify_alternating(ring))
    report.details["instance"] = {"labels": ring.labels, "level": ring.level, "dim": ring.dim}
    logger.info(f"{report.name}: {'통과' if report.passed else '실패'}")
    return report
