# gauge_tools/pipeline.py
"""
초특이 예제 계산

H → M = H/ϖH → End(H){−1} 격자 사슬 p·End ⊂ D⊗O{−1} ⊂ End → M̃ → M′ → δ{−1}
순서로 게이지를 만들고, 단계마다 가중치별 차원과 u, t 패턴을 기대 표와 비교한다.

End(H) 의 행렬 (i, j) 성분은 텐서 좌표 e_i ⊗ e_{σ(j)} 에 대응한다 (σ 는 1, 2 교환).
"""
import logging
from typing import Dict, NamedTuple, Optional, Tuple

import numpy as np

from configs.gauge_conf import gauge_settings
from gauge_tools.algebra import (GaugeMap, branch_torsion, generated, quotient, restrict, sub, tensor,
                                 torsion_generators)
from gauge_tools.base import FGauge, GradedUTModule
from gauge_tools.constructions import constant_module, skyscraper, structure_gauge, supersingular_h
from gauge_tools.witt import WittRing
from modules.exceptions import PipelineFailure
from modules.linalg import (Subquotient, identity, int_matrix, kernel, lattice_contains_all, lattice_equal,
                            lattice_sum, solve_integer)

logger = logging.getLogger(__name__)

ValuationTable = Tuple[Tuple[int, int], Tuple[int, int]]

# 가중치 0, 1, 2 에서 각 격자의 행렬 성분별 p-진 부치
END_TABLES: Dict[str, Dict[int, ValuationTable]] = {
    "End(H){-1}": {0: ((0, 0), (0, 0)), 1: ((0, 0), (1, 0)), 2: ((1, 0), (2, 1))},
    "D⊗O{-1}": {0: ((0, 0), (1, 0)), 1: ((0, 0), (1, 0)), 2: ((1, 1), (2, 1))},
    "p·End(H){-1}": {0: ((1, 1), (1, 1)), 1: ((1, 1), (2, 1)), 2: ((2, 1), (3, 2))},
}

M_TILDE_DIMENSIONS = {-1: 2, 0: 2, 1: 3, 2: 2, 3: 2}

GENERATING_WEIGHT = 1


class EndChain(NamedTuple):
    end: FGauge
    eichler: FGauge
    p_end: GradedUTModule
    quotient_lengths: Dict[int, Tuple[int, int]]


class SupersingularPipeline(NamedTuple):
    witt: WittRing
    h: FGauge
    m: FGauge
    end_chain: EndChain
    m_tilde: FGauge
    m_prime: FGauge
    line: FGauge
    delta: FGauge
    shortcut: Optional[bool]
    details: Dict[str, object]


def matrix_coordinate(i: int, j: int) -> int:
    """행렬 성분 (i, j) (0 부터) 의 텐서 좌표 번호"""
    return 2 * i + (1 - j)


def table_lattice(p: int, table: ValuationTable) -> np.ndarray:
    L = np.zeros((4, 4), dtype=object)
    for i in range(2):
        for j in range(2):
            k = matrix_coordinate(i, j)
            L[k, k] = p ** table[i][j]
    return L


def _trace_row() -> np.ndarray:
    row = np.zeros((1, 4), dtype=object)
    row[0, matrix_coordinate(0, 0)] = 1
    row[0, matrix_coordinate(1, 1)] = 1
    return row


def _fail(stage: str, message: str, weight: Optional[int] = None, **witness) -> PipelineFailure:
    logger.error(f"초특이 파이프라인 {stage} 실패: {message}")
    return PipelineFailure(f"{stage}: {message}", weight=weight, witness={"stage": stage, **witness})


def _expect_dimensions(X: FGauge, expected: Dict[int, int], stage: str) -> None:
    module = X.module
    for n, d in expected.items():
        actual = None if module.free_rank(n) else module.length(n)
        if actual != d:
            raise _fail(stage, f"가중치 {n} 의 차원 {actual} ≠ {d}", weight=n, expected=d, actual=actual)


def _expect_arrow(X: FGauge, arrow: str, n: int, kind: str, stage: str) -> None:
    ok = X.module.is_iso(arrow, n) if kind == "iso" else X.module.is_zero_map(arrow, n)
    if not ok:
        raise _fail(stage, f"가중치 {n} 에서 나가는 {arrow} 가 {kind} 가 아닙니다", weight=n, arrow=arrow, kind=kind)


def _expect_same_pattern(X: FGauge, model: FGauge, weights, stage: str) -> None:
    """차원, 동형/영사상 여부가 모든 가중치에서 model 과 같은지"""
    for n in weights:
        if X.module.length(n) != model.module.length(n):
            raise _fail(stage, f"가중치 {n} 차원이 {model.name} 와 다릅니다", weight=n,
                        actual=X.module.length(n), expected=model.module.length(n))
        for arrow in ("u", "t"):
            for test in ("is_iso", "is_zero_map"):
                if getattr(X.module, test)(arrow, n) != getattr(model.module, test)(arrow, n):
                    raise _fail(stage, f"가중치 {n} 의 {arrow} 가 {model.name} 와 다릅니다", weight=n,
                                arrow=arrow, test=test)


def _expect_relations(X: FGauge, stage: str, margin: int) -> None:
    report = X.module.verify_relations(margin)
    if not report.passed:
        first = report.violations[0]
        raise _fail(stage, f"{first.axiom} 가 성립하지 않습니다", weight=first.witness.get("weight"),
                    violations=[v.model_dump() for v in report.violations])


def _single_generator(lattice: np.ndarray, sublattice: np.ndarray, p: int, stage: str, weight: int) -> np.ndarray:
    piece = Subquotient(lattice, sublattice)
    if piece.length(p) != 1 or len(piece.moduli) != 1:
        raise _fail(stage, f"가중치 {weight} 생성원이 하나가 아닙니다", weight=weight, moduli=piece.moduli)
    return piece.generators[:, 0]


def _sum_modules(A: GradedUTModule, B: GradedUTModule, name: str) -> GradedUTModule:
    lo, hi = min(A.lo, B.lo), max(A.hi, B.hi)
    return GradedUTModule(A.p, A.rank, {n: lattice_sum(A.lattice(n), B.lattice(n)) for n in range(lo, hi + 1)},
                          name=name)


def build_h(witt: WittRing, margin: int) -> FGauge:
    H = supersingular_h(witt)
    stage = "H"
    _expect_relations(H, stage, margin)
    for n in range(-margin, 1 + margin + 1):
        if H.module.free_rank(n) != 2:
            raise _fail(stage, f"가중치 {n} 계수가 2 가 아닙니다", weight=n)
        # t: n → n−1 은 n ≤ 0 에서, u: n → n+1 은 n ≥ 1 에서 동형
        if H.module.is_iso("t", n) != (n <= 0):
            raise _fail(stage, f"가중치 {n} 의 t 동형 패턴이 다릅니다", weight=n, arrow="t")
        if H.module.is_iso("u", n) != (n >= 1):
            raise _fail(stage, f"가중치 {n} 의 u 동형 패턴이 다릅니다", weight=n, arrow="u")
    return H


def build_m(H: FGauge, margin: int) -> Tuple[FGauge, Dict[str, object]]:
    """
    M = H/ϖH 와 생성원 v_0 (u 로 죽음), w_1 (t 로 죽음)

    붙임은 F(v_0) = λ·w_1 이고 w_1 을 λ·w_1 로 바꾸어 F(v_0) = w_1 이 되게 한다.
    """
    stage = "M"
    M = GaugeMap(H, H, H.gluing, name="ϖ").cokernel(name="M")
    _expect_relations(M, stage, margin)
    weights = range(M.module.lo - margin, M.module.hi + margin + 1)
    _expect_dimensions(M, {n: 1 for n in weights}, stage)
    for n in weights:
        _expect_arrow(M, "u", n, "zero" if n <= 0 else "iso", stage)
        _expect_arrow(M, "t", n, "iso" if n <= 0 else "zero", stage)

    module = M.module
    v0 = _single_generator(module.lattice(0), module.sublattice(0), M.p, stage, 0)
    w1 = _single_generator(module.lattice(1), module.sublattice(1), M.p, stage, 1)
    spanned = _sum_modules(generated(M, v0, 0), generated(M, w1, 1), name="<v0, w1>")
    for n in weights:
        if not lattice_equal(spanned.lattice(n), module.lattice(n)):
            raise _fail(stage, f"v_0, w_1 이 가중치 {n} 를 생성하지 않습니다", weight=n)

    image = M.gluing.dot(v0)
    (scalar,) = module.piece(1).coordinates(image)
    if scalar % M.p == 0:
        raise _fail(stage, "F(v_0) 가 w_1 의 단원 배가 아닙니다", weight=1, scalar=int(scalar))
    details = {
        "v0": [int(x) for x in v0],
        "w1": [int(x) for x in w1 * scalar],
        "gluing_scalar": int(scalar),
    }
    logger.debug(f"M 붙임 정규화 λ = {scalar}")
    return M, details


def build_end_chain(H: FGauge) -> EndChain:
    """End(H){−1} = H⊗H ⊃ D⊗O{−1} ⊃ p·End(H){−1}"""
    stage = "End"
    p = H.p
    end = tensor(H, H)
    end.name = end.module.name = "End(H){-1}"
    eichler_lattice = table_lattice(p, END_TABLES["D⊗O{-1}"][0])
    eichler = sub(end, constant_module(p, eichler_lattice, name="D").twist(-1), name="D⊗O{-1}")
    p_end = end.module.scaled(p)
    p_end.name = "p·End(H){-1}"

    for name, module in ((end.name, end.module), (eichler.name, eichler.module), (p_end.name, p_end)):
        for n, table in END_TABLES[name].items():
            if not lattice_equal(module.lattice(n), table_lattice(p, table)):
                raise _fail(stage, f"{name} 의 가중치 {n} 격자가 표와 다릅니다", weight=n, table=name)

    lengths = {}
    for n in range(0, 3):
        if not lattice_contains_all(eichler.module.lattice(n), p_end.lattice(n)):
            raise _fail(stage, f"가중치 {n} 에서 p·End ⊄ D⊗O{{-1}}", weight=n)
        lengths[n] = (Subquotient(end.module.lattice(n), eichler.module.lattice(n)).length(p),
                      Subquotient(eichler.module.lattice(n), p_end.lattice(n)).length(p))
    return EndChain(end, eichler, p_end, lengths)


def build_m_tilde(chain: EndChain, margin: int) -> FGauge:
    """M̃ = coker(p(H⊗H)₀ → D₀⊗O{−1}), 아래첨자 0 은 대각합 0"""
    stage = "M̃"
    K = kernel(_trace_row())
    eichler_zero = restrict(chain.eichler, K, name="D₀⊗O{-1}")
    p_end_zero = chain.end.module.restrict(K).scaled(chain.end.p)
    m_tilde = quotient(eichler_zero, p_end_zero, name="M̃")
    _expect_relations(m_tilde, stage, margin)
    _expect_dimensions(m_tilde, M_TILDE_DIMENSIONS, stage)
    return m_tilde


def build_m_prime(m_tilde: FGauge, line: FGauge, margin: int) -> Tuple[FGauge, FGauge, Dict[str, object]]:
    """
    M′ ⊂ M̃: 생성 가중치에서 u 로 죽는 v′_1 과 t 로 죽는 w′_1 이 생성하는 부분

    M̃/M′ 은 특수 올 위의 선다발 O{−1}/p 와 같은 모양이어야 한다.
    """
    stage = "M′"
    p, w = m_tilde.p, GENERATING_WEIGHT
    kernels = torsion_generators(m_tilde, w)
    S = m_tilde.module.sublattice(w)
    v1 = _single_generator(kernels["u"], S, p, stage, w)
    w1 = _single_generator(kernels["t"], S, p, stage, w)

    m_prime = branch_torsion(m_tilde, w, name="M′")
    _expect_relations(m_prime, stage, margin)
    weights = range(m_tilde.module.lo - margin, m_tilde.module.hi + margin + 1)
    _expect_dimensions(m_prime, {n: 2 if n == w else 1 for n in weights}, stage)

    quotient_line = quotient(m_tilde, m_prime.module, name="M̃/M′")
    _expect_same_pattern(quotient_line, line, weights, stage)
    details = {"v1_prime": [int(x) for x in v1], "w1_prime": [int(x) for x in w1]}
    return m_prime, quotient_line, details


def build_delta(M: FGauge, m_prime: FGauge, details: Dict[str, object], margin: int) -> FGauge:
    """
    M → M′: v_0 ↦ t·v′_1, w_1 ↦ w′_1 의 여핵

    M 은 u 로 죽는 v_0 과 t 로 죽는 w_1 으로 자유롭게 표시되므로, 상의 관계만 확인하면 된다.
    """
    stage = "δ"
    p, module = m_prime.p, m_prime.module
    v1 = int_matrix(details["v1_prime"])
    w1 = int_matrix(details["w1_prime"])
    if not lattice_contains_all(module.sublattice(1), v1 * p):
        raise _fail(stage, "u·(t·v′_1) ≠ 0", weight=1)
    if not lattice_contains_all(module.sublattice(0), w1):
        raise _fail(stage, "t·w′_1 ≠ 0", weight=0)

    image = _sum_modules(generated(m_prime, v1, 0), generated(m_prime, w1, 1), name="im(M→M′)")
    weights = range(min(M.module.lo, module.lo) - margin, max(M.module.hi, module.hi) + margin + 1)
    for n in weights:
        if Subquotient(image.lattice(n), module.sublattice(n)).length(p) != M.module.length(n):
            raise _fail(stage, f"M → M′ 이 가중치 {n} 에서 단사가 아닙니다", weight=n)

    delta = quotient(m_prime, image, name="δ{-1}")
    _expect_relations(delta, stage, margin)
    _expect_dimensions(delta, {n: 1 if n == 1 else 0 for n in weights}, stage)
    _expect_arrow(delta, "u", 1, "zero", stage)
    _expect_arrow(delta, "t", 1, "zero", stage)
    _expect_same_pattern(delta, skyscraper(M.witt, twist=-1), weights, stage)
    return delta


def split_shortcut(chain: EndChain, m_tilde: FGauge, m_prime: FGauge, line: FGauge) -> Optional[np.ndarray]:
    """
    O{−1}/p → M̃, 1 ↦ y (y ∈ D₀, y ≡ 1 mod p·D) 이 M̃ → M̃/M′ 의 단면인지

    대각합 조건 때문에 y 는 p = 2 에서만 존재한다. 존재하지 않으면 None.
    """
    stage = "shortcut"
    p = m_tilde.p
    D0 = m_tilde.module.lattice(GENERATING_WEIGHT)
    D = chain.eichler.module.lattice(GENERATING_WEIGHT)
    unit = np.zeros(4, dtype=object)
    for i in range(2):
        unit[matrix_coordinate(i, i)] = 1
    coefficients = solve_integer(np.hstack([D0, D * p]), unit)
    if coefficients is None:
        logger.info(f"p = {p} 에서는 단위원을 대각합 0 격자로 올릴 수 없습니다")
        return None
    y = D0.dot(coefficients[:D0.shape[1]])

    section = GaugeMap(line, m_tilde, y.reshape((4, 1)), name="Ψ")
    report = section.verify()
    if not report.passed:
        first = report.violations[0]
        raise _fail(stage, f"Ψ 가 게이지 사상이 아닙니다 ({first.axiom})", weight=first.witness.get("weight"))
    if not section.is_injective():
        raise _fail(stage, "Ψ 가 단사가 아닙니다")
    image = section.image()
    for n in range(m_tilde.module.lo - 1, m_tilde.module.hi + 2):
        if not lattice_equal(lattice_sum(image.lattice(n), m_prime.module.lattice(n)), m_tilde.module.lattice(n)):
            raise _fail(stage, f"가중치 {n} 에서 Ψ 가 M̃/M′ 을 덮지 않습니다", weight=n)
    return y


def supersingular_pipeline(p: int = 2, m: int = 3, f: Optional[int] = None,
                           margin: Optional[int] = None) -> SupersingularPipeline:
    """
    Args:
        p: 소수 (기본 목표는 2)
        m: 비트 벡터 절단 길이
        f: 잉여체 차수 (기본 gauge_settings.GAUGE_RESIDUE_DEGREE)
        margin: 창 밖으로 더 확인할 가중치 수

    Raises:
        PipelineFailure: 단계별 기대 표와 다를 때 (weight 에 문제의 가중치)
    """
    f = f or gauge_settings.GAUGE_RESIDUE_DEGREE
    margin = gauge_settings.GAUGE_WEIGHT_MARGIN if margin is None else margin
    witt = WittRing(p, f, m)
    witt.validate()
    logger.info(f"초특이 파이프라인 시작: {witt}")

    H = build_h(witt, margin)
    M, details = build_m(H, margin)
    logger.info("H, M 확인 완료")

    chain = build_end_chain(H)
    m_tilde = build_m_tilde(chain, margin)
    logger.info("End(H){-1} 사슬과 M̃ 확인 완료")

    twisted = structure_gauge(witt).twist(-1)
    line = quotient(twisted, twisted.module.scaled(p), name="O{-1}/p")
    m_prime, quotient_line, prime_details = build_m_prime(m_tilde, line, margin)
    details.update(prime_details)
    delta = build_delta(M, m_prime, details, margin)
    logger.info("M′ 과 δ{-1} 확인 완료")

    y = split_shortcut(chain, m_tilde, m_prime, line)
    if y is None and p == 2:
        raise _fail("shortcut", "p = 2 인데 단면이 없습니다", weight=GENERATING_WEIGHT)
    shortcut = y is not None
    if shortcut:
        details["section"] = [int(x) for x in y]
    details["end_quotient_lengths"] = {n: list(v) for n, v in chain.quotient_lengths.items()}
    details["m_tilde_over_m_prime"] = quotient_line.name
    return SupersingularPipeline(witt, H, M, chain, m_tilde, m_prime, line, delta, shortcut, details)
