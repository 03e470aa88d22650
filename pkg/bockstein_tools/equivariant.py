# bockstein_tools/equivariant.py
"""
C₂ 동변 제곱 (M⊗M)_{hC₂} 의 절단 모델과 전체 거듭제곱 ψ_u

표준 분해 Z[C₂]e_i, d(e_i) = (1 + (−1)^i σ) e_{i−1} 를 M⊗M 과 텐서하면
d(e_i⊗m) = e_{i−1}⊗(m + (−1)^i σ(m)) + (−1)^i e_i⊗d(m) 이다.
σ(m⊗m') = (−1)^{|m||m'|} m'⊗m.
"""
import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from action_tools.base import koszul_sign
from bockstein_tools.complexes import (GradedComplex, ModnClass, bockstein_n, check_chain_map, cohomology, restrict,
                                       universal_model)
from bockstein_tools.dga import CommutativeDGA
from configs.bockstein_conf import bockstein_settings
from modules.exceptions import ArgumentError, ComplexValidationError

logger = logging.getLogger(__name__)


class EquivariantSquare(GradedComplex):
    """기저 e_i⊗m⊗m' (0 ≤ i ≤ N), 이중차수 (|m|+|m'|−i, w+w')"""

    def __init__(self, source: GradedComplex, truncation: int):
        if truncation < 1:
            raise ArgumentError(f"절단 N 은 1 이상이어야 합니다: {truncation}", witness={"truncation": truncation})
        self.source = source
        self.truncation = truncation
        r = source.rank
        labels, bidegrees = [], []
        for i in range(truncation + 1):
            for a in range(r):
                for b in range(r):
                    labels.append(f"e{i}.{source.labels[a]}.{source.labels[b]}")
                    (da, wa), (db, wb) = source.bidegrees[a], source.bidegrees[b]
                    bidegrees.append((da + db - i, wa + wb))
        D = np.zeros((len(labels), len(labels)), dtype=object)
        degrees = [deg for deg, _ in source.bidegrees]
        M = source.differential
        for i in range(truncation + 1):
            sign_i = 1 if i % 2 == 0 else -1
            for a in range(r):
                for b in range(r):
                    column = self._index(i, a, b)
                    if i >= 1:
                        D[self._index(i - 1, a, b), column] += 1
                        D[self._index(i - 1, b, a), column] += sign_i * koszul_sign(degrees[a], degrees[b])
                    for c in range(r):
                        if M[c, a] != 0:
                            D[self._index(i, c, b), column] += sign_i * M[c, a]
                        if M[c, b] != 0:
                            D[self._index(i, a, c), column] += sign_i * koszul_sign(degrees[a], 1) * M[c, b]
        super().__init__(labels, bidegrees, D, name=f"({source.name})^2_hC2[N={truncation}]")

    def _index(self, i: int, a: int, b: int) -> int:
        r = self.source.rank
        return i * r * r + a * r + b

    def element(self, i: int, left: str, right: str) -> np.ndarray:
        return self.basis_vector(self._index(i, self.source.index(left), self.source.index(right)))


def default_truncation(source: GradedComplex) -> int:
    top = max((deg for deg, _ in source.bidegrees), default=0)
    return max(1, top + bockstein_settings.BOCKSTEIN_TRUNCATION_MARGIN)


def equivariant_square(source: GradedComplex, truncation: Optional[int] = None) -> EquivariantSquare:
    return EquivariantSquare(source, truncation or default_truncation(source))


def classifying_map(algebra: CommutativeDGA, u: ModnClass, n: int) -> Tuple[GradedComplex, np.ndarray]:
    """
    φ_u: M_{a+1,b} → A, x ↦ ũ, y ↦ d(ũ)/2^n

    Returns:
        (M, φ 행렬)
    """
    if u.modulus != 2 ** n:
        raise ArgumentError(f"u 는 Z/{2 ** n} 계수여야 합니다: modulus={u.modulus}")
    a, b = u.bidegree
    model = universal_model(a, b, n)
    phi = np.zeros((algebra.rank, 2), dtype=object)
    phi[:, 0] = u.representative
    phi[:, 1] = np.array([c // 2 ** n for c in algebra.d(u.representative)], dtype=object)
    check_chain_map(phi, model, algebra)
    return model, phi


def total_power(phi: np.ndarray, source: GradedComplex, algebra: CommutativeDGA,
                truncation: Optional[int] = None) -> Tuple[EquivariantSquare, np.ndarray]:
    """
    ψ = mult ∘ φ^{⊗2}: (M⊗M)_{hC₂} → A, ψ(e_0⊗m⊗m') = φ(m)·φ(m'), ψ(e_{>0}⊗…) = 0

    Raises:
        ComplexValidationError: φ 가 사슬사상이 아니거나 ψ 가 사슬사상이 아닐 때
    """
    phi = check_chain_map(phi, source, algebra)
    square = equivariant_square(source, truncation)
    psi = np.zeros((algebra.rank, square.rank), dtype=object)
    for a in range(source.rank):
        for b in range(source.rank):
            psi[:, square._index(0, a, b)] = algebra.multiply(phi[:, a], phi[:, b])
    try:
        check_chain_map(psi, square, algebra)
    except ComplexValidationError as e:
        logger.error(f"ψ 사슬사상 확인 실패: {str(e)}")
        raise
    return square, psi


def summand_indices(square: EquivariantSquare) -> Dict[str, List[int]]:
    """보편 모델의 제곱을 x⊗x, x⊗y/y⊗x, y⊗y 항으로 나눈 기저"""
    if square.source.labels != ["x", "y"]:
        raise ArgumentError("분배 분해는 보편 모델 M_{a+1,b} 에만 정의됩니다",
                            witness={"labels": square.source.labels})
    parts: Dict[str, List[int]] = {"xx": [], "xy": [], "yy": []}
    for i in range(square.truncation + 1):
        parts["xx"].append(square._index(i, 0, 0))
        parts["xy"].extend([square._index(i, 0, 1), square._index(i, 1, 0)])
        parts["yy"].append(square._index(i, 1, 1))
    return parts


def distributivity_decomposition(a: int, b: int, n: int,
                                 truncation: Optional[int] = None) -> Dict[str, Dict[int, List[int]]]:
    """
    (M_{a+1,b})^{⊗2}_{hC₂}/2^n 의 세 직합 성분과 그 코호몰로지 (차수 -> 불변인자)

    성분 사이의 미분은 모두 2^n 의 배수여야 한다.

    Raises:
        ComplexValidationError: 성분 사이 미분이 mod 2^n 으로 0 이 아닐 때
    """
    N = 2 ** n
    square = equivariant_square(universal_model(a, b, n), truncation)
    parts = summand_indices(square)
    result: Dict[str, Dict[int, List[int]]] = {}
    for name, indices in parts.items():
        others = [k for k in range(square.rank) if k not in indices]
        leak = square.differential[np.ix_(others, indices)]
        if any(c % N for c in leak.flatten()):
            raise ComplexValidationError(f"{name} 성분이 mod 2^{n} 부분복합체가 아닙니다", witness={"summand": name})
        summand = restrict(square, indices, name=f"{square.name}:{name}")
        result[name] = {deg: group.invariant_factors for (deg, _), group in sorted(cohomology(summand, N).items())}
    logger.debug(f"distributivity (a={a}, b={b}, n={n}): {result}")
    return result


def total_cohomology(a: int, b: int, n: int, truncation: Optional[int] = None) -> Dict[int, List[int]]:
    """분해하지 않은 제곱의 mod 2^n 코호몰로지"""
    square = equivariant_square(universal_model(a, b, n), truncation)
    return {deg: group.invariant_factors for (deg, _), group in sorted(cohomology(square, 2 ** n).items())}


def universal_classes(a: int, b: int, n: int, truncation: Optional[int] = None):
    """
    보편 모델에서 s = 2^{n−1}x⊗x 와 기대되는 β_n^{(2)}(s) = x⊗y − 2^{n−1}e_1⊗y⊗y

    Returns:
        (square, s 의 대표, 기대값 대표)
    """
    square = equivariant_square(universal_model(a, b, n), truncation)
    half = 2 ** (n - 1)
    s = half * square.element(0, "x", "x")
    expected = square.element(0, "x", "y") - half * square.element(1, "y", "y")
    return square, s, expected


def bockstein_on_square(square: EquivariantSquare, n: int, representative: np.ndarray) -> ModnClass:
    degree = square.bidegree_of(representative)
    return bockstein_n(n, ModnClass(square, 2 ** n, degree, representative % 2 ** n))
