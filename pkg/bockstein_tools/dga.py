# bockstein_tools/dga.py
"""
엄격한 가환 미분 등급 대수 (Z 계수)

E∞ 구조는 ψ(e_i ⊗ …) = 0 (i ≥ 1) 로 확장한 엄격한 가환 모델로 다룬다.
따라서 Pe^i(u) 는 2i = |u| 일 때 u², 그 외에는 0 이다.
"""
import logging
import re
from collections import Counter
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from action_tools.base import koszul_sign
from bockstein_tools.complexes import Bidegree, GradedComplex, ModnClass, reduce_class
from configs.bockstein_conf import bockstein_settings
from modules.exceptions import ArgumentError, ComplexValidationError, UnsupportedConfigurationError

logger = logging.getLogger(__name__)

_FACTOR = re.compile(r"^(.+?)(?:\^(\d+))?$")


class CommutativeDGA(GradedComplex):
    """구조 상수 S[i, j, k] = e_i·e_j 의 e_k 계수"""

    def __init__(self, labels: Sequence[str], bidegrees: Sequence[Bidegree], differential, structure,
                 name: str = "", check: bool = True):
        super().__init__(labels, bidegrees, differential, name=name, check=False)
        n = self.rank
        self.structure = np.array(structure, dtype=object).reshape((n, n, n))
        if check:
            self.check()

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        partial = np.tensordot(np.array(x, dtype=object), self.structure, axes=(0, 0))
        return np.tensordot(np.array(y, dtype=object), partial, axes=(0, 0))

    def power(self, x: np.ndarray, k: int) -> np.ndarray:
        result = self.unit_vector()
        for _ in range(k):
            result = self.multiply(result, x)
        return result

    @cached_property
    def unit_index(self) -> int:
        n = self.rank
        for k in range(n):
            left = self.structure[k, :, :]
            right = self.structure[:, k, :]
            if np.array_equal(left, identity_matrix(n)) and np.array_equal(right, identity_matrix(n)):
                return k
        raise ComplexValidationError(f"{self.name}: 단위원이 없습니다", witness={"entry": "unit"})

    def unit_vector(self) -> np.ndarray:
        return self.basis_vector(self.unit_index)

    def _signs(self) -> np.ndarray:
        return np.array([1 if a % 2 == 0 else -1 for a, _ in self.bidegrees], dtype=object)

    def check(self) -> None:
        """
        미분 복합체 조건, 곱의 이중차수, 단위원, 등급 가환성, 결합성, 라이프니츠 규칙

        Raises:
            ComplexValidationError: 첫 위반 항목을 witness 로
        """
        super().check()
        S = self.structure
        labels = self.labels
        for i, j, k in np.argwhere(S != 0):
            a, b = self.bidegrees[i], self.bidegrees[j]
            if self.bidegrees[k] != (a[0] + b[0], a[1] + b[1]):
                raise ComplexValidationError(f"{self.name}: {labels[i]}·{labels[j]} 의 이중차수가 맞지 않습니다",
                                             witness={"entry": f"{labels[i]}*{labels[j]}"})
        _ = self.unit_index

        degrees = [a for a, _ in self.bidegrees]
        swap = np.array([[koszul_sign(p, q) for q in degrees] for p in degrees], dtype=object)
        defect = S - swap[:, :, None] * S.transpose(1, 0, 2)
        for i, j, _ in np.argwhere(defect != 0):
            raise ComplexValidationError(f"{self.name}: 등급 가환성 위반 ({labels[i]}, {labels[j]})",
                                         witness={"entry": f"{labels[i]}*{labels[j]}"})

        left = np.tensordot(S, S, axes=(2, 0))
        right = np.tensordot(S, S, axes=([1], [2])).transpose(0, 2, 3, 1)
        for i, j, k, _ in np.argwhere(left != right):
            raise ComplexValidationError(f"{self.name}: 결합성 위반 ({labels[i]}, {labels[j]}, {labels[k]})",
                                         witness={"entry": f"{labels[i]}*{labels[j]}*{labels[k]}"})

        D = self.differential
        lhs = np.tensordot(S, D, axes=(2, 1))
        rhs = (np.tensordot(D, S, axes=(0, 0))
               + self._signs()[:, None, None] * np.tensordot(S, D, axes=(1, 0)).transpose(0, 2, 1))
        for i, j, _ in np.argwhere(lhs != rhs):
            raise ComplexValidationError(f"{self.name}: 라이프니츠 규칙 위반 ({labels[i]}, {labels[j]})",
                                         witness={"entry": f"{labels[i]}*{labels[j]}"})

    def factors(self, label: str) -> List[str]:
        """'e*a^2' -> ['e', 'a', 'a']"""
        if label == "1":
            return []
        result = []
        for part in label.split("*"):
            name, exponent = _FACTOR.match(part).groups()
            result.extend([name] * int(exponent or 1))
        return result


def identity_matrix(n: int) -> np.ndarray:
    matrix = np.zeros((n, n), dtype=object)
    for i in range(n):
        matrix[i, i] = 1
    return matrix


def _join(left: str, right: str) -> str:
    if left == "1":
        return right
    if right == "1":
        return left
    return f"{left}*{right}"


def tensor_dga(first: CommutativeDGA, second: CommutativeDGA, name: str = "") -> CommutativeDGA:
    """A ⊗ B: d(a⊗b) = da⊗b + (−1)^{|a|} a⊗db, (a⊗b)(a'⊗b') = (−1)^{|b||a'|} aa'⊗bb'"""
    r, s = first.rank, second.rank
    n = r * s
    labels = [_join(a, b) for a in first.labels for b in second.labels]
    bidegrees = [(a[0] + b[0], a[1] + b[1]) for a in first.bidegrees for b in second.bidegrees]
    D = np.zeros((n, n), dtype=object)
    for i in range(r):
        sign = 1 if first.bidegrees[i][0] % 2 == 0 else -1
        for j in range(s):
            for k in range(r):
                if first.differential[k, i] != 0:
                    D[k * s + j, i * s + j] += first.differential[k, i]
            for l in range(s):
                if second.differential[l, j] != 0:
                    D[i * s + l, i * s + j] += sign * second.differential[l, j]
    S = np.zeros((n, n, n), dtype=object)
    for i, k, m in np.argwhere(first.structure != 0):
        for j, l, o in np.argwhere(second.structure != 0):
            sign = koszul_sign(second.bidegrees[j][0], first.bidegrees[k][0])
            S[i * s + j, k * s + l, m * s + o] += sign * first.structure[i, k, m] * second.structure[j, l, o]
    return CommutativeDGA(labels, bidegrees, D, S, name=name or f"{first.name}⊗{second.name}")


def tensor_all(blocks: Sequence[CommutativeDGA], name: str = "") -> CommutativeDGA:
    result = blocks[0]
    for block in blocks[1:]:
        result = tensor_dga(result, block)
    if name:
        result.name = name
    return result


def exterior_block(z: str, degree: int, weight: int) -> CommutativeDGA:
    """Λ[z] = Z{1, z}, z² = 0, d = 0"""
    S = np.zeros((2, 2, 2), dtype=object)
    S[0, 0, 0], S[0, 1, 1], S[1, 0, 1] = 1, 1, 1
    return CommutativeDGA(["1", z], [(0, 0), (degree, weight)], np.zeros((2, 2), dtype=object), S,
                          name=f"Λ[{z}]")


def point_block() -> CommutativeDGA:
    """점의 계수환 모델 Λ[ε], ε ∈ (1, 0)"""
    return exterior_block("e", 1, 0)


def truncated_block(x: str, degree: int, weight: int, top: int) -> CommutativeDGA:
    """Z[x]/(x^{top+1}), d = 0 (top > 1 이면 짝수 차수만)"""
    if degree % 2 and top > 1:
        raise ComplexValidationError(f"홀수 차수 생성원 {x} 의 최고 지수는 1 이어야 합니다", witness={"entry": x})
    n = top + 1
    labels = ["1"] + [x if k == 1 else f"{x}^{k}" for k in range(1, n)]
    S = np.zeros((n, n, n), dtype=object)
    for i in range(n):
        for j in range(n - i):
            S[i, j, i + j] = koszul_sign(degree * i, degree * j) if degree % 2 else 1
    return CommutativeDGA(labels, [(degree * k, weight * k) for k in range(n)], np.zeros((n, n), dtype=object), S,
                          name=f"Z[{x}]/{x}^{n}")


def polynomial_block(x: str, y: str, degree: int, weight: int, k: int, m: int) -> CommutativeDGA:
    """
    Z[x]⊗Λ[y] / (x^m, x^{m-1}y), dx = 2^k·y

    x 는 짝수 차수, y 는 차수 +1. 기저는 x^i (i < m), x^i·y (i < m-1).
    """
    if degree % 2:
        raise ComplexValidationError(f"{x} 의 차수는 짝수여야 합니다: {degree}", witness={"entry": x})
    if m < 2:
        raise ComplexValidationError(f"절단 지수 m 은 2 이상이어야 합니다: {m}", witness={"entry": x})

    def power(name: str, i: int) -> str:
        return "1" if i == 0 else name if i == 1 else f"{name}^{i}"

    plain = [power(x, i) for i in range(m)]
    mixed = [_join(power(x, i), y) for i in range(m - 1)]
    labels = plain + mixed
    bidegrees = ([(degree * i, weight * i) for i in range(m)]
                 + [(degree * i + degree + 1, weight * i + weight) for i in range(m - 1)])
    n = len(labels)
    D = np.zeros((n, n), dtype=object)
    for i in range(1, m):
        D[m + i - 1, i] = i * 2 ** k
    S = np.zeros((n, n, n), dtype=object)
    for i in range(m):
        for j in range(m):
            if i + j < m:
                S[i, j, i + j] = 1
            if i + j < m - 1:
                S[i, m + j, m + i + j] = 1
                S[m + j, i, m + i + j] = 1
    return CommutativeDGA(labels, bidegrees, D, S, name=f"Z[{x}]⊗Λ[{y}], d{x}=2^{k}{y}")


def extend_derivation(algebra: CommutativeDGA, values: Dict[str, np.ndarray], name: str = "") -> CommutativeDGA:
    """
    생성원 값에서 라이프니츠 규칙으로 미분을 정한다 (기저 이름이 생성원 곱 'g1*g2^k' 꼴일 때)

    Raises:
        ComplexValidationError: 결과가 d∘d = 0 이나 라이프니츠 규칙을 어길 때
    """
    n = algebra.rank
    D = np.zeros((n, n), dtype=object)
    for j, label in enumerate(algebra.labels):
        factors = algebra.factors(label)
        column = algebra.zero()
        for position, generator in enumerate(factors):
            sign = 1
            for previous in factors[:position]:
                sign *= -1 if algebra.bidegrees[algebra.index(previous)][0] % 2 else 1
            term = algebra.unit_vector()
            for other, factor in enumerate(factors):
                value = values.get(factor, algebra.zero()) if other == position else algebra.basis_vector(factor)
                term = algebra.multiply(term, value)
            column = column + sign * term
        D[:, j] = column
    return CommutativeDGA(algebra.labels, algebra.bidegrees, D, algebra.structure, name=name or algebra.name)


def torsion_surface_model(n: int = 2, k: Optional[int] = None, mu: Tuple[int, int] = (1, -1)) -> CommutativeDGA:
    """
    Λ[ε]⊗Λ[a]⊗Λ[b], a, b ∈ (2, 1), da = 2^k μ_a ε·a, db = 2^k μ_b ε·b

    k = n 이면 mod 2^n 코호몰로지가 자유이고 β_n(a) = μ_a ε·a, β_n(b) = μ_b ε·b 이다.
    """
    k = n if k is None else k
    base = tensor_all([point_block(), exterior_block("a", 2, 1), exterior_block("b", 2, 1)])
    values = {"a": 2 ** k * mu[0] * base.basis_vector("e*a"), "b": 2 ** k * mu[1] * base.basis_vector("e*b")}
    return extend_derivation(base, values, name=f"torsion-surface(n={n},k={k},mu={tuple(mu)})")


def formal_model(dims: Sequence[int]) -> CommutativeDGA:
    """Λ[ε]⊗Z[h_1..h_r]/(h_j^{n_j+1}), d = 0 (P^{n_1}×…×P^{n_r} 의 형식 모델)"""
    names = ["h"] if len(dims) == 1 else [f"h{j + 1}" for j in range(len(dims))]
    blocks = [point_block()] + [truncated_block(name, 2, 1, top) for name, top in zip(names, dims)]
    return tensor_all(blocks, name="x".join(f"P{k}" for k in dims))


def degree_ranks(algebra: GradedComplex) -> Counter:
    """차수별 랭크"""
    return Counter(degree for degree, _ in algebra.bidegrees)


def _tensor_ranks(left: Counter, right: Counter) -> Counter:
    ranks: Counter = Counter()
    for i, a in left.items():
        for j, b in right.items():
            ranks[i + j] += a * b
    return ranks


def random_commutative_dga(seed: Optional[int] = None, max_rank: Optional[int] = None) -> CommutativeDGA:
    """
    시드로 재현되는 작은 가환 DGA: 다항식 블록, Λ[z], Λ[ε], 꼬임 곡면 블록의 텐서곱

    각 차수의 랭크는 max_rank 이하, 전체 랭크는 BOCKSTEIN_MAX_TOTAL_RANK 이하.
    """
    seed = bockstein_settings.BOCKSTEIN_RANDOM_SEED if seed is None else seed
    max_rank = max_rank or bockstein_settings.BOCKSTEIN_MAX_RANK
    rng = np.random.default_rng(seed)
    blocks: List[CommutativeDGA] = []
    rank = 1
    ranks: Counter = Counter({0: 1})
    names = iter("xyzuvwpqrs")
    for _ in range(4):
        kind = int(rng.integers(0, 4))
        if kind == 0:
            x, y = next(names), next(names)
            block = polynomial_block(x, y, 2 * int(rng.integers(1, 3)), int(rng.integers(0, 2)),
                                     int(rng.integers(1, 4)), int(rng.integers(2, 4)))
        elif kind == 1:
            block = exterior_block(next(names), 2 * int(rng.integers(0, 2)) + 1, int(rng.integers(0, 2)))
        elif kind == 2:
            block = point_block()
        else:
            block = torsion_surface_model(int(rng.integers(1, 3)))
        if any(label in existing.labels for existing in blocks for label in block.labels if label != "1"):
            continue
        combined = _tensor_ranks(ranks, degree_ranks(block))
        if max(combined.values()) > max_rank or rank * block.rank > bockstein_settings.BOCKSTEIN_MAX_TOTAL_RANK:
            continue
        blocks.append(block)
        rank *= block.rank
        ranks = combined
    if not blocks:
        blocks.append(point_block())
    algebra = tensor_all(blocks, name=f"random-{seed}")
    logger.debug(f"{algebra.name}: rank={algebra.rank}, blocks={[b.name for b in blocks]}")
    return algebra


def power_operation(algebra: CommutativeDGA, u: ModnClass, i: int, p: int = 2) -> ModnClass:
    """
    Pe^i(u) ∈ H^{a+2i, 2b}(A/2): 2i = a 이면 u², 아니면 0

    Raises:
        UnsupportedConfigurationError: p ≠ 2
    """
    if p != 2:
        raise UnsupportedConfigurationError(f"사슬 수준 거듭제곱 연산은 p = 2 만 지원합니다: p={p}")
    if i < 0:
        raise ArgumentError(f"지수 i 는 0 이상이어야 합니다: {i}")
    u = reduce_class(u, 2)
    a, b = u.bidegree
    if 2 * i == a:
        value = np.array([c % 2 for c in algebra.multiply(u.representative, u.representative)], dtype=object)
    else:
        value = algebra.zero()
    return ModnClass(algebra, 2, (a + 2 * i, 2 * b), value)
