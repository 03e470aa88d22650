# action_tools/rings.py
"""
절단 다항식(단항식) 모델: F[g_1..g_m]/(g_j^{n_j+1})

홀수 차수 생성원은 외대수 생성원(n_j = 1)이어야 한다.
P^n 모델과 그 퀴네트 곱, 토러스형 블록이 모두 이 형태이다.
"""
import itertools
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from action_tools.base import PDRing, PDRingModN
from modules.exceptions import ActionTableError

logger = logging.getLogger(__name__)

Generator = Tuple[str, Tuple[int, int], int]


def monomial_label(names: Sequence[str], exponents: Sequence[int]) -> str:
    parts = []
    for name, k in zip(names, exponents):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts) or "1"


def _reorder_sign(degrees: Sequence[int], left: Sequence[int], right: Sequence[int]) -> int:
    exponent = 0
    for i in range(len(degrees)):
        for j in range(i):
            exponent += left[i] * right[j] * degrees[i] * degrees[j]
    return -1 if exponent % 2 else 1


def monomial_structure(generators: Sequence[Generator], modulus: int):
    """
    단항식 기저, 이중차수, 구조 상수, 최고 단항식 위의 적분

    Returns:
        (labels, bidegrees, structure, trace, exponents)
    """
    names = [g[0] for g in generators]
    degrees = [g[1][0] for g in generators]
    for name, (degree, _), top in generators:
        if degree % 2 and top > 1:
            raise ActionTableError(f"홀수 차수 생성원 {name} 의 최고 지수는 1 이어야 합니다",
                                   witness={"entry": name})
    exponents: List[Tuple[int, ...]] = sorted(
        itertools.product(*[range(g[2] + 1) for g in generators]),
        key=lambda e: (sum(k * g[1][0] for k, g in zip(e, generators)), tuple(-k for k in e)))
    index = {e: k for k, e in enumerate(exponents)}
    n = len(exponents)
    labels = [monomial_label(names, e) for e in exponents]
    bidegrees = [(sum(k * g[1][0] for k, g in zip(e, generators)), sum(k * g[1][1] for k, g in zip(e, generators)))
                 for e in exponents]
    structure = np.zeros((n, n, n), dtype=np.int64)
    for i, left in enumerate(exponents):
        for j, right in enumerate(exponents):
            total = tuple(a + b for a, b in zip(left, right))
            if total in index:
                structure[i, j, index[total]] = _reorder_sign(degrees, left, right) % modulus
    top = tuple(g[2] for g in generators)
    trace = [0] * n
    trace[index[top]] = 1
    return labels, bidegrees, structure, trace, exponents


def monomial_ring(p: int, generators: Sequence[Generator], name: str = "") -> PDRing:
    labels, bidegrees, structure, trace, _ = monomial_structure(generators, p)
    top_degree, top_weight = max(bidegrees)
    if top_degree != 2 * top_weight + 1:
        raise ActionTableError(f"최고 단항식의 이중차수가 (2d+1, d) 꼴이 아닙니다: {(top_degree, top_weight)}",
                               witness={"entry": "top", "bidegree": [top_degree, top_weight]})
    return PDRing(p, top_weight, labels, bidegrees, structure, trace, name=name)


def monomial_ring_mod_n(level: int, generators: Sequence[Generator], bockstein: Optional[Dict[str, Dict[str, int]]] = None,
                        action_tables: Optional[Dict] = None, name: str = "") -> PDRingModN:
    """Z/2^n 계수 단항식 모델, bockstein 은 기저 이름 -> {상 이름: 계수}"""
    modulus = 2 ** level
    labels, bidegrees, structure, trace, _ = monomial_structure(generators, modulus)
    _, top_weight = max(bidegrees)
    n = len(labels)
    matrix = np.zeros((n, n), dtype=np.int64)
    for source, images in (bockstein or {}).items():
        for target, c in images.items():
            matrix[labels.index(target), labels.index(source)] = c % modulus
    return PDRingModN(level, top_weight, labels, bidegrees, structure, trace, matrix, action_tables, name=name)


def truncated_polynomial_ring(p: int, exponents: Sequence[int], names: Optional[Sequence[str]] = None,
                              exterior: str = "e") -> PDRing:
    """
    F_p[ε, h_1..h_r]/(ε², h_j^{n_j+1}), ε ∈ H^{1,0}, h_j ∈ H^{2,1}

    차원은 Σ n_j 이고 적분은 ε·Π h_j^{n_j} 위에서 1 이다.
    """
    if names is None:
        names = ["h"] if len(exponents) == 1 else [f"h{j + 1}" for j in range(len(exponents))]
    generators = [(exterior, (1, 0), 1)] + [(name, (2, 1), k) for name, k in zip(names, exponents)]
    label = "x".join(f"P{k}" for k in exponents)
    return monomial_ring(p, generators, name=label)
