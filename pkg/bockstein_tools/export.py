# bockstein_tools/export.py
"""
DGA 의 mod 2^n 코호몰로지를 PDRingModN 인스턴스로 내보내기

기저는 각 이중차수 코호몰로지의 생성원이고, 단일 기저 원소로 대표되면 그 이름을 쓴다.
β_n 은 bockstein_n 으로, mod 2 작용은 생성원 값(대각선 (2i, i) 의 제곱, Sq¹ = [2^{n-1}]β_n 의 환원)의
Cartan 확장으로 정한다.
"""
import logging
from typing import Dict, List, NamedTuple

import numpy as np

from action_tools.action import from_generators
from action_tools.base import PDRing, PDRingModN
from bockstein_tools.complexes import Bidegree, CohomologyGroup, ModnClass, bockstein_n, cohomology
from bockstein_tools.dga import CommutativeDGA
from modules.exceptions import ActionTableError, ExportError
from modules.linalg import fp_rank
from steenrod_tools.base import BETA

logger = logging.getLogger(__name__)


class ExportedInstance(NamedTuple):
    ring: PDRingModN
    representatives: Dict[str, np.ndarray]


def _normalize(vector: np.ndarray, modulus: int):
    """단일 성분이 가역이면 그 성분이 1 이 되도록 (벡터, 배율)"""
    support = [k for k, c in enumerate(vector) if c % modulus]
    if len(support) == 1:
        c = int(vector[support[0]]) % modulus
        try:
            inverse = pow(c, -1, modulus)
        except ValueError:
            return vector % modulus, 1
        return (vector * inverse) % modulus, c
    return vector % modulus, 1


def _label(algebra: CommutativeDGA, vector: np.ndarray, bidegree: Bidegree, j: int, taken: set) -> str:
    support = [k for k, c in enumerate(vector) if c]
    if len(support) == 1 and vector[support[0]] == 1 and algebra.labels[support[0]] not in taken:
        return algebra.labels[support[0]]
    return f"c{bidegree[0]}_{bidegree[1]}_{j}"


def _span(ring: PDRing, generators: List[int]) -> List[List[int]]:
    """단위원과 generators 의 곱들이 F_2 위에서 생성하는 공간의 기저"""
    span = [list(ring.unit_vector())]
    queue = [ring.unit_vector()]
    while queue:
        current = queue.pop()
        for g in generators:
            product = ring.multiply(current, ring.basis_vector(g))
            if product.any() and fp_rank(span + [list(product)], 2, ring.rank) > len(span):
                span.append(list(product))
                queue.append(product)
    return span


def _algebra_generators(ring: PDRing) -> List[int]:
    """차수 순으로, 앞서 고른 생성원의 곱으로 얻어지지 않는 기저를 생성원으로"""
    chosen: List[int] = []
    span = _span(ring, chosen)
    for k in sorted(range(ring.rank), key=lambda k: (ring.bidegrees[k], k)):
        if fp_rank(span + [list(ring.basis_vector(k))], 2, ring.rank) > len(span):
            chosen.append(k)
            span = _span(ring, chosen)
    return chosen


def _action_values(ring: PDRingModN, generators: List[int]) -> Dict[str, Dict[int, np.ndarray]]:
    reduction = ring.reduction()
    half = 2 ** (ring.level - 1)
    values: Dict[str, Dict[int, np.ndarray]] = {}
    for k in generators:
        a, b = ring.bidegrees[k]
        x = reduction.basis_vector(k)
        table: Dict[int, np.ndarray] = {}
        if b >= 1 and a == 2 * b:
            table[b] = reduction.multiply(x, x)
        sq1 = (half * ring.beta_n(ring.basis_vector(k))) % ring.modulus % 2
        if sq1.any():
            table[BETA] = sq1
        values[ring.labels[k]] = table
    return values


def export_with_representatives(algebra: CommutativeDGA, n: int) -> ExportedInstance:
    """
    Raises:
        ExportError: 코호몰로지가 Z/2^n 위 자유가 아니거나, 최고 조각이 (2d+1, d) 랭크 1 이 아니거나,
            컵곱 쌍짓기가 완전하지 않을 때
    """
    N = 2 ** n
    groups = cohomology(algebra, N)
    labels: List[str] = []
    bidegrees: List[Bidegree] = []
    representatives: List[np.ndarray] = []
    scales: Dict[Bidegree, List[int]] = {}
    offsets: Dict[Bidegree, int] = {}
    taken: set = set()
    for bidegree in sorted(groups):
        group = groups[bidegree]
        if any(m != N for m in group.moduli):
            raise ExportError(f"H^{bidegree}(A/2^{n}) 가 Z/2^{n} 위 자유가 아닙니다",
                              witness={"bidegree": list(bidegree), "invariant_factors": group.invariant_factors})
        offsets[bidegree] = len(labels)
        scales[bidegree] = []
        for j, generator in enumerate(group.generators()):
            vector, scale = _normalize(generator, N)
            label = _label(algebra, vector, bidegree, j, taken)
            taken.add(label)
            labels.append(label)
            bidegrees.append(bidegree)
            representatives.append(vector)
            scales[bidegree].append(scale)
    if not labels:
        raise ExportError(f"{algebra.name}: mod 2^{n} 코호몰로지가 0 입니다")

    top = max(groups, key=lambda b: (b[0], b[1]))
    if len(groups[top].moduli) != 1 or top[0] != 2 * top[1] + 1:
        raise ExportError(f"최고 조각 {top} 이 (2d+1, d) 꼴의 랭크 1 이 아닙니다",
                          witness={"bidegree": list(top), "rank": len(groups[top].moduli)})

    def coordinates(x: np.ndarray, bidegree: Bidegree) -> Dict[int, int]:
        group: CohomologyGroup = groups.get(bidegree)
        if group is None:
            return {}
        coords = group.coordinates(x)
        return {offsets[bidegree] + t: (c * scales[bidegree][t]) % N for t, c in enumerate(coords) if c}

    r = len(labels)
    structure = np.zeros((r, r, r), dtype=np.int64)
    bockstein = np.zeros((r, r), dtype=np.int64)
    for i in range(r):
        for j in range(r):
            target = (bidegrees[i][0] + bidegrees[j][0], bidegrees[i][1] + bidegrees[j][1])
            product = algebra.multiply(representatives[i], representatives[j]) % N
            for k, c in coordinates(product, target).items():
                structure[i, j, k] = c
        beta = bockstein_n(n, ModnClass(algebra, N, bidegrees[i], representatives[i]))
        for k, c in coordinates(beta.representative, beta.bidegree).items():
            bockstein[k, i] = c
    trace = [0] * r
    trace[offsets[top]] = 1
    ring = PDRingModN(n, top[1], labels, bidegrees, structure, trace, bockstein, name=algebra.name)

    reduction = ring.reduction()
    degenerate = reduction.degenerate_pieces()
    if degenerate:
        witness = {"pieces": [list(b) for b in degenerate],
                   "matrix": reduction.pairing_matrix(degenerate[0])}
        raise ExportError(f"{algebra.name}: 컵곱 쌍짓기가 완전하지 않습니다 {degenerate}", witness=witness)
    try:
        ring.attach_action(from_generators(reduction, _action_values(ring, _algebra_generators(reduction))))
    except ActionTableError as e:
        logger.error(f"{algebra.name} 작용 구성 실패: {str(e)}")
        raise
    logger.info(f"{algebra.name}: 랭크 {r} PD 인스턴스 내보내기 (n={n}, dim={top[1]})")
    return ExportedInstance(ring, dict(zip(labels, representatives)))


def export_pd_instance(algebra: CommutativeDGA, n: int) -> PDRingModN:
    return export_with_representatives(algebra, n).ring
