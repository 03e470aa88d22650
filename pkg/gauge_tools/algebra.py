# gauge_tools/algebra.py
"""
게이지의 가중치별 구성: 텐서곱, 부분/몫, 꼬임, 쌍대, 게이지 사상과 여핵

모든 구성은 결과 가군과 붙임을 다시 검증한다 (GradedUTModule, FGauge 생성자).
"""
import logging
from typing import Callable, Dict, List

import numpy as np

from gauge_tools.base import FGauge, GradedUTModule, Window, product
from models.report import VerificationReport
from modules.exceptions import ConfigurationError, GaugeStructureError
from modules.linalg import (Subquotient, congruence_lattice, identity, int_matrix, kron, lattice_contains_all,
                            lattice_equal, lattice_intersection, lattice_preimage, lattice_sum, scaled_inverse)

logger = logging.getLogger(__name__)


def _check_compatible(X: FGauge, Y: FGauge) -> None:
    if X.witt != Y.witt:
        raise ConfigurationError(f"비트 환이 다릅니다: {X.witt} / {Y.witt}",
                                 witness={"left": list(X.witt.parameters), "right": list(Y.witt.parameters)})


def _union(*windows: Window) -> Window:
    return min(w[0] for w in windows), max(w[1] for w in windows)


def tensor_modules(X: GradedUTModule, Y: GradedUTModule) -> GradedUTModule:
    """
    (X ⊗ Y)_n = Σ_{i+j=n} X_i ⊗ Y_j (주변 공간은 크로네커 곱)

    i < lo_X 인 항은 i = lo_X 항에, j < lo_Y 인 항은 j = lo_Y 항에 포함되므로
    i ∈ [lo_X, max(lo_X, n − lo_Y)] 만 더한다.
    """
    if X.p != Y.p:
        raise ConfigurationError(f"소수가 다릅니다: {X.p} / {Y.p}", witness={"left": X.p, "right": Y.p})
    lattices, sublattices = {}, {}
    for n in range(X.lo + Y.lo, X.hi + Y.hi + 1):
        numerators, denominators = [], []
        for i in range(X.lo, max(X.lo, n - Y.lo) + 1):
            j = n - i
            numerators.append(kron(X.lattice(i), Y.lattice(j)))
            denominators.append(kron(X.sublattice(i), Y.lattice(j)))
            denominators.append(kron(X.lattice(i), Y.sublattice(j)))
        lattices[n] = lattice_sum(*numerators)
        sublattices[n] = lattice_sum(*denominators)
    return GradedUTModule(X.p, X.rank * Y.rank, lattices, sublattices, name=f"{X.name}⊗{Y.name}")


def tensor(X: FGauge, Y: FGauge) -> FGauge:
    """붙임은 G_X ⊗ G_Y (창의 위 끝 hi_X + hi_Y 기준)"""
    _check_compatible(X, Y)
    module = tensor_modules(X.module, Y.module)
    return FGauge(module, kron(X.gluing, Y.gluing), X.witt, name=module.name)


def _check_contained(X: FGauge, Y: GradedUTModule, lo: int, hi: int) -> None:
    if Y.p != X.p or Y.rank != X.rank:
        raise ConfigurationError(f"{Y.name} 의 주변 공간이 {X.name} 와 다릅니다",
                                 witness={"p": [X.p, Y.p], "rank": [X.rank, Y.rank]})
    for n in range(lo, hi + 1):
        if not lattice_contains_all(X.module.lattice(n), Y.lattice(n)):
            raise GaugeStructureError(f"{Y.name} 가 가중치 {n} 에서 {X.name} 에 포함되지 않습니다",
                                      witness={"weight": n})


def sub(X: FGauge, Y: GradedUTModule, name: str = "") -> FGauge:
    """Y 의 X 안의 상: 분자 Y_n + L'_n, 분모 L'_n"""
    lo, hi = _union(X.window, Y.window)
    _check_contained(X, Y, lo, hi)
    module = X.module
    weights = range(lo, hi + 1)
    result = GradedUTModule(X.p, X.rank, {n: lattice_sum(Y.lattice(n), module.sublattice(n)) for n in weights},
                            {n: module.sublattice(n) for n in weights}, name=name or f"{Y.name}⊂{X.name}")
    return FGauge(result, X.gluing_at(hi), X.witt, name=result.name)


def quotient(X: FGauge, Y: GradedUTModule, name: str = "") -> FGauge:
    """X / Y: 분자 L_n, 분모 L'_n + Y_n"""
    lo, hi = _union(X.window, Y.window)
    _check_contained(X, Y, lo, hi)
    module = X.module
    weights = range(lo, hi + 1)
    result = GradedUTModule(X.p, X.rank, {n: module.lattice(n) for n in weights},
                            {n: lattice_sum(module.sublattice(n), Y.lattice(n)) for n in weights},
                            name=name or f"{X.name}/{Y.name}")
    return FGauge(result, X.gluing_at(hi), X.witt, name=result.name)


def restrict(X: FGauge, K: np.ndarray, name: str = "") -> FGauge:
    """주변 부분격자 K 로 제한 (G 가 K 를 보존해야 한다)"""
    module = X.module.restrict(K, name=name)
    return FGauge(module, X.gluing, X.witt, name=module.name)


def twist(X: FGauge, k: int) -> FGauge:
    return X.twist(k)


def dual(X: FGauge) -> FGauge:
    """
    (X^∨)_n = {φ : φ(L_m) ⊂ p^{m+n}Z_p (모든 m)}, 창 [−hi, −lo], 붙임 p^{hi−lo}·(G⁻¹)ᵀ

    Raises:
        GaugeStructureError: 꼬임이 있거나 L_lo 가 주변 격자 전체가 아닐 때
    """
    module = X.module
    r = X.rank
    if not module.torsion_free:
        raise GaugeStructureError(f"{X.name}: 쌍대는 비꼬임 게이지에서만 정의됩니다", witness={"name": X.name})
    if not lattice_equal(module.lattice(module.lo), identity(r)):
        raise GaugeStructureError(f"{X.name}: L_lo 가 주변 격자 전체가 아닙니다", witness={"weight": module.lo})
    lattices = {}
    for n in range(-module.hi, -module.lo + 1):
        L = identity(r)
        for m in range(module.lo, module.hi + 1):
            e = max(0, m + n)
            if e:
                L = lattice_intersection(L, congruence_lattice(module.lattice(m).T, X.p ** e))
        lattices[n] = L
    try:
        G = scaled_inverse(X.gluing, X.p ** (module.hi - module.lo)).T
    except ValueError as e:
        logger.error(f"{X.name} 쌍대 붙임 계산 실패: {str(e)}")
        raise GaugeStructureError(f"{X.name}: 쌍대 붙임을 만들 수 없습니다", witness={"gluing": X.gluing.tolist()})
    name = f"{X.name}^∨"
    return FGauge(GradedUTModule(X.p, r, lattices, name=name), G, X.witt, name=name)


def generated(X: FGauge, vectors: np.ndarray, weight: int, name: str = "") -> GradedUTModule:
    """
    가중치 weight 의 원소들 (L_weight 의 열벡터) 이 생성하는 부분가군의 분자

    n ≤ weight 에서는 t-거듭제곱 (주변 공간에서 그대로), n ≥ weight 에서는 u-거듭제곱 (p^{n−weight} 배).
    """
    module = X.module
    vectors = int_matrix(vectors, None if np.size(vectors) else (X.rank, 0))
    if not lattice_contains_all(module.lattice(weight), vectors):
        raise GaugeStructureError(f"생성원이 가중치 {weight} 조각에 속하지 않습니다", witness={"weight": weight})
    lo, hi = _union(X.window, (weight, weight))
    lattices = {n: lattice_sum(vectors * X.p ** max(0, n - weight), module.sublattice(n)) for n in range(lo, hi + 1)}
    return GradedUTModule(X.p, X.rank, lattices, name=name or f"<{X.name}@{weight}>")


def torsion_generators(X: FGauge, weight: int) -> Dict[str, np.ndarray]:
    """
    가중치 weight 에서 u 의 핵과 t 의 핵 (분모를 포함하는 격자)

    ker u = L_w ∩ p⁻¹L'_{w+1}, ker t = L_w ∩ L'_{w−1}
    """
    module = X.module
    L = module.lattice(weight)
    ker_u = lattice_intersection(L, lattice_preimage(identity(X.rank) * X.p, module.sublattice(weight + 1)))
    ker_t = lattice_intersection(L, module.sublattice(weight - 1))
    return {"u": ker_u, "t": ker_t}


def branch_torsion(X: FGauge, weight: int, name: str = "") -> FGauge:
    """
    가중치 weight 에서 ker u + ker t 가 생성하는 부분 게이지

    p 로 죽는 가군에서는 ut = 0 이라 u·y 가 항상 t 로 죽는다. 그래서 가중치별 u-꼬임과
    t-꼬임의 합은 전체가 되고, 대신 생성 가중치에서 두 핵이 생성하는 부분을 쓴다.
    """
    kernels = torsion_generators(X, weight)
    vectors = lattice_sum(kernels["u"], kernels["t"])
    module = generated(X, vectors, weight, name=name or f"tors({X.name})")
    return sub(X, module, name=module.name)


class GaugeMap:
    """
    주변 공간 정수 행렬 Φ 로 주어진 게이지 사상 X → Y

    Φ(L^X_n) ⊂ L^Y_n, Φ(L'^X_n) ⊂ L'^Y_n 이고 공통 창에서 (G_YΦ − ΦG_X)(L^X_lo) ⊂ L'^Y_hi 이어야 한다.
    """

    def __init__(self, source: FGauge, target: FGauge, matrix, name: str = ""):
        _check_compatible(source, target)
        self.source = source
        self.target = target
        self.matrix = int_matrix(matrix, (target.rank, source.rank) if not source.rank * target.rank else None)
        if self.matrix.shape != (target.rank, source.rank):
            raise GaugeStructureError(f"사상 행렬 모양이 {(target.rank, source.rank)} 가 아닙니다",
                                      witness={"shape": list(self.matrix.shape)})
        self.name = name or f"{source.name}→{target.name}"
        self.lo, self.hi = _union(source.window, target.window)

    def verify(self) -> VerificationReport:
        Phi, X, Y = self.matrix, self.source.module, self.target.module
        report = VerificationReport(name=f"gauge map {self.name}")
        for n in range(self.lo - 1, self.hi + 2):
            if not lattice_contains_all(Y.lattice(n), product(Phi, X.lattice(n))):
                report.add("Φ(L_n) ⊂ L_n", weight=n)
            if not lattice_contains_all(Y.sublattice(n), product(Phi, X.sublattice(n))):
                report.add("Φ(L'_n) ⊂ L'_n", weight=n)
        G_X, G_Y = self.source.gluing_at(self.hi), self.target.gluing_at(self.hi)
        defect = product(G_Y, Phi) - product(Phi, G_X)
        if not lattice_contains_all(Y.sublattice(self.hi), product(defect, X.lattice(self.lo))):
            report.add("F∘Φ = Φ∘F", weight=self.hi)
        return report

    def image(self) -> GradedUTModule:
        Phi, X = self.matrix, self.source.module
        weights = range(self.lo, self.hi + 1)
        return GradedUTModule(X.p, self.target.rank, {n: product(Phi, X.lattice(n)) for n in weights},
                              name=f"im({self.name})")

    def kernel_lengths(self) -> Dict[int, int]:
        """가중치별 핵의 길이 (유한 조각)"""
        Phi, X, Y = self.matrix, self.source.module, self.target.module
        lengths = {}
        for n in range(self.lo, self.hi + 1):
            preimage = lattice_intersection(lattice_preimage(Phi, Y.sublattice(n)), X.lattice(n))
            lengths[n] = Subquotient(preimage, X.sublattice(n)).length(X.p)
        return lengths

    def is_injective(self) -> bool:
        return not any(self.kernel_lengths().values())

    def cokernel(self, name: str = "") -> FGauge:
        report = self.verify()
        if not report.passed:
            raise GaugeStructureError(f"{self.name}: 게이지 사상이 아닙니다",
                                      witness=[v.model_dump() for v in report.violations])
        return quotient(self.target, self.image(), name=name or f"coker({self.name})")


class GaugeAlgebra:
    """이름으로 고르는 게이지 구성"""

    _operations: Dict[str, Callable[..., FGauge]] = {
        "tensor": tensor,
        "sub": sub,
        "quotient": quotient,
        "twist": twist,
        "dual": dual,
    }

    @classmethod
    def apply(cls, op: str, *operands, **kwargs) -> FGauge:
        operation = cls._operations.get(op.lower())
        if not operation:
            raise ConfigurationError(f"게이지 연산 '{op}'를 찾을 수 없습니다", witness={"op": op})
        try:
            return operation(*operands, **kwargs)
        except GaugeStructureError as e:
            logger.error(f"게이지 연산 {op} 실패: {str(e)}")
            raise

    @classmethod
    def available_operations(cls) -> List[str]:
        return list(cls._operations.keys())


def gauge_algebra(op: str, *operands, **kwargs) -> FGauge:
    return GaugeAlgebra.apply(op, *operands, **kwargs)
