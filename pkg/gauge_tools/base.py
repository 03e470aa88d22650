# gauge_tools/base.py
"""
W(k)[u, t]/(ut − p) 위 가중치 등급 가군과 F-게이지

게이지는 Z_p-형식으로 저장한다. 가중치 n 마다 공통 주변 공간 Z^r 안의 격자 쌍 L'_n ⊂ L_n 이 있고
M_n = L_n / L'_n 이다. t 는 주변 공간의 항등 사상, u 는 p 배이다.
창 [lo, hi] 밖에서는 L_n = L_lo (n < lo), L_n = p^{n−hi}·L_hi (n > hi) 로 연장한다.
W(k) 가군은 기저 변환이므로 W(k) 위 길이는 Z_p 위 길이와 같다.
"""
import logging
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from gauge_tools.witt import WittRing
from models.report import VerificationReport
from modules.exceptions import ConfigurationError, GaugeStructureError
from modules.linalg import (Subquotient, identity, image_basis, int_matrix, lattice_contains_all, lattice_equal,
                            lattice_intersection, lattice_sum)

logger = logging.getLogger(__name__)

Window = Tuple[int, int]


def product(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """빈 내부 차원도 허용하는 정수 행렬 곱"""
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=object)
    return A.dot(B)


def _basis(lattice, rank: int) -> np.ndarray:
    if lattice is None:
        return np.zeros((rank, 0), dtype=object)
    lattice = int_matrix(lattice, None if np.size(lattice) else (rank, 0))
    if lattice.shape[0] != rank:
        raise GaugeStructureError(f"격자의 행 수가 주변 계수 {rank} 와 다릅니다: {lattice.shape}",
                                  witness={"shape": list(lattice.shape)})
    return image_basis(lattice)


class GradedUTModule:
    """
    격자 쌍으로 주어진 등급 W(k)[u, t]/(ut − p)-가군

    Args:
        p: 소수
        rank: 주변 공간 계수 r
        lattices: 가중치 → L_n 의 기저 (열벡터). 가중치는 연속이어야 한다.
        sublattices: 가중치 → L'_n 의 기저 (생략하면 0)

    Raises:
        GaugeStructureError: t, u 가 격자를 보존하지 않거나 L'_n ⊄ L_n 일 때
    """

    def __init__(self, p: int, rank: int, lattices: Dict[int, np.ndarray],
                 sublattices: Optional[Dict[int, np.ndarray]] = None, name: str = ""):
        if not lattices:
            raise GaugeStructureError("가중치 창이 비어 있습니다")
        weights = sorted(lattices)
        if weights != list(range(weights[0], weights[-1] + 1)):
            raise GaugeStructureError(f"가중치 창이 연속이 아닙니다: {weights}", witness={"weights": weights})
        sublattices = sublattices or {}
        if set(sublattices) - set(weights):
            raise GaugeStructureError("창 밖의 부분격자가 있습니다", witness={"weights": sorted(sublattices)})
        self.p = p
        self.rank = rank
        self.name = name
        self.lo, self.hi = weights[0], weights[-1]
        self._lattices = {n: _basis(lattices[n], rank) for n in weights}
        self._sublattices = {n: _basis(sublattices.get(n), rank) for n in weights}
        self.piece = lru_cache(maxsize=None)(self._piece)
        self.validate()

    def __repr__(self) -> str:
        return f"GradedUTModule({self.name!r}, p={self.p}, rank={self.rank}, window={self.window})"

    @property
    def window(self) -> Window:
        return self.lo, self.hi

    def lattice(self, n: int) -> np.ndarray:
        if n < self.lo:
            return self._lattices[self.lo]
        if n > self.hi:
            return self._lattices[self.hi] * self.p ** (n - self.hi)
        return self._lattices[n]

    def sublattice(self, n: int) -> np.ndarray:
        if n < self.lo:
            return self._sublattices[self.lo]
        if n > self.hi:
            return self._sublattices[self.hi] * self.p ** (n - self.hi)
        return self._sublattices[n]

    def _piece(self, n: int) -> Subquotient:
        return Subquotient(self.lattice(n), self.sublattice(n))

    @property
    def torsion_free(self) -> bool:
        return all(L.shape[1] == 0 for L in self._sublattices.values())

    def validate(self) -> None:
        for n in range(self.lo - 1, self.hi + 1):
            L, L1 = self.lattice(n), self.lattice(n + 1)
            S, S1 = self.sublattice(n), self.sublattice(n + 1)
            checks = (
                ("L'_n ⊂ L_n", lattice_contains_all(L, S)),
                ("t: L_{n+1} ⊂ L_n", lattice_contains_all(L, L1)),
                ("t: L'_{n+1} ⊂ L'_n", lattice_contains_all(S, S1)),
                ("u: p·L_n ⊂ L_{n+1}", lattice_contains_all(L1, L * self.p)),
                ("u: p·L'_n ⊂ L'_{n+1}", lattice_contains_all(S1, S * self.p)),
            )
            for condition, ok in checks:
                if not ok:
                    raise GaugeStructureError(f"{self.name}: 가중치 {n} 에서 {condition} 가 성립하지 않습니다",
                                              witness={"weight": n, "condition": condition})

    # ------------------------------------------------------------------
    # 조각과 유도 사상

    def moduli(self, n: int) -> List[int]:
        return list(self.piece(n).moduli)

    def length(self, n: int) -> int:
        """유한 부분의 Z_p-길이 (= F_q-차원)"""
        return self.piece(n).length(self.p)

    def free_rank(self, n: int) -> int:
        return self.piece(n).free_rank

    def is_zero(self, n: int) -> bool:
        return not self.moduli(n)

    def colength(self, n: int) -> int:
        """L_lo / L_n 의 Z_p-길이"""
        return Subquotient(self.lattice(self.lo), self.lattice(n)).length(self.p)

    def _induced(self, n: int, target: int, scale: int) -> np.ndarray:
        source, image = self.piece(n), self.piece(target)
        columns = [image.coordinates(source.generators[:, j] * scale) for j in range(len(source.moduli))]
        if not columns:
            return np.zeros((len(image.moduli), 0), dtype=object)
        return np.array(columns, dtype=object).T.reshape((len(image.moduli), len(columns)))

    def induced_u(self, n: int) -> np.ndarray:
        """u: M_n → M_{n+1} 의 부분몫 좌표 행렬"""
        return self._induced(n, n + 1, self.p)

    def induced_t(self, n: int) -> np.ndarray:
        """t: M_n → M_{n−1} 의 부분몫 좌표 행렬"""
        return self._induced(n, n - 1, 1)

    def arrow_matrix(self, arrow: str, n: int) -> np.ndarray:
        """가중치 n 에서 나가는 u 또는 t 의 좌표 행렬 (위수로 환원)"""
        if arrow == "u":
            return self._reduce(self.induced_u(n), n + 1)
        return self._reduce(self.induced_t(n), n - 1)

    def _reduce(self, matrix: np.ndarray, n: int) -> np.ndarray:
        moduli = self.moduli(n)
        out = matrix.copy()
        for i, m in enumerate(moduli):
            if m:
                out[i] = out[i] % m
        return out

    def is_iso(self, arrow: str, n: int) -> bool:
        """arrow ∈ {"u", "t"} 가 가중치 n 에서 나가는 사상으로 동형인지"""
        target = n + 1 if arrow == "u" else n - 1
        source, image = self.piece(n), self.piece(target)
        if source.invariant_factors != image.invariant_factors:
            return False
        scale = self.p if arrow == "u" else 1
        lattice = lattice_sum(self.lattice(n) * scale, self.sublattice(target))
        return lattice_equal(lattice, self.lattice(target))

    def is_zero_map(self, arrow: str, n: int) -> bool:
        return not self.arrow_matrix(arrow, n).any()

    def verify_relations(self, margin: int = 1) -> VerificationReport:
        """모든 가중치에서 t∘u = u∘t = p (부분몫 좌표)"""
        report = VerificationReport(name=f"ut = tu = p {self.name}")
        for n in range(self.lo - margin, self.hi + margin + 1):
            size = len(self.moduli(n))
            expected = self._reduce(identity(size) * self.p, n) if size else np.zeros((0, 0), dtype=object)
            tu = self._reduce(product(self.induced_t(n + 1), self.induced_u(n)), n) if size else expected
            ut = self._reduce(product(self.induced_u(n - 1), self.induced_t(n)), n) if size else expected
            if not np.array_equal(tu, expected):
                report.add("t∘u = p", weight=n, matrix=tu.tolist())
            if not np.array_equal(ut, expected):
                report.add("u∘t = p", weight=n, matrix=ut.tolist())
        return report

    def coherence_bounds(self) -> Window:
        """(w₋, w₊): n ≤ w₋ 에서 t, n ≥ w₊ 에서 u 가 동형이 되는 가장 좁은 경계"""
        w_plus = self.hi
        while w_plus > self.lo - 1 and self.is_iso("u", w_plus - 1):
            w_plus -= 1
        w_minus = self.lo
        while w_minus < self.hi + 1 and self.is_iso("t", w_minus + 1):
            w_minus += 1
        return w_minus, w_plus

    def dimensions(self, weights) -> List[int]:
        """가중치별 F_q-차원 (자유 부분이 있으면 ValueError)"""
        dims = []
        for n in weights:
            if self.free_rank(n):
                raise ValueError(f"가중치 {n} 조각이 유한 길이가 아닙니다")
            dims.append(self.length(n))
        return dims

    # ------------------------------------------------------------------
    # 가중치별 구성

    def extended(self, lo: int, hi: int) -> "GradedUTModule":
        """같은 가군을 더 넓은 창 [lo, hi] 로 다시 표현"""
        lo, hi = min(lo, self.lo), max(hi, self.hi)
        weights = range(lo, hi + 1)
        return GradedUTModule(self.p, self.rank, {n: self.lattice(n) for n in weights},
                              {n: self.sublattice(n) for n in weights}, name=self.name)

    def twist(self, k: int) -> "GradedUTModule":
        """{k}: 가중치 n 조각이 원래의 n + k 조각"""
        weights = range(self.lo - k, self.hi - k + 1)
        return GradedUTModule(self.p, self.rank, {n: self.lattice(n + k) for n in weights},
                              {n: self.sublattice(n + k) for n in weights}, name=f"{self.name}{{{k}}}")

    def scaled(self, c: int) -> "GradedUTModule":
        weights = range(self.lo, self.hi + 1)
        return GradedUTModule(self.p, self.rank, {n: self.lattice(n) * c for n in weights},
                              {n: self.sublattice(n) * c for n in weights}, name=f"{c}·{self.name}")

    def restrict(self, K: np.ndarray, name: str = "") -> "GradedUTModule":
        """주변 부분격자 K 와의 교집합 L_n ∩ K, L'_n ∩ K"""
        weights = range(self.lo, self.hi + 1)
        return GradedUTModule(self.p, self.rank,
                              {n: lattice_intersection(self.lattice(n), K) for n in weights},
                              {n: lattice_intersection(self.sublattice(n), K) for n in weights},
                              name=name or f"{self.name}∩K")

    def numerators(self) -> "GradedUTModule":
        """L'_n 을 버린 격자 가군 (L_n)"""
        weights = range(self.lo, self.hi + 1)
        return GradedUTModule(self.p, self.rank, {n: self.lattice(n) for n in weights}, name=self.name)

    def same_as(self, other: "GradedUTModule") -> bool:
        if self.p != other.p or self.rank != other.rank:
            return False
        for n in range(min(self.lo, other.lo), max(self.hi, other.hi) + 1):
            if not (lattice_equal(self.lattice(n), other.lattice(n))
                    and lattice_equal(self.sublattice(n), other.sublattice(n))):
                return False
        return True


class BKTwist(BaseModel):
    """브로일-키신 꼬임 {n}: 가중치를 n 만큼 옮기고 합성은 덧셈"""
    model_config = ConfigDict(frozen=True)

    n: int = 0

    def __add__(self, other: "BKTwist") -> "BKTwist":
        return BKTwist(n=self.n + other.n)

    def __neg__(self) -> "BKTwist":
        return BKTwist(n=-self.n)

    def apply(self, gauge: "FGauge") -> "FGauge":
        return gauge.twist(self.n)


class FGauge:
    """
    등급 가군 + 프로베니우스 반선형 붙임 F

    붙임은 t-국소화 M_lo 에서 u-국소화 M_hi 로 가는 동형이며 F(v) = G·φ(v) 이다.
    G 는 주변 공간의 정수 행렬로 G(L_lo) + L'_hi = L_hi, G(L'_lo) ⊂ L'_hi 를 만족해야 한다.
    창을 위로 d 만큼 넓히면 G 는 p^d·G 가 된다.

    Raises:
        ConfigurationError: 가군과 비트 환의 소수가 다를 때
        GaugeStructureError: 붙임이 동형이 아닐 때
    """

    def __init__(self, module: GradedUTModule, gluing, witt: WittRing, name: str = ""):
        if witt.p != module.p:
            raise ConfigurationError(f"소수가 다릅니다: 가군 p={module.p}, 비트 환 p={witt.p}",
                                     witness={"module": module.p, "witt": witt.p})
        self.module = module
        self.witt = witt
        self.name = name or module.name
        self.gluing = int_matrix(gluing, (module.rank, module.rank) if module.rank == 0 else None)
        if self.gluing.shape != (module.rank, module.rank):
            raise GaugeStructureError(f"붙임 행렬 모양이 {(module.rank, module.rank)} 가 아닙니다",
                                      witness={"shape": list(self.gluing.shape)})
        report = self.verify_gluing()
        if not report.passed:
            raise GaugeStructureError(f"{self.name}: 붙임이 국소화 사이의 동형이 아닙니다",
                                      witness=[v.model_dump() for v in report.violations])

    def __repr__(self) -> str:
        return f"FGauge({self.name!r}, {self.witt}, window={self.window})"

    @property
    def p(self) -> int:
        return self.module.p

    @property
    def rank(self) -> int:
        return self.module.rank

    @property
    def window(self) -> Window:
        return self.module.window

    def gluing_at(self, hi: int) -> np.ndarray:
        """창의 위 끝을 hi (≥ 현재) 로 잡았을 때의 G"""
        if hi < self.module.hi:
            raise ValueError(f"창을 줄일 수 없습니다: {hi} < {self.module.hi}")
        return self.gluing * self.p ** (hi - self.module.hi)

    def extended(self, lo: int, hi: int) -> "FGauge":
        module = self.module.extended(lo, hi)
        return FGauge(module, self.gluing_at(module.hi), self.witt, name=self.name)

    def twist(self, k: int) -> "FGauge":
        return FGauge(self.module.twist(k), self.gluing, self.witt, name=f"{self.name}{{{k}}}")

    def verify_gluing(self) -> VerificationReport:
        module, G = self.module, self.gluing
        report = VerificationReport(name=f"gluing {self.name}")
        L_lo, S_lo = module.lattice(module.lo), module.sublattice(module.lo)
        L_hi, S_hi = module.lattice(module.hi), module.sublattice(module.hi)
        if not lattice_contains_all(S_hi, G.dot(S_lo)):
            report.add("F(L'_lo) ⊂ L'_hi")
        if not lattice_equal(lattice_sum(G.dot(L_lo), S_hi), L_hi):
            report.add("F(L_lo) + L'_hi = L_hi")
        if module.piece(module.lo).invariant_factors != module.piece(module.hi).invariant_factors:
            report.add("M_lo ≅ M_hi", lo=module.piece(module.lo).invariant_factors,
                       hi=module.piece(module.hi).invariant_factors)
        return report

    def apply_gluing(self, vector) -> List[np.ndarray]:
        """W(k) 계수 벡터 (비트 환 원소의 목록) 에 F(v) = G·φ(v)"""
        witt = self.witt
        twisted = [witt.frobenius(c) for c in vector]
        result = []
        for i in range(self.rank):
            entry = witt.zero()
            for j in range(self.rank):
                if self.gluing[i, j]:
                    entry = witt.add(entry, int(self.gluing[i, j]) * twisted[j])
            result.append(entry)
        return result

    def verify_semilinearity(self) -> VerificationReport:
        """
        모든 e_i 와 W(k) 기저 λ, μ 에 대해 F(λ·μe_i) = φ(λ)·F(μe_i)

        G 는 정수 행렬로 저장되므로 이 항등식은 G 와 무관하게 φ 가 W(k) 위의 곱을 보존하는지와 같다.
        G 쪽 조건은 verify_gluing 이 본다.
        """
        witt = self.witt
        report = VerificationReport(name=f"semilinearity {self.name}")
        for i in range(self.rank):
            for s, mu in enumerate(witt.basis()):
                x = [mu if j == i else witt.zero() for j in range(self.rank)]
                image = self.apply_gluing(x)
                for k, scalar in enumerate(witt.basis()):
                    lhs = self.apply_gluing([witt.mul(scalar, c) for c in x])
                    rhs = [witt.mul(witt.frobenius(scalar), c) for c in image]
                    if not all(witt.equal(a, b) for a, b in zip(lhs, rhs)):
                        report.add("F(λx) = φ(λ)F(x)", basis=i, scalar=k, vector_scalar=s)
        return report

    def verify(self) -> VerificationReport:
        report = VerificationReport(name=f"fgauge {self.name}")
        report.merge(self.module.verify_relations())
        report.merge(self.verify_gluing())
        report.merge(self.verify_semilinearity())
        return report

    def same_as(self, other: "FGauge") -> bool:
        if self.witt != other.witt or not self.module.same_as(other.module):
            return False
        hi = max(self.module.hi, other.module.hi)
        return np.array_equal(self.gluing_at(hi), other.gluing_at(hi))
