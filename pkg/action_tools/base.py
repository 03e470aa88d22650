# action_tools/base.py
"""
유한 이중차수 푸앵카레 쌍대 대수와 스틴로드 작용 테이블

원소는 기저 좌표의 정수 벡터이며, 구조 상수 S[i, j, k] 는 e_i·e_j 의 e_k 계수이다.
작용 행렬은 열 j 가 기저 e_j 의 상(image)이다.
"""
import logging
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from modules.exceptions import ActionTableError
from modules.linalg import fp_rank
from steenrod_tools.base import BETA

logger = logging.getLogger(__name__)

Bidegree = Tuple[int, int]


def koszul_sign(degree_a: int, degree_b: int) -> int:
    return -1 if (degree_a * degree_b) % 2 else 1


class PDRing:
    """
    F_p 위 유한 이중차수 가환 대수 (차원 d 이면 최고 조각은 (2d+1, d))

    Args:
        p: 소수
        dim: 다양체 차원 d
        labels: 기저 이름
        bidegrees: 기저별 (차수, 가중치)
        structure: (n, n, n) 구조 상수
        trace: 최고 조각 위의 적분 함수 (길이 n)
    """

    def __init__(self, p: int, dim: int, labels: Sequence[str], bidegrees: Sequence[Bidegree],
                 structure, trace: Sequence[int], name: str = ""):
        self.p = p
        self.dim = dim
        self.name = name
        self.labels = list(labels)
        self.bidegrees: List[Bidegree] = [tuple(b) for b in bidegrees]
        n = len(self.labels)
        structure = np.array(structure, dtype=np.int64)
        if structure.shape != (n, n, n):
            raise ActionTableError(f"구조 상수 모양이 {(n, n, n)} 가 아닙니다: {structure.shape}",
                                   witness={"entry": "structure", "shape": list(structure.shape)})
        if len(self.bidegrees) != n or len(trace) != n:
            raise ActionTableError("기저, 이중차수, 적분 벡터의 길이가 다릅니다",
                                   witness={"entry": "basis", "lengths": [n, len(self.bidegrees), len(trace)]})
        self.structure = structure % p
        self.trace = np.array(trace, dtype=np.int64) % p

    @property
    def rank(self) -> int:
        return len(self.labels)

    @property
    def top_bidegree(self) -> Bidegree:
        return 2 * self.dim + 1, self.dim

    def zero(self) -> np.ndarray:
        return np.zeros(self.rank, dtype=np.int64)

    def basis_vector(self, index) -> np.ndarray:
        if isinstance(index, str):
            index = self.labels.index(index)
        v = self.zero()
        v[index] = 1
        return v

    def vector(self, coefficients: Dict[str, int]) -> np.ndarray:
        v = self.zero()
        for label, c in coefficients.items():
            v[self.labels.index(label)] += c
        return v % self.p

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.structure) % self.p

    def power(self, x: np.ndarray, k: int) -> np.ndarray:
        result = self.unit_vector()
        for _ in range(k):
            result = self.multiply(result, x)
        return result

    def integrate(self, x: np.ndarray) -> int:
        return int(np.dot(self.trace, x) % self.p)

    def piece(self, bidegree: Bidegree) -> List[int]:
        return [k for k, b in enumerate(self.bidegrees) if b == tuple(bidegree)]

    def bidegrees_present(self) -> List[Bidegree]:
        return sorted(set(self.bidegrees))

    def support_bidegrees(self, x: np.ndarray) -> List[Bidegree]:
        return sorted({self.bidegrees[k] for k in range(self.rank) if x[k] % self.p})

    def in_piece(self, x: np.ndarray, bidegree: Bidegree) -> bool:
        return all(b == tuple(bidegree) for b in self.support_bidegrees(x))

    @cached_property
    def unit_index(self) -> int:
        identity = np.eye(self.rank, dtype=np.int64)
        for u in range(self.rank):
            if np.array_equal(self.structure[u], identity) and np.array_equal(self.structure[:, u, :], identity):
                return u
        raise ActionTableError("단위원인 기저 원소가 없습니다", witness={"entry": "unit"})

    def unit_vector(self) -> np.ndarray:
        return self.basis_vector(self.unit_index)

    def format(self, x: np.ndarray) -> str:
        parts = []
        for k in range(self.rank):
            c = int(x[k] % self.p)
            if c:
                parts.append(self.labels[k] if c == 1 else f"{c}*{self.labels[k]}")
        return " + ".join(parts) or "0"

    def check(self) -> None:
        """
        구조 검사: 이중차수 가법성, 단위원, 결합법칙, 차수 가환성, 최고 조각

        Raises:
            ActionTableError: 위반한 구조 상수를 witness 로 가진다
        """
        n, S = self.rank, self.structure
        for i, j, k in zip(*np.nonzero(S)):
            a, b, c = self.bidegrees[i], self.bidegrees[j], self.bidegrees[k]
            if (a[0] + b[0], a[1] + b[1]) != c:
                raise ActionTableError(
                    f"구조 상수가 이중차수를 보존하지 않습니다: {self.labels[i]}·{self.labels[j]} -> {self.labels[k]}",
                    witness={"entry": "structure", "index": [int(i), int(j), int(k)]})
        _ = self.unit_index
        for i in range(n):
            for j in range(n):
                sign = koszul_sign(self.bidegrees[i][0], self.bidegrees[j][0])
                if not np.array_equal(S[i, j] % self.p, (sign * S[j, i]) % self.p):
                    raise ActionTableError(f"차수 가환성이 깨졌습니다: {self.labels[i]}, {self.labels[j]}",
                                           witness={"entry": "commutativity", "index": [i, j]})
        left = np.einsum("ijm,mkl->ijkl", S, S) % self.p
        right = np.einsum("jkm,iml->ijkl", S, S) % self.p
        bad = np.argwhere(left != right)
        if len(bad):
            i, j, k, _ = (int(v) for v in bad[0])
            raise ActionTableError(f"결합법칙이 깨졌습니다: {self.labels[i]}, {self.labels[j]}, {self.labels[k]}",
                                   witness={"entry": "associativity", "index": [i, j, k]})
        top = self.piece(self.top_bidegree)
        if len(top) != 1:
            raise ActionTableError(f"최고 조각 {self.top_bidegree} 의 랭크가 1 이 아닙니다: {len(top)}",
                                   witness={"entry": "top", "rank": len(top)})
        off_top = [k for k in range(n) if self.trace[k] and k not in top]
        if off_top or not self.trace[top[0]]:
            raise ActionTableError("적분 함수는 최고 조각에서만 0 이 아니어야 합니다",
                                   witness={"entry": "trace", "index": off_top or top})

    def pairing_matrix(self, bidegree: Bidegree) -> List[List[int]]:
        """H^{a,b} × H^{2d+1-a, d-b} 의 컵곱 쌍짓기 행렬"""
        a, b = bidegree
        rows = self.piece((a, b))
        columns = self.piece((self.top_bidegree[0] - a, self.top_bidegree[1] - b))
        return [[self.integrate(self.multiply(self.basis_vector(i), self.basis_vector(j))) for j in columns]
                for i in rows]

    def degenerate_pieces(self) -> List[Bidegree]:
        """쌍짓기가 완전하지 않은 이중차수 목록"""
        result = []
        for bidegree in self.bidegrees_present():
            matrix = self.pairing_matrix(bidegree)
            rows = len(matrix)
            columns = len(self.piece((self.top_bidegree[0] - bidegree[0], self.top_bidegree[1] - bidegree[1])))
            if rows != columns or fp_rank(matrix, self.p, columns) != rows:
                result.append(bidegree)
        return result

    def is_perfect(self) -> bool:
        return not self.degenerate_pieces()


class SteenrodAction:
    """
    PDRing 위 β 와 P^i 의 작용 테이블 (p = 2 에서 P^i = Sq^{2i})

    powers 에 없는 P^i 는 0 으로 작용한다. powers[0] 이 주어지면 검증 대상이 된다.
    """

    def __init__(self, ring: PDRing, beta, powers: Dict[int, object]):
        self.ring = ring
        n = ring.rank
        self.beta = self._matrix(beta, "beta")
        self.powers: Dict[int, np.ndarray] = {}
        for i, matrix in powers.items():
            i = int(i)
            if i < 0:
                raise ActionTableError(f"P^{i} 의 첨자는 음수일 수 없습니다", witness={"entry": f"P{i}"})
            self.powers[i] = self._matrix(matrix, f"P{i}")
        self._zero = np.zeros((n, n), dtype=np.int64)

    def _matrix(self, matrix, entry: str) -> np.ndarray:
        n = self.ring.rank
        try:
            array = np.array(matrix, dtype=np.int64)
        except (TypeError, ValueError) as e:
            raise ActionTableError(f"작용 테이블 {entry} 를 정수 행렬로 읽을 수 없습니다: {str(e)}",
                                   witness={"entry": entry})
        if array.shape != (n, n):
            raise ActionTableError(f"작용 테이블 {entry} 의 모양이 {(n, n)} 가 아닙니다: {array.shape}",
                                   witness={"entry": entry, "shape": list(array.shape)})
        return array % self.ring.p

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def max_index(self) -> int:
        """P^i 가 0 이 아닐 수 있는 최대 i"""
        return self.ring.top_bidegree[0] // (2 * (self.p - 1)) + 1

    def operator(self, letter: int) -> np.ndarray:
        if letter == BETA:
            return self.beta
        return self.powers.get(letter, self._zero)

    def power(self, i: int) -> np.ndarray:
        """P^i (i = 0 이면 테이블이 없을 때 항등)"""
        if i == 0 and 0 not in self.powers:
            return np.eye(self.ring.rank, dtype=np.int64)
        return self.powers.get(i, self._zero)

    def apply(self, letter: int, x: np.ndarray) -> np.ndarray:
        return self.operator(letter).dot(x) % self.p

    def apply_word(self, word: Sequence[int], x: np.ndarray) -> np.ndarray:
        """오른쪽 문자부터 적용"""
        for letter in reversed(tuple(word)):
            x = self.apply(letter, x)
        return x

    def sq(self, k: int, x: np.ndarray) -> np.ndarray:
        """p = 2 의 Sq^k"""
        if k == 0:
            return x % 2
        if k % 2:
            return self.apply_word((BETA, k // 2) if k > 1 else (BETA,), x)
        return self.apply(k // 2, x)

    def total_square(self, x: np.ndarray) -> np.ndarray:
        result = self.ring.zero()
        for k in range(self.ring.top_bidegree[0] + 1):
            result = (result + self.sq(k, x)) % 2
        return result


class PDRingModN:
    """
    Z/2^n 위로 올린 PDRing: 구조 상수, 복슈타인 β_n, 적분, 그리고 mod 2 환원 위의 작용

    [2^{n-1}] 는 좌표에 2^{n-1} 을 곱하는 사상이다 (자유 모듈).
    """

    def __init__(self, level: int, dim: int, labels: Sequence[str], bidegrees: Sequence[Bidegree],
                 structure, trace: Sequence[int], bockstein, action_tables: Optional[Dict] = None,
                 name: str = ""):
        self.level = level
        self.modulus = 2 ** level
        self.dim = dim
        self.name = name
        self.labels = list(labels)
        self.bidegrees: List[Bidegree] = [tuple(b) for b in bidegrees]
        n = len(self.labels)
        self.structure = np.array(structure, dtype=np.int64).reshape((n, n, n)) % self.modulus
        self.trace = np.array(trace, dtype=np.int64) % self.modulus
        self.bockstein = np.array(bockstein, dtype=np.int64).reshape((n, n)) % self.modulus
        self.action_tables = action_tables
        self._reduction: Optional[PDRing] = None
        self._action: Optional[SteenrodAction] = None

    @property
    def rank(self) -> int:
        return len(self.labels)

    @property
    def top_bidegree(self) -> Bidegree:
        return 2 * self.dim + 1, self.dim

    def zero(self) -> np.ndarray:
        return np.zeros(self.rank, dtype=np.int64)

    def basis_vector(self, index) -> np.ndarray:
        if isinstance(index, str):
            index = self.labels.index(index)
        v = self.zero()
        v[index] = 1
        return v

    def vector(self, coefficients: Dict[str, int]) -> np.ndarray:
        v = self.zero()
        for label, c in coefficients.items():
            v[self.labels.index(label)] += c
        return v % self.modulus

    def piece(self, bidegree: Bidegree) -> List[int]:
        return [k for k, b in enumerate(self.bidegrees) if b == tuple(bidegree)]

    def in_piece(self, x: np.ndarray, bidegree: Bidegree) -> bool:
        return all(self.bidegrees[k] == tuple(bidegree) for k in range(self.rank) if x[k] % self.modulus)

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.structure) % self.modulus

    def beta_n(self, x: np.ndarray) -> np.ndarray:
        return self.bockstein.dot(x) % self.modulus

    def integrate(self, x: np.ndarray) -> int:
        return int(np.dot(self.trace, x) % self.modulus)

    def reduce(self, x: np.ndarray) -> np.ndarray:
        return np.array(x, dtype=np.int64) % 2

    def lift_half(self, v: np.ndarray) -> np.ndarray:
        """[2^{n-1}]: mod 2 벡터를 2^{n-1} 배하여 Z/2^n 으로"""
        return (2 ** (self.level - 1) * (np.array(v, dtype=np.int64) % 2)) % self.modulus

    def reduction(self) -> PDRing:
        if self._reduction is None:
            self._reduction = PDRing(2, self.dim, self.labels, self.bidegrees, self.structure % 2, self.trace % 2,
                                     name=f"{self.name} mod 2")
        return self._reduction

    def action(self) -> Optional[SteenrodAction]:
        if self._action is None and self.action_tables is not None:
            self._action = SteenrodAction(self.reduction(), self.action_tables["beta"], self.action_tables["powers"])
        return self._action

    def attach_action(self, action: SteenrodAction) -> "PDRingModN":
        """mod 2 환원 위의 작용 테이블 지정"""
        self.action_tables = {"beta": action.beta, "powers": dict(action.powers)}
        self._action = None
        return self

    def with_bockstein(self, bockstein) -> "PDRingModN":
        """β_n 테이블만 바꾼 사본"""
        return PDRingModN(self.level, self.dim, self.labels, self.bidegrees, self.structure, self.trace,
                          bockstein, self.action_tables, name=self.name)

    def format(self, x: np.ndarray) -> str:
        parts = []
        for k in range(self.rank):
            c = int(x[k] % self.modulus)
            if c:
                parts.append(self.labels[k] if c == 1 else f"{c}*{self.labels[k]}")
        return " + ".join(parts) or "0"
