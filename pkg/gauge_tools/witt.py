# gauge_tools/witt.py
"""
유한체 k = F_{p^f} 의 절단 비트 벡터 W_m(k)

(Z/p^m)[x]/(f̃) 로 표현하며 f̃ 의 근은 타이히뮐러 원소(1 의 (p^f−1) 제곱근)이다.
그래서 프로베니우스 φ 는 x ↦ x^p 로 정확히 주어진다.
원소는 (1, x, …, x^{f−1}) 계수의 길이 f 정수 벡터이다.
"""
import logging
from itertools import product
from typing import List, Sequence, Tuple

import numpy as np
from sympy import Poly, isprime, symbols

from modules.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

_x = symbols("x")


def residue_polynomial(p: int, f: int) -> List[int]:
    """F_p 위 차수 f 의 기약 모닉 다항식 중 사전순 첫 번째 (상수항 ≠ 0, 계수는 낮은 차수부터)"""
    for tail in product(range(p), repeat=f):
        coefficients = list(tail) + [1]
        if coefficients[0] == 0:
            continue
        if Poly(list(reversed(coefficients)), _x, modulus=p).is_irreducible:
            return coefficients
    raise ConfigurationError(f"F_{p} 위 차수 {f} 기약 다항식을 찾지 못했습니다", witness={"p": p, "f": f})


class WittRing:
    """
    W_m(F_{p^f}) = (Z/p^m)[x]/(f̃)

    Args:
        p: 소수
        f: 잉여체 차수 (k = F_{p^f})
        m: 절단 길이
    """

    def __init__(self, p: int, f: int = 1, m: int = 1):
        if not isprime(p):
            raise ConfigurationError(f"p 는 소수여야 합니다: {p}", witness={"p": p})
        if f < 1 or m < 1:
            raise ConfigurationError(f"f, m 은 1 이상이어야 합니다: f={f}, m={m}", witness={"f": f, "m": m})
        self.p = p
        self.f = f
        self.m = m
        self.modulus = p ** m
        self.q = p ** f
        self.residue_modulus = residue_polynomial(p, f)
        self.polynomial = self._teichmuller_modulus()
        self._frobenius_basis = [self.power(self.gen(), p * i) for i in range(f)]
        logger.debug(f"W_{m}(F_{self.q}) 모듈러스 {self.polynomial}")

    def __repr__(self) -> str:
        return f"WittRing(p={self.p}, f={self.f}, m={self.m})"

    def __eq__(self, other) -> bool:
        return isinstance(other, WittRing) and self.parameters == other.parameters

    def __hash__(self) -> int:
        return hash(self.parameters)

    @property
    def parameters(self) -> Tuple[int, int, int]:
        return self.p, self.f, self.m

    def _reduce(self, coefficients: List[int], polynomial: Sequence[int]) -> np.ndarray:
        c = list(coefficients)
        f = self.f
        for k in range(len(c) - 1, f - 1, -1):
            lead = c[k]
            if lead:
                for i in range(f + 1):
                    c[k - f + i] -= lead * polynomial[i]
        c = c[:f] + [0] * (f - len(c))
        return np.array([v % self.modulus for v in c], dtype=object)

    def _multiply(self, a: np.ndarray, b: np.ndarray, polynomial: Sequence[int]) -> np.ndarray:
        c = [0] * (2 * self.f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    c[i + j] += x * y
        return self._reduce(c, polynomial)

    def _teichmuller_modulus(self) -> List[int]:
        """
        임의의 올림 g 위에서 ζ = x^{q^{m−1}} 은 x 의 타이히뮐러 올림이고,
        f̃ = ∏_i (X − ζ^{p^i}) 의 계수는 Z/p^m 에 속한다.
        """
        g = self.residue_modulus
        f, N = self.f, self.modulus

        def power(a, e):
            result = np.array([1] + [0] * (f - 1), dtype=object)
            while e:
                if e & 1:
                    result = self._multiply(result, a, g)
                a = self._multiply(a, a, g)
                e >>= 1
            return result

        x = np.array([0, 1] + [0] * (f - 2), dtype=object) if f > 1 else np.array([-g[0] % N], dtype=object)
        zeta = power(x, self.q ** (self.m - 1))
        roots = [power(zeta, self.p ** i) for i in range(f)]
        # X 의 다항식, 계수는 R = (Z/p^m)[x]/(g) 의 원소
        poly = [np.array([1] + [0] * (f - 1), dtype=object)]
        for root in roots:
            shifted = [np.zeros(f, dtype=object)] + poly
            for i, c in enumerate(poly):
                shifted[i] = (shifted[i] - self._multiply(root, c, g)) % N
            poly = shifted
        if any(any(c[1:]) for c in poly):
            raise ConfigurationError("타이히뮐러 최소다항식의 계수가 Z/p^m 에 속하지 않습니다",
                                     witness={"p": self.p, "f": f, "m": self.m})
        return [int(c[0]) % N for c in poly]

    def element(self, coefficients: Sequence[int]) -> np.ndarray:
        if len(coefficients) > self.f:
            return self._reduce([int(c) for c in coefficients], self.polynomial)
        c = [int(v) % self.modulus for v in coefficients] + [0] * (self.f - len(coefficients))
        return np.array(c, dtype=object)

    def zero(self) -> np.ndarray:
        return np.zeros(self.f, dtype=object)

    def one(self) -> np.ndarray:
        return self.scalar(1)

    def scalar(self, c: int) -> np.ndarray:
        return self.element([c])

    def gen(self) -> np.ndarray:
        """x (f = 1 이면 f̃ 의 근인 정수)"""
        return self.element([0, 1])

    def basis(self) -> List[np.ndarray]:
        return [self.element([0] * i + [1]) for i in range(self.f)]

    def add(self, a, b) -> np.ndarray:
        return (np.asarray(a, dtype=object) + np.asarray(b, dtype=object)) % self.modulus

    def sub(self, a, b) -> np.ndarray:
        return (np.asarray(a, dtype=object) - np.asarray(b, dtype=object)) % self.modulus

    def neg(self, a) -> np.ndarray:
        return (-np.asarray(a, dtype=object)) % self.modulus

    def mul(self, a, b) -> np.ndarray:
        return self._multiply(a, b, self.polynomial)

    def power(self, a, e: int) -> np.ndarray:
        if e < 0:
            return self.power(self.inverse(a), -e)
        result, a = self.one(), np.asarray(a, dtype=object)
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def equal(self, a, b) -> bool:
        return not any(self.sub(a, b))

    def is_unit(self, a) -> bool:
        return any(self.residue(a))

    def inverse(self, a) -> np.ndarray:
        """단원군의 위수가 (q−1)·q^{m−1} 임을 이용한 역원"""
        if not self.is_unit(a):
            raise ZeroDivisionError(f"가역원이 아닙니다: {list(a)}")
        return self.power(a, (self.q - 1) * self.q ** (self.m - 1) - 1)

    def frobenius(self, a, times: int = 1) -> np.ndarray:
        """φ(Σ a_i x^i) = Σ a_i x^{pi}"""
        for _ in range(times):
            result = self.zero()
            for i, c in enumerate(a):
                if c:
                    result = self.add(result, c * self._frobenius_basis[i])
            a = result
        return np.asarray(a, dtype=object) % self.modulus

    def residue(self, a) -> Tuple[int, ...]:
        """k = F_p[x]/(f̃ mod p) 의 원소"""
        return tuple(int(c) % self.p for c in a)

    def teichmuller(self, residue: Sequence[int]) -> np.ndarray:
        """[a] = ã^{q^{m−1}} (ã 는 임의의 올림)"""
        return self.power(self.element(residue), self.q ** (self.m - 1))

    def validate(self) -> None:
        """
        φ^f = id 이고 φ 가 mod p 에서 p 제곱 사상이며 곱을 보존하는지 확인

        Raises:
            ConfigurationError: 조건이 깨졌을 때
        """
        basis = self.basis()
        for i, b in enumerate(basis):
            if not self.equal(self.frobenius(b, self.f), b):
                raise ConfigurationError(f"φ^{self.f} ≠ id (x^{i})", witness={"basis": i})
            if self.residue(self.frobenius(b)) != self.residue(self.power(b, self.p)):
                raise ConfigurationError(f"φ 가 mod p 에서 p 제곱이 아닙니다 (x^{i})", witness={"basis": i})
            for j, c in enumerate(basis):
                if not self.equal(self.frobenius(self.mul(b, c)), self.mul(self.frobenius(b), self.frobenius(c))):
                    raise ConfigurationError(f"φ 가 곱을 보존하지 않습니다 (x^{i}, x^{j})",
                                             witness={"basis": [i, j]})
