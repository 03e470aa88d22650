# charclass_tools/models.py
"""
생성원 모델: 사영 공간 P^n, 곱 P^m×P^n, 토러스형 곡면

환은 F_2[ε, h]/(ε², h^{n+1}) 꼴이고 작용은 Sq²h = h², Sq¹h = 0, Sq^{≥1}ε = 0 의 Cartan 확장이다.
접다발 SW 류는 c(T) = Π(1+h_j)^{n_j+1} 의 mod 2 환원이다.
"""
import logging
import re
from typing import Callable, Dict, List, NamedTuple

import numpy as np
from sympy import Poly

from action_tools.action import from_generators
from action_tools.base import PDRing, SteenrodAction
from action_tools.rings import monomial_ring, truncated_polynomial_ring
from charclass_tools.base import SWPolynomial, variable_index
from modules.exceptions import ConfigurationError

logger = logging.getLogger(__name__)


class CharacteristicModel(NamedTuple):
    ring: PDRing
    action: SteenrodAction
    tangent: Dict[int, np.ndarray]

    @property
    def name(self) -> str:
        return self.ring.name

    def total_tangent(self) -> np.ndarray:
        total = self.ring.unit_vector()
        for vector in self.tangent.values():
            total = (total + vector) % self.ring.p
        return total


def project(ring: PDRing, x: np.ndarray, bidegree) -> np.ndarray:
    result = ring.zero()
    for k in ring.piece(bidegree):
        result[k] = x[k]
    return result


def split_by_degree(ring: PDRing, x: np.ndarray) -> Dict[int, np.ndarray]:
    """(2j, j) 조각별 성분, j ≥ 1"""
    result = {}
    for degree, weight in ring.bidegrees_present():
        if degree > 0 and degree == 2 * weight:
            part = project(ring, x, (degree, weight))
            if part.any():
                result[degree] = part
    return result


def _square_values(ring: PDRing, names: List[str]) -> Dict[str, Dict[int, np.ndarray]]:
    values: Dict[str, Dict[int, np.ndarray]] = {"e": {}}
    for name in names:
        x = ring.basis_vector(name)
        values[name] = {1: ring.multiply(x, x)}
    return values


def _tangent_classes(ring: PDRing, names: List[str], exponents: List[int]) -> Dict[int, np.ndarray]:
    total = ring.unit_vector()
    for name, n in zip(names, exponents):
        factor = (ring.unit_vector() + ring.basis_vector(name)) % ring.p
        total = ring.multiply(total, ring.power(factor, n + 1))
    return split_by_degree(ring, total)


def projective_space_model(n: int) -> CharacteristicModel:
    """F_2[ε,h]/(ε², h^{n+1}), 적분은 εh^n 위"""
    if n < 1:
        raise ConfigurationError(f"사영 공간의 차원은 1 이상이어야 합니다: n={n}")
    ring = truncated_polynomial_ring(2, [n])
    action = from_generators(ring, _square_values(ring, ["h"]))
    return CharacteristicModel(ring, action, _tangent_classes(ring, ["h"], [n]))


def product_space_model(m: int, n: int) -> CharacteristicModel:
    """P^m×P^n 의 퀴네트 모델 (ε 하나를 공유)"""
    if m < 1 or n < 1:
        raise ConfigurationError(f"사영 공간의 차원은 1 이상이어야 합니다: m={m}, n={n}")
    ring = truncated_polynomial_ring(2, [m, n])
    names = ["h1", "h2"]
    action = from_generators(ring, _square_values(ring, names))
    return CharacteristicModel(ring, action, _tangent_classes(ring, names, [m, n]))


def torus_model() -> CharacteristicModel:
    """F_2[ε, a, b]/(ε², a², b²), 자명한 접다발"""
    ring = monomial_ring(2, [("e", (1, 0), 1), ("a", (2, 1), 1), ("b", (2, 1), 1)], name="torus")
    action = from_generators(ring, {"e": {}, "a": {}, "b": {}})
    return CharacteristicModel(ring, action, {})


def evaluate_sw(poly: SWPolynomial, ring: PDRing, classes: Dict[int, np.ndarray]) -> np.ndarray:
    """w_{2i} 에 환 원소를 대입 (없는 류는 0)"""
    result = ring.zero()
    gens = poly.variables
    if not gens:
        return (poly.constant_term() * ring.unit_vector()) % ring.p
    for monom, c in Poly(poly.expr, *gens, modulus=2).terms():
        if not int(c) % 2:
            continue
        term = ring.unit_vector()
        for g, e in zip(gens, monom):
            value = classes.get(variable_index(g), ring.zero())
            term = ring.multiply(term, ring.power(value, e))
        result = (result + term) % ring.p
    return result


def tangent_sw_classes(model: CharacteristicModel) -> Dict[int, np.ndarray]:
    return dict(model.tangent)


class ModelFactory:
    """이름으로 생성원 모델을 만드는 팩토리 ("P2", "P2xP3", "torus")"""

    _builders: Dict[str, Callable[..., CharacteristicModel]] = {
        "projective": projective_space_model,
        "product": product_space_model,
        "torus": torus_model,
    }
    _pattern = re.compile(r"^P(\d+)(?:xP(\d+))?$")

    @classmethod
    def get_model(cls, name: str) -> CharacteristicModel:
        """지정된 이름의 모델 반환"""
        if name.lower() == "torus":
            return cls._builders["torus"]()
        match = cls._pattern.match(name)
        if not match:
            raise ConfigurationError(f"모델 '{name}'을(를) 찾을 수 없습니다. 사용 가능: {cls.available_models()}")
        m, n = match.group(1), match.group(2)
        if n is None:
            return cls._builders["projective"](int(m))
        return cls._builders["product"](int(m), int(n))

    @classmethod
    def available_models(cls) -> list[str]:
        """사용 가능한 모델 이름 목록 반환"""
        return [f"P{n}" for n in range(1, 7)] + ["PmxPn", "torus"]
