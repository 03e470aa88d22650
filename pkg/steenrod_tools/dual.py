# steenrod_tools/dual.py
"""
ξ_α 기저의 쌍대 호프 대수

쌍대 곱은 Cartan 여곱의 전치, 쌍대 여곱은 Adem 곱의 전치이며
모두 해당 차수의 유한 허용 기저에 대해 계산한다. 텐서 쌍짓기에는 부호가 없다.
"""
import logging
from collections import defaultdict
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from configs.steenrod_conf import steenrod_settings
from modules.exceptions import TruncationError
from steenrod_tools.adem import adem_reduce, reduce_word
from steenrod_tools.base import Base, DualElement, SteenrodElement, TensorElement, Terms, add_into, scalar_multiply
from steenrod_tools.basis import admissible_basis
from steenrod_tools.hopf import word_coproduct
from steenrod_tools.words import degree_of

logger = logging.getLogger(__name__)


def _bound(degree_bound: Optional[int]) -> int:
    return steenrod_settings.STEENROD_DUAL_DEGREE_BOUND if degree_bound is None else degree_bound


def _check_degree(degree: int, degree_bound: int) -> None:
    if degree > degree_bound:
        raise TruncationError(f"쌍대 계산 차수 {degree} 가 허용 범위 {degree_bound} 를 넘습니다")


@lru_cache(maxsize=128)
def _coproduct_transpose(p: int, base: Base, degree: int) -> Dict:
    """(α, β) -> [(γ, τ 지수, 계수)]: Δ(P^γ) 의 α⊗β 계수"""
    table = defaultdict(list)
    for gamma in admissible_basis(p, degree=degree):
        for ((a, b), e), c in word_coproduct(p, base, gamma):
            table[(a, b)].append((gamma, e, c))
    return dict(table)


@lru_cache(maxsize=128)
def _product_transpose(p: int, base: Base, degree: int) -> Dict:
    """γ -> [((α, β), τ 지수, 계수)]: P^α P^β 의 P^γ 계수"""
    table = defaultdict(list)
    for d in range(degree + 1):
        for alpha in admissible_basis(p, degree=d):
            for beta in admissible_basis(p, degree=degree - d):
                for (gamma, e), c in reduce_word(p, base, alpha + beta):
                    table[gamma].append(((alpha, beta), e, c))
    return dict(table)


def pair(x: SteenrodElement, xi: DualElement) -> Dict[int, int]:
    """⟨x, ξ⟩ ∈ F_p[τ]; x 는 Adem 환원 후 쌍짓는다"""
    x._check(SteenrodElement(xi.p, xi.base))
    x = adem_reduce(x)
    result: Dict[int, int] = {}
    dual_terms = xi.terms
    for (word, e1), c1 in x.terms.items():
        for (w, e2), c2 in dual_terms.items():
            if w != word:
                continue
            product = scalar_multiply({e1: c1}, {e2: c2}, x.p, x.base)
            for e, c in product.items():
                result[e] = (result.get(e, 0) + c) % x.p
    return {e: c for e, c in result.items() if c}


def dual_multiply(a: DualElement, b: DualElement, degree_bound: Optional[int] = None) -> DualElement:
    """ξ_α·ξ_β = Σ_γ ⟨Δ P^γ, ξ_α⊗ξ_β⟩ ξ_γ"""
    a._check(b)
    bound = _bound(degree_bound)
    p, base = a.p, a.base
    result: Terms = {}
    for (alpha, e1), c1 in a.terms.items():
        for (beta, e2), c2 in b.terms.items():
            degree = degree_of(alpha, p) + degree_of(beta, p)
            _check_degree(degree, bound)
            for gamma, e, c in _coproduct_transpose(p, base, degree).get((alpha, beta), []):
                add_into(result, (gamma, e + e1 + e2), c * c1 * c2, p)
    return DualElement(p, base, result)


def dual_coproduct(a: DualElement, degree_bound: Optional[int] = None) -> TensorElement:
    """Δ*(ξ_γ) = Σ ⟨P^α P^β, ξ_γ⟩ ξ_α⊗ξ_β (텐서 인자는 ξ 첨자 단어)"""
    bound = _bound(degree_bound)
    p, base = a.p, a.base
    result: Terms = {}
    for (gamma, e1), c1 in a.terms.items():
        degree = degree_of(gamma, p)
        _check_degree(degree, bound)
        for (alpha, beta), e, c in _product_transpose(p, base, degree).get(gamma, []):
            add_into(result, ((alpha, beta), e + e1), c * c1, p)
    return TensorElement(p, base, result)


def dual_counit(a: DualElement) -> Dict[int, int]:
    return a.coefficient(())


@lru_cache(maxsize=4096)
def _dual_antipode_word(p: int, base: Base, gamma: Tuple[int, ...], bound: int) -> Tuple:
    if not gamma:
        return ((((), 0), 1),)
    total = DualElement(p, base, {})
    for (alpha, beta), e, c in _product_transpose(p, base, degree_of(gamma, p)).get(gamma, []):
        if not beta:
            continue
        s_alpha = DualElement(p, base, dict(_dual_antipode_word(p, base, alpha, bound)))
        total = total + dual_multiply(s_alpha, DualElement.xi(p, base, beta, c, e), bound)
    return tuple(sorted((-total).terms.items()))


def dual_antipode(a: DualElement, degree_bound: Optional[int] = None) -> DualElement:
    """S*(ξ_γ) = -Σ_{β ≠ ∅} S*(ξ_α)·ξ_β"""
    bound = _bound(degree_bound)
    result: Terms = {}
    for (gamma, tau), c in a.terms.items():
        _check_degree(degree_of(gamma, a.p), bound)
        for (w, e), coeff in _dual_antipode_word(a.p, a.base, gamma, bound):
            add_into(result, (w, e + tau), c * coeff, a.p)
    return DualElement(a.p, a.base, result)


def sigma(x: SteenrodElement, degree_bound: Optional[int] = None) -> SteenrodElement:
    """
    쌍대 대척사상의 전치: σ(P^γ) = Σ_α ⟨P^γ, S*(ξ_α)⟩ P^α
    """
    bound = _bound(degree_bound)
    p, base = x.p, x.base
    result: Terms = {}
    for (gamma, tau), c in x.terms.items():
        degree = degree_of(gamma, p)
        _check_degree(degree, bound)
        for alpha in admissible_basis(p, degree=degree):
            for (w, e), coeff in _dual_antipode_word(p, base, alpha, bound):
                if w == gamma:
                    add_into(result, (alpha, e + tau), c * coeff, p)
    return SteenrodElement(p, base, result)


def pairing_matrix(p: int, base, bidegree: Tuple[int, int]) -> List[List[int]]:
    """이중차수 조각에서 허용 기저와 ξ 기저 사이의 쌍짓기 행렬 (τ^0 성분)"""
    words = admissible_basis(p, bidegree=bidegree)
    matrix = []
    for alpha in words:
        row = []
        for beta in words:
            value = pair(SteenrodElement(p, base, {(alpha, 0): 1}), DualElement.xi(p, base, beta))
            row.append(value.get(0, 0))
        matrix.append(row)
    return matrix
