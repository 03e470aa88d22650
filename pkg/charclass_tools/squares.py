# charclass_tools/squares.py
"""
SW 단항식 위의 Sq (분해 원리)

천 근 x_j 에서 Sq²x = x², Sq¹x = 0 이므로 전체 Sq 는 x ↦ x + x² 이다.
기본 대칭 다항식 e_k 에 이를 대입하고 같은 차수 부분을 다시 대칭화하면 Sq^{2i}(w_{2k}) 를 얻는다.
단항식 위에서는 전체 Sq 의 곱셈성(Cartan)으로 확장한다.
"""
import logging
from functools import lru_cache
from typing import List

import sympy
from sympy import Poly, symbols
from sympy.polys.polyfuncs import symmetrize

from charclass_tools.base import SWPolynomial, w
from modules.exceptions import SyntomicCalcException

logger = logging.getLogger(__name__)


def _roots(r: int) -> List[sympy.Symbol]:
    return list(symbols(f"x1:{r + 1}"))


def _elementary(k: int, variables) -> sympy.Expr:
    x = sympy.Symbol("_t")
    generating = sympy.expand(sympy.Mul(*[1 + v * x for v in variables]))
    return generating.coeff(x, k)


def _root_degree_part(expr: sympy.Expr, roots, degree: int) -> sympy.Expr:
    poly = Poly(sympy.expand(expr), *roots)
    return sum((coeff * sympy.Mul(*[r ** e for r, e in zip(roots, monom)])
                for monom, coeff in poly.terms() if sum(monom) == degree), sympy.Integer(0))


def _resymmetrize(expr: sympy.Expr, roots) -> SWPolynomial:
    if expr == 0:
        return SWPolynomial.zero()
    names = [w(2 * j) for j in range(1, len(roots) + 1)]
    symmetric, remainder, _ = symmetrize(expr, *roots, formal=True, symbols=names)
    if remainder != 0:
        raise SyntomicCalcException(f"대칭이 아닌 중간 결과가 나왔습니다: {remainder}")
    return SWPolynomial(symmetric)


def _sq_monomial_by_roots(i: int, key) -> SWPolynomial:
    """단항식 전체를 근으로 펼친 뒤 한 번에 대칭화"""
    degree = SWPolynomial.monomial_degree(key)
    r = max(1, (degree + i) // 2)
    roots = _roots(r)
    squared = [v + v ** 2 for v in roots]
    total = sympy.Integer(1)
    for index, exponent in key:
        total *= _elementary(index // 2, squared) ** exponent
    return _resymmetrize(_root_degree_part(total, roots, (degree + i) // 2), roots)


@lru_cache(maxsize=None)
def _sq_generator(i: int, index: int) -> SWPolynomial:
    """Sq^{2i}(w_{2k}), index = 2k"""
    k = index // 2
    if i == 0:
        return SWPolynomial.variable(index)
    if i > k:
        return SWPolynomial.zero()
    return _sq_monomial_by_roots(2 * i, ((index, 1),))


def _total_sq_generator(index: int, bound: int) -> SWPolynomial:
    """Σ_{2j ≤ bound} Sq^{2j}(w_index)"""
    return sum((_sq_generator(j, index) for j in range(min(index, bound) // 2 + 1)), SWPolynomial.zero())


def sq_on_sw(i: int, poly: SWPolynomial) -> SWPolynomial:
    """
    Sq^i 를 SW 다항식에 적용

    홀수 i 는 0 (Sq¹ 이 정수 올림을 가진 류를 죽인다), Sq⁰ 은 항등.
    """
    if i < 0:
        return SWPolynomial.zero()
    if i % 2:
        return SWPolynomial.zero()
    if i == 0:
        return poly
    result = SWPolynomial.zero()
    for key in poly.monomials():
        degree = SWPolynomial.monomial_degree(key)
        if i > degree:
            continue
        total = SWPolynomial.one()
        for index, exponent in key:
            total = total * _total_sq_generator(index, i) ** exponent
        result = result + total.degree_part(degree + i)
    return result


def sq_by_splitting(i: int, poly: SWPolynomial) -> SWPolynomial:
    """Cartan 을 거치지 않고 단항식마다 근으로 직접 계산"""
    if i % 2 or i < 0:
        return SWPolynomial.zero()
    result = SWPolynomial.zero()
    for key in poly.monomials():
        if i > SWPolynomial.monomial_degree(key):
            continue
        result = result + (_sq_monomial_by_roots(i, key) if key else SWPolynomial.one())
    return result


def total_sq(poly: SWPolynomial, degree_bound: int) -> SWPolynomial:
    """Σ_i Sq^i(poly) (차수 degree_bound 까지)"""
    result = SWPolynomial.zero()
    for i in range(0, degree_bound + 1, 2):
        result = result + sq_on_sw(i, poly)
    return result


def wu_formula(i: int, index: int) -> SWPolynomial:
    """고전 Wu 공식: Sq^{2i} w_{2k} = Σ_t C(k-i+t-1, t) w_{2(i-t)} w_{2(k+t)}"""
    k = index // 2
    result = SWPolynomial.zero()
    for t in range(i + 1):
        coefficient = sympy.binomial(k - i + t - 1, t) % 2 if k - i + t - 1 >= 0 else (1 if t == 0 else 0)
        if coefficient:
            left = SWPolynomial.one() if i == t else SWPolynomial.variable(2 * (i - t))
            result = result + left * SWPolynomial.variable(2 * (k + t))
    return result
