# charclass_tools/chern.py
"""천 류 -> SW 류 (w_{2i} = c̄_i, 홀수 w = 0) 와 휘트니 곱"""
import logging
import re
from typing import Sequence, Union

import sympy
from sympy import Symbol

from charclass_tools.base import SWPolynomial, w
from modules.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

_CHERN = re.compile(r"^c(\d+)$")


def c(i: int) -> Symbol:
    return Symbol(f"c{i}")


def chern_polynomial(rank: int) -> sympy.Expr:
    """계수 r 다발의 일반 전체 천 류 1 + c_1 + … + c_r"""
    return 1 + sum(c(i) for i in range(1, rank + 1))


def _total_chern(chern: Union[sympy.Expr, Sequence]) -> sympy.Expr:
    if isinstance(chern, (list, tuple)):
        return sympy.expand(sum(term * (c(i) if i else 1) for i, term in enumerate(chern)))
    return sympy.expand(sympy.sympify(chern))


def sw_from_chern(chern: Union[sympy.Expr, Sequence]) -> SWPolynomial:
    """
    전체 천 류 (c_i 변수의 다항식, 또는 계수 목록 [1, a_1, a_2, …]) 의 mod 2 환원

    Raises:
        ConfigurationError: c_0 ≠ 1
    """
    expr = _total_chern(chern)
    constant = expr.subs({s: 0 for s in expr.free_symbols})
    if constant != 1:
        raise ConfigurationError(f"전체 천 류의 상수항은 1 이어야 합니다: {constant}")
    substitution = {}
    for symbol in expr.free_symbols:
        match = _CHERN.match(symbol.name)
        if not match:
            raise ConfigurationError(f"천 류 변수가 아닙니다: {symbol}")
        substitution[symbol] = w(2 * int(match.group(1)))
    return SWPolynomial(expr.subs(substitution))


def line_bundle_sw() -> SWPolynomial:
    return sw_from_chern(chern_polynomial(1))


def whitney_product(first: SWPolynomial, second: SWPolynomial) -> SWPolynomial:
    """w(E⊕E') = w(E)·w(E')"""
    for total in (first, second):
        if total.constant_term() != 1:
            raise ConfigurationError(f"전체 SW 류의 상수항은 1 이어야 합니다: {total}")
    return first * second
