# charclass_tools/base.py
"""
F_2 위 스티펠-휘트니 다항식

변수 w_{2i} 는 이중차수 (2i, i) 이고 홀수 w 는 항상 0 이다.
"""
import logging
import re
from typing import Dict, Iterable, Mapping, Tuple

import sympy
from sympy import Poly, Symbol

from modules.exceptions import WordFormatError

logger = logging.getLogger(__name__)

_VARIABLE = re.compile(r"^w(\d+)$")


def w(i: int) -> Symbol:
    return Symbol(f"w{i}")


def variable_index(symbol: Symbol) -> int:
    match = _VARIABLE.match(symbol.name)
    if not match:
        raise WordFormatError(f"SW 변수가 아닙니다: {symbol}")
    return int(match.group(1))


def _reduce(expr) -> sympy.Expr:
    """전개 후 홀수 w 제거, 계수 mod 2"""
    expr = sympy.expand(sympy.sympify(expr))
    odd = {s: 0 for s in expr.free_symbols if variable_index(s) % 2}
    if odd:
        expr = sympy.expand(expr.subs(odd))
    gens = sorted(expr.free_symbols, key=variable_index)
    if not gens:
        return sympy.Integer(int(expr) % 2)
    poly = Poly(expr, *gens, modulus=2)
    return sympy.expand(sum((int(c) % 2) * sympy.Mul(*[g ** e for g, e in zip(gens, monom)])
                            for monom, c in poly.terms()))


class SWPolynomial:
    """w_2, w_4, … 의 F_2 계수 다항식"""

    __slots__ = ("expr",)

    def __init__(self, expr=0):
        self.expr = _reduce(expr)

    @classmethod
    def one(cls) -> "SWPolynomial":
        return cls(1)

    @classmethod
    def zero(cls) -> "SWPolynomial":
        return cls(0)

    @classmethod
    def variable(cls, i: int) -> "SWPolynomial":
        return cls(w(i))

    @property
    def variables(self) -> Tuple[Symbol, ...]:
        return tuple(sorted(self.expr.free_symbols, key=variable_index))

    def monomials(self) -> Dict[Tuple[Tuple[int, int], ...], int]:
        """{((변수 첨자, 지수), ...): 1}"""
        if self.expr == 0:
            return {}
        gens = self.variables
        if not gens:
            return {(): 1}
        result = {}
        for monom, c in Poly(self.expr, *gens, modulus=2).terms():
            if int(c) % 2:
                key = tuple((variable_index(g), e) for g, e in zip(gens, monom) if e)
                result[key] = 1
        return result

    @staticmethod
    def monomial_degree(key: Iterable[Tuple[int, int]]) -> int:
        return sum(i * e for i, e in key)

    def degree_part(self, degree: int) -> "SWPolynomial":
        return SWPolynomial(sum((self._monomial_expr(key) for key in self.monomials()
                                 if self.monomial_degree(key) == degree), sympy.Integer(0)))

    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted({self.monomial_degree(key) for key in self.monomials()}))

    def constant_term(self) -> int:
        return self.monomials().get((), 0)

    @staticmethod
    def _monomial_expr(key) -> sympy.Expr:
        return sympy.Mul(*[w(i) ** e for i, e in key])

    def is_zero(self) -> bool:
        return self.expr == 0

    def __add__(self, other) -> "SWPolynomial":
        other = other if isinstance(other, SWPolynomial) else SWPolynomial(other)
        return SWPolynomial(self.expr + other.expr)

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, other) -> "SWPolynomial":
        other = other if isinstance(other, SWPolynomial) else SWPolynomial(other)
        return SWPolynomial(self.expr * other.expr)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SWPolynomial":
        return SWPolynomial(self.expr ** k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SWPolynomial):
            other = SWPolynomial(other)
        return SWPolynomial(self.expr - other.expr).is_zero()

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.monomials())))

    def to_terms(self) -> Dict[str, int]:
        """희소 JSON 형식: {"w2^2*w4": 1, "1": 1}"""
        terms = {}
        for key in sorted(self.monomials(), key=lambda k: (self.monomial_degree(k), k)):
            name = "*".join(f"w{i}" if e == 1 else f"w{i}^{e}" for i, e in key) or "1"
            terms[name] = 1
        return terms

    @classmethod
    def from_terms(cls, terms: Mapping[str, int]) -> "SWPolynomial":
        expr = sympy.Integer(0)
        for name, c in terms.items():
            monomial = sympy.Integer(1)
            if name != "1":
                for factor in name.split("*"):
                    base, _, exponent = factor.partition("^")
                    if not _VARIABLE.match(base):
                        raise WordFormatError(f"SW 단항식을 해석할 수 없습니다: {name}")
                    monomial *= Symbol(base) ** (int(exponent) if exponent else 1)
            expr += c * monomial
        return cls(expr)

    def __repr__(self) -> str:
        return " + ".join(self.to_terms()) or "0"
