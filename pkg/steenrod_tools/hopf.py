# steenrod_tools/hopf.py
"""
Cartan 여곱, 텐서곱 대수 구조, 대척사상

여곱은 생성원(β, P^i)의 여곱을 곱하여 얻는다.
텐서곱 곱셈은 Koszul 부호 (a⊗b)(c⊗d) = (-1)^{|b||c|} ac⊗bd 를 따른다.
"""
import logging
from functools import lru_cache
from typing import Callable, Dict, Tuple

from steenrod_tools.adem import reduce_word
from steenrod_tools.algebra import graded_sign, multiply
from steenrod_tools.base import BETA, Base, SteenrodElement, TensorElement, Terms, Word, add_into
from steenrod_tools.words import degree_of, from_sq

logger = logging.getLogger(__name__)


def letter_coproduct(letter: int, p: int, base: Base) -> Terms:
    """
    생성원 하나의 여곱

    Δβ = β⊗1 + 1⊗β, Δ(P^i) = Σ P^j⊗P^{i-j}.
    p = 2 이고 O 위에서는 τ Σ_{j<i} Sq^{2j+1}⊗Sq^{2i-2j-1} 가 더해진다.
    """
    if letter == BETA:
        return {(((BETA,), ()), 0): 1, (((), (BETA,)), 0): 1}
    terms: Terms = {}
    for j in range(letter + 1):
        left = (j,) if j else ()
        right = (letter - j,) if letter - j else ()
        add_into(terms, ((left, right), 0), 1, p)
    if p == 2 and base == Base.O:
        for j in range(letter):
            add_into(terms, ((from_sq([2 * j + 1]), from_sq([2 * letter - 2 * j - 1])), 1), 1, p)
    return terms


def _multiply_terms(s: Terms, t: Terms, p: int, base: Base) -> Terms:
    result: Terms = {}
    for ((a, b), e1), c1 in s.items():
        for ((c, d), e2), c2 in t.items():
            sign = graded_sign(p, degree_of(b, p), degree_of(c, p))
            for (ac, e3), c3 in reduce_word(p, base, a + c):
                for (bd, e4), c4 in reduce_word(p, base, b + d):
                    tau = e1 + e2 + e3 + e4
                    if base == Base.K and tau > 0:
                        continue
                    add_into(result, ((ac, bd), tau), sign * c1 * c2 * c3 * c4, p)
    return result


def tensor_multiply(s: TensorElement, t: TensorElement) -> TensorElement:
    """A⊗A 의 곱 (Koszul 부호 포함)"""
    s._check(t)
    return TensorElement(s.p, s.base, _multiply_terms(s.terms, t.terms, s.p, s.base))


@lru_cache(maxsize=4096)
def word_coproduct(p: int, base: Base, word: Word) -> Tuple:
    if not word:
        return (((((), ()), 0), 1),)
    head = letter_coproduct(word[0], p, base)
    tail = dict(word_coproduct(p, base, word[1:]))
    return tuple(sorted(_multiply_terms(head, tail, p, base).items()))


def coproduct(x: SteenrodElement) -> TensorElement:
    """Δ(x)"""
    result: Terms = {}
    for (word, tau), c in x.terms.items():
        for ((a, b), e), coeff in word_coproduct(x.p, x.base, word):
            add_into(result, ((a, b), e + tau), c * coeff, x.p)
    return TensorElement(x.p, x.base, result)


def coproduct_on_factor(t: TensorElement, index: int) -> TensorElement:
    """index 번째 텐서 인자에 Δ 를 적용 (인자 수가 하나 늘어남)"""
    result: Terms = {}
    for (words, tau), c in t.terms.items():
        for ((a, b), e), coeff in word_coproduct(t.p, t.base, words[index]):
            key = words[:index] + (a, b) + words[index + 1:]
            add_into(result, (key, tau + e), c * coeff, t.p)
    return TensorElement(t.p, t.base, result)


def as_tensor(x: SteenrodElement) -> TensorElement:
    """A 의 원소를 1-중 텐서로"""
    return TensorElement(x.p, x.base, {((w,), tau): c for (w, tau), c in x.terms.items()})


def opposite(t: TensorElement) -> TensorElement:
    """Δ^op: 두 인자를 Koszul 부호와 함께 교환"""
    result: Terms = {}
    for ((a, b), tau), c in t.terms.items():
        sign = graded_sign(t.p, degree_of(a, t.p), degree_of(b, t.p))
        add_into(result, ((b, a), tau), sign * c, t.p)
    return TensorElement(t.p, t.base, result)


def apply_each(t: TensorElement, f: Callable[[SteenrodElement], SteenrodElement]) -> TensorElement:
    """차수 보존 선형사상 f 를 모든 텐서 인자에 적용"""
    p, base = t.p, t.base
    result: Terms = {}
    for (words, tau), c in t.terms.items():
        partial: Dict = {((), tau): c}
        for w in words:
            image = f(SteenrodElement(p, base, {(w, 0): 1}))
            nxt: Terms = {}
            for (prefix, e1), c1 in partial.items():
                for (v, e2), c2 in image.terms.items():
                    add_into(nxt, (prefix + (v,), e1 + e2), c1 * c2, p)
            partial = nxt
        for key, coeff in partial.items():
            add_into(result, key, coeff, p)
    return TensorElement(p, base, result)


def multiply_out(t: TensorElement) -> SteenrodElement:
    """m: A⊗A -> A"""
    result = SteenrodElement.zero(t.p, t.base)
    for ((a, b), tau), c in t.terms.items():
        result = result + multiply(SteenrodElement(t.p, t.base, {(a, tau): c}),
                                   SteenrodElement(t.p, t.base, {(b, 0): 1}))
    return result


@lru_cache(maxsize=4096)
def _antipode_word(p: int, base: Base, word: Word) -> Tuple:
    if not word:
        return ((((), 0), 1),)
    total = SteenrodElement.zero(p, base)
    for ((a, b), e), c in word_coproduct(p, base, word):
        if not b:
            continue
        s_a = SteenrodElement(p, base, dict(_antipode_word(p, base, a)))
        total = total + multiply(s_a, SteenrodElement(p, base, {(b, e): c}))
    return tuple(sorted((-total).terms.items()))


def antipode(x: SteenrodElement) -> SteenrodElement:
    """
    대척사상 S

    S(1) = 1 이고 S(x) = -Σ_{b ≠ 1} S(a)·b (Δx = x⊗1 + Σ a⊗b) 로 재귀 계산한다.
    """
    result: Terms = {}
    for (word, tau), c in x.terms.items():
        for (w, e), coeff in _antipode_word(x.p, x.base, word):
            add_into(result, (w, e + tau), c * coeff, x.p)
    return SteenrodElement(x.p, x.base, result)
