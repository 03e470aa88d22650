# steenrod_tools/adem.py
"""
Adem 관계식에 의한 허용 단어 정준형 환원

가장 왼쪽의 비허용 인접쌍부터 다시 쓰며, 단어 단위 결과는 lru_cache 로
메모이제이션한다 (lru_cache 는 내부적으로 동기화된다).
"""
import logging
from functools import lru_cache
from math import comb
from typing import List, Mapping, Optional, Tuple, Union

from configs.steenrod_conf import steenrod_settings
from steenrod_tools.base import BETA, Base, SteenrodElement, Terms, Word, add_into, as_base, check_prime
from steenrod_tools.words import from_sq, to_sq

logger = logging.getLogger(__name__)

# (계수, τ 지수, 대체 단어)
Rewrite = Tuple[int, int, Word]


def binomial_mod(n: int, k: int, p: int) -> int:
    """Lucas 정리로 계산한 C(n, k) mod p"""
    if k < 0 or n < 0 or k > n:
        return 0
    result = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        result = result * comb(ni, ki) % p
        n //= p
        k //= p
    return result


def adem_sq(a: int, b: int, base: Base) -> List[Tuple[int, int, Tuple[int, int]]]:
    """
    p = 2, 0 < a < 2b 에서 Sq^a Sq^b 의 전개

    Returns:
        [(계수, τ 지수, (Sq 지수, Sq 지수)), ...]

    Note:
        a, b 모두 짝수이면 k 에서는 짝수 i 만, O 에서는 모든 i 에 τ^{i mod 2} 를 곱한다.
        a 짝수 b 홀수이면 모든 i, a 홀수 b 짝수이면 짝수 i, 둘 다 홀수이면 홀수 i.
    """
    result = []
    for i in range(a // 2 + 1):
        if a % 2 == 0 and b % 2 == 0:
            if i % 2 and base == Base.K:
                continue
            tau = i % 2
        elif a % 2 == 0:
            tau = 0
        elif b % 2 == 0:
            if i % 2:
                continue
            tau = 0
        else:
            if i % 2 == 0:
                continue
            tau = 0
        c = binomial_mod(b - i - 1, a - 2 * i, 2)
        if c:
            result.append((c, tau, (a + b - i, i)))
    return result


def adem_pp(a: int, b: int, p: int) -> List[Rewrite]:
    """홀수 p, 0 < a < pb 에서 P^a P^b"""
    result = []
    for i in range(a // p + 1):
        c = (-1) ** (a + i) * binomial_mod((p - 1) * (b - i) - 1, a - p * i, p)
        if c % p:
            result.append((c % p, 0, _letters(a + b - i, i)))
    return result


def adem_pbp(a: int, b: int, p: int) -> List[Rewrite]:
    """
    홀수 p, 0 < a <= pb 에서 P^a β P^b

    Note:
        두 번째 합의 이항계수 아래 첨자는 a - pi - 1 이다.
    """
    result = []
    for i in range(a // p + 1):
        c = (-1) ** (a + i) * binomial_mod((p - 1) * (b - i), a - p * i, p)
        if c % p:
            result.append((c % p, 0, (BETA,) + _letters(a + b - i, i)))
    for i in range((a - 1) // p + 1):
        c = (-1) ** (a + i - 1) * binomial_mod((p - 1) * (b - i) - 1, a - p * i - 1, p)
        if c % p:
            result.append((c % p, 0, _letters(a + b - i) + (BETA,) + _letters(i)))
    return result


def _letters(*indices: int) -> Word:
    return tuple(i for i in indices if i > 0)


def first_inadmissible(word: Word, p: int) -> Optional[Tuple[int, int, List[Rewrite]]]:
    """
    가장 왼쪽 비허용 위치와 그 다시쓰기

    Returns:
        (시작, 끝, 다시쓰기 목록) 또는 허용 단어이면 None. 다시쓰기는 word[시작:끝] 를 대체한다.
    """
    for j in range(len(word) - 1):
        a, b = word[j], word[j + 1]
        if a == BETA and b == BETA:
            return j, j + 2, []
        if a != BETA and b != BETA and a < p * b:
            return j, j + 2, adem_pp(a, b, p)
        if a != BETA and b == BETA and j + 2 < len(word) and word[j + 2] != BETA and a <= p * word[j + 2]:
            return j, j + 3, adem_pbp(a, word[j + 2], p)
    return None


def _reduce_sq(sequence: List[int], base: Base) -> Optional[List[Tuple[int, int, List[int]]]]:
    for j in range(len(sequence) - 1):
        a, b = sequence[j], sequence[j + 1]
        if a < 2 * b:
            return [(c, tau, sequence[:j] + list(pair) + sequence[j + 2:]) for c, tau, pair in adem_sq(a, b, base)]
    return None


@lru_cache(maxsize=steenrod_settings.STEENROD_REDUCE_CACHE_SIZE)
def reduce_word(p: int, base: Base, word: Word) -> Tuple[Tuple[Tuple[Word, int], int], ...]:
    """단어 하나의 정준형: ((허용 단어, τ 지수), 계수) 튜플"""
    result: Terms = {}
    if p == 2:
        rewrites = _reduce_sq(to_sq(word), base)
        if rewrites is None:
            return (((word, 0), 1),)
        expansions = [(c, tau, from_sq(seq)) for c, tau, seq in rewrites]
    else:
        found = first_inadmissible(word, p)
        if found is None:
            return (((word, 0), 1),)
        start, stop, rewrites = found
        expansions = [(c, tau, word[:start] + replacement + word[stop:]) for c, tau, replacement in rewrites]

    for c, tau, new_word in expansions:
        for (w, e), coeff in reduce_word(p, base, new_word):
            if base == Base.K and e + tau > 0:
                continue
            add_into(result, (w, e + tau), c * coeff, p)
    logger.debug(f"Adem 환원: {word} -> {len(result)}개 항")
    return tuple(sorted(result.items()))


def adem_reduce(x: Union[SteenrodElement, Mapping, Word], p: Optional[int] = None, base=None) -> SteenrodElement:
    """
    임의의 단어 선형결합을 정준형으로 환원

    Args:
        x: SteenrodElement, {(단어, τ 지수): 계수} 사전, 또는 단어 하나
        p, base: x 가 원소가 아닐 때 필요

    Returns:
        SteenrodElement: 허용 단어 기저의 정준형
    """
    if isinstance(x, SteenrodElement):
        p, base, terms = x.p, x.base, x.terms
    else:
        if p is None or base is None:
            raise ValueError("단어 조합을 환원하려면 p 와 base 가 필요합니다")
        terms = {(tuple(x), 0): 1} if isinstance(x, tuple) else dict(x)
    check_prime(p)
    base = as_base(base)

    result: Terms = {}
    for (word, tau), coeff in terms.items():
        for (w, e), c in reduce_word(p, base, tuple(word)):
            if base == Base.K and e + tau > 0:
                continue
            add_into(result, (w, e + tau), c * coeff, p)
    return SteenrodElement(p, base, result)
