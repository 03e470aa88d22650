# steenrod_tools/algebra.py
import logging
from typing import Dict, Optional

from steenrod_tools.adem import adem_reduce, reduce_word
from steenrod_tools.base import Base, SteenrodElement, Terms, Word, add_into
from steenrod_tools.words import bidegree_of, from_sq

logger = logging.getLogger(__name__)


def element(p: int, base, word: Word = (), coeff: int = 1, tau: int = 0) -> SteenrodElement:
    """단어 하나(임의)의 정준형 원소"""
    return adem_reduce({(tuple(word), tau): coeff}, p, base)


def sq(i: int, base=Base.K) -> SteenrodElement:
    """p = 2 의 Sq^i"""
    return element(2, base, from_sq([i]))


def multiply(x: SteenrodElement, y: SteenrodElement) -> SteenrodElement:
    """단어를 이어 붙인 뒤 Adem 환원"""
    x._check(y)
    p, base = x.p, x.base
    result: Terms = {}
    for (w1, e1), c1 in x.terms.items():
        for (w2, e2), c2 in y.terms.items():
            for (w, e), c in reduce_word(p, base, w1 + w2):
                if base == Base.K and e + e1 + e2 > 0:
                    continue
                add_into(result, (w, e + e1 + e2), c * c1 * c2, p)
    return SteenrodElement(p, base, result)


def counit(x: SteenrodElement) -> Dict[int, int]:
    """ε(x): 빈 단어의 계수"""
    return x.coefficient(())


def total_square(degree_bound: int, base=Base.K) -> SteenrodElement:
    """Σ_{i <= degree_bound} Sq^i (p = 2)"""
    result = SteenrodElement.zero(2, base)
    for i in range(degree_bound + 1):
        result = result + sq(i, base)
    return result


def homogeneous_bidegree(x: SteenrodElement) -> Optional[tuple]:
    """
    항들의 이중차수가 모두 같으면 그 값, 아니면 None

    τ 는 이중차수 (0, 1) 을 가진다.
    """
    bidegrees = set()
    for word, tau in x.terms:
        deg, wt = bidegree_of(word, x.p)
        bidegrees.add((deg, wt + tau))
    if len(bidegrees) > 1:
        return None
    return next(iter(bidegrees), None)


def graded_sign(p: int, degree_a: int, degree_b: int) -> int:
    if p == 2:
        return 1
    return -1 if (degree_a * degree_b) % 2 else 1

