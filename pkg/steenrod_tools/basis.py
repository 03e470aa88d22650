# steenrod_tools/basis.py
import logging
from functools import lru_cache
from typing import List, Optional, Tuple

from steenrod_tools.base import BETA, Word
from steenrod_tools.words import bidegree_of, encode

logger = logging.getLogger(__name__)


@lru_cache(maxsize=256)
def _admissible_up_to(p: int, max_degree: int) -> Tuple[Word, ...]:
    """차수 max_degree 이하의 모든 허용 단어"""
    words: List[Word] = []

    def extend(word: Word, degree: int, last_index: int, last_epsilon: int) -> None:
        # word 의 맨 왼쪽 P 가 P^{last_index}, 그 왼쪽의 β 여부를 last_epsilon 으로 붙여 나간다
        words.append(((BETA,) if last_epsilon else ()) + word)
        start = max(1, p * last_index + last_epsilon) if last_index else 1
        i = start
        while degree + last_epsilon + 2 * i * (p - 1) <= max_degree:
            new_word = ((BETA,) if last_epsilon else ()) + word
            new_degree = degree + last_epsilon + 2 * i * (p - 1)
            for epsilon in (0, 1):
                if new_degree + epsilon <= max_degree:
                    extend((i,) + new_word, new_degree, i, epsilon)
            i += 1

    for epsilon_0 in (0, 1):
        if epsilon_0 <= max_degree:
            extend((), 0, 0, epsilon_0)
    result = sorted(set(words), key=encode)
    logger.debug(f"허용 단어 열거: p={p}, 차수 <= {max_degree}, {len(result)}개")
    return tuple(result)


def admissible_basis(p: int, bidegree: Optional[Tuple[int, int]] = None,
                     max_degree: Optional[int] = None, degree: Optional[int] = None) -> List[Word]:
    """
    허용 단어 기저

    Args:
        p: 소수
        bidegree: (차수, 가중치) 가 정확히 일치하는 단어만
        max_degree: 차수 상한
        degree: 차수가 정확히 일치하는 단어만

    Returns:
        List[Word]: 부호화 튜플 순으로 정렬된 허용 단어 목록
    """
    if bidegree is not None:
        bound = bidegree[0]
    elif degree is not None:
        bound = degree
    elif max_degree is not None:
        bound = max_degree
    else:
        raise ValueError("bidegree, degree, max_degree 중 하나가 필요합니다")
    if bound < 0:
        return []

    words = _admissible_up_to(p, bound)
    if bidegree is not None:
        return [w for w in words if bidegree_of(w, p) == tuple(bidegree)]
    if degree is not None:
        return [w for w in words if bidegree_of(w, p)[0] == degree]
    return list(words)
