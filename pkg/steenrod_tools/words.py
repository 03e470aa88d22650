# steenrod_tools/words.py
"""단어의 이중차수, 허용성, 부호화, 텍스트 표기"""
import logging
import re
from typing import Dict, List, Sequence, Tuple

from modules.exceptions import WordFormatError
from steenrod_tools.base import BETA, Base, Terms, Word, as_base

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\s*(?:(Sq)\^?(\d+)|(P)\^?(\d+)|(beta|β|b)|(1))\s*")
_TERM = re.compile(r"^\s*(?:(\d+)\s*\*?\s*)?(?:(tau|τ)(?:\^(\d+))?\s*\*?\s*)?(.*?)\s*$")


def bidegree_of(word: Sequence[int], p: int) -> Tuple[int, int]:
    """(차수, 가중치): β 는 (1, 0), P^i 는 (2i(p-1), i(p-1))"""
    deg, wt = 0, 0
    for letter in word:
        if letter == BETA:
            deg += 1
        else:
            deg += 2 * letter * (p - 1)
            wt += letter * (p - 1)
    return deg, wt


def degree_of(word: Sequence[int], p: int) -> int:
    return bidegree_of(word, p)[0]


def is_admissible(word: Sequence[int], p: int) -> bool:
    """i_{j+1} >= p·i_j + ε_j, 인접한 β 불가"""
    for j in range(len(word) - 1):
        a, b = word[j], word[j + 1]
        if a == BETA and b == BETA:
            return False
        if a != BETA and b != BETA and a < p * b:
            return False
        if a != BETA and b == BETA and j + 2 < len(word) and word[j + 2] != BETA and a <= p * word[j + 2]:
            return False
    return True


def encode(word: Sequence[int]) -> Tuple[int, ...]:
    """
    허용 단어를 (r, ε_r, i_r, ..., ε_1, i_1, ε_0) 로 부호화

    인접 β 가 있는 단어는 비교용 대체 키 (-1, 문자들...) 를 돌려준다.
    """
    letters = list(word)
    encoded: List[int] = []
    epsilon = 0
    if letters and letters[-1] == BETA:
        epsilon = 1
        letters.pop()
    encoded.append(epsilon)
    while letters:
        i = letters.pop()
        if i == BETA:
            return (-1,) + tuple(word)
        epsilon = 0
        if letters and letters[-1] == BETA:
            epsilon = 1
            letters.pop()
        encoded.extend([i, epsilon])
    r = (len(encoded) - 1) // 2
    return (r,) + tuple(reversed(encoded))


def decode(encoded: Sequence[int]) -> Word:
    r, body = encoded[0], list(encoded[1:])
    if len(body) != 2 * r + 1:
        raise WordFormatError(f"부호화 길이가 맞지 않습니다: {tuple(encoded)}")
    letters: List[int] = []
    for k in range(r):
        epsilon, i = body[2 * k], body[2 * k + 1]
        letters.extend([BETA] * epsilon + [i])
    letters.extend([BETA] * body[-1])
    return tuple(letters)


def to_sq(word: Sequence[int]) -> List[int]:
    """p = 2 단어를 Sq 지수열로: βP^i -> Sq^{2i+1}, β -> Sq^1, P^i -> Sq^{2i}"""
    sequence: List[int] = []
    j = 0
    while j < len(word):
        if word[j] == BETA:
            if j + 1 < len(word) and word[j + 1] != BETA:
                sequence.append(2 * word[j + 1] + 1)
                j += 2
                continue
            sequence.append(1)
        else:
            sequence.append(2 * word[j])
        j += 1
    return sequence


def from_sq(sequence: Sequence[int]) -> Word:
    letters: List[int] = []
    for s in sequence:
        if s == 0:
            continue
        if s % 2:
            letters.append(BETA)
        if s // 2:
            letters.append(s // 2)
    return tuple(letters)


def excess(word: Sequence[int], p: int) -> int:
    """맨 왼쪽 블록의 차수에서 나머지 단어의 차수를 뺀 값"""
    if not word:
        return 0
    if word[0] == BETA and len(word) > 1 and word[1] != BETA:
        lead, rest = 1 + 2 * word[1], word[2:]
    elif word[0] == BETA:
        lead, rest = 1, word[1:]
    else:
        lead, rest = 2 * word[0], word[1:]
    return lead - degree_of(rest, p)


def parse_word(text: str, p: int) -> Word:
    """
    단어 표기 해석 ("Sq2 Sq2", "b P2 P1", "beta P1", "1")

    Raises:
        WordFormatError: 해석할 수 없는 위치가 있거나 p != 2 에서 Sq 를 쓴 경우
    """
    text = text.strip()
    if not text:
        raise WordFormatError("빈 단어 표기입니다")
    letters: List[int] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise WordFormatError(f"{pos + 1}번째 문자에서 단어를 해석할 수 없습니다: {text!r}")
        sq, sq_index, power, power_index, beta, unit = m.groups()
        if sq:
            if p != 2:
                raise WordFormatError(f"Sq 표기는 p = 2 에서만 사용할 수 있습니다 (p={p})")
            letters.extend(from_sq([int(sq_index)]))
        elif power:
            if int(power_index) > 0:
                letters.append(int(power_index))
        elif beta:
            letters.append(BETA)
        pos = m.end()
    return tuple(letters)


def format_word(word: Sequence[int], p: int) -> str:
    if not word:
        return "1"
    if p == 2:
        return " ".join(f"Sq{s}" for s in to_sq(word))
    return " ".join("b" if letter == BETA else f"P{letter}" for letter in word)


def format_scalar(coefficients: Dict[int, int]) -> str:
    parts = []
    for tau, c in sorted(coefficients.items()):
        tau_text = "" if tau == 0 else ("tau" if tau == 1 else f"tau^{tau}")
        if not tau_text:
            parts.append(str(c))
        else:
            parts.append(tau_text if c == 1 else f"{c}*{tau_text}")
    return " + ".join(parts) or "0"


def format_element(x) -> str:
    """정준형 원소의 텍스트 표기 (결정적 순서)"""
    parts = []
    for (word, tau), c in x.items():
        prefix = "" if c == 1 else f"{c}*"
        if tau:
            prefix += "tau*" if tau == 1 else f"tau^{tau}*"
        body = format_word(word, x.p)
        parts.append(f"{prefix}{body}" if body != "1" or not prefix else f"{prefix}1")
    return " + ".join(parts) or "0"


def parse_terms(text: str, p: int, base) -> Terms:
    """
    "2*P2 + tau*Sq3 Sq1 - b" 형태의 선형결합 해석 (축약 전 단어 그대로)
    """
    base = as_base(base)
    text = text.strip()
    if not text:
        raise WordFormatError("빈 원소 표기입니다")
    if text == "0":
        return {}
    terms: Terms = {}
    for sign, chunk in re.findall(r"([+-]?)\s*([^+-]+)", text):
        m = _TERM.match(chunk)
        coeff = int(m.group(1)) if m.group(1) else 1
        tau = 0
        if m.group(2):
            tau = int(m.group(3)) if m.group(3) else 1
        body = m.group(4)
        word = parse_word(body, p) if body else ()
        if sign == "-":
            coeff = -coeff
        if base == Base.K and tau > 0:
            continue
        key = (word, tau)
        terms[key] = (terms.get(key, 0) + coeff) % p
    return {k: c for k, c in terms.items() if c}
