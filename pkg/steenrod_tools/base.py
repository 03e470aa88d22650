# steenrod_tools/base.py
"""
스틴로드 대수의 원소 표현

단어(Word)는 생성원 문자들의 튜플이며 왼쪽 문자가 나중에 적용된다.
문자 0 은 복슈타인 β, 양의 정수 i 는 P^i 를 뜻한다 (p = 2 에서 P^i = Sq^{2i}).
원소의 계수는 F_p[τ] 이며 (단어, τ 지수) -> F_p 계수 의 사전으로 저장한다.
"""
import logging
from enum import Enum
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

from modules.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

BETA = 0

# ρ 는 이 기저점들에서 0 이다. 관계식에 ρ 항은 나타나지 않는다.
RHO = 0

Word = Tuple[int, ...]
Term = Tuple[Word, int]  # (단어, τ 지수)
Terms = Dict[Term, int]


class Base(str, Enum):
    K = "k"  # 잉여체, τ = 0
    O = "O"  # 원분 정수환, τ 는 자유 중심 원소


def as_base(base) -> Base:
    try:
        return base if isinstance(base, Base) else Base(base)
    except ValueError:
        raise ConfigurationError(f"지원하지 않는 기저점입니다: {base}")


def check_prime(p: int) -> int:
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ConfigurationError(f"p 는 소수여야 합니다: {p}")
    return p


def normalize_terms(terms: Mapping[Term, int], p: int, base: Base) -> Terms:
    """계수를 mod p 로 줄이고 0 항과 (k 에서) τ 양수 지수 항을 제거"""
    result: Terms = {}
    for (word, tau), coeff in terms.items():
        if base == Base.K and tau > 0:
            continue
        c = coeff % p
        if c:
            result[(tuple(word), tau)] = c
    return result


def add_into(target: Terms, term: Term, coeff: int, p: int) -> None:
    c = (target.get(term, 0) + coeff) % p
    if c:
        target[term] = c
    else:
        target.pop(term, None)


class _LinearCombination:
    """F_p[τ] 계수 선형결합 공통 부분"""

    __slots__ = ("p", "base", "_terms")

    def __init__(self, p: int, base, terms: Optional[Mapping] = None):
        self.p = p
        self.base = as_base(base)
        self._terms = normalize_terms(terms or {}, p, self.base)

    @property
    def terms(self) -> Dict:
        return dict(self._terms)

    def items(self) -> Iterator:
        return iter(sorted(self._terms.items(), key=lambda kv: self._sort_key(kv[0])))

    @staticmethod
    def _sort_key(term):
        return term

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: "_LinearCombination") -> None:
        if type(other) is not type(self):
            raise ConfigurationError(f"서로 다른 종류의 원소입니다: {type(self).__name__}, {type(other).__name__}")
        if other.p != self.p or other.base != self.base:
            raise ConfigurationError(
                f"소수/기저점이 다릅니다: (p={self.p}, {self.base.value}) vs (p={other.p}, {other.base.value})"
            )

    def _new(self, terms: Mapping) -> "_LinearCombination":
        return type(self)(self.p, self.base, terms)

    def __add__(self, other):
        self._check(other)
        terms = dict(self._terms)
        for key, c in other._terms.items():
            add_into(terms, key, c, self.p)
        return self._new(terms)

    def __neg__(self):
        return self._new({key: -c for key, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff: int, tau: int = 0):
        """coeff·τ^tau 배"""
        return self._new({self._shift(key, tau): c * coeff for key, c in self._terms.items()})

    @staticmethod
    def _shift(key, tau: int):
        return key[0], key[1] + tau

    def __eq__(self, other) -> bool:
        if not isinstance(other, _LinearCombination):
            return NotImplemented
        return (type(self) is type(other) and self.p == other.p and self.base == other.base
                and self._terms == other._terms)

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.p, self.base, frozenset(self._terms.items())))

    def __len__(self) -> int:
        return len(self._terms)


class SteenrodElement(_LinearCombination):
    """
    정준형(허용 단어 기저) 스틴로드 대수 원소

    Note:
        생성자는 키가 이미 허용 단어라고 가정한다. 임의의 단어 조합은
        adem.adem_reduce 로 만든다.
    """

    __slots__ = ()

    @staticmethod
    def _sort_key(term):
        from steenrod_tools.words import encode
        return encode(term[0]), term[1]

    @classmethod
    def zero(cls, p: int, base) -> "SteenrodElement":
        return cls(p, base, {})

    @classmethod
    def unit(cls, p: int, base) -> "SteenrodElement":
        return cls(p, base, {((), 0): 1})

    def coefficient(self, word: Word) -> Dict[int, int]:
        """단어의 F_p[τ] 계수 {τ 지수: 계수}"""
        return {tau: c for (w, tau), c in self._terms.items() if w == tuple(word)}

    def words(self) -> Iterable[Word]:
        from steenrod_tools.words import encode
        return sorted({w for w, _ in self._terms}, key=encode)

    def __mul__(self, other):
        from steenrod_tools.algebra import multiply
        if isinstance(other, int):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __repr__(self) -> str:
        from steenrod_tools.words import format_element
        return f"SteenrodElement(p={self.p}, base={self.base.value}, {format_element(self)})"


class TensorElement(_LinearCombination):
    """A ⊗ A (또는 k-중 텐서)의 원소: ((단어들), τ 지수) -> 계수"""

    __slots__ = ()

    @staticmethod
    def _sort_key(term):
        from steenrod_tools.words import encode
        return tuple(encode(w) for w in term[0]), term[1]

    def coefficient(self, words: Tuple[Word, ...]) -> Dict[int, int]:
        key = tuple(tuple(w) for w in words)
        return {tau: c for (ws, tau), c in self._terms.items() if ws == key}

    def __repr__(self) -> str:
        from steenrod_tools.words import format_word
        parts = [f"{c}*t^{tau}*(" + " ⊗ ".join(format_word(w, self.p) for w in ws) + ")"
                 for (ws, tau), c in self.items()]
        return f"TensorElement(p={self.p}, base={self.base.value}, {' + '.join(parts) or '0'})"


class DualElement(_LinearCombination):
    """쌍대 대수 원소: ξ_α 기저 (α 는 허용 단어)"""

    __slots__ = ()

    @staticmethod
    def _sort_key(term):
        from steenrod_tools.words import encode
        return encode(term[0]), term[1]

    @classmethod
    def xi(cls, p: int, base, word: Word, coeff: int = 1, tau: int = 0) -> "DualElement":
        return cls(p, base, {(tuple(word), tau): coeff})

    def coefficient(self, word: Word) -> Dict[int, int]:
        return {tau: c for (w, tau), c in self._terms.items() if w == tuple(word)}

    def __mul__(self, other):
        from steenrod_tools.dual import dual_multiply
        if isinstance(other, int):
            return self.scale(other)
        return dual_multiply(self, other)

    def __repr__(self) -> str:
        from steenrod_tools.words import format_word
        parts = [f"{c}*t^{tau}*xi[{format_word(w, self.p)}]" for (w, tau), c in self.items()]
        return f"DualElement(p={self.p}, base={self.base.value}, {' + '.join(parts) or '0'})"


def scalar_multiply(a: Mapping[int, int], b: Mapping[int, int], p: int, base: Base) -> Dict[int, int]:
    """F_p[τ] 스칼라 곱"""
    result: Dict[int, int] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            if base == Base.K and e1 + e2 > 0:
                continue
            c = (result.get(e1 + e2, 0) + c1 * c2) % p
            if c:
                result[e1 + e2] = c
            else:
                result.pop(e1 + e2, None)
    return result
