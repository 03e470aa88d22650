# steenrod_tools/serialization.py
"""원소 <-> JSON 모델 변환"""
import json
import logging
from collections import defaultdict
from typing import Dict, List, Sequence

from pydantic import ValidationError

from models.steenrod import (DualElementModel, DualTermModel, ElementModel, LetterModel, TensorElementModel,
                             TensorTermModel, TermModel)
from modules.exceptions import WordFormatError
from steenrod_tools.adem import adem_reduce
from steenrod_tools.base import BETA, DualElement, SteenrodElement, TensorElement, Word, check_prime
from steenrod_tools.words import encode, is_admissible

logger = logging.getLogger(__name__)


def word_to_letters(word: Sequence[int]) -> List[LetterModel]:
    return [LetterModel(beta=True) if letter == BETA else LetterModel(P=letter) for letter in word]


def letters_to_word(letters: Sequence[LetterModel]) -> Word:
    # P^0 는 항등이므로 생략
    return tuple(BETA if letter.beta else letter.P for letter in letters if letter.beta or letter.P)


def _coefficient_list(coefficients: Dict[int, int]) -> List[int]:
    top = max(coefficients)
    return [coefficients.get(e, 0) for e in range(top + 1)]


def _grouped(x) -> Dict:
    grouped = defaultdict(dict)
    for (key, tau), c in x.items():
        grouped[key][tau] = c
    return grouped


def element_to_model(x: SteenrodElement) -> ElementModel:
    terms = [TermModel(coeff=_coefficient_list(coefficients), word=word_to_letters(word))
             for word, coefficients in sorted(_grouped(x).items(), key=lambda kv: encode(kv[0]))]
    return ElementModel(p=x.p, base=x.base.value, terms=terms)


def element_from_model(model: ElementModel) -> SteenrodElement:
    """임의 단어도 허용하며 Adem 환원된 정준형을 돌려준다"""
    check_prime(model.p)
    terms = {}
    for term in model.terms:
        word = letters_to_word(term.word)
        for tau, c in enumerate(term.coeff):
            terms[(word, tau)] = terms.get((word, tau), 0) + c
    return adem_reduce(terms, model.p, model.base.value)


def dual_to_model(a: DualElement) -> DualElementModel:
    terms = [DualTermModel(coeff=_coefficient_list(coefficients), xi=word_to_letters(word))
             for word, coefficients in sorted(_grouped(a).items(), key=lambda kv: encode(kv[0]))]
    return DualElementModel(p=a.p, base=a.base.value, terms=terms)


def dual_from_model(model: DualElementModel) -> DualElement:
    check_prime(model.p)
    terms = {}
    for term in model.terms:
        word = letters_to_word(term.xi)
        if not is_admissible(word, model.p):
            raise WordFormatError(f"ξ 첨자는 허용 단어여야 합니다: {word}")
        for tau, c in enumerate(term.coeff):
            terms[(word, tau)] = terms.get((word, tau), 0) + c
    return DualElement(model.p, model.base.value, terms)


def tensor_to_model(t: TensorElement) -> TensorElementModel:
    terms = [TensorTermModel(coeff=_coefficient_list(coefficients),
                             factors=[word_to_letters(w) for w in words])
             for words, coefficients in sorted(_grouped(t).items(),
                                               key=lambda kv: tuple(encode(w) for w in kv[0]))]
    return TensorElementModel(p=t.p, base=t.base.value, terms=terms)


def dump_model(model, indent: int = 2) -> str:
    """결정적 JSON 직렬화 (None 필드 생략)"""
    return json.dumps(model.model_dump(mode="json", exclude_none=True), indent=indent, ensure_ascii=False)


def element_from_json(text: str) -> SteenrodElement:
    try:
        return element_from_model(ElementModel.model_validate_json(text))
    except ValidationError as e:
        raise WordFormatError(f"원소 JSON 을 해석할 수 없습니다: {str(e)}")


def dual_from_json(text: str) -> DualElement:
    try:
        return dual_from_model(DualElementModel.model_validate_json(text))
    except ValidationError as e:
        raise WordFormatError(f"쌍대 원소 JSON 을 해석할 수 없습니다: {str(e)}")
