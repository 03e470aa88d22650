# models/steenrod.py

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field, model_validator


class BaseFlag(str, Enum):
    K = "k"
    O = "O"


class LetterModel(BaseModel):
    """단어의 문자 하나: {"beta": true} 또는 {"P": i}"""
    beta: Optional[bool] = None
    P: Optional[int] = Field(default=None, ge=0)

    @model_validator(mode="after")
    def check_single(self):
        if (self.beta is None) == (self.P is None) or self.beta is False:
            raise ValueError('문자는 {"beta": true} 또는 {"P": i} 중 하나여야 합니다')
        return self

    class Config:
        extra = "forbid"


class TermModel(BaseModel):
    coeff: List[int] = Field(..., description="τ 지수별 F_p 계수")
    word: List[LetterModel]

    class Config:
        extra = "forbid"


class ElementModel(BaseModel):
    """스틴로드 대수 원소 JSON 형식"""
    p: int = Field(..., ge=2)
    base: BaseFlag
    terms: List[TermModel] = Field(default_factory=list)


class DualTermModel(BaseModel):
    coeff: List[int]
    xi: List[LetterModel]

    class Config:
        extra = "forbid"


class DualElementModel(BaseModel):
    """쌍대 원소 JSON 형식 (ξ 첨자는 허용 단어)"""
    p: int = Field(..., ge=2)
    base: BaseFlag
    terms: List[DualTermModel] = Field(default_factory=list)


class TensorTermModel(BaseModel):
    coeff: List[int]
    factors: List[List[LetterModel]]


class TensorElementModel(BaseModel):
    p: int
    base: BaseFlag
    terms: List[TensorTermModel] = Field(default_factory=list)
