# models/gauge.py

from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator


class WittParametersModel(BaseModel):
    p: int = Field(..., ge=2)
    f: int = Field(1, ge=1, description="k = F_{p^f}")
    m: int = Field(1, ge=1, description="절단 길이")


class GaugePieceModel(BaseModel):
    """
    가중치 하나의 격자 쌍 L'_n ⊂ L_n (기저는 열벡터 목록)

    u, t 가 있으면 읽을 때 유도 사상과 모양, 영사상 여부를 비교한다.
    """
    weight: int
    lattice: List[List[int]]
    sublattice: List[List[int]] = Field(default_factory=list)
    u: Optional[List[List[int]]] = None
    t: Optional[List[List[int]]] = None

    class Config:
        extra = "forbid"


class GaugeModel(BaseModel):
    """F-게이지 JSON 형식"""
    name: str = ""
    witt: WittParametersModel
    rank: int = Field(..., ge=0)
    window: Tuple[int, int]
    pieces: List[GaugePieceModel]
    gluing: List[List[int]]

    @model_validator(mode="after")
    def check_window(self):
        lo, hi = self.window
        if lo > hi:
            raise ValueError(f"창이 비어 있습니다: {self.window}")
        if sorted(piece.weight for piece in self.pieces) != list(range(lo, hi + 1)):
            raise ValueError("조각의 가중치가 창과 일치하지 않습니다")
        return self


class GlobalSectionsModel(BaseModel):
    name: str
    h0: int
    h1: int


class PipelineStageModel(BaseModel):
    name: str
    window: Tuple[int, int]
    diagram: List[str]


class PipelineModel(BaseModel):
    """초특이 파이프라인 요약"""
    witt: WittParametersModel
    stages: List[PipelineStageModel]
    shortcut: bool
    gluing_scalar: int
    end_quotient_lengths: Dict[int, List[int]]
