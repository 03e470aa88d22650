# models/complex.py

from typing import List, Optional, Tuple

from pydantic import BaseModel, Field

from models.ring import BasisElementModel


class ComplexModel(BaseModel):
    """
    사슬 복합체 / 가환 DGA JSON 형식

    differential 은 (원본, 상, 계수) 목록이고 products 가 있으면 DGA 로 읽는다.
    """
    name: str = ""
    basis: List[BasisElementModel]
    differential: List[Tuple[str, str, int]] = Field(default_factory=list)
    products: Optional[List[Tuple[str, str, str, int]]] = None


class CohomologyGroupModel(BaseModel):
    degree: int
    weight: Optional[int] = None
    modulus: int = Field(0, ge=0, description="0 이면 정수 계수")
    invariant_factors: List[int]
    generators: List[str] = Field(default_factory=list)


class BocksteinClassModel(BaseModel):
    """ModnClass 의 표시용 형식"""
    modulus: int
    bidegree: Tuple[int, int]
    representative: str
