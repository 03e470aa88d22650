# models/ring.py

from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field

# 원본 이름 -> {상 이름: 계수}
OperatorTable = Dict[str, Dict[str, int]]


class BasisElementModel(BaseModel):
    label: str
    bidegree: Tuple[int, int]


class RingModel(BaseModel):
    """PD 환 JSON 형식: 기저, 구조 상수 (왼쪽, 오른쪽, 결과, 계수), 적분"""
    p: int = Field(..., ge=2)
    dim: int = Field(..., ge=0)
    name: str = ""
    basis: List[BasisElementModel]
    products: List[Tuple[str, str, str, int]] = Field(default_factory=list)
    trace: Dict[str, int]


class ActionModel(BaseModel):
    """작용 테이블: β 와 P^i (i 는 문자열 키)"""
    beta: OperatorTable = Field(default_factory=dict)
    P: Dict[int, OperatorTable] = Field(default_factory=dict)


class PDInstanceModel(BaseModel):
    ring: RingModel
    action: Optional[ActionModel] = None
    tangent: Optional[Dict[str, int]] = Field(default=None, description="전체 SW 류 w(T)")


class RingModNModel(BaseModel):
    """Z/2^n 위 PD 인스턴스: 구조 상수와 β_n 은 Z/2^n 계수, 작용은 mod 2 환원 위"""
    level: int = Field(..., ge=1)
    dim: int = Field(..., ge=0)
    name: str = ""
    basis: List[BasisElementModel]
    products: List[Tuple[str, str, str, int]] = Field(default_factory=list)
    trace: Dict[str, int]
    bockstein: OperatorTable = Field(default_factory=dict)
    action: Optional[ActionModel] = None


class Flavor(str, Enum):
    SYN = "syn"
    EINFTY = "einfty"


class FlavorConversion(BaseModel):
    """lhs^i = τ^{tau_power} · rhs^i (가중치 b 의 원소 위에서)"""
    i: int
    weight: int
    p: int
    base: str
    lhs: Flavor
    rhs: Flavor
    tau_power: int
    scalar: Optional[int] = None
    expressible: bool = True

    def describe(self) -> str:
        names = {Flavor.SYN: "Ps", Flavor.EINFTY: "Pe"}
        lhs, rhs = f"{names[self.lhs]}^{self.i}", f"{names[self.rhs]}^{self.i}"
        if self.scalar is not None:
            return f"{lhs} = {self.scalar}*{rhs}" if self.scalar != 1 else f"{lhs} = {rhs}"
        factor = "" if self.tau_power == 0 else ("tau*" if self.tau_power == 1 else f"tau^{self.tau_power}*")
        return f"{lhs} = {factor}{rhs}"
