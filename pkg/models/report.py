# models/report.py

from typing import Any, Dict, List

from pydantic import BaseModel, Field


class Violation(BaseModel):
    """검증 실패 항목: 위반한 공리와 그 증거"""
    axiom: str
    witness: Dict[str, Any] = Field(default_factory=dict)


class VerificationReport(BaseModel):
    """항등식/공리 검증 결과"""
    name: str
    passed: bool = True
    violations: List[Violation] = Field(default_factory=list)
    details: Dict[str, Any] = Field(default_factory=dict)

    def add(self, axiom: str, **witness) -> None:
        self.violations.append(Violation(axiom=axiom, witness=witness))
        self.passed = False

    def merge(self, other: "VerificationReport") -> None:
        for violation in other.violations:
            self.violations.append(violation)
        self.passed = self.passed and other.passed
        self.details[other.name] = other.details
