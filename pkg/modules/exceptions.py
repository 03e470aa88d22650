# modules/exceptions.py
from typing import Any, Optional


class SyntomicCalcException(Exception):
    """계산 엔진 관련 기본 예외"""

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class ConfigurationError(SyntomicCalcException):
    """소수/기저 불일치 등 설정이 맞지 않을 때 발생하는 예외"""
    pass


class UnsupportedConfigurationError(ConfigurationError):
    """구현 범위 밖의 설정(홀수 p 체인 레벨 연산 등)을 요청했을 때 발생하는 예외"""
    pass


class WordFormatError(SyntomicCalcException):
    """단어/원소 표기를 해석할 수 없을 때 발생하는 예외"""
    pass


class TruncationError(SyntomicCalcException):
    """설정된 차수 범위를 넘어선 쌍대 계산을 요청했을 때 발생하는 예외"""
    pass


class ActionTableError(SyntomicCalcException):
    """환 구조 상수 또는 작용 테이블이 잘못되었을 때 발생하는 예외"""
    pass


class DualityFailureError(SyntomicCalcException):
    """쌍대성 행렬이 가역이 아닐 때 발생하는 예외"""
    pass


class ArgumentError(SyntomicCalcException):
    """인자의 이중차수가 맞지 않을 때 발생하는 예외"""
    pass


class ComplexValidationError(SyntomicCalcException):
    """d∘d ≠ 0, 라이프니츠 규칙 위반, 사슬사상 아님 등의 예외"""
    pass


class BocksteinObstructionError(SyntomicCalcException):
    """이차 복슈타인의 전제(β_n(u) = 0)가 성립하지 않을 때 발생하는 예외"""
    pass


class ExportError(SyntomicCalcException):
    """PD 인스턴스 내보내기가 거부되었을 때 발생하는 예외"""
    pass


class GaugeStructureError(SyntomicCalcException):
    """게이지 구성 후 불변식이 깨졌을 때 발생하는 예외"""
    pass


class PipelineFailure(SyntomicCalcException):
    """초특이 파이프라인 결과가 기대 표와 다를 때 발생하는 예외"""

    def __init__(self, message: str, weight: Optional[int] = None, witness: Optional[Any] = None):
        super().__init__(message, witness)
        self.weight = weight
