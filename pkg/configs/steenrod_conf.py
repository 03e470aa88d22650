# configs/steenrod_conf.py
import os
from functools import lru_cache
from typing import Literal

from dotenv import load_dotenv
from pydantic_settings import BaseSettings

load_dotenv()


class SteenrodSettings(BaseSettings):
    """스틴로드 대수 계산 관련 설정"""

    # 기본 소수와 기저점 (k: 잉여체, O: 정수환)
    STEENROD_DEFAULT_PRIME: int = int(os.getenv("STEENROD_DEFAULT_PRIME", "2"))
    STEENROD_DEFAULT_BASE: Literal["k", "O"] = os.getenv("STEENROD_DEFAULT_BASE", "k")

    # 쌍대 계산을 허용하는 최대 차수
    STEENROD_DUAL_DEGREE_BOUND: int = 24

    # Adem 환원 메모이제이션 캐시 크기
    STEENROD_REDUCE_CACHE_SIZE: int = 65536

    class Config:
        env_file = ".env"
        extra = "ignore"


@lru_cache()
def get_steenrod_settings() -> SteenrodSettings:
    """스틴로드 설정 싱글톤 인스턴스 반환"""
    return SteenrodSettings()


steenrod_settings = get_steenrod_settings()
