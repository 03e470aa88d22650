# configs/bockstein_conf.py
from functools import lru_cache

from dotenv import load_dotenv
from pydantic_settings import BaseSettings

load_dotenv()


class BocksteinSettings(BaseSettings):
    """사슬 수준 복슈타인 계산 관련 설정"""

    # 기본 레벨 n (계수 Z/2^n)
    BOCKSTEIN_DEFAULT_LEVEL: int = 2

    # 무작위 DGA 생성
    BOCKSTEIN_RANDOM_SEED: int = 0
    BOCKSTEIN_MAX_RANK: int = 8  # 차수별 최대 랭크
    BOCKSTEIN_MAX_TOTAL_RANK: int = 32  # 전체 랭크 상한 (구조 상수가 rank³)
    BOCKSTEIN_RANDOM_INSTANCES: int = 20

    # C2 분해 절단 여유분 (최고 차수 + 여유분)
    BOCKSTEIN_TRUNCATION_MARGIN: int = 2

    class Config:
        env_file = ".env"
        extra = "ignore"


@lru_cache()
def get_bockstein_settings() -> BocksteinSettings:
    """복슈타인 설정 싱글톤 인스턴스 반환"""
    return BocksteinSettings()


bockstein_settings = get_bockstein_settings()
