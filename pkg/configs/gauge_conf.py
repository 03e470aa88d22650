# configs/gauge_conf.py
from functools import lru_cache

from dotenv import load_dotenv
from pydantic_settings import BaseSettings

load_dotenv()


class GaugeSettings(BaseSettings):
    """F-게이지 계산 관련 설정"""

    GAUGE_DEFAULT_PRIME: int = 2
    GAUGE_RESIDUE_DEGREE: int = 2  # k = F_{p^f}
    GAUGE_WITT_TRUNCATION: int = 3  # W_m(k)

    # 다이어그램 출력 시 창 밖으로 더 보여줄 가중치 수
    GAUGE_WEIGHT_MARGIN: int = 2

    class Config:
        env_file = ".env"
        extra = "ignore"


@lru_cache()
def get_gauge_settings() -> GaugeSettings:
    """게이지 설정 싱글톤 인스턴스 반환"""
    return GaugeSettings()


gauge_settings = get_gauge_settings()
