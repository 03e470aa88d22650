# configs/cli_conf.py
import os
from functools import lru_cache
from typing import Literal

from dotenv import load_dotenv
from pydantic_settings import BaseSettings

load_dotenv()


class CLISettings(BaseSettings):
    CLI_DEFAULT_FORMAT: Literal["json", "text"] = "json"
    CLI_JSON_INDENT: int = 2

    # stdout 은 결과 전용이므로 로그는 기본적으로 WARNING 이상만 stderr 로
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "WARNING")

    class Config:
        env_file = ".env"
        extra = "ignore"


@lru_cache()
def get_cli_settings() -> CLISettings:
    return CLISettings()


cli_settings = get_cli_settings()
