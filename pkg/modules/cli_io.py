# modules/cli_io.py
"""
CLI 공통 입출력

입력은 인자, --input 파일, 또는 "-" (표준입력) 에서 읽고 출력은 표준출력이나 --out 으로 쓴다.
종료 코드: 0 성공, 1 검증 실패, 2 입력 오류.
"""
import functools
import json
import logging
import numbers
from typing import Any, Callable, Optional

import click
from pydantic import BaseModel, ValidationError

from configs.cli_conf import cli_settings
from models.report import VerificationReport
from modules.exceptions import PipelineFailure, SyntomicCalcException

logger = logging.getLogger(__name__)


class InputError(click.ClickException):
    """잘못된 입력 (종료 코드 2)"""
    exit_code = 2


class VerificationFailed(click.ClickException):
    """검증 실패 (종료 코드 1)"""
    exit_code = 1


def _plain(payload: Any) -> Any:
    if isinstance(payload, BaseModel):
        return _plain(payload.model_dump(exclude_none=True))
    if isinstance(payload, (list, tuple)):
        return [_plain(item) for item in payload]
    if isinstance(payload, dict):
        return {str(key): _plain(value) for key, value in payload.items()}
    return payload


def _fallback(value: Any) -> Any:
    # numpy 정수는 int, 나머지는 문자열
    return int(value) if isinstance(value, numbers.Integral) else str(value)


def dump_json(payload: Any) -> str:
    """결정적 JSON (키 순서는 모델 필드 순서)"""
    return json.dumps(_plain(payload), indent=cli_settings.CLI_JSON_INDENT, ensure_ascii=False, default=_fallback)


def read_text(text: Optional[str], input_path: Optional[str]) -> str:
    if input_path:
        with click.open_file(input_path, "r", encoding="utf-8") as handle:
            return handle.read()
    if text is None:
        raise InputError("입력이 없습니다 (인자, --input 파일, 또는 - 로 표준입력)")
    if text == "-":
        return click.get_text_stream("stdin").read()
    return text


def emit(payload: Any, text: str, fmt: Optional[str], out: Optional[str]) -> None:
    """fmt 가 없으면 CLI_DEFAULT_FORMAT"""
    fmt = fmt or cli_settings.CLI_DEFAULT_FORMAT
    rendered = text if fmt == "text" else dump_json(payload)
    if out:
        with click.open_file(out, "w", encoding="utf-8") as handle:
            click.echo(rendered, file=handle)
        logger.info(f"결과 저장 완료: {out}")
    else:
        click.echo(rendered)


def report_text(report: VerificationReport) -> str:
    lines = [f"{report.name}: {'PASS' if report.passed else 'FAIL'}"]
    for key, value in report.details.items():
        lines.append(f"  {key}: {value}")
    for violation in report.violations:
        witness = ", ".join(f"{k}={v}" for k, v in violation.witness.items())
        lines.append(f"  violated {violation.axiom}: {witness}")
    return "\n".join(lines)


def finish_report(report: VerificationReport, fmt: Optional[str], out: Optional[str],
                  text: Optional[str] = None) -> None:
    """보고서를 쓰고 실패면 종료 코드 1"""
    emit(report, text or report_text(report), fmt, out)
    if not report.passed:
        logger.warning(f"{report.name}: 위반 {len(report.violations)}건")
        raise click.exceptions.Exit(1)


def input_options(func: Callable) -> Callable:
    return click.option("--input", "input_path", type=click.Path(dir_okay=False, allow_dash=True), default=None,
                        help="입력 파일 (- 이면 표준입력)")(func)


def output_options(func: Callable) -> Callable:
    func = click.option("--out", "out", type=click.Path(dir_okay=False), default=None,
                        help="출력 파일 (없으면 표준출력)")(func)
    func = click.option("--format", "fmt", type=click.Choice(["json", "text"]), default=None,
                        help="출력 형식 (기본 CLI_DEFAULT_FORMAT)")(func)
    return func


def guarded(func: Callable) -> Callable:
    """엔진 예외를 종료 코드로 바꾼다: PipelineFailure 는 1, 나머지 입력 오류는 2"""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except PipelineFailure as e:
            logger.error(f"파이프라인 검증 실패: {str(e)}")
            payload = {"error": str(e), "weight": e.weight, "witness": e.witness}
            raise VerificationFailed(dump_json(payload))
        except SyntomicCalcException as e:
            logger.error(f"{func.__name__} 실패: {str(e)}")
            message = str(e) if e.witness is None else f"{str(e)}\n{dump_json(e.witness)}"
            raise InputError(message)
        except (ValidationError, ValueError) as e:
            logger.error(f"{func.__name__} 입력 해석 실패: {str(e)}")
            raise InputError(str(e))
        except OSError as e:
            logger.error(f"{func.__name__} 입력 파일 읽기 실패: {str(e)}")
            raise InputError(str(e))

    return wrapper
