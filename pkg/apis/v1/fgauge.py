# apis/v1/fgauge.py
"""F-게이지 명령 그룹: pipeline, render, sections, algebra"""
import logging
from typing import Callable, Dict, Optional, Tuple

import click

from configs.gauge_conf import gauge_settings
from gauge_tools.algebra import GaugeAlgebra
from gauge_tools.base import FGauge
from gauge_tools.codec import gauge_to_model, load_gauge, pipeline_to_model
from gauge_tools.cohomology import global_sections
from gauge_tools.constructions import skyscraper, structure_gauge, supersingular_h
from gauge_tools.pipeline import supersingular_pipeline
from gauge_tools.render import render_diagram
from gauge_tools.witt import WittRing
from models.gauge import GlobalSectionsModel
from modules.cli_io import emit, guarded, output_options, read_text

logger = logging.getLogger(__name__)

BUILTIN_GAUGES: Dict[str, Callable[[WittRing], FGauge]] = {
    "O": structure_gauge,
    "H": supersingular_h,
    "delta": skyscraper,
}


def witt_options(default_f: Optional[int] = None) -> Callable:
    """--p, --f, --m (default_f 가 없으면 GAUGE_RESIDUE_DEGREE)"""
    residue_degree = gauge_settings.GAUGE_RESIDUE_DEGREE if default_f is None else default_f

    def decorator(func):
        func = click.option("--m", "m", type=int, default=gauge_settings.GAUGE_WITT_TRUNCATION, show_default=True,
                            help="비트 벡터 절단 길이")(func)
        func = click.option("--f", "f", type=int, default=residue_degree, show_default=True,
                            help="k = F_{p^f}")(func)
        func = click.option("--p", "p", type=int, default=gauge_settings.GAUGE_DEFAULT_PRIME,
                            show_default=True)(func)
        return func

    return decorator


def resolve_gauge(operand: str, witt: WittRing) -> FGauge:
    """내장 이름 (O, H, delta) 또는 게이지 JSON 파일 경로 (- 이면 표준입력)"""
    builder = BUILTIN_GAUGES.get(operand)
    if builder:
        return builder(witt)
    return load_gauge(read_text(None, operand))


def _diagram_payload(X: FGauge, margin: Optional[int]) -> Tuple[object, str]:
    return gauge_to_model(X), f"{X.name}\n{render_diagram(X, margin)}"


@click.group(name="fgauge")
def fgauge():
    """F-게이지 구성과 초특이 파이프라인"""


@fgauge.command(name="pipeline")
@witt_options()
@click.option("--margin", type=int, default=None, help="창 밖으로 확인할 가중치 수")
@output_options
@guarded
def pipeline(p: int, f: int, m: int, margin: Optional[int], fmt: Optional[str], out: Optional[str]):
    """H → M → End(H){-1} → M̃ → M′ → δ 구성과 단계별 확인"""
    result = supersingular_pipeline(p, m, f, margin)
    summary = pipeline_to_model(result)
    blocks = [f"{stage.name}\n" + "\n".join(stage.diagram) for stage in summary.stages]
    blocks.append(f"shortcut: {summary.shortcut}")
    emit(summary, "\n\n".join(blocks), fmt, out)


@fgauge.command(name="render")
@click.argument("operand")
@witt_options()
@click.option("--twist", type=int, default=0, help="Breuil–Kisin 꼬임 {n}")
@click.option("--margin", type=int, default=None)
@output_options
@guarded
def render(operand: str, p: int, f: int, m: int, twist: int, margin: Optional[int], fmt: Optional[str],
           out: Optional[str]):
    """게이지 다이어그램"""
    X = resolve_gauge(operand, WittRing(p, f, m))
    if twist:
        X = X.twist(twist)
    payload, text = _diagram_payload(X, margin)
    emit(payload, text, fmt, out)


@fgauge.command(name="sections")
@click.argument("operand")
@witt_options(default_f=1)
@click.option("--twist", type=int, default=0)
@output_options
@guarded
def sections(operand: str, p: int, f: int, m: int, twist: int, fmt: Optional[str], out: Optional[str]):
    """게이지 코호몰로지 (H⁰, H¹) 차원 (k = F_p 에서만)"""
    X = resolve_gauge(operand, WittRing(p, f, m))
    if twist:
        X = X.twist(twist)
    result = global_sections(X)
    emit(GlobalSectionsModel(name=X.name, h0=result.h0, h1=result.h1), f"{X.name}: h0={result.h0}, h1={result.h1}",
         fmt, out)


@fgauge.command(name="algebra")
@click.argument("op", type=click.Choice(GaugeAlgebra.available_operations()))
@click.argument("operands", nargs=-1, required=True)
@witt_options()
@click.option("--n", "n", type=int, default=0, help="twist 연산의 꼬임")
@click.option("--margin", type=int, default=None)
@output_options
@guarded
def algebra(op: str, operands: Tuple[str, ...], p: int, f: int, m: int, n: int, margin: Optional[int],
            fmt: Optional[str], out: Optional[str]):
    """tensor / sub / quotient / twist / dual (sub, quotient 의 둘째 피연산자는 부분 모듈로 쓴다)"""
    arity = 1 if op in ("twist", "dual") else 2
    if len(operands) != arity:
        raise click.UsageError(f"{op} 에는 피연산자 {arity}개가 필요합니다")
    witt = WittRing(p, f, m)
    gauges = [resolve_gauge(operand, witt) for operand in operands]
    if op in ("sub", "quotient"):
        result = GaugeAlgebra.apply(op, gauges[0], gauges[1].module)
    elif op == "twist":
        result = GaugeAlgebra.apply(op, gauges[0], n)
    else:
        result = GaugeAlgebra.apply(op, *gauges)
    payload, text = _diagram_payload(result, margin)
    emit(payload, text, fmt, out)
