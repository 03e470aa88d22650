# apis/v1/action.py
"""PD 환 위 작용 명령: convert, wu, model"""
import logging
from typing import Optional

import click

from action_tools.codec import instance_to_model, load_instance
from action_tools.flavor import flavor_convert
from action_tools.wu import verify_wu_duality, wu_classes
from charclass_tools.models import ModelFactory
from configs.steenrod_conf import steenrod_settings
from models.ring import Flavor
from modules.cli_io import emit, finish_report, guarded, input_options, output_options, read_text
from modules.exceptions import ActionTableError

logger = logging.getLogger(__name__)


@click.command(name="convert")
@click.option("--i", "i", type=int, required=True, help="연산 첨자")
@click.option("--b", "b", type=int, required=True, help="원소의 가중치")
@click.option("--direction", type=click.Choice([f.value for f in Flavor]), default=Flavor.SYN.value,
              show_default=True, help="표현하려는 쪽")
@click.option("--base", type=click.Choice(["k", "O"]), default=steenrod_settings.STEENROD_DEFAULT_BASE,
              show_default=True)
@click.option("--p", "p", type=int, default=steenrod_settings.STEENROD_DEFAULT_PRIME, show_default=True)
@output_options
@guarded
def convert(i: int, b: int, direction: str, base: str, p: int, fmt: Optional[str], out: Optional[str]):
    """Ps^i 와 Pe^i 사이의 τ 거듭제곱 관계"""
    conversion = flavor_convert(i, b, direction, base, p)
    emit(conversion, conversion.describe(), fmt, out)


@click.command(name="wu")
@click.argument("instance", required=False)
@input_options
@output_options
@guarded
def wu(instance: Optional[str], input_path: Optional[str], fmt: Optional[str], out: Optional[str]):
    """PD 인스턴스(JSON)의 Wu 류와 쌍대성 검사"""
    ring, action = load_instance(read_text(instance, input_path))
    if action is None:
        raise ActionTableError("Wu 류에는 작용 테이블이 필요합니다", witness={"entry": "action"})
    classes = wu_classes(ring, action)
    report = verify_wu_duality(ring, action)
    lines = [f"v{i} = {ring.format(v)}" for i, v in enumerate(classes)]
    finish_report(report, fmt, out, text="\n".join(lines + [f"duality: {'PASS' if report.passed else 'FAIL'}"]))


@click.command(name="model")
@click.argument("name")
@output_options
@guarded
def model(name: str, fmt: Optional[str], out: Optional[str]):
    """이름으로 만든 생성원 모델 (P2, P2xP3, torus) 을 PD 인스턴스 JSON 으로"""
    built = ModelFactory.get_model(name)
    ring = built.ring
    payload = instance_to_model(ring, built.action, built.total_tangent())
    lines = [f"{ring.name}: rank {ring.rank}, top {ring.top_bidegree}",
             "basis: " + ", ".join(ring.labels),
             f"w(T) = {ring.format(built.total_tangent())}"]
    emit(payload, "\n".join(lines), fmt, out)
