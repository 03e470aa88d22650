# apis/v1/verify.py
"""검증 명령 그룹: 실패하면 보고서를 출력하고 종료 코드 1"""
import logging
from typing import Optional

import click

from action_tools.action import validate_action
from action_tools.codec import load_instance, load_mod_n
from action_tools.pairing import validate_mod_n, verify_alternating
from apis.v1.bockstein import load_algebra
from apis.v1.fgauge import resolve_gauge, witt_options
from bockstein_tools.dga import random_commutative_dga
from bockstein_tools.verify import reduction_chain, verify_mat_form_all
from charclass_tools.models import ModelFactory
from charclass_tools.verify import verify_sq_on_sw, verify_wu_theorem
from configs.bockstein_conf import bockstein_settings
from gauge_tools.witt import WittRing
from models.report import VerificationReport
from modules.cli_io import finish_report, guarded, input_options, output_options, read_text, report_text
from modules.exceptions import ActionTableError

logger = logging.getLogger(__name__)


@click.group(name="verify")
def verify():
    """항등식과 공리 검증"""


@verify.command(name="wu")
@click.option("--model", "model_name", required=True, help="P1..P6, PmxPn, torus")
@output_options
@guarded
def wu(model_name: str, fmt: Optional[str], out: Optional[str]):
    """Sq(v) = w(T)"""
    report = verify_wu_theorem(ModelFactory.get_model(model_name))
    text = report_text(report)
    if report.passed:
        text += f"\nSq(v) = w = {report.details.get('w')}"
    finish_report(report, fmt, out, text=text)


@verify.command(name="sq-sw")
@click.option("--deg-max", type=int, default=8, show_default=True)
@output_options
@guarded
def sq_sw(deg_max: int, fmt: Optional[str], out: Optional[str]):
    """SW 류 위 Sq 의 Wu 공식과 Cartan 공식"""
    finish_report(verify_sq_on_sw(deg_max), fmt, out)


@verify.command(name="action")
@click.argument("instance", required=False)
@input_options
@output_options
@guarded
def action(instance: Optional[str], input_path: Optional[str], fmt: Optional[str], out: Optional[str]):
    """PD 인스턴스(JSON)의 작용 공리"""
    ring, steenrod_action = load_instance(read_text(instance, input_path))
    if steenrod_action is None:
        raise ActionTableError("작용 테이블이 없습니다", witness={"entry": "action"})
    finish_report(validate_action(ring, steenrod_action), fmt, out)


@verify.command(name="pairing")
@click.argument("instance", required=False)
@input_options
@output_options
@guarded
def pairing(instance: Optional[str], input_path: Optional[str], fmt: Optional[str], out: Optional[str]):
    """Z/2^n 인스턴스의 β_n 공리, 반대칭, 교대성"""
    ring = load_mod_n(read_text(instance, input_path))
    report = VerificationReport(name=f"pairing {ring.name}".strip())
    report.merge(validate_mod_n(ring))
    report.merge(verify_alternating(ring))
    finish_report(report, fmt, out)


@verify.command(name="mat-form")
@click.argument("dga_json", required=False)
@click.option("--n", "n", type=int, default=bockstein_settings.BOCKSTEIN_DEFAULT_LEVEL, show_default=True)
@click.option("--seed", type=int, default=None, help="입력이 없을 때 무작위 DGA 의 첫 시드")
@click.option("--instances", type=int, default=bockstein_settings.BOCKSTEIN_RANDOM_INSTANCES, show_default=True)
@input_options
@output_options
@guarded
def mat_form(dga_json: Optional[str], n: int, seed: Optional[int], instances: int, input_path: Optional[str],
             fmt: Optional[str], out: Optional[str]):
    """주어진 DGA, 또는 시드 seed … seed+instances−1 의 무작위 DGA 들에서 MAT 형식"""
    if dga_json or input_path:
        finish_report(verify_mat_form_all(load_algebra(read_text(dga_json, input_path)), n), fmt, out)
        return
    first = bockstein_settings.BOCKSTEIN_RANDOM_SEED if seed is None else seed
    report = VerificationReport(name=f"mat_form random n={n}")
    for s in range(first, first + instances):
        report.merge(verify_mat_form_all(random_commutative_dga(s), n))
    report.details = {"seeds": [first, first + instances - 1], "checked": instances}
    finish_report(report, fmt, out)


@verify.command(name="reduction-chain")
@click.argument("dga_json", required=False)
@click.option("--n", "n", type=int, default=bockstein_settings.BOCKSTEIN_DEFAULT_LEVEL, show_default=True)
@input_options
@output_options
@guarded
def reduction(dga_json: Optional[str], n: int, input_path: Optional[str], fmt: Optional[str], out: Optional[str]):
    """내보낸 PD 인스턴스의 MAT 형식, 환원 사슬, 복슈타인 비교, 교대성"""
    finish_report(reduction_chain(load_algebra(read_text(dga_json, input_path)), n), fmt, out)


@verify.command(name="gauge")
@click.argument("operand")
@witt_options()
@output_options
@guarded
def gauge(operand: str, p: int, f: int, m: int, fmt: Optional[str], out: Optional[str]):
    """게이지 공리 (ut = tu = p, 붙임, 반선형성)"""
    finish_report(resolve_gauge(operand, WittRing(p, f, m)).verify(), fmt, out)
