# apis/v1/bockstein.py
"""사슬 수준 복슈타인 명령 그룹"""
import logging
from typing import Optional

import click

from action_tools.codec import mod_n_to_model
from bockstein_tools.codec import class_to_model, complex_to_model, group_to_model, load_complex
from bockstein_tools.complexes import GradedComplex, bockstein_n, cohomology, mod_class, secondary_bockstein
from bockstein_tools.dga import CommutativeDGA, random_commutative_dga
from bockstein_tools.export import export_pd_instance
from configs.bockstein_conf import bockstein_settings
from modules.cli_io import emit, guarded, input_options, output_options, read_text
from modules.exceptions import ArgumentError

logger = logging.getLogger(__name__)

level_option = click.option("--n", "n", type=int, default=bockstein_settings.BOCKSTEIN_DEFAULT_LEVEL,
                            show_default=True, help="계수 Z/2^n 의 n")


def parse_vector(complex_: GradedComplex, text: str):
    """complex.format 과 같은 표기 ("x + 2*y")"""
    coefficients = {}
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if not chunk or chunk == "0":
            continue
        c, _, label = chunk.rpartition("*")
        label = label.strip()
        coefficients[label] = coefficients.get(label, 0) + (int(c) if c else 1)
    return complex_.vector(coefficients)


def load_algebra(text: str) -> CommutativeDGA:
    algebra = load_complex(text)
    if not isinstance(algebra, CommutativeDGA):
        raise ArgumentError("곱 구조(products)가 있는 DGA 가 필요합니다", witness={"entry": "products"})
    return algebra


@click.group(name="bockstein")
def bockstein():
    """사슬 복합체와 DGA 위의 복슈타인 계산"""


@bockstein.command(name="cohomology")
@click.argument("complex_json", required=False)
@click.option("--modulus", type=int, default=None, help="계수 (기본 2^n, 0 이면 정수)")
@level_option
@input_options
@output_options
@guarded
def cohomology_command(complex_json: Optional[str], modulus: Optional[int], n: int, input_path: Optional[str],
                       fmt: Optional[str], out: Optional[str]):
    """이중차수별 코호몰로지 군"""
    complex_ = load_complex(read_text(complex_json, input_path))
    modulus = 2 ** n if modulus is None else modulus
    groups = [group_to_model(group) for _, group in sorted(cohomology(complex_, modulus).items())]
    lines = [f"H^({g.degree},{g.weight}) = {g.invariant_factors} : {', '.join(g.generators)}" for g in groups]
    emit(groups, "\n".join(lines) or "0", fmt, out)


@bockstein.command(name="beta")
@click.argument("complex_json", required=False)
@click.option("--class", "representative", required=True, help='mod 2^n 코사이클 대표 ("x + 2*y")')
@click.option("--secondary", is_flag=True, default=False, help="이차 복슈타인 β_n^(2)")
@level_option
@input_options
@output_options
@guarded
def beta(complex_json: Optional[str], representative: str, secondary: bool, n: int, input_path: Optional[str],
         fmt: Optional[str], out: Optional[str]):
    """β_n(u) 또는 β_n^(2)(u)"""
    complex_ = load_complex(read_text(complex_json, input_path))
    u = mod_class(complex_, parse_vector(complex_, representative), 2 ** n)
    result = secondary_bockstein(n, u) if secondary else bockstein_n(n, u)
    emit(class_to_model(result), result.format(), fmt, out)


@bockstein.command(name="export")
@click.argument("dga_json", required=False)
@level_option
@input_options
@output_options
@guarded
def export(dga_json: Optional[str], n: int, input_path: Optional[str], fmt: Optional[str], out: Optional[str]):
    """DGA 의 Z/2^n PD 인스턴스 내보내기"""
    ring = export_pd_instance(load_algebra(read_text(dga_json, input_path)), n)
    text = f"{ring.name}: level {ring.level}, dim {ring.dim}, basis {', '.join(ring.labels)}"
    emit(mod_n_to_model(ring), text, fmt, out)


@bockstein.command(name="random")
@click.option("--seed", type=int, default=bockstein_settings.BOCKSTEIN_RANDOM_SEED, show_default=True)
@click.option("--max-rank", type=int, default=bockstein_settings.BOCKSTEIN_MAX_RANK, show_default=True,
              help="차수별 최대 랭크")
@output_options
@guarded
def random_dga(seed: int, max_rank: int, fmt: Optional[str], out: Optional[str]):
    """시드로 재현되는 무작위 가환 DGA (JSON)"""
    algebra = random_commutative_dga(seed, max_rank)
    text = f"{algebra.name}: rank {algebra.rank}, basis {', '.join(algebra.labels)}"
    emit(complex_to_model(algebra), text, fmt, out)
