# apis/v1/steenrod.py
"""스틴로드 대수 명령: adem, basis, coproduct, antipode, dual"""
import logging
from typing import Optional

import click

from configs.steenrod_conf import steenrod_settings
from modules.cli_io import emit, guarded, input_options, output_options, read_text
from steenrod_tools.adem import adem_reduce
from steenrod_tools.base import SteenrodElement, TensorElement
from steenrod_tools.basis import admissible_basis
from steenrod_tools.dual import dual_antipode, dual_coproduct, dual_counit
from steenrod_tools.hopf import antipode as hopf_antipode
from steenrod_tools.hopf import coproduct as hopf_coproduct
from steenrod_tools.serialization import (dual_from_json, dual_to_model, element_from_json, element_to_model,
                                          tensor_to_model, word_to_letters)
from steenrod_tools.words import bidegree_of, format_element, format_scalar, format_word, parse_terms

logger = logging.getLogger(__name__)


def algebra_options(func):
    func = click.option("--base", type=click.Choice(["k", "O"]), default=steenrod_settings.STEENROD_DEFAULT_BASE,
                        show_default=True, help="k (τ = 0) 또는 O")(func)
    func = click.option("--p", "p", type=int, default=steenrod_settings.STEENROD_DEFAULT_PRIME, show_default=True,
                        help="소수")(func)
    return func


def parse_element(text: str, p: int, base: str) -> SteenrodElement:
    """JSON 원소 또는 "Sq2 Sq2", "2*P2 + tau*b P1" 같은 텍스트"""
    text = text.strip()
    if text.startswith("{"):
        return element_from_json(text)
    return adem_reduce(parse_terms(text, p, base), p, base)


def format_dual(a) -> str:
    parts = []
    for (word, tau), c in a.items():
        prefix = "" if c == 1 else f"{c}*"
        if tau:
            prefix += "tau*" if tau == 1 else f"tau^{tau}*"
        parts.append(f"{prefix}xi[{format_word(word, a.p)}]")
    return " + ".join(parts) or "0"


def format_tensor(t: TensorElement) -> str:
    parts = []
    for (words, tau), c in t.items():
        prefix = "" if c == 1 else f"{c}*"
        if tau:
            prefix += "tau*" if tau == 1 else f"tau^{tau}*"
        parts.append(prefix + " ⊗ ".join(format_word(w, t.p) for w in words))
    return " + ".join(parts) or "0"


@click.command(name="adem")
@click.argument("element", required=False)
@algebra_options
@input_options
@output_options
@guarded
def adem(element: Optional[str], p: int, base: str, input_path: Optional[str], fmt: Optional[str],
         out: Optional[str]):
    """단어 조합을 허용 기저로 Adem 환원"""
    x = parse_element(read_text(element, input_path), p, base)
    emit(element_to_model(x), format_element(x), fmt, out)


@click.command(name="basis")
@click.option("--p", "p", type=int, default=steenrod_settings.STEENROD_DEFAULT_PRIME, show_default=True)
@click.option("--deg-max", type=int, default=None, help="차수 상한")
@click.option("--degree", type=int, default=None, help="정확한 차수")
@output_options
@guarded
def basis(p: int, deg_max: Optional[int], degree: Optional[int], fmt: Optional[str], out: Optional[str]):
    """허용 단어 기저 (부호화 순서)"""
    words = admissible_basis(p, max_degree=deg_max, degree=degree)
    payload = [{"word": word_to_letters(w), "text": format_word(w, p), "bidegree": list(bidegree_of(w, p))}
               for w in words]
    emit(payload, "\n".join(format_word(w, p) for w in words), fmt, out)


@click.command(name="coproduct")
@click.argument("element", required=False)
@algebra_options
@input_options
@output_options
@guarded
def coproduct(element: Optional[str], p: int, base: str, input_path: Optional[str], fmt: Optional[str],
              out: Optional[str]):
    """Cartan 여곱 Δ(x)"""
    t = hopf_coproduct(parse_element(read_text(element, input_path), p, base))
    emit(tensor_to_model(t), format_tensor(t), fmt, out)


@click.command(name="antipode")
@click.argument("element", required=False)
@algebra_options
@input_options
@output_options
@guarded
def antipode(element: Optional[str], p: int, base: str, input_path: Optional[str], fmt: Optional[str],
             out: Optional[str]):
    """대척사상 χ(x)"""
    x = hopf_antipode(parse_element(read_text(element, input_path), p, base))
    emit(element_to_model(x), format_element(x), fmt, out)


@click.command(name="dual")
@click.argument("element", required=False)
@click.option("--op", type=click.Choice(["antipode", "coproduct", "counit"]), default="antipode", show_default=True)
@click.option("--deg-max", type=int, default=None, help="쌍대 계산 차수 상한")
@input_options
@output_options
@guarded
def dual(element: Optional[str], op: str, deg_max: Optional[int], input_path: Optional[str], fmt: Optional[str],
         out: Optional[str]):
    """쌍대 원소(JSON)에 대한 쌍대 호프 연산"""
    a = dual_from_json(read_text(element, input_path))
    if op == "coproduct":
        t = dual_coproduct(a, deg_max)
        emit(tensor_to_model(t), format_tensor(t), fmt, out)
    elif op == "counit":
        value = dual_counit(a)
        emit({"counit": value}, format_scalar(value), fmt, out)
    else:
        result = dual_antipode(a, deg_max)
        emit(dual_to_model(result), format_dual(result), fmt, out)
