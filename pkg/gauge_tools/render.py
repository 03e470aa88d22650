# gauge_tools/render.py
"""
게이지 다이어그램의 텍스트 표

열은 가중치 lo − margin … hi + margin, 행은 weight / piece / index / u -> / <- t 이다.
u, t 칸에는 그 가중치에서 나가는 사상의 종류를 적는다: 0, ~ (동형), p (u), inc (t).
"""
import logging
from collections import Counter
from typing import List, Optional, Union

from configs.gauge_conf import gauge_settings
from gauge_tools.base import FGauge, GradedUTModule
from modules.linalg import p_valuation

logger = logging.getLogger(__name__)


def describe_piece(module: GradedUTModule, n: int) -> str:
    """W^r + k^c + W_e 꼴 (0 이면 "0")"""
    moduli = module.moduli(n)
    if not moduli:
        return "0"
    parts = []
    free = sum(1 for m in moduli if m == 0)
    if free:
        parts.append("W" if free == 1 else f"W^{free}")
    lengths = Counter(p_valuation(m, module.p) for m in moduli if m)
    for e in sorted(lengths):
        base = "k" if e == 1 else f"W_{e}"
        count = lengths[e]
        parts.append(base if count == 1 else f"{base}^{count}")
    return " + ".join(parts)


def describe_arrow(module: GradedUTModule, arrow: str, n: int) -> str:
    if module.is_zero_map(arrow, n):
        return "0"
    if module.is_iso(arrow, n):
        return "~"
    return "p" if arrow == "u" else "inc"


def diagram_rows(X: Union[FGauge, GradedUTModule], margin: Optional[int] = None) -> List[List[str]]:
    module = X.module if isinstance(X, FGauge) else X
    margin = gauge_settings.GAUGE_WEIGHT_MARGIN if margin is None else margin
    weights = range(module.lo - margin, module.hi + margin + 1)
    rows = [["weight"] + [str(n) for n in weights],
            ["piece"] + [describe_piece(module, n) for n in weights]]
    if module.torsion_free:
        rows.append(["index"] + [str(module.colength(n)) for n in weights])
    rows.append(["u ->"] + [describe_arrow(module, "u", n) for n in weights])
    rows.append(["<- t"] + [describe_arrow(module, "t", n) for n in weights])
    return rows


def render_diagram(X: Union[FGauge, GradedUTModule], margin: Optional[int] = None) -> str:
    rows = diagram_rows(X, margin)
    label_width = max(len(row[0]) for row in rows)
    width = max(len(cell) for row in rows for cell in row[1:])
    lines = [f"{row[0]:<{label_width}} | " + " | ".join(cell.rjust(width) for cell in row[1:]) for row in rows]
    return "\n".join(line.rstrip() for line in lines)
