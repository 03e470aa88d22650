# gauge_tools/codec.py
"""F-게이지와 파이프라인 결과의 JSON 변환"""
import logging
from typing import List

import numpy as np
from pydantic import ValidationError

from gauge_tools.base import FGauge, GradedUTModule
from gauge_tools.pipeline import SupersingularPipeline
from gauge_tools.render import render_diagram
from gauge_tools.witt import WittRing
from models.gauge import GaugeModel, GaugePieceModel, PipelineModel, PipelineStageModel, WittParametersModel
from modules.exceptions import GaugeStructureError

logger = logging.getLogger(__name__)


def _columns(lattice: np.ndarray) -> List[List[int]]:
    return [[int(x) for x in lattice[:, j]] for j in range(lattice.shape[1])]


def _matrix(columns: List[List[int]], rank: int) -> np.ndarray:
    if not columns:
        return np.zeros((rank, 0), dtype=object)
    return np.array(columns, dtype=object).T


def _rows(matrix: np.ndarray) -> List[List[int]]:
    return [[int(x) for x in row] for row in matrix]


def witt_to_model(witt: WittRing) -> WittParametersModel:
    return WittParametersModel(p=witt.p, f=witt.f, m=witt.m)


def gauge_to_model(X: FGauge) -> GaugeModel:
    module = X.module
    pieces = []
    for n in range(module.lo, module.hi + 1):
        pieces.append(GaugePieceModel(weight=n, lattice=_columns(module.lattice(n)),
                                      sublattice=_columns(module.sublattice(n)),
                                      u=_rows(module.arrow_matrix("u", n)),
                                      t=_rows(module.arrow_matrix("t", n))))
    return GaugeModel(name=X.name, witt=witt_to_model(X.witt), rank=X.rank, window=X.window, pieces=pieces,
                      gluing=_rows(X.gluing))


def gauge_from_model(model: GaugeModel) -> FGauge:
    """
    Raises:
        ConfigurationError: 비트 환 인자가 잘못되었을 때
        GaugeStructureError: 격자, 붙임, 또는 주어진 u/t 행렬이 맞지 않을 때
    """
    witt = WittRing(model.witt.p, model.witt.f, model.witt.m)
    rank = model.rank
    pieces = sorted(model.pieces, key=lambda piece: piece.weight)
    module = GradedUTModule(witt.p, rank, {piece.weight: _matrix(piece.lattice, rank) for piece in pieces},
                            {piece.weight: _matrix(piece.sublattice, rank) for piece in pieces}, name=model.name)
    for piece in pieces:
        n = piece.weight
        for arrow, given in (("u", piece.u), ("t", piece.t)):
            if given is None:
                continue
            expected = module.arrow_matrix(arrow, n)
            given_zero = not any(x for row in given for x in row)
            if len(given) != expected.shape[0] or any(len(row) != expected.shape[1] for row in given) \
                    or given_zero != module.is_zero_map(arrow, n):
                raise GaugeStructureError(f"가중치 {n} 의 {arrow} 행렬이 격자에서 유도한 것과 맞지 않습니다",
                                          witness={"weight": n, "arrow": arrow, "expected": _rows(expected)})
    gluing = np.array(model.gluing, dtype=object) if rank else np.zeros((0, 0), dtype=object)
    return FGauge(module, gluing, witt, name=model.name)


def load_gauge(text: str) -> FGauge:
    try:
        model = GaugeModel.model_validate_json(text)
    except ValidationError as e:
        raise GaugeStructureError(f"게이지 JSON 을 해석할 수 없습니다: {str(e)}", witness={"entry": "json"})
    return gauge_from_model(model)


def pipeline_to_model(result: SupersingularPipeline, margin: int = 1) -> PipelineModel:
    gauges = [result.h, result.m, result.end_chain.end, result.end_chain.eichler, result.m_tilde,
              result.m_prime, result.line, result.delta]
    stages = [PipelineStageModel(name=X.name, window=X.window, diagram=render_diagram(X, margin).split("\n"))
              for X in gauges]
    return PipelineModel(witt=witt_to_model(result.witt), stages=stages, shortcut=bool(result.shortcut),
                         gluing_scalar=result.details["gluing_scalar"],
                         end_quotient_lengths=result.details["end_quotient_lengths"])
