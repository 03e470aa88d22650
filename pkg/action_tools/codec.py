# action_tools/codec.py
"""PD 환, 작용 테이블, Z/2^n 인스턴스의 JSON 변환"""
import logging
from typing import Dict, Optional, Tuple

import numpy as np
from pydantic import ValidationError

from action_tools.base import PDRing, PDRingModN, SteenrodAction
from models.ring import ActionModel, BasisElementModel, OperatorTable, PDInstanceModel, RingModel, RingModNModel
from modules.exceptions import ActionTableError

logger = logging.getLogger(__name__)


def _index(labels, label: str, entry: str) -> int:
    try:
        return labels.index(label)
    except ValueError:
        raise ActionTableError(f"알 수 없는 기저 이름입니다: {label}", witness={"entry": entry, "label": label})


def _structure(labels, products, modulus: int) -> np.ndarray:
    n = len(labels)
    structure = np.zeros((n, n, n), dtype=np.int64)
    for left, right, result, c in products:
        i, j, k = (_index(labels, name, "products") for name in (left, right, result))
        structure[i, j, k] = (structure[i, j, k] + c) % modulus
    return structure


def _products(labels, structure: np.ndarray):
    return [(labels[i], labels[j], labels[k], int(structure[i, j, k]))
            for i, j, k in zip(*np.nonzero(structure))]


def _table_to_matrix(labels, table: OperatorTable, modulus: int, entry: str) -> np.ndarray:
    n = len(labels)
    matrix = np.zeros((n, n), dtype=np.int64)
    for source, images in table.items():
        j = _index(labels, source, entry)
        for target, c in images.items():
            matrix[_index(labels, target, entry), j] = (matrix[_index(labels, target, entry), j] + c) % modulus
    return matrix


def _matrix_to_table(labels, matrix: np.ndarray) -> OperatorTable:
    table: OperatorTable = {}
    for j in range(len(labels)):
        images = {labels[i]: int(matrix[i, j]) for i in range(len(labels)) if matrix[i, j]}
        if images:
            table[labels[j]] = images
    return table


def _trace_vector(labels, trace: Dict[str, int]):
    vector = [0] * len(labels)
    for label, c in trace.items():
        vector[_index(labels, label, "trace")] = c
    return vector


def _basis(labels, bidegrees):
    return [BasisElementModel(label=label, bidegree=tuple(b)) for label, b in zip(labels, bidegrees)]


def ring_from_model(model: RingModel) -> PDRing:
    labels = [b.label for b in model.basis]
    if len(set(labels)) != len(labels):
        raise ActionTableError("기저 이름이 중복됩니다", witness={"entry": "basis"})
    return PDRing(model.p, model.dim, labels, [b.bidegree for b in model.basis],
                  _structure(labels, model.products, model.p), _trace_vector(labels, model.trace), name=model.name)


def ring_to_model(ring: PDRing) -> RingModel:
    trace = {ring.labels[k]: int(ring.trace[k]) for k in range(ring.rank) if ring.trace[k]}
    return RingModel(p=ring.p, dim=ring.dim, name=ring.name, basis=_basis(ring.labels, ring.bidegrees),
                     products=_products(ring.labels, ring.structure), trace=trace)


def action_tables(labels, model: ActionModel, modulus: int) -> Dict:
    return {
        "beta": _table_to_matrix(labels, model.beta, modulus, "beta"),
        "powers": {int(i): _table_to_matrix(labels, table, modulus, f"P{i}") for i, table in model.P.items()},
    }


def action_from_model(ring: PDRing, model: ActionModel) -> SteenrodAction:
    tables = action_tables(ring.labels, model, ring.p)
    return SteenrodAction(ring, tables["beta"], tables["powers"])


def action_to_model(action: SteenrodAction) -> ActionModel:
    labels = action.ring.labels
    powers = {i: _matrix_to_table(labels, matrix) for i, matrix in sorted(action.powers.items())}
    return ActionModel(beta=_matrix_to_table(labels, action.beta),
                       P={i: table for i, table in powers.items() if table})


def instance_from_model(model: PDInstanceModel) -> Tuple[PDRing, Optional[SteenrodAction]]:
    ring = ring_from_model(model.ring)
    action = action_from_model(ring, model.action) if model.action is not None else None
    return ring, action


def instance_to_model(ring: PDRing, action: Optional[SteenrodAction] = None,
                      tangent: Optional[np.ndarray] = None) -> PDInstanceModel:
    tangent_map = None
    if tangent is not None:
        tangent_map = {ring.labels[k]: int(tangent[k]) for k in range(ring.rank) if tangent[k] % ring.p}
    return PDInstanceModel(ring=ring_to_model(ring), action=action_to_model(action) if action else None,
                           tangent=tangent_map)


def mod_n_from_model(model: RingModNModel) -> PDRingModN:
    labels = [b.label for b in model.basis]
    modulus = 2 ** model.level
    tables = action_tables(labels, model.action, 2) if model.action is not None else None
    return PDRingModN(model.level, model.dim, labels, [b.bidegree for b in model.basis],
                      _structure(labels, model.products, modulus), _trace_vector(labels, model.trace),
                      _table_to_matrix(labels, model.bockstein, modulus, "bockstein"), tables, name=model.name)


def mod_n_to_model(ring: PDRingModN) -> RingModNModel:
    action = ring.action()
    trace = {ring.labels[k]: int(ring.trace[k]) for k in range(ring.rank) if ring.trace[k]}
    return RingModNModel(level=ring.level, dim=ring.dim, name=ring.name, basis=_basis(ring.labels, ring.bidegrees),
                         products=_products(ring.labels, ring.structure), trace=trace,
                         bockstein=_matrix_to_table(ring.labels, ring.bockstein),
                         action=action_to_model(action) if action else None)


def load_instance(text: str) -> Tuple[PDRing, Optional[SteenrodAction]]:
    try:
        return instance_from_model(PDInstanceModel.model_validate_json(text))
    except ValidationError as e:
        raise ActionTableError(f"환 JSON 을 해석할 수 없습니다: {str(e)}", witness={"entry": "json"})


def load_mod_n(text: str) -> PDRingModN:
    try:
        return mod_n_from_model(RingModNModel.model_validate_json(text))
    except ValidationError as e:
        raise ActionTableError(f"Z/2^n 인스턴스 JSON 을 해석할 수 없습니다: {str(e)}", witness={"entry": "json"})
