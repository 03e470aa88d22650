# bockstein_tools/codec.py
"""사슬 복합체, DGA, 코호몰로지 군의 JSON 변환"""
import logging
from typing import Union

import numpy as np
from pydantic import ValidationError

from bockstein_tools.complexes import CohomologyGroup, GradedComplex, ModnClass
from bockstein_tools.dga import CommutativeDGA
from models.complex import BocksteinClassModel, CohomologyGroupModel, ComplexModel
from models.ring import BasisElementModel
from modules.exceptions import ComplexValidationError

logger = logging.getLogger(__name__)


def _index(labels, label: str, entry: str) -> int:
    try:
        return labels.index(label)
    except ValueError:
        raise ComplexValidationError(f"알 수 없는 기저 이름입니다: {label}", witness={"entry": entry, "label": label})


def complex_from_model(model: ComplexModel) -> Union[GradedComplex, CommutativeDGA]:
    """
    Raises:
        ComplexValidationError: 이름이 없거나 d∘d ≠ 0, DGA 공리 위반
    """
    labels = [b.label for b in model.basis]
    bidegrees = [b.bidegree for b in model.basis]
    n = len(labels)
    D = np.zeros((n, n), dtype=object)
    for source, target, c in model.differential:
        D[_index(labels, target, "differential"), _index(labels, source, "differential")] += c
    if model.products is None:
        return GradedComplex(labels, bidegrees, D, name=model.name)
    S = np.zeros((n, n, n), dtype=object)
    for left, right, result, c in model.products:
        i, j, k = (_index(labels, name, "products") for name in (left, right, result))
        S[i, j, k] += c
    return CommutativeDGA(labels, bidegrees, D, S, name=model.name)


def complex_to_model(complex_: GradedComplex) -> ComplexModel:
    labels = complex_.labels
    D = complex_.differential
    differential = [(labels[i], labels[j], int(D[j, i])) for j, i in zip(*np.nonzero(D))]
    products = None
    if isinstance(complex_, CommutativeDGA):
        S = complex_.structure
        products = [(labels[i], labels[j], labels[k], int(S[i, j, k])) for i, j, k in zip(*np.nonzero(S))]
    basis = [BasisElementModel(label=label, bidegree=b) for label, b in zip(labels, complex_.bidegrees)]
    return ComplexModel(name=complex_.name, basis=basis, differential=sorted(differential), products=products)


def load_complex(text: str) -> Union[GradedComplex, CommutativeDGA]:
    try:
        model = ComplexModel.model_validate_json(text)
    except ValidationError as e:
        raise ComplexValidationError(f"복합체 JSON 을 해석할 수 없습니다: {str(e)}", witness={"entry": "json"})
    return complex_from_model(model)


def group_to_model(group: CohomologyGroup) -> CohomologyGroupModel:
    modulus = group.modulus
    return CohomologyGroupModel(degree=group.degree, weight=group.weight, modulus=modulus,
                                invariant_factors=group.invariant_factors,
                                generators=[group.complex.format(g, modulus) for g in group.generators()])


def class_to_model(u: ModnClass) -> BocksteinClassModel:
    return BocksteinClassModel(modulus=u.modulus, bidegree=u.bidegree, representative=u.format())
