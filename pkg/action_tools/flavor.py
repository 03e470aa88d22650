# action_tools/flavor.py
"""Ps (syntomic) 와 Pe (E∞) 연산 사이의 τ 거듭제곱 변환"""
import logging

import numpy as np

from action_tools.base import PDRing, SteenrodAction
from models.report import VerificationReport
from models.ring import Flavor, FlavorConversion
from modules.exceptions import ConfigurationError
from steenrod_tools.base import Base, as_base

logger = logging.getLogger(__name__)


def flavor_convert(i: int, b: int, direction=Flavor.SYN, base=Base.K, p: int = 2) -> FlavorConversion:
    """
    가중치 b 위에서 Ps^i 와 Pe^i 의 관계

    i > b 이면 Ps^i = τ^{(p-1)(i-b)} Pe^i, b >= i 이면 Pe^i = τ^{(p-1)(b-i)} Ps^i.
    direction 은 표현하려는 쪽이며, 관계의 좌변이 아니면 expressible=False 이다.
    K-점에서는 τ 가 0 이므로 scalar 가 1 (지수 0) 또는 0 이 된다.
    """
    if i < 0:
        raise ConfigurationError(f"연산 첨자는 음수일 수 없습니다: i={i}")
    base = as_base(base)
    direction = Flavor(direction)
    if i > b:
        lhs, rhs, power = Flavor.SYN, Flavor.EINFTY, (p - 1) * (i - b)
    else:
        lhs, rhs, power = Flavor.EINFTY, Flavor.SYN, (p - 1) * (b - i)
    scalar = (1 if power == 0 else 0) if base == Base.K else None
    return FlavorConversion(i=i, weight=b, p=p, base=base.value, lhs=lhs, rhs=rhs, tau_power=power,
                            scalar=scalar, expressible=(lhs == direction or power == 0))


def compare_flavors(ring: PDRing, syn: SteenrodAction, einfty: SteenrodAction) -> VerificationReport:
    """
    K-점에서 두 작용 테이블이 flavor_convert 와 맞는지 확인

    i = b 이면 두 연산이 같고, 관계식의 τ 지수가 양수이면 좌변 연산은 0 이어야 한다.
    """
    report = VerificationReport(name=f"compare_flavors {ring.name}".strip())
    for k in range(ring.rank):
        a, b = ring.bidegrees[k]
        x = ring.basis_vector(k)
        for i in range(1, max(syn.max_index, einfty.max_index) + 1):
            conversion = flavor_convert(i, b, base=Base.K, p=ring.p)
            left = syn if conversion.lhs == Flavor.SYN else einfty
            right = einfty if conversion.lhs == Flavor.SYN else syn
            expected = (conversion.scalar * right.apply(i, x)) % ring.p
            got = left.apply(i, x)
            if not np.array_equal(got, expected):
                report.add("flavor comparison", element=ring.labels[k], relation=conversion.describe(),
                           expected=ring.format(expected), value=ring.format(got))
    return report
