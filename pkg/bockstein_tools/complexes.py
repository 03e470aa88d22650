# bockstein_tools/complexes.py
"""
자유 이중차수 사슬 복합체와 mod 2^n 복슈타인

미분은 코호몰로지 차수를 1 올리고 가중치를 보존한다. 행렬 D 의 j 열이 d(e_j) 이며
계수는 임의 정밀도 정수(object 배열)이다. M/N 은 자유 복합체이므로 성분별 mod N 으로 계산한다.
"""
import logging
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from modules.exceptions import ArgumentError, BocksteinObstructionError, ComplexValidationError
from modules.linalg import (Subquotient, congruence_lattice, identity, image_basis, int_matrix, kernel,
                            lattice_sum, solve_integer)

logger = logging.getLogger(__name__)

Bidegree = Tuple[int, int]


def submatrix(matrix: np.ndarray, rows: Sequence[int], cols: Sequence[int]) -> np.ndarray:
    if not len(rows) or not len(cols):
        return np.zeros((len(rows), len(cols)), dtype=object)
    return matrix[np.ix_(list(rows), list(cols))]


class GradedComplex:
    """기저 이름, 이중차수 (차수, 가중치), 정수 미분 행렬"""

    def __init__(self, labels: Sequence[str], bidegrees: Sequence[Bidegree], differential,
                 name: str = "", check: bool = True):
        self.labels = list(labels)
        self.bidegrees: List[Bidegree] = [(int(b[0]), int(b[1])) for b in bidegrees]
        self.name = name
        n = len(self.labels)
        if len(self.bidegrees) != n or len(set(self.labels)) != n:
            raise ComplexValidationError(f"{name}: 기저 이름과 이중차수가 맞지 않습니다",
                                         witness={"labels": self.labels})
        self.differential = int_matrix(differential, (n, n)) if n else np.zeros((0, 0), dtype=object)
        if check:
            self.check()

    @property
    def rank(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ComplexValidationError(f"{self.name}: 알 수 없는 기저 '{label}'", witness={"entry": label})

    def zero(self) -> np.ndarray:
        return np.zeros(self.rank, dtype=object)

    def basis_vector(self, index) -> np.ndarray:
        if isinstance(index, str):
            index = self.index(index)
        v = self.zero()
        v[index] = 1
        return v

    def vector(self, coefficients: Dict[str, int]) -> np.ndarray:
        v = self.zero()
        for label, c in coefficients.items():
            v[self.index(label)] += int(c)
        return v

    def d(self, x: np.ndarray) -> np.ndarray:
        return self.differential.dot(np.array(x, dtype=object))

    def piece(self, bidegree: Bidegree) -> List[int]:
        return [k for k, b in enumerate(self.bidegrees) if b == tuple(bidegree)]

    def degree_piece(self, degree: int, weight: Optional[int] = None) -> List[int]:
        if weight is not None:
            return self.piece((degree, weight))
        return [k for k, b in enumerate(self.bidegrees) if b[0] == degree]

    def bidegrees_present(self) -> List[Bidegree]:
        return sorted(set(self.bidegrees))

    def bidegree_of(self, x: np.ndarray) -> Optional[Bidegree]:
        """x 가 한 이중차수에 놓이면 그 이중차수, 0 이면 None"""
        support = {self.bidegrees[k] for k in range(self.rank) if x[k] != 0}
        if len(support) > 1:
            raise ArgumentError(f"{self.name}: 동차가 아닌 원소입니다: {self.format(x)}",
                                witness={"bidegrees": sorted(support)})
        return support.pop() if support else None

    def check(self) -> None:
        """
        Raises:
            ComplexValidationError: 미분의 이중차수가 (1, 0) 이 아니거나 d∘d ≠ 0
        """
        D = self.differential
        for j, i in np.argwhere(D != 0):
            source, target = self.bidegrees[i], self.bidegrees[j]
            if target != (source[0] + 1, source[1]):
                raise ComplexValidationError(
                    f"{self.name}: d({self.labels[i]}) 가 {self.labels[j]} 성분을 가집니다",
                    witness={"entry": self.labels[i], "target": self.labels[j]})
        square = D.dot(D)
        for j, i in np.argwhere(square != 0):
            raise ComplexValidationError(f"{self.name}: d∘d ≠ 0 ({self.labels[i]})",
                                         witness={"entry": self.labels[i], "target": self.labels[j]})

    def format(self, x: np.ndarray, modulus: int = 0) -> str:
        parts = []
        for k in range(self.rank):
            c = int(x[k]) % modulus if modulus else int(x[k])
            if c:
                parts.append(self.labels[k] if c == 1 else f"{c}*{self.labels[k]}")
        return " + ".join(parts) or "0"


def restrict(complex_: GradedComplex, indices: Sequence[int], name: str = "") -> GradedComplex:
    """기저 일부로 제한한 복합체 (mod N 으로만 부분복합체인 경우를 위해 검사하지 않음)"""
    indices = list(indices)
    return GradedComplex([complex_.labels[k] for k in indices], [complex_.bidegrees[k] for k in indices],
                         submatrix(complex_.differential, indices, indices), name=name, check=False)


def universal_model(a: int, b: int, n: int) -> GradedComplex:
    """M_{a+1,b}: x ∈ (a, b), y ∈ (a+1, b), d(x) = 2^n·y"""
    return GradedComplex(["x", "y"], [(a, b), (a + 1, b)], [[0, 0], [2 ** n, 0]], name=f"M({a + 1},{b})/2^{n}")


def derived_quotient(complex_: GradedComplex, n: int) -> GradedComplex:
    """C ⊗ [Z·s → Z·t], d(s) = 2^n·t 인 원뿔 (m·s 는 차수 |m|-1)"""
    r = complex_.rank
    N = 2 ** n
    labels = list(complex_.labels) + [f"{m}·s" for m in complex_.labels]
    bidegrees = list(complex_.bidegrees) + [(a - 1, b) for a, b in complex_.bidegrees]
    D = np.zeros((2 * r, 2 * r), dtype=object)
    D[:r, :r] = complex_.differential
    D[r:, r:] = complex_.differential
    for k, (a, _) in enumerate(complex_.bidegrees):
        D[k, r + k] = N if a % 2 == 0 else -N
    return GradedComplex(labels, bidegrees, D, name=f"{complex_.name}/2^{n}")


class CohomologyGroup(NamedTuple):
    """H^{degree}(C; Z/N) (N = 0 이면 정수 계수), 좌표는 indices 순서의 국소 좌표"""
    complex: GradedComplex
    degree: int
    weight: Optional[int]
    modulus: int
    indices: List[int]
    quotient: Subquotient

    def local(self, x: np.ndarray) -> np.ndarray:
        return np.array([x[k] for k in self.indices], dtype=object)

    def globalize(self, v: Sequence[int]) -> np.ndarray:
        x = self.complex.zero()
        for k, c in zip(self.indices, v):
            x[k] = c
        return x

    @property
    def invariant_factors(self) -> List[int]:
        return self.quotient.invariant_factors

    @property
    def moduli(self) -> List[int]:
        return list(self.quotient.moduli)

    def generators(self) -> List[np.ndarray]:
        return [self.globalize(self.quotient.generators[:, j]) for j in range(self.quotient.generators.shape[1])]

    def coordinates(self, x: np.ndarray) -> Tuple[int, ...]:
        try:
            return self.quotient.coordinates(self.local(x))
        except ValueError as e:
            raise ComplexValidationError(f"{self.complex.name}: 코사이클이 아닙니다: {str(e)}",
                                         witness={"degree": self.degree, "modulus": self.modulus})

    def is_zero(self, x: np.ndarray) -> bool:
        return all(c == 0 for c in self.coordinates(x))


def _cocycles(complex_: GradedComplex, indices: List[int], targets: List[int], modulus: int) -> np.ndarray:
    block = submatrix(complex_.differential, targets, indices)
    if not indices:
        return np.zeros((0, 0), dtype=object)
    if modulus:
        return congruence_lattice(block, modulus)
    return kernel(block) if targets else identity(len(indices))


def _coboundaries(complex_: GradedComplex, indices: List[int], sources: List[int], modulus: int,
                  extra: Sequence[np.ndarray] = ()) -> np.ndarray:
    blocks = [image_basis(submatrix(complex_.differential, indices, sources))]
    if modulus:
        blocks.append(identity(len(indices)) * modulus)
    if extra:
        blocks.append(np.column_stack([[x[k] for k in indices] for x in extra]).astype(object))
    return lattice_sum(*blocks)


def cohomology_group(complex_: GradedComplex, degree: int, modulus: int = 0, weight: Optional[int] = None,
                     extra: Sequence[np.ndarray] = ()) -> CohomologyGroup:
    """
    H^{degree}(C; Z/modulus), extra 로 준 코사이클들도 0 으로 나눈다

    Args:
        modulus: 0 이면 정수 계수
        weight: None 이면 그 차수의 모든 가중치
    """
    indices = complex_.degree_piece(degree, weight)
    targets = complex_.degree_piece(degree + 1, weight)
    sources = complex_.degree_piece(degree - 1, weight)
    Z = _cocycles(complex_, indices, targets, modulus)
    B = _coboundaries(complex_, indices, sources, modulus, extra)
    try:
        quotient = Subquotient(Z, B)
    except ValueError as e:
        raise ComplexValidationError(f"{complex_.name}: H^{degree} 계산 실패: {str(e)}",
                                     witness={"degree": degree, "weight": weight, "modulus": modulus})
    return CohomologyGroup(complex_, degree, weight, modulus, indices, quotient)


def cohomology(complex_: GradedComplex, modulus: int = 0) -> Dict[Bidegree, CohomologyGroup]:
    """이중차수별 코호몰로지 (0 인 군은 제외)"""
    groups = {}
    for degree, weight in complex_.bidegrees_present():
        group = cohomology_group(complex_, degree, modulus, weight)
        if group.moduli:
            groups[(degree, weight)] = group
    logger.debug(f"{complex_.name}: H(Z/{modulus or 0}) = "
                 f"{ {k: g.invariant_factors for k, g in groups.items()} }")
    return groups


def mod_cohomology(complex_: GradedComplex, degree: int, modulus: int, weight: Optional[int] = None) -> CohomologyGroup:
    if modulus < 2:
        raise ArgumentError(f"계수 modulus 는 2 이상이어야 합니다: {modulus}", witness={"modulus": modulus})
    return cohomology_group(complex_, degree, modulus, weight)


class ModnClass(NamedTuple):
    """H^{a,b}(C/N) 의 원소와 그 대표 코사이클"""
    complex: GradedComplex
    modulus: int
    bidegree: Bidegree
    representative: np.ndarray

    def format(self) -> str:
        return self.complex.format(self.representative, self.modulus)

    def group(self, extra: Sequence[np.ndarray] = ()) -> CohomologyGroup:
        degree, weight = self.bidegree
        return cohomology_group(self.complex, degree, self.modulus, weight, extra)


def mod_class(complex_: GradedComplex, representative, modulus: int,
              bidegree: Optional[Bidegree] = None) -> ModnClass:
    """
    Raises:
        ComplexValidationError: 대표가 mod N 코사이클이 아닐 때
        ArgumentError: 동차가 아니거나 이중차수가 없을 때
    """
    x = np.array([int(c) % modulus for c in representative], dtype=object)
    found = complex_.bidegree_of(x)
    if found is None and bidegree is None:
        raise ArgumentError("0 인 류에는 이중차수를 지정해야 합니다")
    if found is not None and bidegree is not None and tuple(bidegree) != found:
        raise ArgumentError(f"대표의 이중차수 {found} 가 {tuple(bidegree)} 와 다릅니다",
                            witness={"bidegree": list(found)})
    boundary = complex_.d(x)
    if any(c % modulus for c in boundary):
        raise ComplexValidationError(f"{complex_.name}: mod {modulus} 코사이클이 아닙니다: {complex_.format(x)}",
                                     witness={"d": complex_.format(boundary, modulus)})
    return ModnClass(complex_, modulus, tuple(bidegree) if bidegree is not None else found, x)


def is_trivial(u: ModnClass, modulo: Sequence[np.ndarray] = ()) -> bool:
    """u = 0 (modulo 로 준 코사이클들의 생성 부분군을 법으로)"""
    return u.group(modulo).is_zero(u.representative)


def difference(x: ModnClass, y: ModnClass) -> ModnClass:
    if x.modulus != y.modulus or x.bidegree != y.bidegree:
        raise ArgumentError(f"비교할 수 없는 류입니다: {x.bidegree} mod {x.modulus}, {y.bidegree} mod {y.modulus}")
    return ModnClass(x.complex, x.modulus, x.bidegree, (x.representative - y.representative) % x.modulus)


def reduce_class(u: ModnClass, modulus: int) -> ModnClass:
    if u.modulus % modulus:
        raise ArgumentError(f"Z/{u.modulus} 에서 Z/{modulus} 로 환원할 수 없습니다")
    return ModnClass(u.complex, modulus, u.bidegree, u.representative % modulus)


def connecting_map(u: ModnClass, a: int, q: Optional[int] = None) -> ModnClass:
    """
    0 → Z/a →(·q)→ Z/aq → Z/q → 0 의 연결 사상 H^k(Z/q) → H^{k+1}(Z/a)

    정수 올림 ũ 에 대해 d(ũ)/q 를 mod a 로 환원한다.
    """
    q = q or u.modulus
    u = reduce_class(u, q)
    boundary = u.complex.d(u.representative)
    if any(c % q for c in boundary):
        raise ComplexValidationError(f"d(ũ) 가 {q} 로 나누어지지 않습니다", witness={"u": u.format()})
    degree, weight = u.bidegree
    image = np.array([(c // q) % a for c in boundary], dtype=object)
    return ModnClass(u.complex, a, (degree + 1, weight), image)


def bockstein_n(n: int, u: ModnClass) -> ModnClass:
    """β_n: H^k(C/2^n) → H^{k+1}(C/2^n)"""
    if u.modulus != 2 ** n:
        raise ArgumentError(f"β_{n} 은 Z/{2 ** n} 계수 류에만 정의됩니다: modulus={u.modulus}")
    return connecting_map(u, 2 ** n, 2 ** n)


def bockstein_image(complex_: GradedComplex, n: int, bidegree: Bidegree) -> List[np.ndarray]:
    """β_n(H^{a-1,b}(C/2^n)) 생성원들의 대표 (H^{a,b} 안)"""
    degree, weight = bidegree
    source = cohomology_group(complex_, degree - 1, 2 ** n, weight)
    return [bockstein_n(n, ModnClass(complex_, 2 ** n, (degree - 1, weight), g)).representative
            for g in source.generators()]


def secondary_bockstein(n: int, u: ModnClass, nullhomotopy: Optional[np.ndarray] = None) -> ModnClass:
    """
    β_n^{(2)}(u): d(ũ) = 2^n·w 에서 w = d(c) + 2^n·r 로 고친 뒤 r 을 mod 2^n 으로

    결과는 β_n 의 상을 법으로만 잘 정의된다.

    Raises:
        BocksteinObstructionError: β_n(u) ≠ 0 이거나 주어진 영호모토피가 맞지 않을 때
    """
    N = 2 ** n
    beta = bockstein_n(n, u)
    w = np.array([c // N for c in u.complex.d(u.representative)], dtype=object)
    complex_ = u.complex
    degree, weight = u.bidegree
    if nullhomotopy is None:
        if not is_trivial(beta):
            raise BocksteinObstructionError(f"β_{n}(u) ≠ 0 이므로 이차 복슈타인이 정의되지 않습니다",
                                            witness={"u": u.format(), "beta_n": beta.format()})
        targets = complex_.piece((degree + 1, weight))
        sources = complex_.piece(u.bidegree)
        block = np.hstack([submatrix(complex_.differential, targets, sources), identity(len(targets)) * N])
        solution = solve_integer(block, [w[k] for k in targets])
        if solution is None:
            raise BocksteinObstructionError("영호모토피를 찾지 못했습니다", witness={"u": u.format()})
        c = complex_.zero()
        for k, value in zip(sources, solution[:len(sources)]):
            c[k] = value
    else:
        c = np.array(nullhomotopy, dtype=object)
    residual = w - complex_.d(c)
    if any(x % N for x in residual):
        raise BocksteinObstructionError(f"영호모토피가 d(ũ)/2^{n} 를 mod 2^{n} 로 맞추지 못합니다",
                                        witness={"u": u.format(), "residual": complex_.format(residual, N)})
    r = np.array([(x // N) % N for x in residual], dtype=object)
    return ModnClass(complex_, N, (degree + 1, weight), r)


def bockstein_page_two(complex_: GradedComplex, n: int, degree: int, weight: Optional[int] = None) -> CohomologyGroup:
    """2진 복슈타인 스펙트럼 열의 E_2 = ker β_n / im β_n (차수 degree)"""
    N = 2 ** n
    indices = complex_.degree_piece(degree, weight)
    targets = complex_.degree_piece(degree + 1, weight)
    sources = complex_.degree_piece(degree - 1, weight)
    Z = _cocycles(complex_, indices, targets, N)
    boundary_next = _coboundaries(complex_, targets, indices, N)
    if Z.shape[1] and targets:
        beta = submatrix(complex_.differential, targets, indices).dot(Z) // N
        relation = kernel(np.hstack([beta, -boundary_next])) if boundary_next.shape[1] else kernel(beta)
        K = image_basis(Z.dot(relation[:Z.shape[1], :])) if relation.shape[1] else np.zeros((len(indices), 0), dtype=object)
    else:
        K = Z
    previous = _cocycles(complex_, sources, indices, N)
    images = []
    if previous.shape[1] and indices:
        images = [submatrix(complex_.differential, indices, sources).dot(previous) // N]
    B = lattice_sum(_coboundaries(complex_, indices, sources, N), *images)
    return CohomologyGroup(complex_, degree, weight, N, indices, Subquotient(K, B))


def check_chain_map(matrix, source: GradedComplex, target: GradedComplex) -> np.ndarray:
    """
    Raises:
        ComplexValidationError: d∘f ≠ f∘d
    """
    f = int_matrix(matrix, (target.rank, source.rank))
    defect = target.differential.dot(f) - f.dot(source.differential)
    for _, i in np.argwhere(defect != 0):
        raise ComplexValidationError(f"{source.name} → {target.name} 이 사슬사상이 아닙니다 ({source.labels[i]})",
                                     witness={"entry": source.labels[i]})
    return f


def push_class(matrix: np.ndarray, target: GradedComplex, u: ModnClass) -> ModnClass:
    """사슬사상 f 에 의한 f_*(u)"""
    image = np.array([int(c) % u.modulus for c in matrix.dot(u.representative)], dtype=object)
    return ModnClass(target, u.modulus, u.bidegree, image)
