# modules/linalg.py
"""
정수 행렬의 정규형과 격자 연산, F_p 선형대수

정수 계산은 numpy object 배열(임의 정밀도 int)로, 유한체 계산은
sympy DomainMatrix 로 수행한다.
"""
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import GF, Matrix, factorint
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)


def int_matrix(rows, shape: Optional[Tuple[int, int]] = None) -> np.ndarray:
    """정수 object 행렬 생성 (빈 행렬 포함)"""
    if shape is not None and (shape[0] == 0 or shape[1] == 0):
        return np.zeros(shape, dtype=object)
    matrix = np.array(rows, dtype=object)
    if matrix.ndim == 1:
        matrix = matrix.reshape((-1, 1)) if shape is None else matrix.reshape(shape)
    if shape is not None:
        matrix = matrix.reshape(shape)
    return matrix


def identity(n: int) -> np.ndarray:
    matrix = np.zeros((n, n), dtype=object)
    for i in range(n):
        matrix[i, i] = 1
    return matrix


def exgcd(a: int, b: int) -> np.ndarray:
    """
    확장 유클리드 알고리즘

    Returns:
        np.ndarray: M @ [a, b] = [gcd(a, b), 0] 을 만족하는 행렬식 1인 2x2 정수 행렬.
        a 가 b 를 나누면 M[0, 1] = 0 이 보장된다.
    """
    a_sign = -1 if a < 0 else 1
    b_sign = -1 if b < 0 else 1
    a, b = a * a_sign, b * b_sign

    M = np.array([[b, 0, 1],
                  [a, 1, 0]], dtype=object)
    while M[1, 0] != 0:
        q = M[0, 0] // M[1, 0]
        M[0] = M[0] - q * M[1]
        M = M[::-1].copy()

    g = M[0, 0]
    M = M[:, 1:].copy()
    M[:, 0] = M[:, 0] * a_sign
    M[:, 1] = M[:, 1] * b_sign

    if g != 0:
        M[1, 0] = -b_sign * b // g
        M[1, 1] = a_sign * a // g
    return M


def inv_2x2_det1(M: np.ndarray) -> np.ndarray:
    """행렬식 1인 2x2 행렬의 역행렬"""
    return np.array([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]], dtype=object)


def normal_form(A: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    정수 행렬의 대각 정규형

    Args:
        A: 정수 행렬

    Returns:
        (S, D, T, Sinv, Tinv): A == S @ D @ T, D 는 A 와 같은 모양의 대각 행렬,
        S, T 는 행렬식 1 이며 Sinv, Tinv 가 각각의 정수 역행렬이다.

    Note:
        스미스 정규형과 달리 대각 성분 사이의 나눗셈 관계는 보장하지 않는다.
        몫군 계산에는 대각 성분만 있으면 충분하다.
    """
    D = int_matrix(A).copy()
    rows, cols = D.shape
    S, T = identity(rows), identity(cols)
    Sinv, Tinv = identity(rows), identity(cols)

    def clear_row(i: int) -> bool:
        if all(D[i, j] == 0 for j in range(i + 1, cols)):
            return False
        for j in range(i + 1, cols):
            if D[i, j] == 0:
                continue
            M = exgcd(D[i, i], D[i, j]).T
            D[:, [i, j]] = D[:, [i, j]].dot(M)
            T[[i, j]] = inv_2x2_det1(M).dot(T[[i, j]])
            Tinv[:, [i, j]] = Tinv[:, [i, j]].dot(M)
        return True

    def clear_col(i: int) -> bool:
        if all(D[j, i] == 0 for j in range(i + 1, rows)):
            return False
        for j in range(i + 1, rows):
            if D[j, i] == 0:
                continue
            M = exgcd(D[i, i], D[j, i])
            D[[i, j]] = M.dot(D[[i, j]])
            S[:, [i, j]] = S[:, [i, j]].dot(inv_2x2_det1(M))
            Sinv[[i, j]] = M.dot(Sinv[[i, j]])
        return True

    for i in range(min(rows, cols)):
        clear_col(i)
        while clear_row(i) and clear_col(i):
            pass

    return S, D, T, Sinv, Tinv


def diagonal(D: np.ndarray) -> List[int]:
    return [D[i, i] for i in range(min(D.shape))]


def kernel(A: np.ndarray) -> np.ndarray:
    """A 의 정수 영공간 기저 (열벡터)"""
    A = int_matrix(A)
    rows, cols = A.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=object)
    if rows == 0:
        return identity(cols)
    _, D, _, _, Tinv = normal_form(A)
    d = diagonal(D)
    free = [j for j in range(cols) if j >= len(d) or d[j] == 0]
    return Tinv[:, free]


def image_basis(G: np.ndarray) -> np.ndarray:
    """열벡터들이 생성하는 격자의 기저 (열벡터)"""
    G = int_matrix(G)
    rows, cols = G.shape
    if rows == 0 or cols == 0:
        return np.zeros((rows, 0), dtype=object)
    S, D, _, _, _ = normal_form(G)
    d = diagonal(D)
    columns = [S[:, j] * d[j] for j in range(len(d)) if d[j] != 0]
    if not columns:
        return np.zeros((rows, 0), dtype=object)
    return np.column_stack(columns).astype(object)


def solve_integer(A: np.ndarray, b: Sequence[int]) -> Optional[np.ndarray]:
    """A x = b 의 정수해 하나, 없으면 None"""
    A = int_matrix(A)
    rows, cols = A.shape
    b = np.array(list(b), dtype=object)
    if cols == 0:
        return np.zeros(0, dtype=object) if all(x == 0 for x in b) else None
    if rows == 0:
        return np.zeros(cols, dtype=object)
    S, D, T, Sinv, Tinv = normal_form(A)
    c = Sinv.dot(b)
    d = diagonal(D)
    y = np.zeros(cols, dtype=object)
    for j in range(rows):
        if j < len(d) and d[j] != 0:
            if c[j] % d[j] != 0:
                return None
            y[j] = c[j] // d[j]
        elif c[j] != 0:
            return None
    return Tinv.dot(y)


def lattice_sum(*generators: np.ndarray) -> np.ndarray:
    """격자들의 합의 기저"""
    blocks = [int_matrix(g) for g in generators if g.shape[1] > 0]
    if not blocks:
        rows = generators[0].shape[0] if generators else 0
        return np.zeros((rows, 0), dtype=object)
    return image_basis(np.hstack(blocks))


def lattice_intersection(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """두 격자의 교집합 기저"""
    A, B = int_matrix(A), int_matrix(B)
    if A.shape[1] == 0 or B.shape[1] == 0:
        return np.zeros((A.shape[0], 0), dtype=object)
    K = kernel(np.hstack([A, -B]))
    if K.shape[1] == 0:
        return np.zeros((A.shape[0], 0), dtype=object)
    return image_basis(A.dot(K[:A.shape[1], :]))


def lattice_contains(L: np.ndarray, v: Sequence[int]) -> bool:
    return solve_integer(L, v) is not None


def lattice_contains_all(L: np.ndarray, M: np.ndarray) -> bool:
    """M 의 모든 열이 L 에 속하는지"""
    return all(lattice_contains(L, M[:, j]) for j in range(M.shape[1]))


def lattice_equal(A: np.ndarray, B: np.ndarray) -> bool:
    return lattice_contains_all(A, B) and lattice_contains_all(B, A)


def lattice_preimage(A: np.ndarray, L: np.ndarray) -> np.ndarray:
    """{y : A y ∈ L} 의 기저"""
    A, L = int_matrix(A), int_matrix(L)
    cols = A.shape[1]
    if cols == 0:
        return np.zeros((0, 0), dtype=object)
    K = kernel(np.hstack([A, -L])) if L.shape[1] else kernel(A)
    if K.shape[1] == 0:
        return np.zeros((cols, 0), dtype=object)
    return image_basis(K[:cols, :])


def kron(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """정수 행렬의 크로네커 곱 (A ⊗ B, 블록 (i, j) 가 A[i, j]·B)"""
    A, B = int_matrix(A), int_matrix(B)
    ra, ca = A.shape
    rb, cb = B.shape
    out = np.zeros((ra * rb, ca * cb), dtype=object)
    for i in range(ra):
        for j in range(ca):
            out[i * rb:(i + 1) * rb, j * cb:(j + 1) * cb] = A[i, j] * B
    return out


def scaled_inverse(G: np.ndarray, scale: int) -> np.ndarray:
    """
    scale·G⁻¹ (정수 행렬이어야 함)

    Raises:
        ValueError: G 가 특이이거나 scale·G⁻¹ 이 정수가 아닐 때
    """
    matrix = Matrix(int_matrix(G).tolist())
    if matrix.det() == 0:
        raise ValueError("특이 행렬입니다")
    inverse = matrix.inv() * scale
    if any(not entry.is_integer for entry in inverse):
        raise ValueError(f"{scale}·G⁻¹ 이 정수 행렬이 아닙니다")
    return np.array([[int(inverse[i, j]) for j in range(inverse.cols)] for i in range(inverse.rows)],
                    dtype=object)


def congruence_lattice(D: np.ndarray, modulus: int) -> np.ndarray:
    """{v ∈ Z^n : D v ≡ 0 mod N} 의 기저"""
    D = int_matrix(D)
    rows, cols = D.shape
    if rows == 0:
        return identity(cols)
    block = np.hstack([D, identity(rows) * modulus])
    K = kernel(block)
    return image_basis(K[:cols, :])


def p_valuation(n: int, p: int) -> int:
    n = abs(int(n))
    if n == 0:
        raise ValueError("0 의 p-진 값은 정의되지 않습니다")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def invariant_factors(moduli: Sequence[int]) -> List[int]:
    """
    순환군 직합 ⊕ Z/d_i 의 불변인자 (d | d' 순, 자유 부분은 0)

    Note:
        소인수분해로 기본약수를 구한 뒤 다시 묶는다.
    """
    free = sum(1 for d in moduli if d == 0)
    primary = {}
    for d in moduli:
        if d in (0, 1):
            continue
        for q, e in factorint(abs(d)).items():
            primary.setdefault(q, []).append(e)
    length = max((len(v) for v in primary.values()), default=0)
    factors = [1] * length
    for q, exponents in primary.items():
        exponents = sorted(exponents, reverse=True)
        for i, e in enumerate(exponents):
            factors[length - 1 - i] *= q ** e
    return factors + [0] * free


class Subquotient:
    """
    격자의 부분몫 L / I (I ⊂ L ⊂ Z^n)

    생성원(주변 공간의 벡터)과 각 생성원의 위수를 가지며,
    L 의 원소를 좌표로 바꾸는 사상을 제공한다.
    """

    def __init__(self, lattice: np.ndarray, sublattice: np.ndarray):
        self.ambient_rank = lattice.shape[0]
        self._basis = image_basis(lattice)
        r = self._basis.shape[1]
        self._basis_form = normal_form(self._basis) if r > 0 else None

        columns = [self._solve_in_basis(sublattice[:, j]) for j in range(sublattice.shape[1])]
        if any(c is None for c in columns):
            raise ValueError("부분격자가 격자에 포함되지 않습니다")
        X = np.column_stack(columns).astype(object) if columns else np.zeros((r, 0), dtype=object)

        if r == 0:
            self.generators = np.zeros((self.ambient_rank, 0), dtype=object)
            self.moduli: List[int] = []
            self._projection = np.zeros((0, 0), dtype=object)
            return

        S, D, _, Sinv, _ = normal_form(X) if X.shape[1] > 0 else (identity(r), X, None, identity(r), None)
        d = diagonal(D)
        moduli = [abs(d[j]) if j < len(d) else 0 for j in range(r)]
        keep = [j for j in range(r) if moduli[j] != 1]
        self.generators = self._basis.dot(S[:, keep]) if keep else np.zeros((self.ambient_rank, 0), dtype=object)
        self.moduli = [moduli[j] for j in keep]
        self._projection = Sinv[keep] if keep else np.zeros((0, r), dtype=object)

    def _solve_in_basis(self, v) -> Optional[np.ndarray]:
        if self._basis.shape[1] == 0:
            return np.zeros(0, dtype=object) if all(x == 0 for x in v) else None
        S, D, T, Sinv, Tinv = self._basis_form
        c = Sinv.dot(np.array(list(v), dtype=object))
        d = diagonal(D)
        y = np.zeros(self._basis.shape[1], dtype=object)
        for j in range(len(c)):
            if j < len(d) and d[j] != 0:
                if c[j] % d[j] != 0:
                    return None
                y[j] = c[j] // d[j]
            elif c[j] != 0:
                return None
        return Tinv.dot(y)

    def contains(self, v) -> bool:
        return self._solve_in_basis(v) is not None

    def coordinates(self, v) -> Tuple[int, ...]:
        """L 의 원소 v 의 몫 좌표 (유한 위수 성분은 0..d-1 로 정규화)"""
        y = self._solve_in_basis(v)
        if y is None:
            raise ValueError(f"벡터가 격자에 속하지 않습니다: {list(v)}")
        c = self._projection.dot(y) if len(self.moduli) else []
        return tuple(int(c[j] % m) if m else int(c[j]) for j, m in enumerate(self.moduli))

    def is_zero(self, v) -> bool:
        return all(x == 0 for x in self.coordinates(v))

    def lift(self, coordinates: Sequence[int]) -> np.ndarray:
        if not self.moduli:
            return np.zeros(self.ambient_rank, dtype=object)
        return self.generators.dot(np.array(list(coordinates), dtype=object))

    @property
    def invariant_factors(self) -> List[int]:
        return invariant_factors(self.moduli)

    @property
    def free_rank(self) -> int:
        return sum(1 for m in self.moduli if m == 0)

    def length(self, p: int) -> int:
        """유한 부분의 Z_p-길이 (p 의 거듭제곱 위수만 허용)"""
        total = 0
        for m in self.moduli:
            if m == 0:
                continue
            if abs(m) != p ** p_valuation(m, p):
                raise ValueError(f"위수 {m} 이(가) {p} 의 거듭제곱이 아닙니다")
            total += p_valuation(m, p)
        return total


# ---------------------------------------------------------------------------
# F_p 선형대수 (sympy DomainMatrix)

def fp_rref(rows: Sequence[Sequence[int]], p: int, ncols: int) -> Tuple[List[List[int]], Tuple[int, ...]]:
    """행 사다리꼴 (기약형)과 피벗 열"""
    rows = [[int(x) % p for x in row] for row in rows]
    if not rows or ncols == 0:
        return rows, tuple()
    K = GF(p)
    matrix = DomainMatrix([[K(x) for x in row] for row in rows], (len(rows), ncols), K)
    reduced, pivots = matrix.rref()
    dense = reduced.to_Matrix()
    result = [[int(dense[i, j]) % p for j in range(ncols)] for i in range(len(rows))]
    return result, tuple(pivots)


def fp_rank(rows: Sequence[Sequence[int]], p: int, ncols: int) -> int:
    return len(fp_rref(rows, p, ncols)[1])


def fp_solve(A: Sequence[Sequence[int]], b: Sequence[int], p: int, ncols: int) -> Optional[List[int]]:
    """A x = b (mod p) 의 해 하나, 없으면 None"""
    augmented = [list(row) + [b[i]] for i, row in enumerate(A)]
    if not augmented:
        return [0] * ncols
    reduced, pivots = fp_rref(augmented, p, ncols + 1)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for r, c in enumerate(pivots):
        x[c] = reduced[r][ncols]
    return x


def fp_nullspace(A: Sequence[Sequence[int]], p: int, ncols: int) -> List[List[int]]:
    """A x = 0 (mod p) 해공간의 기저"""
    if not A:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    reduced, pivots = fp_rref(A, p, ncols)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [0] * ncols
        v[free] = 1
        for r, c in enumerate(pivots):
            v[c] = (-reduced[r][free]) % p
        basis.append(v)
    return basis


def fp_inverse(matrix: Sequence[Sequence[int]], p: int) -> Optional[List[List[int]]]:
    """정사각 행렬의 mod p 역행렬, 가역이 아니면 None"""
    n = len(matrix)
    if n == 0:
        return []
    columns = []
    for k in range(n):
        column = fp_solve(matrix, [1 if i == k else 0 for i in range(n)], p, n)
        if column is None:
            return None
        columns.append(column)
    return [[columns[j][i] for j in range(n)] for i in range(n)]
