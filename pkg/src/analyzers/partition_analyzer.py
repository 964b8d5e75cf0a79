"""
해밍 그래프 정점 분할의 동등성(equitable) 검증, 몫 행렬 및 분할 차수
"""
import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from src.analyzers.bound_auditor import NOT_APPLICABLE, BoundReport, judge, require_audit_alphabet
from src.domain.hamming_space import (
    ZERO_ONE,
    DomainError,
    DomainParams,
    FunctionTable,
    Point,
    index_to_point,
)
from src.processors.boundary_analyzer import relevant_indices
from src.processors.fourier_transform import adjacency_apply, lambda_k

logger = logging.getLogger(__name__)


class NotEquitableError(ValueError):
    """분할이 동등하지 않음 (첫 위반 정점 포함)"""

    def __init__(self, witness: Point, class_id: int, target_class: int,
                 expected: int, actual: int):
        self.witness = witness
        self.class_id = class_id
        self.target_class = target_class
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"동등 분할이 아닙니다: 정점 {witness.coords} (클래스 {class_id}) 의 "
            f"클래스 {target_class} 이웃 수 {actual} != {expected}"
        )

    def to_dict(self) -> dict:
        return {
            "witness": list(self.witness.coords),
            "class": self.class_id,
            "target_class": self.target_class,
            "expected": self.expected,
            "actual": self.actual,
        }


@dataclass(frozen=True)
class Partition:
    """정점 분할 C_1 ∪ ... ∪ C_r (라벨 1..r, 혼합 기수 순서)"""
    params: DomainParams
    labels: np.ndarray = field(repr=False)
    r: int

    def __post_init__(self):
        labels = np.asarray(self.labels).reshape(-1).astype(np.int64)
        if labels.size != self.params.size:
            raise DomainError(
                f"라벨 길이 {labels.size} 가 q^n = {self.params.size} 과 다릅니다"
            )
        if self.r < 1:
            raise DomainError(f"클래스 수 r 은 1 이상이어야 합니다: {self.r}")
        if np.any((labels < 1) | (labels > self.r)):
            raise DomainError(f"라벨은 [1, {self.r}] 범위여야 합니다")
        sizes = np.bincount(labels, minlength=self.r + 1)[1:]
        empty = [int(c) + 1 for c in np.flatnonzero(sizes == 0)]
        if empty:
            raise DomainError(f"비어 있는 클래스가 있습니다: {empty}")
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_indicator(cls, f: FunctionTable) -> "Partition":
        """0/1 함수 -> 분할 (C_1 = {f = 1}, C_2 = {f = 0})"""
        g = f.to_zero_one()
        return cls(g.params, np.where(g.values == 1, 1, 2), 2)

    def class_sizes(self) -> Tuple[int, ...]:
        return tuple(int(c) for c in np.bincount(self.labels, minlength=self.r + 1)[1:])


@dataclass(frozen=True)
class QuotientMatrix:
    """몫 행렬 S = (s_ij) 와 고유값"""
    entries: Tuple[Tuple[int, ...], ...]
    theta0: int
    theta1: Optional[int] = None  # r = 2 전용, a - c
    degree_d: Optional[int] = None  # r = 2 전용

    @property
    def r(self) -> int:
        return len(self.entries)

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def to_dict(self) -> dict:
        return {
            "entries": [list(row) for row in self.entries],
            "theta0": self.theta0,
            "theta1": self.theta1,
            "degree_d": self.degree_d,
        }


def neighbor_class_counts(p: Partition) -> np.ndarray:
    """(q^n, r) 배열: 각 정점의 클래스별 이웃 수"""
    counts = np.zeros((p.params.size, p.r), dtype=np.int64)
    for j in range(1, p.r + 1):
        indicator = FunctionTable(p.params, ZERO_ONE, (p.labels == j).astype(np.int64))
        counts[:, j - 1] = adjacency_apply(indicator).values
    return counts


def partition_degree(qm: QuotientMatrix, params: DomainParams) -> int:
    """
    lambda_d(n,q) = theta1 을 만족하는 d

    Raises:
        DomainError: r != 2, 또는 theta1 이 고유값이 아닌 경우
    """
    if qm.r != 2:
        raise DomainError(f"분할 차수는 r = 2 에서만 정의됩니다 (r={qm.r})")
    theta1 = qm.entries[0][0] - qm.entries[1][0]
    numerator = params.degree - theta1
    if numerator % params.q != 0:
        raise DomainError(f"theta1 = {theta1} 이 H({params.n},{params.q}) 의 고유값이 아닙니다")
    d = numerator // params.q
    if not 0 <= d <= params.n:
        raise DomainError(f"분할 차수 {d} 가 [0, {params.n}] 범위를 벗어났습니다")
    return d


def quotient_matrix(p: Partition) -> QuotientMatrix:
    """
    몫 행렬 계산

    모든 정점의 클래스별 이웃 수가 자기 클래스의 상수와 같을 때만 반환합니다.

    Raises:
        NotEquitableError: 첫 위반 정점 (혼합 기수 순서)
    """
    counts = neighbor_class_counts(p)
    labels = p.labels
    first_of_class = [int(np.flatnonzero(labels == j)[0]) for j in range(1, p.r + 1)]
    expected = counts[first_of_class]  # (r, r)

    mismatch = np.any(counts != expected[labels - 1], axis=1)
    if np.any(mismatch):
        x = int(np.flatnonzero(mismatch)[0])
        own = int(labels[x])
        target = int(np.flatnonzero(counts[x] != expected[own - 1])[0]) + 1
        raise NotEquitableError(
            witness=index_to_point(x, p.params),
            class_id=own,
            target_class=target,
            expected=int(expected[own - 1, target - 1]),
            actual=int(counts[x, target - 1]),
        )

    entries = tuple(tuple(int(v) for v in row) for row in expected)
    theta0 = int(expected[0].sum())
    if p.r != 2:
        return QuotientMatrix(entries, theta0)

    qm = QuotientMatrix(entries, theta0, entries[0][0] - entries[1][0])
    d = partition_degree(qm, p.params)
    return QuotientMatrix(entries, theta0, qm.theta1, d)


def quotient_eigenvalues(qm: QuotientMatrix) -> Tuple[int, ...]:
    """몫 행렬 고유값 (정수로 반올림, 내림차순)"""
    values = np.linalg.eigvals(qm.as_array().astype(float))
    return tuple(sorted({int(round(v.real)) for v in values}, reverse=True))


def indicator_function(p: Partition, class_id: int) -> FunctionTable:
    """
    클래스 특성 함수 1_{C_class_id} (zero-one)

    Raises:
        DomainError: r != 2 또는 class_id 가 {1, 2} 밖인 경우
    """
    if p.r != 2:
        raise DomainError(f"특성 함수 대응은 r = 2 전용입니다 (r={p.r})")
    if class_id not in (1, 2):
        raise DomainError(f"class_id 는 1 또는 2 여야 합니다: {class_id}")
    return FunctionTable(p.params, ZERO_ONE, (p.labels == class_id).astype(np.int64))


def audit_partition(p: Partition) -> BoundReport:
    """
    동등 2-분할의 관련 변수 개수를 main_bound(d, d, q) 와 비교

    분할의 관련 변수는 1_{C_1} 의 관련 변수로 정의합니다.

    Raises:
        DomainError: q = 2
        NotEquitableError: 동등 분할이 아닌 경우
    """
    n, q = p.params.n, p.params.q
    require_audit_alphabet(q)
    if p.r != 2:
        return BoundReport((n, q), None, None, False, None, None, 0, NOT_APPLICABLE,
                           f"r = {p.r} (2-분할만 검증)")

    qm = quotient_matrix(p)
    d = qm.degree_d
    relevant = relevant_indices(indicator_function(p, 1))
    if 2 * d > n + 1:
        return BoundReport((n, q), d, d, False, None, None, len(relevant), NOT_APPLICABLE,
                           "d > (n+1)/2")
    report = judge(p.params, d, d, len(relevant))
    logger.info(f"partition audit H({n},{q}) d={d}: n'={len(relevant)} verdict={report.verdict}")
    return report


def check_eigenvalue_membership(qm: QuotientMatrix, params: DomainParams) -> bool:
    """몫 행렬 고유값이 모두 {lambda_k(n,q)} 에 속하는지"""
    spectrum = {lambda_k(params.n, params.q, k) for k in range(params.n + 1)}
    return set(quotient_eigenvalues(qm)) <= spectrum
