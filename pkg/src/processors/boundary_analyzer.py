"""
간선 경계, 제한 함수 f_{i,a,b}, 지지집합 및 관련 변수 분석

좌표 인덱스 i 는 1부터 n 까지 (1번 좌표가 최상위 자리) 입니다.
"""
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional, Tuple

import numpy as np

from src.config.env_loader import EnvConfig
from src.domain.hamming_space import (
    COMPLEX,
    INTEGER,
    PM1,
    DomainError,
    DomainParams,
    FunctionTable,
    edge_array,
    weight_array,
)
from src.processors.fourier_transform import transform

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoordinateClasses:
    """좌표 i 의 기호 분할 A_1 ∪ ... ∪ A_t (a,b 같은 클래스 <=> f_{i,a,b} == 0)"""
    index: int
    classes: Tuple[Tuple[int, ...], ...]

    @property
    def class_sizes(self) -> Tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    @property
    def t(self) -> int:
        return len(self.classes)

    @property
    def cross_pair_count(self) -> int:
        """sum_{r<s} q_r q_s = f_{i,a,b} != 0 인 a<b 쌍의 개수"""
        sizes = self.class_sizes
        total = sum(sizes)
        return (total * total - sum(s * s for s in sizes)) // 2

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "classes": [list(c) for c in self.classes],
            "class_sizes": list(self.class_sizes),
            "cross_pair_count": self.cross_pair_count,
        }


def _tolerance(zero_tolerance: Optional[float]) -> float:
    return EnvConfig.get_zero_tolerance() if zero_tolerance is None else zero_tolerance


def _nonzero(values: np.ndarray, exact: bool, zero_tolerance: float) -> np.ndarray:
    """정수 배열은 정확히, 복소 배열은 허용오차로 0 판정"""
    if exact:
        return values != 0
    return np.abs(values) > zero_tolerance


def _check_coordinate(params: DomainParams, i: int, a: int, b: int):
    if not 1 <= i <= params.n:
        raise DomainError(f"좌표 인덱스 {i} 가 [1, {params.n}] 범위를 벗어났습니다")
    if a == b:
        raise DomainError(f"a 와 b 가 같습니다: {a}")
    for symbol in (a, b):
        if not 0 <= symbol < params.q:
            raise DomainError(f"기호 {symbol} 가 [0, {params.q}) 범위를 벗어났습니다")


def restriction_values(f: FunctionTable, i: int, a: int, b: int) -> np.ndarray:
    """
    f_{i,a,b} 의 값 배열 (길이 q^{n-1}, 좌표 i 를 제거한 혼합 기수 순서)

    n = 1 이면 길이 1 배열입니다.
    """
    _check_coordinate(f.params, i, a, b)
    tensor = f.as_tensor()
    axis = i - 1
    return (np.take(tensor, a, axis=axis) - np.take(tensor, b, axis=axis)).reshape(-1)


def restriction(f: FunctionTable, i: int, a: int, b: int) -> FunctionTable:
    """
    제한 함수 f_{i,a,b}(y) = f(..., a, ...) - f(..., b, ...)

    DomainParams 는 n >= 1 이므로 n = 1 의 제한(한 점 위의 값)은 테이블로 만들지 않습니다.
    그 값은 restriction_values 또는 nu_iab 로 얻습니다.

    Args:
        f: 함수 테이블 (n >= 2)
        i: 좌표 (1..n)
        a, b: 서로 다른 기호

    Returns:
        Z_q^{n-1} 위의 새 테이블 (정수값이면 integer, 아니면 complex)

    Raises:
        DomainError: a = b, i 범위 밖, 또는 n = 1
    """
    values = restriction_values(f, i, a, b)
    if f.params.n < 2:
        raise DomainError("n = 1 인 함수의 제한은 테이블로 만들 수 없습니다")
    mode = INTEGER if f.is_integer else COMPLEX
    return FunctionTable(f.params.reduced(), mode, values)


def support(f: FunctionTable, zero_tolerance: Optional[float] = None) -> FrozenSet[int]:
    """지지집합 S(f) 의 인덱스 집합"""
    mask = _nonzero(f.values, f.is_integer, _tolerance(zero_tolerance))
    return frozenset(int(x) for x in np.flatnonzero(mask))


def nu(f: FunctionTable, zero_tolerance: Optional[float] = None) -> int:
    """
    nu(f): f(x) != f(y) 인 간선 {x,y} 의 개수

    정수값 테이블은 정확히, 복소 테이블은 |f(x) - f(y)| > zero_tolerance 로 판정합니다.
    """
    x_idx, y_idx = edge_array(f.params)
    diff = f.values[x_idx] - f.values[y_idx]
    return int(np.count_nonzero(_nonzero(diff, f.is_integer, _tolerance(zero_tolerance))))


def nu_iab(f: FunctionTable, i: int, a: int, b: int,
           zero_tolerance: Optional[float] = None) -> int:
    """
    nu_{i,a,b}(f) = |S(f_{i,a,b})|

    Raises:
        DomainError: a = b
    """
    values = restriction_values(f, i, a, b)
    return int(np.count_nonzero(_nonzero(values, f.is_integer, _tolerance(zero_tolerance))))


def nu_via_fourier(f: FunctionTable) -> float:
    """
    (q^{n+1}/4) sum_u |u| |f^(u)|^2  (±1 함수이면 nu(f) 와 같음)

    Raises:
        DomainError: pm1 모드가 아닌 경우
    """
    if f.mode != PM1:
        raise DomainError(f"nu_via_fourier 는 pm1 테이블 전용입니다: {f.mode}")
    spectrum = transform(f)
    weighted = np.sum(weight_array(f.params) * np.abs(spectrum.coeffs) ** 2)
    return float(f.params.q ** (f.params.n + 1) / 4 * weighted)


def _slices_equal(tensor: np.ndarray, axis: int, exact: bool, zero_tolerance: float) -> np.ndarray:
    """(q, q) 행렬: 좌표 axis 의 a 조각과 b 조각이 같은지"""
    q = tensor.shape[axis]
    slices = np.moveaxis(tensor, axis, 0).reshape(q, -1)
    diff = slices[:, None, :] - slices[None, :, :]
    return ~np.any(_nonzero(diff, exact, zero_tolerance), axis=-1)


def _union_classes(equal: np.ndarray) -> Tuple[Tuple[int, ...], ...]:
    """
    같음 관계의 연결 성분 (union-find)

    허용오차 비교로 연결된 기호는 모두 한 클래스에 속합니다.
    """
    parent = list(range(equal.shape[0]))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in zip(*np.nonzero(np.triu(equal, k=1))):
        root_a, root_b = find(int(a)), find(int(b))
        if root_a != root_b:
            parent[max(root_a, root_b)] = min(root_a, root_b)

    groups: Dict[int, list] = {}
    for a in range(len(parent)):
        groups.setdefault(find(a), []).append(a)
    return tuple(tuple(members) for _, members in sorted(groups.items()))


def coordinate_classes(f: FunctionTable, i: int,
                       zero_tolerance: Optional[float] = None) -> CoordinateClasses:
    """
    좌표 i 의 동치류 분할

    Args:
        f: 함수 테이블
        i: 좌표 (1..n)

    Returns:
        CoordinateClasses (각 클래스는 가장 작은 기호 순서)
    """
    if not 1 <= i <= f.params.n:
        raise DomainError(f"좌표 인덱스 {i} 가 [1, {f.params.n}] 범위를 벗어났습니다")
    equal = _slices_equal(f.as_tensor(), i - 1, f.is_integer, _tolerance(zero_tolerance))

    result = CoordinateClasses(index=i, classes=_union_classes(equal))
    if result.t >= 2 and result.cross_pair_count < f.params.q - 1:
        logger.error(f"cross pair count {result.cross_pair_count} < q-1 at coordinate {i}")
    return result


def relevant_indices(f: FunctionTable, zero_tolerance: Optional[float] = None) -> FrozenSet[int]:
    """
    관련 변수 좌표 집합 (어떤 f_{i,a,b} 가 0이 아닌 i)
    """
    tolerance = _tolerance(zero_tolerance)
    tensor = f.as_tensor()
    relevant = set()
    for axis in range(f.params.n):
        diff = tensor - np.take(tensor, [0], axis=axis)
        if np.any(_nonzero(diff, f.is_integer, tolerance)):
            relevant.add(axis + 1)
    return frozenset(relevant)


def relevant_mask_batch(values: np.ndarray, params: DomainParams) -> np.ndarray:
    """
    정수 테이블 배치의 관련 변수 마스크

    Args:
        values: (B, q^n) 정수 배열

    Returns:
        (B, n) 불리언 배열
    """
    batch = values.shape[0]
    tensor = values.reshape((batch,) + params.shape)
    mask = np.zeros((batch, params.n), dtype=bool)
    for axis in range(params.n):
        diff = tensor - np.take(tensor, [0], axis=axis + 1)
        mask[:, axis] = np.any(diff.reshape(batch, params.size) != 0, axis=1)
    return mask


def coordinate_edge_counts(f: FunctionTable,
                           zero_tolerance: Optional[float] = None) -> Dict[int, int]:
    """
    좌표별 sum_{a<b} |S(f_{i,a,b})|

    모든 좌표에 대해 더하면 nu(f) 입니다.
    """
    x_idx, y_idx = edge_array(f.params)
    diff = f.values[x_idx] - f.values[y_idx]
    changed = _nonzero(diff, f.is_integer, _tolerance(zero_tolerance))
    per_coordinate = changed.reshape(f.params.n, -1).sum(axis=1)
    return {i + 1: int(c) for i, c in enumerate(per_coordinate)}
