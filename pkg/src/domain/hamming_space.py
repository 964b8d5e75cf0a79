"""
Z_q^n 정의역, 해밍 그래프 H(n,q) 구조 및 함수 테이블

모든 인덱스는 혼합 기수(mixed-radix) 순서를 따르며 1번 좌표가 최상위 자리입니다.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, List, Tuple

import numpy as np

from src.config.env_loader import EnvConfig

logger = logging.getLogger(__name__)


PM1 = "pm1"
ZERO_ONE = "zero-one"
INTEGER = "integer"
COMPLEX = "complex"
VALUE_MODES = (PM1, ZERO_ONE, INTEGER, COMPLEX)
BOOLEAN_MODES = (PM1, ZERO_ONE)


class DomainError(ValueError):
    """정의역 파라미터 또는 테이블 값이 유효하지 않음"""


@dataclass(frozen=True)
class DomainParams:
    """정의역 Z_q^n 파라미터"""
    n: int  # 좌표 개수
    q: int  # 알파벳 크기

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise DomainError(f"n은 1 이상의 정수여야 합니다: {self.n}")
        if not isinstance(self.q, (int, np.integer)) or self.q < 2:
            raise DomainError(f"q는 2 이상의 정수여야 합니다: {self.q}")
        capacity = EnvConfig.get_index_capacity()
        if self.q ** self.n > capacity:
            raise DomainError(
                f"q^n = {self.q}^{self.n} 이 인덱스 용량 {capacity} 을 초과합니다"
            )

    @property
    def size(self) -> int:
        """정점 개수 q^n"""
        return self.q ** self.n

    @property
    def degree(self) -> int:
        """H(n,q)의 정규 차수 n(q-1)"""
        return self.n * (self.q - 1)

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.q,) * self.n

    def edge_count(self) -> int:
        """간선 개수 n(q-1)q^n/2"""
        return self.degree * self.size // 2

    def reduced(self) -> "DomainParams":
        """좌표 하나를 제거한 정의역 Z_q^{n-1}"""
        return DomainParams(self.n - 1, self.q)


@dataclass(frozen=True)
class Point:
    """Z_q^n 의 정점"""
    params: DomainParams
    coords: Tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) != self.params.n:
            raise DomainError(
                f"좌표 길이 {len(coords)} 가 n={self.params.n} 과 다릅니다"
            )
        for c in coords:
            if not 0 <= c < self.params.q:
                raise DomainError(f"좌표 값 {c} 가 [0, {self.params.q}) 범위를 벗어났습니다")


def point_to_index(p: Point, params: DomainParams = None) -> int:
    """
    정점을 혼합 기수 인덱스로 변환

    Args:
        p: 정점
        params: 정의역 (None이면 p.params)

    Returns:
        인덱스 (1번 좌표가 최상위 자리)
    """
    params = params or p.params
    if params != p.params:
        raise DomainError("정점과 정의역 파라미터가 일치하지 않습니다")
    index = 0
    for c in p.coords:
        if not 0 <= c < params.q:
            raise DomainError(f"좌표 값 {c} 가 범위를 벗어났습니다")
        index = index * params.q + c
    if index >= params.size:
        raise DomainError(f"인덱스 {index} 가 용량을 초과합니다")
    return index


def index_to_point(index: int, params: DomainParams) -> Point:
    """
    혼합 기수 인덱스를 정점으로 변환

    Args:
        index: 0 이상 q^n 미만의 인덱스
        params: 정의역

    Returns:
        Point
    """
    if not 0 <= index < params.size:
        raise DomainError(f"인덱스 {index} 가 [0, {params.size}) 범위를 벗어났습니다")
    coords = []
    for _ in range(params.n):
        index, c = divmod(index, params.q)
        coords.append(c)
    return Point(params, tuple(reversed(coords)))


def hamming_weight(p: Point) -> int:
    """0이 아닌 좌표의 개수"""
    return sum(1 for c in p.coords if c != 0)


def dot_mod_q(u: Point, x: Point) -> int:
    """
    <u,x> mod q

    Raises:
        DomainError: 두 정점의 정의역이 다른 경우
    """
    if u.params != x.params:
        raise DomainError("두 정점의 정의역 파라미터가 다릅니다")
    return sum(a * b for a, b in zip(u.coords, x.coords)) % u.params.q


def neighbors(p: Point) -> List[Point]:
    """
    인접 정점 목록

    좌표 인덱스 오름차순, 같은 좌표 안에서는 대체 기호 오름차순입니다.

    Args:
        p: 정점

    Returns:
        정확히 한 좌표만 다른 n(q-1)개의 정점
    """
    result = []
    for i, c in enumerate(p.coords):
        for symbol in range(p.params.q):
            if symbol == c:
                continue
            coords = p.coords[:i] + (symbol,) + p.coords[i + 1:]
            result.append(Point(p.params, coords))
    return result


def edges(params: DomainParams) -> Iterator[Tuple[int, int]]:
    """
    H(n,q) 간선 스트림

    각 무방향 간선을 (작은 인덱스, 큰 인덱스) 쌍으로 정확히 한 번 생성합니다.
    작은 쪽 인덱스 오름차순, 그 안에서는 neighbors 순서를 따릅니다.
    """
    q = params.q
    for x in range(params.size):
        stride = params.size
        for _ in range(params.n):
            stride //= q
            digit = (x // stride) % q
            for symbol in range(digit + 1, q):
                yield x, x + (symbol - digit) * stride


@lru_cache(maxsize=32)
def point_array(params: DomainParams) -> np.ndarray:
    """모든 정점 좌표 배열 (q^n, n), 혼합 기수 순서"""
    grid = np.unravel_index(np.arange(params.size), params.shape)
    points = np.stack(grid, axis=1).astype(np.int64)
    points.setflags(write=False)
    return points


@lru_cache(maxsize=32)
def weight_array(params: DomainParams) -> np.ndarray:
    """인덱스별 해밍 가중치 |u|"""
    weights = np.count_nonzero(point_array(params), axis=1).astype(np.int64)
    weights.setflags(write=False)
    return weights


@lru_cache(maxsize=32)
def edge_array(params: DomainParams) -> Tuple[np.ndarray, np.ndarray]:
    """
    간선 배열 (x 인덱스, y 인덱스)

    (좌표 i, a<b) 순서로 묶여 있으며 x_i = a, y_i = b 입니다.
    """
    q = params.q
    tensor = np.arange(params.size).reshape(params.shape)
    xs, ys = [], []
    for i in range(params.n):
        for a in range(q):
            for b in range(a + 1, q):
                xs.append(np.take(tensor, a, axis=i).ravel())
                ys.append(np.take(tensor, b, axis=i).ravel())
    x_idx = np.concatenate(xs)
    y_idx = np.concatenate(ys)
    x_idx.setflags(write=False)
    y_idx.setflags(write=False)
    return x_idx, y_idx


@dataclass(frozen=True)
class FunctionTable:
    """Z_q^n 위의 함수값 테이블 (혼합 기수 순서, 불변)"""
    params: DomainParams
    mode: str
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.mode not in VALUE_MODES:
            raise DomainError(f"알 수 없는 값 모드입니다: {self.mode}")
        raw = np.asarray(self.values)
        if raw.size != self.params.size:
            raise DomainError(
                f"테이블 길이 {raw.size} 가 q^n = {self.params.size} 과 다릅니다"
            )
        raw = raw.reshape(-1)

        if self.mode == COMPLEX:
            values = raw.astype(np.complex128)
        else:
            if np.iscomplexobj(raw) and np.any(np.imag(raw) != 0):
                raise DomainError(f"{self.mode} 모드 테이블에 복소수 값이 있습니다")
            real = np.real(raw)
            if np.any(real != np.round(real)):
                raise DomainError(f"{self.mode} 모드 테이블에 정수가 아닌 값이 있습니다")
            values = real.astype(np.int64)
            if self.mode == PM1 and not np.all(np.abs(values) == 1):
                raise DomainError("pm1 모드 테이블의 값은 -1 또는 +1 이어야 합니다")
            if self.mode == ZERO_ONE and not np.all((values == 0) | (values == 1)):
                raise DomainError("zero-one 모드 테이블의 값은 0 또는 1 이어야 합니다")

        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(
        cls,
        params: DomainParams,
        mode: str,
        fn: Callable[[Tuple[int, ...]], complex]
    ) -> "FunctionTable":
        """
        좌표 함수로부터 테이블 생성

        Args:
            params: 정의역
            mode: 값 모드
            fn: 좌표 튜플 -> 값
        """
        values = [fn(tuple(int(c) for c in row)) for row in point_array(params)]
        return cls(params, mode, np.array(values))

    @property
    def is_boolean(self) -> bool:
        return self.mode in BOOLEAN_MODES

    @property
    def is_integer(self) -> bool:
        return self.mode != COMPLEX

    def as_tensor(self) -> np.ndarray:
        """(q, ..., q) 모양의 텐서 뷰"""
        return self.values.reshape(self.params.shape)

    def value_at(self, p: Point) -> complex:
        return self.values[point_to_index(p, self.params)]

    def to_pm1(self) -> "FunctionTable":
        """
        불리언 테이블을 ±1 표현으로 정규화 (f -> 1-2f)

        Raises:
            DomainError: 불리언 모드가 아닌 경우
        """
        if self.mode == PM1:
            return self
        if self.mode == ZERO_ONE:
            return FunctionTable(self.params, PM1, 1 - 2 * self.values)
        raise DomainError(f"{self.mode} 모드 테이블은 pm1 로 변환할 수 없습니다")

    def to_zero_one(self) -> "FunctionTable":
        """±1 테이블을 0/1 표현으로 변환 (f -> (1-f)/2)"""
        if self.mode == ZERO_ONE:
            return self
        if self.mode == PM1:
            return FunctionTable(self.params, ZERO_ONE, (1 - self.values) // 2)
        raise DomainError(f"{self.mode} 모드 테이블은 zero-one 으로 변환할 수 없습니다")

    def __eq__(self, other) -> bool:
        if not isinstance(other, FunctionTable):
            return NotImplemented
        return (
            self.params == other.params
            and self.mode == other.mode
            and np.array_equal(self.values, other.values)
        )

    def __hash__(self) -> int:
        return hash((self.params, self.mode, self.values.tobytes()))


def adjacency_matrix(params: DomainParams) -> np.ndarray:
    """
    H(n,q) 의 조밀 인접 행렬 (작은 정의역 전용)

    Returns:
        (q^n, q^n) 정수 행렬
    """
    if params.size > 4096:
        raise DomainError(f"조밀 인접 행렬은 q^n <= 4096 에서만 만듭니다: {params.size}")
    matrix = np.zeros((params.size, params.size), dtype=np.int64)
    x_idx, y_idx = edge_array(params)
    matrix[x_idx, y_idx] = 1
    matrix[y_idx, x_idx] = 1
    return matrix
