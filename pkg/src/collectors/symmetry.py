"""
Z_q^n 대칭군: 좌표 치환 x 좌표별 아핀 사상 x -> ax + b (a 는 Z_q 의 가역원)

이 군의 원소는 지표를 지표로 보내며 주파수 인덱스의 해밍 가중치를 보존합니다.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import factorial, gcd
from typing import Iterable, Iterator, Tuple, Union

import numpy as np

from src.domain.hamming_space import DomainError, DomainParams, FunctionTable, point_array

logger = logging.getLogger(__name__)


def units(q: int) -> Tuple[int, ...]:
    """Z_q 의 가역원 (오름차순)"""
    return tuple(a for a in range(1, q) if gcd(a, q) == 1) if q > 1 else ()


@dataclass(frozen=True)
class SymmetryElement:
    """
    y_i = a_i * x_{perm[i]} + b_i (mod q)

    perm 은 0부터 시작하는 좌표 번호입니다.
    """
    perm: Tuple[int, ...]
    multipliers: Tuple[int, ...]
    shifts: Tuple[int, ...]

    def apply_coords(self, coords: Tuple[int, ...], q: int) -> Tuple[int, ...]:
        return tuple(
            (a * coords[src] + b) % q
            for src, a, b in zip(self.perm, self.multipliers, self.shifts)
        )


def group_order(params: DomainParams) -> int:
    """n! (q phi(q))^n"""
    return factorial(params.n) * (params.q * len(units(params.q))) ** params.n


def _symbol_maps(q: int) -> np.ndarray:
    """(q phi(q), q) 배열: 아핀 사상 (a, b) 별 기호 이미지, a 바깥 루프"""
    return np.array(
        [[(a * s + b) % q for s in range(q)] for a in units(q) for b in range(q)],
        dtype=np.int64,
    )


def iter_elements(params: DomainParams) -> Iterator[SymmetryElement]:
    """
    symmetry_group 의 행 순서와 같은 순서로 군 원소 생성

    좌표 치환이 가장 바깥, 그 안에서 1번 좌표의 사상이 가장 느리게 변합니다.
    """
    maps = [(a, b) for a in units(params.q) for b in range(params.q)]
    for perm in permutations(range(params.n)):
        for choice in product(maps, repeat=params.n):
            yield SymmetryElement(
                perm=perm,
                multipliers=tuple(a for a, _ in choice),
                shifts=tuple(b for _, b in choice),
            )


@lru_cache(maxsize=16)
def symmetry_group(params: DomainParams) -> np.ndarray:
    """
    군 전체를 정점 치환 배열로 계산

    Returns:
        (|G|, q^n) 정수 배열, [g, x] 는 g(x) 의 인덱스. 0번 행은 항등원입니다.

    Raises:
        DomainError: 배열 크기가 인덱스 용량을 넘는 경우
    """
    order = group_order(params)
    if order * params.size > 2 ** 27:
        raise DomainError(f"대칭군이 너무 큽니다: |G| = {order}, q^n = {params.size}")

    q, size = params.q, params.size
    points = point_array(params)
    radix = q ** np.arange(params.n - 1, -1, -1, dtype=np.int64)
    maps = _symbol_maps(q)

    blocks = []
    for perm in permutations(range(params.n)):
        moved = points[:, list(perm)]
        index = np.zeros((1, size), dtype=np.int64)
        for i in range(params.n):
            contribution = maps[:, moved[:, i]] * radix[i]
            index = (index[:, None, :] + contribution[None, :, :]).reshape(-1, size)
        blocks.append(index)

    group = np.concatenate(blocks, axis=0)
    group.setflags(write=False)
    logger.debug(f"symmetry group for {params}: {group.shape[0]} elements")
    return group


def apply_symmetry(f: FunctionTable, element: Union[int, SymmetryElement]) -> FunctionTable:
    """
    (f o g)(x) = f(g(x))

    Args:
        f: 함수 테이블
        element: symmetry_group 의 행 번호 또는 SymmetryElement
    """
    params = f.params
    if isinstance(element, SymmetryElement):
        images = [
            element.apply_coords(tuple(int(c) for c in row), params.q)
            for row in point_array(params)
        ]
        radix = params.q ** np.arange(params.n - 1, -1, -1, dtype=np.int64)
        perm = np.array(images, dtype=np.int64) @ radix
    else:
        perm = symmetry_group(params)[element]
    return FunctionTable(params, f.mode, f.values[perm])


def _lex_min_row(rows: np.ndarray) -> np.ndarray:
    order = np.lexsort(rows.T[::-1])
    return rows[order[0]]


def canonical_support(support: Iterable[int], group: np.ndarray) -> Tuple[int, ...]:
    """궤도에서 사전순으로 가장 작은 정렬 튜플"""
    members = np.array(sorted(support), dtype=np.int64)
    if members.size == 0:
        return ()
    images = np.sort(group[:, members], axis=1)
    return tuple(int(x) for x in _lex_min_row(images))


def is_canonical_support(support: Tuple[int, ...], group: np.ndarray) -> bool:
    return tuple(sorted(support)) == canonical_support(support, group)


def canonical_table_mask(bits: np.ndarray, group: np.ndarray) -> np.ndarray:
    """
    비트열 배치 중 궤도 대표(사전순 최소)인 행의 마스크

    Args:
        bits: (B, q^n) 0/1 배열, 앞쪽 정점이 최상위 비트
        group: symmetry_group 결과

    Returns:
        (B,) 불리언 배열
    """
    size = bits.shape[1]
    if size > 62:
        raise DomainError(f"비트열 길이 {size} 는 대칭 축약을 지원하지 않습니다 (최대 62)")
    powers = np.left_shift(np.int64(1), np.arange(size - 1, -1, -1, dtype=np.int64))
    keys = bits.astype(np.int64) @ powers
    image_keys = bits.astype(np.int64)[:, group] @ powers  # (B, |G|)
    return keys == image_keys.min(axis=1)
