"""
Z[omega] 원소의 정확한 영판정

정수값 테이블의 q^n f^(u) 는 sum_j counts[j] omega^j 형태이며,
다항식 sum_j counts[j] x^j 가 q번째 원분다항식 Phi_q(x) 로 나누어떨어질 때만 0 입니다.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np
from sympy import Poly, cyclotomic_poly, symbols

from src.domain.hamming_space import (
    DomainError,
    DomainParams,
    FunctionTable,
    Point,
    point_array,
)
from src.processors.fourier_transform import SpectrumReport, report_from_support, weight_support_of_mask

logger = logging.getLogger(__name__)

_x = symbols("x")


@lru_cache(maxsize=64)
def cyclotomic_polynomial(q: int) -> Poly:
    """Phi_q(x) (정수 계수, 모닉)"""
    return Poly(cyclotomic_poly(q, _x), _x)


@lru_cache(maxsize=64)
def reduction_matrix(q: int) -> np.ndarray:
    """
    x^j mod Phi_q 의 계수 행렬

    Returns:
        (q, phi(q)) 정수 행렬, j 행은 x^j 나머지의 낮은 차수부터의 계수
    """
    phi = cyclotomic_polynomial(q)
    width = phi.degree()
    matrix = np.zeros((q, width), dtype=np.int64)
    for j in range(q):
        remainder = Poly(_x ** j, _x).rem(phi)
        coeffs = [int(c) for c in reversed(remainder.all_coeffs())]
        matrix[j, :len(coeffs)] = coeffs
    matrix.setflags(write=False)
    return matrix


@dataclass(frozen=True)
class CyclotomicInt:
    """sum_j counts[j] omega^j, omega = exp(2 pi i / q)"""
    q: int
    counts: Tuple[int, ...]

    def __post_init__(self):
        if self.q < 2:
            raise DomainError(f"q는 2 이상이어야 합니다: {self.q}")
        counts = tuple(int(c) for c in self.counts)
        if len(counts) != self.q:
            raise DomainError(f"counts 길이 {len(counts)} 가 q={self.q} 와 다릅니다")
        object.__setattr__(self, "counts", counts)

    def as_poly(self) -> Poly:
        return Poly(list(reversed(self.counts)), _x)

    def reduced(self) -> Tuple[int, ...]:
        """Phi_q 로 나눈 나머지의 계수 (낮은 차수부터, 길이 phi(q))"""
        remainder = self.as_poly().rem(cyclotomic_polynomial(self.q))
        width = cyclotomic_polynomial(self.q).degree()
        coeffs = [int(c) for c in reversed(remainder.all_coeffs())]
        return tuple(coeffs + [0] * (width - len(coeffs)))

    def is_zero(self) -> bool:
        return not any(self.reduced())

    def to_complex(self) -> complex:
        omega = np.exp(2j * np.pi / self.q)
        return complex(sum(c * omega ** j for j, c in enumerate(self.counts)))


def cyclotomic_counts(f: FunctionTable, u: Point) -> CyclotomicInt:
    """
    counts[j] = sum_{x : <u,x> = -j (mod q)} f(x)

    Raises:
        DomainError: 정수값 테이블이 아니거나 정의역이 다른 경우
    """
    if not f.is_integer:
        raise DomainError(f"정확한 영판정은 정수값 테이블 전용입니다: {f.mode}")
    if u.params != f.params:
        raise DomainError("정점과 테이블의 정의역이 다릅니다")
    q = f.params.q
    residues = (point_array(f.params) @ np.array(u.coords, dtype=np.int64)) % q
    exponents = (-residues) % q
    counts = np.zeros(q, dtype=np.int64)
    np.add.at(counts, exponents, f.values)
    return CyclotomicInt(q, tuple(counts))


def exact_coefficient_is_zero(f: FunctionTable, u: Point) -> bool:
    """q^n f^(u) == 0 을 원분다항식 나눗셈으로 정확히 판정"""
    return cyclotomic_counts(f, u).is_zero()


def _group_ring_counts(values: np.ndarray, params: DomainParams) -> np.ndarray:
    """
    Z[x]/(x^q - 1) 에서 축별로 계산한 지수 계수

    counts[..., u, j] = sum_{x : -<u,x> = j (mod q)} f(x).
    축 하나를 처리할 때마다 x_i 를 u_i 로 바꾸고 지수를 -u_i x_i 만큼 이동합니다.

    Returns:
        (..., q^n, q) 정수 배열
    """
    q = params.q
    batch_shape = values.shape[:-1]
    lead = len(batch_shape)
    symbols = np.arange(q)

    tensor = np.zeros(batch_shape + params.shape + (q,), dtype=np.int64)
    tensor[..., 0] = values.reshape(batch_shape + params.shape)
    for axis in range(lead, lead + params.n):
        moved = np.moveaxis(tensor, axis, -2)  # (..., x_i, j)
        passed = np.empty_like(moved)
        for u in range(q):
            shifted = moved[..., symbols[:, None], (symbols[None, :] + u * symbols[:, None]) % q]
            passed[..., u, :] = shifted.sum(axis=-2)
        tensor = np.moveaxis(passed, -2, axis)
    return tensor.reshape(batch_shape + (params.size, q))


def exact_nonzero_mask(values: np.ndarray, params: DomainParams) -> np.ndarray:
    """
    정수값 테이블 배치의 0이 아닌 계수 마스크

    Args:
        values: (..., q^n) 정수 배열
        params: 정의역

    Returns:
        (..., q^n) 불리언 배열, f^(u) != 0 이면 True
    """
    values = np.asarray(values)
    if values.dtype.kind not in "iub":
        raise DomainError("정확한 영판정은 정수 배열 전용입니다")
    counts = _group_ring_counts(values.astype(np.int64), params)
    remainders = counts @ reduction_matrix(params.q)
    return np.any(remainders != 0, axis=-1)


def exact_spectrum_report(f: FunctionTable) -> SpectrumReport:
    """허용오차 없이 정확한 스펙트럼 (정수값 테이블 전용)"""
    if not f.is_integer:
        raise DomainError(f"정확한 스펙트럼은 정수값 테이블 전용입니다: {f.mode}")
    mask = exact_nonzero_mask(f.values, f.params)
    return report_from_support(weight_support_of_mask(mask, f.params))
