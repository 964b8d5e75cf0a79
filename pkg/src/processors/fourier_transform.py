"""
지표(character) 기저, 푸리에 변환, 스펙트럼 및 인접 연산자
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import FrozenSet, Optional

import numpy as np

from src.config.env_loader import EnvConfig
from src.domain.hamming_space import (
    COMPLEX,
    INTEGER,
    PM1,
    DomainError,
    DomainParams,
    FunctionTable,
    Point,
    dot_mod_q,
    edge_array,
    point_array,
    point_to_index,
    weight_array,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpectrumTable:
    """푸리에 계수 f^(u) 테이블"""
    params: DomainParams
    coeffs: np.ndarray = field(repr=False)
    zero_tolerance: float = 1e-9
    source_norm: Optional[float] = None  # 원본 테이블의 <f,f>

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=np.complex128).reshape(-1)
        if coeffs.size != self.params.size:
            raise DomainError(
                f"계수 길이 {coeffs.size} 가 q^n = {self.params.size} 과 다릅니다"
            )
        if self.zero_tolerance < 0:
            raise DomainError(f"zero_tolerance 는 0 이상이어야 합니다: {self.zero_tolerance}")
        coeffs = coeffs.copy()
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    def nonzero_mask(self) -> np.ndarray:
        """|f^(u)| > zero_tolerance 인 인덱스 마스크"""
        return np.abs(self.coeffs) > self.zero_tolerance

    def energy(self) -> float:
        """sum |f^(u)|^2"""
        return float(np.sum(np.abs(self.coeffs) ** 2))

    def parseval_gap(self) -> Optional[float]:
        """|sum |f^(u)|^2 - <f,f>| (원본 노름이 없으면 None)"""
        if self.source_norm is None:
            return None
        return abs(self.energy() - self.source_norm)


@dataclass(frozen=True)
class SpectrumReport:
    """스펙트럼 요약"""
    weight_support: FrozenSet[int]
    degree: Optional[int]
    min_nonzero_weight: Optional[int]  # d'
    max_weight: Optional[int]  # d

    def to_dict(self) -> dict:
        return {
            "weight_support": sorted(self.weight_support),
            "degree": self.degree,
            "min_nonzero_weight": self.min_nonzero_weight,
            "max_weight": self.max_weight,
        }


def _default_tolerance(zero_tolerance: Optional[float]) -> float:
    return EnvConfig.get_zero_tolerance() if zero_tolerance is None else zero_tolerance


def char_value(u: Point, x: Point) -> complex:
    """
    지표값 chi_u(x) = omega^<u,x>, omega = exp(2 pi i / q)

    Raises:
        DomainError: 두 정점의 정의역이 다른 경우
    """
    residue = dot_mod_q(u, x)
    return complex(np.exp(2j * np.pi * residue / u.params.q))


def character_table(u: Point) -> FunctionTable:
    """chi_u 를 complex 테이블로 반환"""
    params = u.params
    residues = (point_array(params) @ np.array(u.coords, dtype=np.int64)) % params.q
    return FunctionTable(params, COMPLEX, np.exp(2j * np.pi * residues / params.q))


@lru_cache(maxsize=64)
def _dft_matrix(q: int, inverse: bool) -> np.ndarray:
    """q점 DFT 행렬, 정방향은 conj(chi) 를 사용"""
    sign = 1 if inverse else -1
    k = np.arange(q)
    matrix = np.exp(sign * 2j * np.pi * np.outer(k, k) / q)
    matrix.setflags(write=False)
    return matrix


def tensor_dft(values: np.ndarray, params: DomainParams, inverse: bool = False) -> np.ndarray:
    """
    축별 q점 DFT 패스 (스케일링 없음)

    마지막 축이 q^n 길이인 배열을 받아 앞쪽 축은 배치로 취급합니다.

    Args:
        values: (..., q^n) 배열
        params: 정의역
        inverse: True 이면 omega^{+ux}, False 이면 omega^{-ux}

    Returns:
        같은 모양의 복소 배열
    """
    values = np.asarray(values)
    batch_shape = values.shape[:-1]
    lead = len(batch_shape)
    matrix = _dft_matrix(params.q, inverse)

    tensor = values.astype(np.complex128).reshape(batch_shape + params.shape)
    for axis in range(lead, lead + params.n):
        tensor = np.tensordot(tensor, matrix, axes=([axis], [1]))
        tensor = np.moveaxis(tensor, -1, axis)
    return tensor.reshape(batch_shape + (params.size,))


def transform(f: FunctionTable, zero_tolerance: Optional[float] = None) -> SpectrumTable:
    """
    푸리에 변환 f^(u) = q^{-n} sum_x f(x) conj(chi_u(x))

    Args:
        f: 함수 테이블
        zero_tolerance: 계수 영판정 허용오차 (None이면 설정값)

    Returns:
        SpectrumTable
    """
    tolerance = _default_tolerance(zero_tolerance)
    coeffs = tensor_dft(f.values, f.params) / f.params.size
    norm = float(np.sum(np.abs(f.values.astype(np.complex128)) ** 2)) / f.params.size
    spectrum = SpectrumTable(f.params, coeffs, tolerance, norm)

    gap = spectrum.parseval_gap()
    if gap > 10 * tolerance * max(1.0, norm):
        logger.warning(f"Parseval gap {gap:.3e} exceeds tolerance for {f.params}")
    return spectrum


def inverse_transform(s: SpectrumTable) -> FunctionTable:
    """역변환 f(x) = sum_u f^(u) chi_u(x), complex 테이블"""
    values = tensor_dft(s.coeffs, s.params, inverse=True)
    return FunctionTable(s.params, COMPLEX, values)


def weight_support_of_mask(mask: np.ndarray, params: DomainParams) -> FrozenSet[int]:
    """0이 아닌 계수 마스크 -> 가중치 집합"""
    return frozenset(int(w) for w in np.unique(weight_array(params)[mask]))


def report_from_support(weight_support: FrozenSet[int]) -> SpectrumReport:
    """가중치 집합으로 degree, d', d 계산"""
    if not weight_support:
        return SpectrumReport(frozenset(), None, None, None)
    nonzero = [w for w in weight_support if w > 0]
    degree = max(weight_support)
    return SpectrumReport(
        weight_support=frozenset(weight_support),
        degree=degree,
        min_nonzero_weight=min(nonzero) if nonzero else None,
        max_weight=degree,
    )


def spectrum_report(s: SpectrumTable) -> SpectrumReport:
    """
    스펙트럼 { |u| : |f^(u)| > zero_tolerance } 과 degree, d', d

    Args:
        s: SpectrumTable

    Returns:
        SpectrumReport (빈 스펙트럼이면 degree = None)
    """
    return report_from_support(weight_support_of_mask(s.nonzero_mask(), s.params))


def project_weights(s: SpectrumTable, k: int, m: int) -> SpectrumTable:
    """
    가중치가 [k, m] 밖인 계수를 0으로 (U_[k,m] 으로의 사영)

    Raises:
        DomainError: 0 <= k <= m <= n 이 아닌 경우
    """
    if not 0 <= k <= m <= s.params.n:
        raise DomainError(f"잘못된 가중치 구간입니다: [{k}, {m}] (n={s.params.n})")
    weights = weight_array(s.params)
    keep = (weights >= k) & (weights <= m)
    return SpectrumTable(s.params, np.where(keep, s.coeffs, 0), s.zero_tolerance)


def adjacency_apply(f: FunctionTable) -> FunctionTable:
    """
    (Af)(x) = sum_{y ~ x} f(y)

    축별 합에서 자기 자신을 빼는 방식으로 계산합니다.
    정수값 테이블은 integer, 그 외는 complex 모드로 반환합니다.
    """
    params = f.params
    tensor = f.as_tensor()
    total = np.zeros_like(tensor)
    for axis in range(params.n):
        total = total + np.sum(tensor, axis=axis, keepdims=True)
    result = total - params.n * tensor
    mode = INTEGER if f.is_integer else COMPLEX
    return FunctionTable(params, mode, result.reshape(-1))


def lambda_k(n: int, q: int, k: int) -> int:
    """
    고유값 lambda_k(n,q) = n(q-1) - qk

    Raises:
        DomainError: k 가 [0, n] 밖이거나 q < 2 인 경우
    """
    if q < 2:
        raise DomainError(f"q는 2 이상이어야 합니다: {q}")
    if not 0 <= k <= n:
        raise DomainError(f"k={k} 가 [0, {n}] 범위를 벗어났습니다")
    return n * (q - 1) - q * k


def inner_product(f: FunctionTable, g: FunctionTable) -> complex:
    """<f,g> = q^{-n} sum_x f(x) conj(g(x))"""
    if f.params != g.params:
        raise DomainError("두 테이블의 정의역이 다릅니다")
    product = f.values.astype(np.complex128) * np.conj(g.values.astype(np.complex128))
    return complex(np.sum(product) / f.params.size)


def parseval_check(f: FunctionTable, zero_tolerance: Optional[float] = None) -> float:
    """
    ±1 함수의 sum_u |f^(u)|^2 (1 이어야 함)

    Raises:
        DomainError: pm1 모드가 아닌 경우
    """
    if f.mode != PM1:
        raise DomainError(f"parseval_check 는 pm1 테이블 전용입니다: {f.mode}")
    return transform(f, zero_tolerance).energy()


@dataclass(frozen=True)
class QuadraticForm:
    """<Af, f> 의 두 가지 계산값"""
    spectral: float  # sum_u lambda_u |f^(u)|^2
    combinatorial: float  # (2/q^n) sum_{edges} Re f(x) conj(f(y))

    @property
    def gap(self) -> float:
        return abs(self.spectral - self.combinatorial)


def adjacency_quadratic_form(f: FunctionTable) -> QuadraticForm:
    """
    <Af, f> 를 스펙트럼 쪽과 간선 쪽에서 각각 계산

    ±1 테이블이면 간선 쪽 값은 n(q-1) - 4 nu(f) / q^n 과 같습니다.
    """
    params = f.params
    spectrum = transform(f)
    weights = weight_array(params)
    eigenvalues = params.degree - params.q * weights
    spectral = float(np.sum(eigenvalues * np.abs(spectrum.coeffs) ** 2))

    x_idx, y_idx = edge_array(params)
    values = f.values.astype(np.complex128)
    edge_sum = np.sum(np.real(values[x_idx] * np.conj(values[y_idx])))
    combinatorial = float(2 * edge_sum / params.size)
    return QuadraticForm(spectral, combinatorial)


def coefficient_at(s: SpectrumTable, u: Point) -> complex:
    return complex(s.coeffs[point_to_index(u, s.params)])
