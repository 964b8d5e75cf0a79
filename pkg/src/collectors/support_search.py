"""
U_[k,m](n,q) 의 최소 지지집합 탐색과 지지집합 하한의 sharpness 검증

f ∈ U_[k,m] 은 M f = 0, M = prod_{j=k..m} (A - lambda_j I) 와 동치입니다.
후보 지지집합 S 는 M[:, S] 의 계수(rank)가 |S| 보다 작을 때만 가능합니다.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import gcd, lcm
from typing import Iterator, List, Optional, Tuple

import numpy as np
from sympy import Matrix

from src.analyzers.bound_auditor import require_audit_alphabet, support_lower_bound
from src.collectors.function_enumerator import InternalCheckError, Witness, integer_witness
from src.collectors.symmetry import is_canonical_support, symmetry_group
from src.config.env_loader import EnvConfig
from src.domain.hamming_space import DomainError, DomainParams, adjacency_matrix
from src.processors.cyclotomic import exact_nonzero_mask
from src.processors.fourier_transform import lambda_k, weight_support_of_mask

logger = logging.getLogger(__name__)


class TheoremViolationError(InternalCheckError):
    """하한보다 작은 지지집합 발견 (구현 오류 신호)"""


@dataclass(frozen=True)
class SharpnessRecord:
    """하한 대비 실제 최솟값"""
    k: int
    m: int
    n: int
    q: int
    lower_bound: int
    minimum_found: int
    sharp: bool
    witness: Witness

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "m": self.m,
            "n": self.n,
            "q": self.q,
            "lower_bound": self.lower_bound,
            "minimum_found": self.minimum_found,
            "sharp": self.sharp,
            "witness": self.witness.to_dict(),
        }


def _check_window(k: int, m: int, n: int):
    if not 0 <= k <= m <= n:
        raise DomainError(f"0 <= k <= m <= n 이어야 합니다: k={k}, m={m}, n={n}")
    if k + m > n:
        raise DomainError(f"k+m <= n 이어야 합니다: k={k}, m={m}, n={n}")


@lru_cache(maxsize=16)
def eigenspace_constraint(k: int, m: int, params: DomainParams) -> np.ndarray:
    """
    M = prod_{j=k..m} (A - lambda_j(n,q) I), 핵이 정확히 U_[k,m] 인 정수 행렬
    """
    adjacency = adjacency_matrix(params)
    identity = np.eye(params.size, dtype=np.int64)
    result = identity
    for j in range(k, m + 1):
        result = result @ (adjacency - lambda_k(params.n, params.q, j) * identity)
    result.setflags(write=False)
    return result


def _feasible_vector(constraint: np.ndarray, members: Tuple[int, ...]) -> Optional[List[int]]:
    """
    M[:, S] 의 영공간이 자명하지 않으면 정수 벡터 하나를 반환

    float 계수로 먼저 거르고, 부족 계수로 판정된 후보만 sympy 로 정확히 확인합니다.
    """
    block = constraint[:, list(members)]
    if np.linalg.matrix_rank(block.astype(np.float64)) == len(members):
        return None
    nullspace = Matrix(block.tolist()).nullspace()
    if not nullspace:
        return None
    vector = nullspace[0]
    scale = lcm(*[int(v.q) for v in vector])
    entries = [int(v * scale) for v in vector]
    divisor = gcd(*entries)
    entries = [e // divisor for e in entries]
    first = next(e for e in entries if e != 0)
    return [e if first > 0 else -e for e in entries]


def _canonical_levels(size: int, group: np.ndarray) -> Iterator[List[Tuple[int, ...]]]:
    """
    크기별 궤도 대표 지지집합 (사전순)

    대표의 최대 원소를 뺀 집합도 대표이므로, 대표 집합만 최대 원소보다 큰 점으로 확장합니다.
    """
    level = [()]
    for _ in range(size):
        level = [
            parent + (y,)
            for parent in level
            for y in range((parent[-1] + 1) if parent else 0, size)
            if is_canonical_support(parent + (y,), group)
        ]
        yield level


def _all_levels(size: int) -> Iterator[List[Tuple[int, ...]]]:
    for s in range(1, size + 1):
        yield list(combinations(range(size), s))


def verify_eigenfunction(witness: Witness, k: int, m: int) -> bool:
    """증거 테이블이 0이 아니고 스펙트럼이 [k, m] 안에 있는지 정확히 확인"""
    table = witness.table
    if not np.any(table.values != 0):
        return False
    mask = exact_nonzero_mask(table.values, table.params)
    weights = weight_support_of_mask(mask, table.params)
    return all(k <= w <= m for w in weights) and witness.verify()


def min_support_search(k: int, m: int, n: int, q: int,
                       symmetry_reduction: bool = True) -> Witness:
    """
    0이 아닌 f ∈ U_[k,m](n,q) 의 최소 |S(f)| 탐색

    지지집합 크기를 1부터 늘려가며 후보마다 영공간 판정을 하고,
    처음 발견한 정수 고유함수를 증거로 반환합니다.

    Args:
        k, m: 가중치 구간
        n, q: 정의역
        symmetry_reduction: 대칭군 궤도 대표만 검사

    Returns:
        Witness (kind = support-size, target = support_lower_bound 또는 q >= 3 가 아니면 0)

    Raises:
        DomainError: k+m > n 등 가정 위반, 또는 q^n 이 desk limit 초과
        InternalCheckError: 증거 재검증 실패
    """
    _check_window(k, m, n)
    params = DomainParams(n, q)
    limit = EnvConfig.get_desk_limit()
    if params.size > limit:
        raise DomainError(f"q^n = {params.size} 이 탐색 한도 {limit} 를 초과합니다")
    target = support_lower_bound(k, m, n, q) if q >= 3 else 0

    constraint = eigenspace_constraint(k, m, params)
    levels = (
        _canonical_levels(params.size, symmetry_group(params))
        if symmetry_reduction else _all_levels(params.size)
    )

    checked = 0
    for candidates in levels:
        for members in candidates:
            checked += 1
            entries = _feasible_vector(constraint, members)
            if entries is None:
                continue
            values = np.zeros(params.size, dtype=np.int64)
            values[list(members)] = entries
            witness = integer_witness(values, params, target)
            if not verify_eigenfunction(witness, k, m):
                raise InternalCheckError(f"최소 지지집합 증거 재검증 실패: {members}")
            logger.info(
                f"min support for (k,m,n,q)=({k},{m},{n},{q}): {witness.achieved} "
                f"after {checked} candidates (symmetry={symmetry_reduction})"
            )
            return witness
        logger.debug(f"{len(candidates)} candidates infeasible at this size")

    raise InternalCheckError(f"U_[{k},{m}]({n},{q}) 에서 0이 아닌 함수를 찾지 못했습니다")


def sharpness_audit(k: int, m: int, n: int, q: int,
                    symmetry_reduction: bool = True) -> SharpnessRecord:
    """
    지지집합 하한 2^k (q-1)^k q^{n-k-m} 과 최솟값 비교

    Raises:
        DomainError: q < 3 또는 min_support_search 의 가정 위반
        TheoremViolationError: 최솟값이 하한보다 작은 경우
    """
    require_audit_alphabet(q)
    lower = support_lower_bound(k, m, n, q)
    witness = min_support_search(k, m, n, q, symmetry_reduction)
    if witness.achieved < lower:
        logger.error(f"support {witness.achieved} below proven bound {lower} for ({k},{m},{n},{q})")
        raise TheoremViolationError(
            f"지지집합 {witness.achieved} 이 하한 {lower} 보다 작습니다: (k,m,n,q)=({k},{m},{n},{q})"
        )
    return SharpnessRecord(k, m, n, q, lower, witness.achieved, witness.achieved == lower, witness)
