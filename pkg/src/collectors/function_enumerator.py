"""
불리언 함수 열거기 (전수 / 시드 고정 무작위) 와 상한 검증 요약

pm1 테이블은 비트열로 표현합니다: 비트 0 -> +1, 비트 1 -> -1,
0번 정점이 최상위 비트입니다. 전수 모드는 비트열의 사전순으로 방문합니다.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice
from multiprocessing.pool import ThreadPool
from typing import Callable, Dict, FrozenSet, Iterator, List, Optional, Tuple

import numpy as np

from src.analyzers.bound_auditor import FAIL, NOT_APPLICABLE, PASS, judge
from src.collectors.symmetry import canonical_table_mask, symmetry_group
from src.config.env_loader import EnvConfig
from src.domain.hamming_space import INTEGER, PM1, DomainError, DomainParams, FunctionTable, weight_array
from src.processors.boundary_analyzer import relevant_indices, relevant_mask_batch, support
from src.processors.cyclotomic import exact_nonzero_mask

logger = logging.getLogger(__name__)


EXHAUSTIVE = "exhaustive"
RANDOM = "random"

RELEVANT_COUNT = "relevant-count"
SUPPORT_SIZE = "support-size"

DEFAULT_BATCH_SIZE = 4096
_GROUP_BATCH_BUDGET = 2 ** 24


class InternalCheckError(RuntimeError):
    """재검증 실패 (구현 오류 신호)"""


class EnumerationLimitError(DomainError):
    """전수 열거 크기가 설정 상한을 초과"""


@dataclass(frozen=True)
class Witness:
    """
    증거 테이블

    kind 에 따라 achieved 는 관련 변수 개수 또는 지지집합 크기입니다.
    """
    table: FunctionTable
    achieved: int
    target: int
    kind: str = RELEVANT_COUNT

    def reevaluate(self) -> int:
        if self.kind == SUPPORT_SIZE:
            return len(support(self.table))
        if self.kind == RELEVANT_COUNT:
            return len(relevant_indices(self.table))
        raise DomainError(f"알 수 없는 증거 종류입니다: {self.kind}")

    def verify(self) -> bool:
        """재계산 값이 achieved 와 정확히 같은지"""
        return self.reevaluate() == self.achieved

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "achieved": self.achieved,
            "target": self.target,
            "params": {"n": self.table.params.n, "q": self.table.params.q},
            "mode": self.table.mode,
            "values": [int(v) for v in self.table.values],
        }


@dataclass(frozen=True)
class EnumerationPlan:
    """열거 계획"""
    params: DomainParams
    spectrum_filter: Optional[FrozenSet[int]] = None  # 스펙트럼 ⊆ filter 인 테이블만 일치
    mode: str = EXHAUSTIVE
    sample_count: int = 0
    seed: Optional[int] = None
    symmetry_reduction: bool = False
    threads: Optional[int] = None
    max_enum: Optional[int] = None
    batch_size: int = DEFAULT_BATCH_SIZE

    def __post_init__(self):
        if self.spectrum_filter is not None:
            object.__setattr__(self, "spectrum_filter", frozenset(int(w) for w in self.spectrum_filter))

    @property
    def table_bits(self) -> int:
        return self.params.size

    def resolved_threads(self) -> int:
        return max(1, self.threads if self.threads is not None else EnvConfig.get_threads())

    def resolved_max_enum(self) -> int:
        return self.max_enum if self.max_enum is not None else EnvConfig.get_max_enum()

    def resolved_seed(self) -> int:
        return self.seed if self.seed is not None else EnvConfig.get_seed()

    def total(self) -> int:
        return 2 ** self.table_bits if self.mode == EXHAUSTIVE else self.sample_count

    def validate(self):
        """
        Raises:
            DomainError: 알 수 없는 모드, 표본 수 오류, 배치 크기 오류
            EnumerationLimitError: 전수 모드에서 2^{q^n} > max_enum
        """
        if self.mode not in (EXHAUSTIVE, RANDOM):
            raise DomainError(f"알 수 없는 열거 모드입니다: {self.mode}")
        if self.batch_size < 1:
            raise DomainError(f"batch_size 는 1 이상이어야 합니다: {self.batch_size}")
        if self.mode == RANDOM and self.sample_count < 1:
            raise DomainError(f"무작위 모드의 sample_count 는 1 이상이어야 합니다: {self.sample_count}")
        if self.mode == EXHAUSTIVE:
            limit = self.resolved_max_enum()
            if self.table_bits > 62 or 2 ** self.table_bits > limit:
                raise EnumerationLimitError(
                    f"전수 열거 크기 2^{self.table_bits} 가 상한 {limit} 을 초과합니다"
                )
        if self.symmetry_reduction and self.table_bits > 62:
            raise DomainError("대칭 축약은 q^n <= 62 에서만 지원합니다")


@dataclass
class EnumerationSummary:
    """열거 결과 요약 (결정적 병합 순서)"""
    count_visited: int = 0
    count_matching: int = 0
    worst_case: Optional[Witness] = None
    verdict_counts: Dict[str, int] = field(
        default_factory=lambda: {PASS: 0, FAIL: 0, NOT_APPLICABLE: 0}
    )
    degree_counts: Dict[int, int] = field(default_factory=dict)
    first_failure: Optional[Witness] = None

    @property
    def failures(self) -> int:
        return self.verdict_counts[FAIL]

    def to_dict(self) -> dict:
        return {
            "count_visited": self.count_visited,
            "count_matching": self.count_matching,
            "failures": self.failures,
            "verdict_counts": dict(sorted(self.verdict_counts.items())),
            "degree_counts": {str(k): v for k, v in sorted(self.degree_counts.items())},
            "worst_case": self.worst_case.to_dict() if self.worst_case else None,
            "first_failure": self.first_failure.to_dict() if self.first_failure else None,
        }


@dataclass
class _ChunkOutcome:
    """배치 하나의 평가 결과"""
    visited: int
    bits: np.ndarray  # (M, q^n) 일치한 테이블
    degrees: np.ndarray
    d_primes: np.ndarray
    relevant: np.ndarray
    verdicts: List[str]
    bounds: List[Optional[Fraction]]


def bits_for_range(start: int, stop: int, width: int) -> np.ndarray:
    """
    [start, stop) 정수의 비트열 (B, width), 0번 열이 최상위 비트
    """
    t = np.arange(start, stop, dtype=np.int64)
    shifts = np.arange(width - 1, -1, -1, dtype=np.int64)
    return ((t[:, None] >> shifts) & 1).astype(np.uint8)


def table_from_bits(bits: np.ndarray, params: DomainParams) -> FunctionTable:
    return FunctionTable(params, PM1, 1 - 2 * bits.astype(np.int64))


def weight_presence(mask: np.ndarray, params: DomainParams) -> np.ndarray:
    """(B, q^n) 계수 마스크 -> (B, n+1) 가중치 존재 여부"""
    weights = weight_array(params)
    return np.stack(
        [np.any(mask[:, weights == w], axis=1) for w in range(params.n + 1)], axis=1
    )


def _evaluate_chunk(plan: EnumerationPlan, bits: np.ndarray) -> _ChunkOutcome:
    params = plan.params
    visited = bits.shape[0]
    if plan.symmetry_reduction:
        bits = bits[canonical_table_mask(bits, symmetry_group(params))]

    values = 1 - 2 * bits.astype(np.int64)
    presence = weight_presence(exact_nonzero_mask(values, params), params)

    matched = np.ones(bits.shape[0], dtype=bool)
    if plan.spectrum_filter is not None:
        allowed = np.array([w in plan.spectrum_filter for w in range(params.n + 1)])
        matched = ~np.any(presence & ~allowed, axis=1)

    bits = bits[matched]
    presence = presence[matched]
    weights = np.arange(params.n + 1)
    degrees = np.where(presence, weights, -1).max(axis=1)
    nonzero_presence = presence[:, 1:]
    d_primes = np.where(
        nonzero_presence.any(axis=1), nonzero_presence.argmax(axis=1) + 1, 0
    )
    relevant = relevant_mask_batch(1 - 2 * bits.astype(np.int64), params).sum(axis=1)

    verdicts, bounds = [], []
    cache = {}
    for d_prime, d, count in zip(d_primes.tolist(), degrees.tolist(), relevant.tolist()):
        key = (d_prime, d, count)
        if key not in cache:
            report = judge(params, d_prime or None, d or None, count)
            cache[key] = (report.verdict, report.bound_main)
        verdict, bound = cache[key]
        verdicts.append(verdict)
        bounds.append(bound)

    return _ChunkOutcome(visited, bits, degrees, d_primes, relevant, verdicts, bounds)


def _exhaustive_chunks(plan: EnumerationPlan) -> Iterator[Tuple[int, int]]:
    total = plan.total()
    step = _effective_batch(plan)
    for start in range(0, total, step):
        yield start, min(start + step, total)


def _random_chunks(plan: EnumerationPlan) -> Iterator[np.ndarray]:
    """단일 생성기에서 순서대로 표본 배치 생성 (작업자 수와 무관)"""
    rng = np.random.default_rng(plan.resolved_seed())
    remaining = plan.sample_count
    step = _effective_batch(plan)
    while remaining > 0:
        size = min(step, remaining)
        yield rng.integers(0, 2, size=(size, plan.table_bits), dtype=np.uint8)
        remaining -= size


def _effective_batch(plan: EnumerationPlan) -> int:
    if not plan.symmetry_reduction:
        return plan.batch_size
    per_table = symmetry_group(plan.params).shape[0] * plan.table_bits
    return max(1, min(plan.batch_size, _GROUP_BATCH_BUDGET // per_table))


def _merge_worst(summary: EnumerationSummary, plan: EnumerationPlan, outcome: _ChunkOutcome,
                 best: Optional[Tuple[Fraction, bytes]]) -> Optional[Tuple[Fraction, bytes]]:
    """비율 n'/bound 최대, 동률이면 사전순 최소 테이블"""
    for j, bound in enumerate(outcome.bounds):
        if bound is None:
            continue
        ratio = Fraction(int(outcome.relevant[j])) / bound
        key = outcome.bits[j].tobytes()
        if best is None or ratio > best[0] or (ratio == best[0] and key < best[1]):
            best = (ratio, key)
            summary.worst_case = Witness(
                table=table_from_bits(outcome.bits[j], plan.params),
                achieved=int(outcome.relevant[j]),
                target=bound.numerator // bound.denominator,
                kind=RELEVANT_COUNT,
            )
    return best


def _ordered_outcomes(pool: ThreadPool, evaluate, chunks, threads: int) -> Iterator[_ChunkOutcome]:
    """작업자 수의 몇 배씩 끊어 평가하고 배치 순서대로 반환"""
    window = threads * 4
    while True:
        batch = list(islice(chunks, window))
        if not batch:
            return
        yield from pool.map(evaluate, batch)


def enumerate_boolean(
    plan: EnumerationPlan,
    visitor: Optional[Callable[[FunctionTable], None]] = None,
) -> EnumerationSummary:
    """
    pm1 테이블 열거, 스펙트럼 필터 적용, 일치 테이블마다 상한 판정

    정수값 테이블이므로 스펙트럼은 항상 원분다항식 영판정으로 정확히 계산합니다.
    작업자는 배치를 병렬로 평가하고, 결과는 배치 순서대로 병합하여 visitor 에 전달합니다.

    Args:
        plan: 열거 계획
        visitor: 일치한 테이블마다 호출 (방문 순서대로)

    Returns:
        EnumerationSummary

    Raises:
        EnumerationLimitError: 전수 모드 상한 초과
    """
    plan.validate()
    params = plan.params
    threads = plan.resolved_threads()
    logger.info(
        f"enumerate {plan.mode} over {params}: {plan.total()} tables, "
        f"filter={sorted(plan.spectrum_filter) if plan.spectrum_filter is not None else None}, "
        f"threads={threads}"
    )

    if plan.mode == EXHAUSTIVE:
        def evaluate(bounds_range):
            start, stop = bounds_range
            return _evaluate_chunk(plan, bits_for_range(start, stop, plan.table_bits))
        chunks = _exhaustive_chunks(plan)
    else:
        def evaluate(bits):
            return _evaluate_chunk(plan, bits)
        chunks = _random_chunks(plan)

    summary = EnumerationSummary()
    best = None
    with ThreadPool(threads) as pool:
        for outcome in _ordered_outcomes(pool, evaluate, chunks, threads):
            summary.count_visited += outcome.visited
            summary.count_matching += outcome.bits.shape[0]
            for d in outcome.degrees.tolist():
                summary.degree_counts[d] = summary.degree_counts.get(d, 0) + 1
            for j, verdict in enumerate(outcome.verdicts):
                summary.verdict_counts[verdict] += 1
                if verdict == FAIL and summary.first_failure is None:
                    bound = outcome.bounds[j]
                    summary.first_failure = Witness(
                        table_from_bits(outcome.bits[j], params),
                        int(outcome.relevant[j]),
                        bound.numerator // bound.denominator,
                    )
            best = _merge_worst(summary, plan, outcome, best)
            if visitor is not None:
                for row in outcome.bits:
                    visitor(table_from_bits(row, params))

    if summary.failures:
        logger.error(f"{summary.failures} tables exceed the relevant-variable bound on {params}")
    logger.info(
        f"enumeration done: visited={summary.count_visited} matching={summary.count_matching} "
        f"failures={summary.failures}"
    )
    return summary


def integer_witness(values: np.ndarray, params: DomainParams, target: int) -> Witness:
    """정수 벡터를 지지집합 크기 증거로 포장"""
    table = FunctionTable(params, INTEGER, values)
    return Witness(table, int(np.count_nonzero(table.values)), target, SUPPORT_SIZE)
