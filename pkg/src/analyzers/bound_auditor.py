"""
관련 변수 개수 상한, 지지집합 하한 및 함수별 검증 (정확한 유리수 연산)
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, Optional, Tuple

import pandas as pd

from src.domain.hamming_space import DomainError, DomainParams, FunctionTable
from src.processors.boundary_analyzer import (
    coordinate_edge_counts,
    nu,
    relevant_indices,
    restriction_values,
)
from src.processors.cyclotomic import exact_spectrum_report
from src.processors.fourier_transform import SpectrumReport, spectrum_report, transform

logger = logging.getLogger(__name__)


PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"

WELLENS_CONSTANT = Fraction(4394, 1000)
CRITERION_CONSTANT = Fraction(8788, 1000)


def require_audit_alphabet(q: int):
    if q < 3:
        raise DomainError(f"q >= 3 이어야 합니다 (q={q})")


def ceil_log2(q: int) -> int:
    """ceil(log2 q), 정수 비트 연산"""
    if q < 1:
        raise DomainError(f"q는 1 이상이어야 합니다: {q}")
    return (q - 1).bit_length()


def main_bound(d_prime: int, d: int, q: int) -> Fraction:
    """
    (d/2) q^{d+d'} / (2^{d'} (q-1)^{d'})

    d' = 1 이면 dq^{d+1}/(4(q-1)), d' = d 이면 (d/2) q^{2d}/(2^d (q-1)^d) 입니다.

    Raises:
        DomainError: q < 3 또는 1 <= d' <= d 위반
    """
    require_audit_alphabet(q)
    if not 1 <= d_prime <= d:
        raise DomainError(f"1 <= d' <= d 이어야 합니다: d'={d_prime}, d={d}")
    return Fraction(d * q ** (d + d_prime), 2 * 2 ** d_prime * (q - 1) ** d_prime)


def degree_bound(d: int, q: int) -> Fraction:
    """차수 d 불리언 함수의 상한 dq^{d+1}/(4(q-1))"""
    return main_bound(1, d, q)


def two_level_bound(d: int, q: int) -> Fraction:
    """스펙트럼 {0, d} 불리언 함수 (동등 2-분할) 의 상한"""
    return main_bound(d, d, q)


def support_lower_bound(k: int, m: int, n: int, q: int) -> int:
    """
    U_[k,m](n,q) 의 0이 아닌 함수의 지지집합 하한 2^k (q-1)^k q^{n-k-m}

    Raises:
        DomainError: k+m > n, k > m, 음수 또는 q < 3
    """
    require_audit_alphabet(q)
    if not 0 <= k <= m:
        raise DomainError(f"0 <= k <= m 이어야 합니다: k={k}, m={m}")
    if k + m > n:
        raise DomainError(f"k+m <= n 이어야 합니다: k={k}, m={m}, n={n}")
    return 2 ** k * (q - 1) ** k * q ** (n - k - m)


def edge_upper_bound(d: int, n: int, q: int) -> Fraction:
    """
    차수 d 이하 ±1 함수의 nu(f) 상한 (d/4) q^{n+1}

    Raises:
        DomainError: 1 <= d <= n 위반
    """
    if not 1 <= d <= n:
        raise DomainError(f"1 <= d <= n 이어야 합니다: d={d}, n={n}")
    return Fraction(d * q ** (n + 1), 4)


def coordinate_edge_bound(d_prime: int, d: int, n: int, q: int) -> int:
    """
    관련 좌표 하나가 만드는 경계 간선 수의 하한 2^{d'-1} (q-1)^{d'} q^{n-d'-d+1}
    """
    require_audit_alphabet(q)
    if not 1 <= d_prime <= d or d_prime + d > n + 1:
        raise DomainError(f"1 <= d' <= d, d'+d <= n+1 이어야 합니다: d'={d_prime}, d={d}, n={n}")
    return 2 ** (d_prime - 1) * (q - 1) ** d_prime * q ** (n - d_prime - d + 1)


def wellens_bound(d: int, q: int) -> Fraction:
    """
    비교 대상 상한 4.394 * 2^{ceil(log2 q) d} (정확한 유리수)
    """
    if d < 1 or q < 2:
        raise DomainError(f"d >= 1, q >= 2 이어야 합니다: d={d}, q={q}")
    return WELLENS_CONSTANT * 2 ** (ceil_log2(q) * d)


def dprime_criterion(d_prime: int, d: int, q: int) -> bool:
    """d' > (d/8.788) q/(q-2)"""
    require_audit_alphabet(q)
    return Fraction(d_prime) > Fraction(d) / CRITERION_CONSTANT * Fraction(q, q - 2)


def known_winning_alphabet(q: int) -> bool:
    """
    차수 상한이 모든 d 에서 더 좋다고 알려진 q
    (q in {3,5,6,7} 또는 2^{k-1} < q <= 15 * 2^{k-4}, k >= 4)
    """
    if q in (3, 5, 6, 7):
        return True
    k = ceil_log2(q)
    return k >= 4 and q <= 15 * 2 ** (k - 4)


@dataclass(frozen=True)
class RegimeComparison:
    """상한 비교 결과"""
    d_prime: int
    d: int
    q: int
    main_value: Fraction
    wellens: Fraction
    winner: str  # "main" | "wellens"
    dprime_criterion: bool


def compare_regimes(d_prime: int, d: int, q: int) -> RegimeComparison:
    """
    main_bound 와 wellens_bound 비교

    Raises:
        DomainError: q < 3
    """
    require_audit_alphabet(q)
    main_value = main_bound(d_prime, d, q)
    wellens = wellens_bound(d, q)
    return RegimeComparison(
        d_prime=d_prime,
        d=d,
        q=q,
        main_value=main_value,
        wellens=wellens,
        winner="main" if main_value < wellens else "wellens",
        dprime_criterion=dprime_criterion(d_prime, d, q),
    )


def regime_table(q_values: Iterable[int], d_values: Iterable[int]) -> pd.DataFrame:
    """
    (q, d) 격자의 차수 상한 / {0,d} 상한 / 비교 상한 표

    Returns:
        행마다 q, d 와 각 상한(정확한 값과 float), 승자 플래그를 담은 DataFrame
    """
    rows = []
    for q in q_values:
        require_audit_alphabet(q)
        for d in d_values:
            degree_case = compare_regimes(1, d, q)
            two_level_case = compare_regimes(d, d, q)
            rows.append({
                "q": q,
                "d": d,
                "degree_bound": degree_case.main_value,
                "two_level_bound": two_level_case.main_value,
                "wellens_bound": degree_case.wellens,
                "degree_bound_float": float(degree_case.main_value),
                "two_level_bound_float": float(two_level_case.main_value),
                "wellens_bound_float": float(degree_case.wellens),
                "degree_winner": degree_case.winner,
                "two_level_winner": two_level_case.winner,
                "listed_alphabet": known_winning_alphabet(q),
            })
    return pd.DataFrame(rows)


def criterion_table(q_values: Iterable[int], d_values: Iterable[int]) -> pd.DataFrame:
    """
    d' 기준 검증 표: 모든 1 <= d' <= d 셀의 승자와 d' 기준 만족 여부
    """
    rows = []
    for q in q_values:
        for d in d_values:
            for d_prime in range(1, d + 1):
                cmp = compare_regimes(d_prime, d, q)
                rows.append({
                    "q": q,
                    "d": d,
                    "d_prime": d_prime,
                    "winner": cmp.winner,
                    "dprime_criterion": cmp.dprime_criterion,
                })
    return pd.DataFrame(rows)


def summarize_winners(table: pd.DataFrame) -> Dict[int, Dict[str, Any]]:
    """q 별 승자 요약 (all main / mixed)"""
    summary = {}
    for q, group in table.groupby("q"):
        degree_winners = set(group["degree_winner"])
        summary[int(q)] = {
            "degree_case": "main" if degree_winners == {"main"} else "mixed",
            "two_level_case": "main" if set(group["two_level_winner"]) == {"main"} else "mixed",
            "wellens_cells": [int(d) for d in group.loc[group["degree_winner"] == "wellens", "d"]],
        }
    return summary


@dataclass(frozen=True)
class BoundReport:
    """불리언 함수 하나에 대한 상한 검증 결과"""
    params: Tuple[int, int]  # (n, q)
    d_prime: Optional[int]
    d: Optional[int]
    applicable: bool
    bound_main: Optional[Fraction]
    bound_floor: Optional[int]
    relevant_count: int  # n'
    verdict: str
    reason: str = ""
    edge_count: Optional[int] = None  # nu(f)
    edge_upper: Optional[Fraction] = None  # (d/4) q^{n+1}
    edge_lower: Optional[int] = None  # n' * 좌표별 하한
    coordinate_edges: Dict[int, int] = field(default_factory=dict)
    coordinate_audit_passed: Optional[bool] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "params": {"n": self.params[0], "q": self.params[1]},
            "d_prime": self.d_prime,
            "d": self.d,
            "applicable": self.applicable,
            "bound_main": self.bound_main,
            "bound_floor": self.bound_floor,
            "relevant_count": self.relevant_count,
            "verdict": self.verdict,
            "reason": self.reason,
            "edge_count": self.edge_count,
            "edge_upper": self.edge_upper,
            "edge_lower": self.edge_lower,
            "coordinate_edges": {str(k): v for k, v in sorted(self.coordinate_edges.items())},
            "coordinate_audit_passed": self.coordinate_audit_passed,
        }


def judge(params: DomainParams, d_prime: Optional[int], d: Optional[int],
          relevant_count: int) -> BoundReport:
    """
    (d', d, n') 로부터 판정만 수행 (열거 배치용)

    d' + d <= n + 1, d >= 1, q >= 3 일 때 n' <= main_bound 이면 pass 입니다.
    """
    n, q = params.n, params.q
    if d is None or d == 0 or d_prime is None:
        return BoundReport((n, q), d_prime, d, False, None, None, relevant_count,
                           NOT_APPLICABLE, "상수 함수 (d = 0)")
    if q < 3:
        return BoundReport((n, q), d_prime, d, False, None, None, relevant_count,
                           NOT_APPLICABLE, "q < 3")
    if d_prime + d > n + 1:
        return BoundReport((n, q), d_prime, d, False, None, None, relevant_count,
                           NOT_APPLICABLE, "d' + d > n + 1")

    bound = main_bound(d_prime, d, q)
    verdict = PASS if relevant_count <= bound else FAIL
    if verdict == FAIL:
        logger.error(f"relevant count {relevant_count} exceeds bound {bound} for (n,q)=({n},{q})")
    return BoundReport((n, q), d_prime, d, True, bound, bound.numerator // bound.denominator,
                       relevant_count, verdict)


def audit_function(f: FunctionTable, exact: bool = False,
                   zero_tolerance: Optional[float] = None) -> BoundReport:
    """
    불리언 함수의 관련 변수 개수를 main_bound(d', d, q) 와 비교

    zero-one 입력은 f -> 1-2f 로 ±1 표현으로 바꾼 뒤 분석합니다.

    Args:
        f: pm1 또는 zero-one 테이블
        exact: True 이면 원분다항식 영판정으로 스펙트럼 계산

    Returns:
        BoundReport

    Raises:
        DomainError: 불리언이 아니거나 q = 2 인 경우
    """
    if not f.is_boolean:
        raise DomainError(f"audit_function 은 불리언 테이블 전용입니다: {f.mode}")
    require_audit_alphabet(f.params.q)
    g = f.to_pm1()

    report: SpectrumReport = (
        exact_spectrum_report(g) if exact else spectrum_report(transform(g, zero_tolerance))
    )
    relevant = relevant_indices(g)
    base = judge(g.params, report.min_nonzero_weight, report.degree, len(relevant))

    n, q = g.params.n, g.params.q
    edge_count = nu(g)
    per_coordinate = coordinate_edge_counts(g)
    edge_upper = edge_upper_bound(base.d, n, q) if base.d else None
    edge_lower = None
    coordinate_passed = None

    if base.applicable:
        per_bound = coordinate_edge_bound(base.d_prime, base.d, n, q)
        edge_lower = len(relevant) * per_bound
        coordinate_passed = all(per_coordinate[i] >= per_bound for i in relevant)
        if not coordinate_passed or edge_count < edge_lower:
            logger.error(f"coordinate edge bound {per_bound} violated for (n,q)=({n},{q})")
    if edge_upper is not None and edge_count > edge_upper:
        logger.error(f"nu(f)={edge_count} exceeds edge upper bound {edge_upper}")

    return BoundReport(
        params=base.params,
        d_prime=base.d_prime,
        d=base.d,
        applicable=base.applicable,
        bound_main=base.bound_main,
        bound_floor=base.bound_floor,
        relevant_count=base.relevant_count,
        verdict=base.verdict,
        reason=base.reason,
        edge_count=edge_count,
        edge_upper=edge_upper,
        edge_lower=edge_lower,
        coordinate_edges=per_coordinate,
        coordinate_audit_passed=coordinate_passed,
    )


@dataclass(frozen=True)
class RestrictionAudit:
    """0이 아닌 제한 함수의 지지집합 크기 검증"""
    bound: int
    minimum_support: Optional[int]
    nonzero_restrictions: int
    passed: bool


def restriction_support_audit(f: FunctionTable, exact: bool = False,
                              zero_tolerance: Optional[float] = None) -> Optional[RestrictionAudit]:
    """
    f ∈ U_0 ⊕ U_[d',d] 인 불리언 함수의 모든 0이 아닌 f_{i,a,b} 가
    2^{d'-1} (q-1)^{d'-1} q^{n-d'-d+1} 이상의 지지집합을 갖는지 확인

    Args:
        f: pm1 또는 zero-one 테이블
        exact: True 이면 원분다항식 영판정으로 스펙트럼 계산
        zero_tolerance: 부동소수 스펙트럼의 영판정 허용오차 (None이면 설정값)

    Returns:
        RestrictionAudit, 적용 조건(d >= 1, d'+d <= n+1) 밖이면 None
    """
    g = f.to_pm1()
    params = g.params
    require_audit_alphabet(params.q)
    report = (
        exact_spectrum_report(g) if exact else spectrum_report(transform(g, zero_tolerance))
    )
    if not report.degree or report.min_nonzero_weight + report.degree > params.n + 1:
        return None

    bound = support_lower_bound(report.min_nonzero_weight - 1, report.degree - 1,
                                params.n - 1, params.q)
    minimum = None
    count = 0
    for i in range(1, params.n + 1):
        for a in range(params.q):
            for b in range(a + 1, params.q):
                size = int((restriction_values(g, i, a, b) != 0).sum())
                if size == 0:
                    continue
                count += 1
                minimum = size if minimum is None else min(minimum, size)
    passed = minimum is None or minimum >= bound
    if not passed:
        logger.error(f"restriction support {minimum} below bound {bound}")
    return RestrictionAudit(bound, minimum, count, passed)
