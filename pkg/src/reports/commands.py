"""
명령 구현: analyze, verify-partition, bounds, search

각 명령은 Report 를 반환하며 exit_code 로 성공 / 검증 실패를 구분합니다.
"""
import logging
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from src.analyzers.bound_auditor import (
    FAIL,
    audit_function,
    criterion_table,
    known_winning_alphabet,
    main_bound,
    regime_table,
    require_audit_alphabet,
    restriction_support_audit,
    summarize_winners,
    wellens_bound,
)
from src.analyzers.partition_analyzer import (
    NotEquitableError,
    Partition,
    audit_partition,
    check_eigenvalue_membership,
    indicator_function,
    quotient_eigenvalues,
    quotient_matrix,
)
from src.collectors.function_enumerator import EXHAUSTIVE, RANDOM, EnumerationPlan, enumerate_boolean
from src.collectors.support_search import sharpness_audit
from src.domain.hamming_space import DomainError, DomainParams, FunctionTable
from src.processors.boundary_analyzer import coordinate_classes, nu, nu_via_fourier, relevant_indices
from src.processors.cyclotomic import exact_spectrum_report
from src.processors.fourier_transform import (
    adjacency_quadratic_form,
    parseval_check,
    spectrum_report,
    transform,
)
from src.reports.report import Report
from src.storage.table_store import TableStore

logger = logging.getLogger(__name__)


EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2
EXIT_INTERNAL = 3


@dataclass
class CommandResult:
    """보고서와 종료 코드"""
    report: Report
    exit_code: int = EXIT_OK


def _elapsed_ms(start: float) -> float:
    return round((time.perf_counter() - start) * 1000, 3)


def analyze_table(f: FunctionTable, exact: bool = False,
                  eps: Optional[float] = None) -> dict:
    """
    함수 테이블 하나의 스펙트럼, 경계, 관련 변수, 상한 판정

    Raises:
        DomainError: exact 인데 복소 테이블인 경우
    """
    if exact and not f.is_integer:
        raise DomainError(f"--exact 는 정수값 테이블 전용입니다: {f.mode}")
    # 불리언 입력은 0/1 이어도 ±1 표현으로 분석
    g = f.to_pm1() if f.is_boolean else f
    spectrum = exact_spectrum_report(g) if exact else spectrum_report(transform(g, eps))
    relevant = relevant_indices(g, eps)

    results = {
        "params": {"n": f.params.n, "q": f.params.q},
        "mode": f.mode,
        "spectrum": spectrum.to_dict(),
        "nu": nu(g, eps),
        "relevant_indices": sorted(relevant),
        "relevant_count": len(relevant),
        "coordinate_classes": [coordinate_classes(g, i, eps).to_dict() for i in sorted(relevant)],
        "exact": exact,
    }

    if f.is_boolean:
        results["nu_fourier"] = round(nu_via_fourier(g), 9)
        results["parseval"] = round(parseval_check(g, eps), 12)
        form = adjacency_quadratic_form(g)
        results["quadratic_form"] = {
            "spectral": round(form.spectral, 9),
            "combinatorial": round(form.combinatorial, 9),
        }
        if f.params.q >= 3:
            bound = audit_function(f, exact=exact, zero_tolerance=eps)
            results["bound"] = bound.to_dict()
            restriction = restriction_support_audit(f, exact=exact, zero_tolerance=eps)
            results["restriction_audit"] = (
                None if restriction is None else {
                    "bound": restriction.bound,
                    "minimum_support": restriction.minimum_support,
                    "nonzero_restrictions": restriction.nonzero_restrictions,
                    "passed": restriction.passed,
                }
            )
        else:
            results["bound"] = {"verdict": "not-applicable", "reason": "q < 3"}
    else:
        results["bound"] = {"verdict": "not-applicable", "reason": f"{f.mode} 테이블은 불리언이 아닙니다"}
    return results


def cmd_analyze(path: Optional[Union[str, Path]] = None, table: Optional[FunctionTable] = None,
                exact: bool = False, eps: Optional[float] = None) -> CommandResult:
    """
    함수 테이블 분석

    Args:
        path: 함수 테이블 파일 (table 이 없을 때)
        table: 이미 읽은 테이블
        exact: 원분다항식 영판정 사용
        eps: 허용오차 (None이면 설정값)

    Raises:
        TableFormatError: 파일 형식 오류
        DomainError: 모드 불일치
    """
    start = time.perf_counter()
    f = table if table is not None else TableStore.load_function_table(path)
    results = analyze_table(f, exact, eps)
    verdict = results["bound"].get("verdict")
    exit_code = EXIT_VERIFICATION if verdict == FAIL else EXIT_OK
    inputs = {"file": str(path) if path is not None else None, "exact": exact, "eps": eps}
    report = Report("analyze", inputs, results, _elapsed_ms(start))
    logger.info(f"analyze {f.params}: degree={results['spectrum']['degree']} verdict={verdict}")
    return CommandResult(report, exit_code)


def cmd_verify_partition(path: Optional[Union[str, Path]] = None,
                         partition: Optional[Partition] = None) -> CommandResult:
    """
    분할의 동등성 검증, 몫 행렬과 2-분할 상한 판정

    동등하지 않으면 첫 위반 정점을 담은 보고서와 EXIT_VERIFICATION 을 반환합니다.
    """
    start = time.perf_counter()
    p = partition if partition is not None else TableStore.load_partition(path)
    inputs = {"file": str(path) if path is not None else None}
    results = {
        "params": {"n": p.params.n, "q": p.params.q},
        "r": p.r,
        "class_sizes": list(p.class_sizes()),
    }

    try:
        qm = quotient_matrix(p)
    except NotEquitableError as e:
        logger.warning(str(e))
        results["equitable"] = False
        results["violation"] = e.to_dict()
        return CommandResult(Report("verify-partition", inputs, results, _elapsed_ms(start)),
                             EXIT_VERIFICATION)

    results["equitable"] = True
    results["quotient_matrix"] = qm.to_dict()
    results["eigenvalues"] = list(quotient_eigenvalues(qm))
    results["eigenvalues_in_spectrum"] = check_eigenvalue_membership(qm, p.params)

    if p.r != 2:
        results["audit"] = {"verdict": "not-applicable", "reason": f"r = {p.r} (2-분할만 검증)"}
    else:
        indicator = indicator_function(p, 1)
        results["indicator_spectrum"] = exact_spectrum_report(indicator).to_dict()
        if p.params.q >= 3:
            results["audit"] = audit_partition(p).to_dict()
        else:
            results["audit"] = {"verdict": "not-applicable", "reason": "q < 3"}

    verdict = results["audit"].get("verdict")
    exit_code = EXIT_VERIFICATION if verdict == FAIL else EXIT_OK
    return CommandResult(Report("verify-partition", inputs, results, _elapsed_ms(start)), exit_code)


def _check_ranges(q_values: Sequence[int], d_values: Sequence[int]):
    if not q_values or not d_values:
        raise DomainError("q 범위와 d 범위는 비어 있을 수 없습니다")
    for q in q_values:
        require_audit_alphabet(q)
    if min(d_values) < 1:
        raise DomainError(f"d 는 1 이상이어야 합니다: {min(d_values)}")


def cmd_bounds(q_values: Sequence[int], d_values: Sequence[int],
               cells: Iterable[Tuple[int, int, int]] = ()) -> CommandResult:
    """
    (q, d) 격자의 상한 비교와 d' 기준 검증

    Args:
        q_values: q 목록 (모두 3 이상)
        d_values: d 목록
        cells: 추가로 계산할 (d', d, q) 셀

    Raises:
        DomainError: 빈 범위 또는 q < 3
    """
    start = time.perf_counter()
    q_values, d_values = sorted(set(q_values)), sorted(set(d_values))
    cells = [tuple(int(v) for v in cell) for cell in cells]
    _check_ranges(q_values, d_values)

    grid = regime_table(q_values, d_values)
    criteria = criterion_table(q_values, d_values)
    violations = criteria[criteria["dprime_criterion"] & (criteria["winner"] != "main")]

    summary = summarize_winners(grid)
    listed_mismatch = [
        q for q, row in summary.items()
        if known_winning_alphabet(q) and row["degree_case"] != "main"
    ]

    exact_cells = []
    for d_prime, d, q in cells:
        exact_cells.append({
            "d_prime": d_prime,
            "d": d,
            "q": q,
            "main_bound": main_bound(d_prime, d, q),
            "wellens_bound": wellens_bound(d, q),
        })

    grid_rows = grid[[
        "q", "d", "degree_bound", "two_level_bound", "wellens_bound",
        "degree_winner", "two_level_winner", "listed_alphabet",
    ]].to_dict(orient="records")
    results = {
        "grid": grid_rows,
        "summary": summary,
        "criterion_cells": int(criteria["dprime_criterion"].sum()),
        "criterion_violations": violations[["q", "d", "d_prime"]].to_dict(orient="records"),
        "listed_alphabet_mismatch": listed_mismatch,
        "cells": exact_cells,
    }
    inputs = {"q_values": q_values, "d_values": d_values, "cells": [list(c) for c in cells]}
    exit_code = EXIT_VERIFICATION if len(violations) or listed_mismatch else EXIT_OK
    return CommandResult(Report("bounds", inputs, results, _elapsed_ms(start)), exit_code)


def bounds_text_table(q_values: Sequence[int], d_values: Sequence[int]) -> str:
    """사람이 읽는 표 (float 열)"""
    grid = regime_table(sorted(set(q_values)), sorted(set(d_values)))
    columns = ["q", "d", "degree_bound_float", "two_level_bound_float", "wellens_bound_float",
               "degree_winner", "two_level_winner"]
    return grid[columns].to_string(index=False)


def cmd_search_audit(n: int, q: int, samples: Optional[int] = None, seed: Optional[int] = None,
                     threads: Optional[int] = None, max_enum: Optional[int] = None,
                     spectrum_filter: Optional[List[int]] = None,
                     symmetry_reduction: bool = False) -> CommandResult:
    """
    불리언 함수 전수 (samples 가 없을 때) 또는 무작위 상한 검증

    Raises:
        EnumerationLimitError: 전수 열거 상한 초과
    """
    start = time.perf_counter()
    plan = EnumerationPlan(
        params=DomainParams(n, q),
        spectrum_filter=frozenset(spectrum_filter) if spectrum_filter is not None else None,
        mode=RANDOM if samples else EXHAUSTIVE,
        sample_count=samples or 0,
        seed=seed,
        symmetry_reduction=symmetry_reduction,
        threads=threads,
        max_enum=max_enum,
    )
    summary = enumerate_boolean(plan)
    inputs = {
        "subcommand": "audit",
        "n": n,
        "q": q,
        "mode": plan.mode,
        "samples": samples,
        "seed": plan.resolved_seed() if plan.mode == RANDOM else None,
        "spectrum_filter": spectrum_filter,
        "symmetry_reduction": symmetry_reduction,
    }
    exit_code = EXIT_VERIFICATION if summary.failures else EXIT_OK
    return CommandResult(Report("search", inputs, summary.to_dict(), _elapsed_ms(start)), exit_code)


def cmd_search_minsupport(k: int, m: int, n: int, q: int,
                          symmetry_reduction: bool = True) -> CommandResult:
    """
    최소 지지집합 sharpness 검증 (증거는 함수 테이블 형식 문자열로 포함)

    Raises:
        DomainError: 가정 위반 또는 탐색 한도 초과
        TheoremViolationError: 하한보다 작은 지지집합 발견
    """
    start = time.perf_counter()
    record = sharpness_audit(k, m, n, q, symmetry_reduction)
    results = record.to_dict()
    results["witness_file"] = TableStore.format_function_table(record.witness.table)
    inputs = {"subcommand": "minsupport", "k": k, "m": m, "n": n, "q": q,
              "symmetry_reduction": symmetry_reduction}
    return CommandResult(Report("search", inputs, results, _elapsed_ms(start)))


def cmd_search(subcommand: str, **kwargs) -> CommandResult:
    """
    search 하위 명령 분기 (audit | minsupport)

    Raises:
        DomainError: 알 수 없는 하위 명령
    """
    if subcommand == "audit":
        return cmd_search_audit(**kwargs)
    if subcommand == "minsupport":
        return cmd_search_minsupport(**kwargs)
    raise DomainError(f"알 수 없는 search 하위 명령입니다: {subcommand}")
