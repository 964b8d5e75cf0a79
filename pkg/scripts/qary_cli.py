"""
Z_q^n 푸리에 분석 / 상한 검증 명령행 도구

사용 예:
    python scripts/qary_cli.py analyze data/dictator.txt --exact
    python scripts/qary_cli.py verify-partition data/split.txt
    python scripts/qary_cli.py bounds --q-range 3-7 --d-range 1-10 --format table
    python scripts/qary_cli.py search audit --n 2 --q 3
    python scripts/qary_cli.py search minsupport 1 1 2 3
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

# 프로젝트 루트를 Python 경로에 추가
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.analyzers.bound_auditor import regime_table
from src.collectors.function_enumerator import InternalCheckError
from src.config.env_loader import EnvConfig
from src.reports.commands import (
    EXIT_INTERNAL,
    EXIT_USAGE,
    CommandResult,
    bounds_text_table,
    cmd_analyze,
    cmd_bounds,
    cmd_search,
    cmd_verify_partition,
)
from src.storage.table_store import TableStore

logger = logging.getLogger(__name__)


def parse_range(text: str) -> List[int]:
    """
    "3-7", "3,5,9", "4" 형식의 정수 범위

    Raises:
        argparse.ArgumentTypeError: 형식 오류 또는 빈 범위
    """
    values = []
    try:
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if "-" in part:
                low, high = part.split("-", 1)
                values.extend(range(int(low), int(high) + 1))
            else:
                values.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"잘못된 범위입니다: {text}")
    if not values:
        raise argparse.ArgumentTypeError(f"빈 범위입니다: {text}")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qary_cli",
        description="Z_q^n 위 함수의 푸리에 분석과 해밍 그래프 상한 검증",
    )
    parser.add_argument("--save", action="store_true", help="보고서를 QARY_REPORT_DIR 에 저장")
    parser.add_argument("--verbose", action="store_true", help="DEBUG 로그 출력")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="함수 테이블 분석")
    analyze.add_argument("file")
    analyze.add_argument("--exact", action="store_true", help="원분다항식 영판정 (정수값 테이블)")
    analyze.add_argument("--eps", type=float, default=None, help="계수 영판정 허용오차")

    partition = sub.add_parser("verify-partition", help="동등 분할 검증")
    partition.add_argument("file")

    bounds = sub.add_parser("bounds", help="상한 비교 표")
    bounds.add_argument("--q-range", type=parse_range, required=True)
    bounds.add_argument("--d-range", type=parse_range, required=True)
    bounds.add_argument("--format", choices=("table", "json"), default="json")
    bounds.add_argument("--cell", type=int, nargs=3, action="append", default=[],
                        metavar=("D_PRIME", "D", "Q"), help="정확한 값을 계산할 (d', d, q)")
    bounds.add_argument("--csv", action="store_true", help="격자를 CSV 로 저장")

    search = sub.add_parser("search", help="불리언 함수 열거 / 최소 지지집합 탐색")
    search_sub = search.add_subparsers(dest="subcommand", required=True)

    audit = search_sub.add_parser("audit", help="관련 변수 상한 전수 / 무작위 검증")
    audit.add_argument("--n", type=int, required=True)
    audit.add_argument("--q", type=int, required=True)
    audit.add_argument("--samples", type=int, default=None, help="무작위 표본 수 (없으면 전수)")
    audit.add_argument("--filter", type=parse_range, default=None, help="스펙트럼 가중치 허용 집합")
    audit.add_argument("--symmetry", action="store_true", help="대칭 궤도 대표만 방문")
    audit.add_argument("--threads", type=int, default=None, help="작업자 수")
    audit.add_argument("--max-enum", type=int, default=None, help="전수 열거 상한")
    audit.add_argument("--seed", type=int, default=None, help="무작위 표본 시드")

    minsupport = search_sub.add_parser("minsupport", help="지지집합 하한 sharpness 검증")
    for name in ("k", "m", "n", "q"):
        minsupport.add_argument(name, type=int)
    minsupport.add_argument("--no-symmetry", action="store_true", help="대칭 축약 끄기")

    return parser


def run(args: argparse.Namespace) -> CommandResult:
    if args.command == "analyze":
        return cmd_analyze(args.file, exact=args.exact, eps=args.eps)
    if args.command == "verify-partition":
        return cmd_verify_partition(args.file)
    if args.command == "bounds":
        result = cmd_bounds(args.q_range, args.d_range, cells=args.cell)
        if args.csv:
            path = TableStore.save_bound_table(regime_table(sorted(set(args.q_range)),
                                                            sorted(set(args.d_range))))
            logger.info(f"bound grid saved: {path}")
        return result
    if args.subcommand == "audit":
        return cmd_search(
            "audit", n=args.n, q=args.q, samples=args.samples, seed=args.seed,
            threads=args.threads, max_enum=args.max_enum, spectrum_filter=args.filter,
            symmetry_reduction=args.symmetry,
        )
    return cmd_search("minsupport", k=args.k, m=args.m, n=args.n, q=args.q,
                      symmetry_reduction=not args.no_symmetry)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else 0

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    _, problems = EnvConfig.validate_config()
    for problem in problems:
        logger.warning(problem)

    try:
        result = run(args)
    except InternalCheckError as e:
        logger.error(f"내부 검증 실패: {e}")
        return EXIT_INTERNAL
    except (ValueError, OSError) as e:
        logger.error(str(e))
        return EXIT_USAGE

    if args.command == "bounds" and args.format == "table":
        print(bounds_text_table(args.q_range, args.d_range))
    else:
        print(result.report.to_json())
    if args.save:
        TableStore.save_report(result.report.to_json(), args.command)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
