"""
.env 파일에서 분석 설정 로드
"""
import os
from pathlib import Path
from typing import Optional
from dotenv import load_dotenv

# .env 파일 로드
load_dotenv()


DEFAULT_ZERO_TOLERANCE = 1e-9
DEFAULT_INDEX_CAPACITY = 2 ** 31
DEFAULT_MAX_ENUM = 2 ** 20
DEFAULT_DESK_LIMIT = 64
DEFAULT_THREADS = 1
DEFAULT_SEED = 0
DEFAULT_REPORT_DIR = Path("data") / "reports"


class EnvConfig:
    """환경 변수 설정 클래스"""

    @staticmethod
    def _get_int(name: str) -> Optional[int]:
        value = os.getenv(name)
        if value:
            try:
                return int(value)
            except ValueError:
                return None
        return None

    @staticmethod
    def _get_float(name: str) -> Optional[float]:
        value = os.getenv(name)
        if value:
            try:
                return float(value)
            except ValueError:
                return None
        return None

    @staticmethod
    def get_zero_tolerance() -> float:
        """
        푸리에 계수 영판정 허용오차 반환

        .env 파일에서 QARY_ZERO_TOLERANCE 환경 변수를 읽어 반환합니다.
        형식: QARY_ZERO_TOLERANCE=1e-9

        Returns:
            허용오차 (절대값, 계수 단위)
        """
        value = EnvConfig._get_float("QARY_ZERO_TOLERANCE")
        if value is None or value < 0:
            return DEFAULT_ZERO_TOLERANCE
        return value

    @staticmethod
    def get_index_capacity() -> int:
        """
        q^n 최대 허용 크기 반환 (QARY_INDEX_CAPACITY, 기본 2^31)
        """
        value = EnvConfig._get_int("QARY_INDEX_CAPACITY")
        if value is None or value <= 0:
            return DEFAULT_INDEX_CAPACITY
        return min(value, DEFAULT_INDEX_CAPACITY)

    @staticmethod
    def get_max_enum() -> int:
        """
        전수 열거 테이블 개수 상한 반환

        형식: QARY_MAX_ENUM=1048576

        Returns:
            열거 가능한 최대 테이블 수
        """
        value = EnvConfig._get_int("QARY_MAX_ENUM")
        if value is None or value <= 0:
            return DEFAULT_MAX_ENUM
        return value

    @staticmethod
    def get_desk_limit() -> int:
        """최소 지지집합 탐색에서 허용하는 q^n 상한 (QARY_DESK_LIMIT)"""
        value = EnvConfig._get_int("QARY_DESK_LIMIT")
        if value is None or value <= 0:
            return DEFAULT_DESK_LIMIT
        return value

    @staticmethod
    def get_threads() -> int:
        """
        작업자 수 반환

        형식: QARY_THREADS=4

        Returns:
            작업자 수 (1 이상)
        """
        value = EnvConfig._get_int("QARY_THREADS")
        if value is None or value < 1:
            return DEFAULT_THREADS
        return value

    @staticmethod
    def get_seed() -> int:
        """무작위 열거 시드 (QARY_SEED)"""
        value = EnvConfig._get_int("QARY_SEED")
        return DEFAULT_SEED if value is None else value

    @staticmethod
    def get_report_dir() -> Path:
        """
        리포트 저장 디렉토리 반환

        .env 파일에서 QARY_REPORT_DIR 환경 변수를 읽어 반환합니다.
        예: QARY_REPORT_DIR=data/reports

        Returns:
            저장 경로
        """
        value = os.getenv("QARY_REPORT_DIR")
        return Path(value) if value else DEFAULT_REPORT_DIR

    @staticmethod
    def validate_config() -> tuple[bool, list[str]]:
        """
        설정 값 검증

        설정된 값 중 해석할 수 없는 항목을 찾습니다.

        Returns:
            (검증 성공 여부, 문제가 있는 변수 리스트)
        """
        problems = []

        for name in ("QARY_INDEX_CAPACITY", "QARY_MAX_ENUM", "QARY_DESK_LIMIT",
                     "QARY_THREADS", "QARY_SEED"):
            if os.getenv(name) and EnvConfig._get_int(name) is None:
                problems.append(name)

        if os.getenv("QARY_ZERO_TOLERANCE") and EnvConfig._get_float("QARY_ZERO_TOLERANCE") is None:
            problems.append("QARY_ZERO_TOLERANCE")

        return len(problems) == 0, problems
