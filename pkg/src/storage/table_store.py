"""
함수 테이블 / 분할 파일 형식 입출력과 보고서, 상한 표 저장

함수 테이블 형식:
    1행: q n mode  (mode ∈ pm1 | 01 | int | cplx)
    이후: q^n 개 값 (공백 구분, 혼합 기수 순서). cplx 는 "re im" 쌍.
분할 형식:
    1행: q n r
    이후: q^n 개 라벨 (1..r)
"""
import logging
import re
from datetime import datetime
from pathlib import Path
from typing import Iterator, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from src.analyzers.partition_analyzer import Partition
from src.config.env_loader import EnvConfig
from src.domain.hamming_space import (
    COMPLEX,
    INTEGER,
    PM1,
    ZERO_ONE,
    DomainError,
    DomainParams,
    FunctionTable,
)

logger = logging.getLogger(__name__)

FILE_MODES = {"pm1": PM1, "01": ZERO_ONE, "int": INTEGER, "cplx": COMPLEX}
_MODE_NAMES = {mode: name for name, mode in FILE_MODES.items()}

_TOKEN = re.compile(r"\S+")


class TableFormatError(ValueError):
    """파일 형식 오류 (1부터 시작하는 행/열 위치 포함)"""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{line}행 {column}열: {message}")


Token = Tuple[str, int, int]  # (text, line, column)


def _tokens(lines: List[str], start_line: int) -> Iterator[Token]:
    for offset, text in enumerate(lines):
        for match in _TOKEN.finditer(text):
            yield match.group(), start_line + offset, match.start() + 1


def _parse_header(lines: List[str], arity: int, names: Tuple[str, ...]) -> List[Token]:
    if not lines:
        raise TableFormatError("빈 파일입니다", 1, 1)
    header = list(_tokens(lines[:1], 1))
    if len(header) != arity:
        column = header[arity][2] if len(header) > arity else len(lines[0]) + 1
        raise TableFormatError(
            f"헤더는 '{' '.join(names)}' 형식이어야 합니다 (토큰 {len(header)}개)", 1, column
        )
    return header


def _parse_int(token: Token, what: str) -> int:
    text, line, column = token
    try:
        return int(text)
    except ValueError:
        raise TableFormatError(f"{what} 는 정수여야 합니다: '{text}'", line, column)


def _params_from_header(q_token: Token, n_token: Token) -> DomainParams:
    q = _parse_int(q_token, "q")
    n = _parse_int(n_token, "n")
    try:
        return DomainParams(n, q)
    except DomainError as e:
        raise TableFormatError(str(e), 1, q_token[2])


def _end_position(lines: List[str]) -> Tuple[int, int]:
    return len(lines), len(lines[-1]) + 1 if lines else 1


def _take_values(lines: List[str], count: int) -> List[Token]:
    tokens = list(_tokens(lines[1:], 2))
    if len(tokens) < count:
        line, column = _end_position(lines)
        raise TableFormatError(f"값이 {count}개 필요하지만 {len(tokens)}개뿐입니다", line, column)
    if len(tokens) > count:
        _, line, column = tokens[count]
        raise TableFormatError(f"값이 {count}개를 초과합니다", line, column)
    return tokens


class TableStore:
    """파일 형식 및 저장 유틸리티 클래스"""

    @staticmethod
    def ensure_directory(path: Path):
        """디렉토리가 없으면 생성"""
        path.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def parse_function_table(text: str) -> FunctionTable:
        """
        함수 테이블 문자열 파싱

        Raises:
            TableFormatError: 헤더, 값 개수, 값 형식 또는 모드 제약 위반
        """
        lines = text.splitlines()
        q_token, n_token, mode_token = _parse_header(lines, 3, ("q", "n", "mode"))
        params = _params_from_header(q_token, n_token)
        if mode_token[0] not in FILE_MODES:
            raise TableFormatError(
                f"알 수 없는 mode 입니다: '{mode_token[0]}' (pm1|01|int|cplx)", 1, mode_token[2]
            )
        mode = FILE_MODES[mode_token[0]]

        if mode == COMPLEX:
            tokens = _take_values(lines, 2 * params.size)
            parts = []
            for text_value, line, column in tokens:
                try:
                    parts.append(float(text_value))
                except ValueError:
                    raise TableFormatError(f"실수가 아닙니다: '{text_value}'", line, column)
            pairs = np.array(parts).reshape(-1, 2)
            return FunctionTable(params, COMPLEX, pairs[:, 0] + 1j * pairs[:, 1])

        tokens = _take_values(lines, params.size)
        values = [_parse_int(token, "값") for token in tokens]
        allowed = {PM1: (-1, 1), ZERO_ONE: (0, 1)}.get(mode)
        if allowed is not None:
            for value, (text_value, line, column) in zip(values, tokens):
                if value not in allowed:
                    raise TableFormatError(
                        f"{mode_token[0]} 모드에서 허용되지 않는 값입니다: '{text_value}'", line, column
                    )
        return FunctionTable(params, mode, np.array(values, dtype=np.int64))

    @staticmethod
    def format_function_table(f: FunctionTable) -> str:
        """함수 테이블을 파일 형식 문자열로 (한 행에 q 개 값)"""
        q = f.params.q
        header = f"{q} {f.params.n} {_MODE_NAMES[f.mode]}"
        if f.mode == COMPLEX:
            cells = [f"{float(v.real)!r} {float(v.imag)!r}" for v in f.values]
        else:
            cells = [str(int(v)) for v in f.values]
        rows = [" ".join(cells[i:i + q]) for i in range(0, len(cells), q)]
        return "\n".join([header] + rows) + "\n"

    @staticmethod
    def load_function_table(path: Union[str, Path]) -> FunctionTable:
        """
        함수 테이블 파일 읽기

        Raises:
            TableFormatError: 형식 오류
            FileNotFoundError: 파일이 없는 경우
        """
        text = Path(path).read_text(encoding="utf-8")
        table = TableStore.parse_function_table(text)
        logger.debug(f"loaded {table.mode} table {table.params} from {path}")
        return table

    @staticmethod
    def save_function_table(f: FunctionTable, path: Union[str, Path]) -> str:
        path = Path(path)
        TableStore.ensure_directory(path.parent)
        path.write_text(TableStore.format_function_table(f), encoding="utf-8")
        return str(path)

    @staticmethod
    def parse_partition(text: str) -> Partition:
        """
        분할 문자열 파싱

        Raises:
            TableFormatError: 헤더, 라벨 개수 또는 라벨 범위 위반
        """
        lines = text.splitlines()
        q_token, n_token, r_token = _parse_header(lines, 3, ("q", "n", "r"))
        params = _params_from_header(q_token, n_token)
        r = _parse_int(r_token, "r")
        if r < 1:
            raise TableFormatError(f"r 은 1 이상이어야 합니다: {r}", 1, r_token[2])

        tokens = _take_values(lines, params.size)
        labels = []
        for token in tokens:
            label = _parse_int(token, "라벨")
            if not 1 <= label <= r:
                raise TableFormatError(f"라벨은 [1, {r}] 범위여야 합니다: {label}", token[1], token[2])
            labels.append(label)
        try:
            return Partition(params, np.array(labels, dtype=np.int64), r)
        except DomainError as e:
            line, column = _end_position(lines)
            raise TableFormatError(str(e), line, column)

    @staticmethod
    def format_partition(p: Partition) -> str:
        q = p.params.q
        cells = [str(int(v)) for v in p.labels]
        rows = [" ".join(cells[i:i + q]) for i in range(0, len(cells), q)]
        return "\n".join([f"{q} {p.params.n} {p.r}"] + rows) + "\n"

    @staticmethod
    def load_partition(path: Union[str, Path]) -> Partition:
        return TableStore.parse_partition(Path(path).read_text(encoding="utf-8"))

    @staticmethod
    def save_report(report_json: str, command: str,
                    date: Optional[datetime] = None,
                    base_dir: Optional[Path] = None) -> str:
        """
        JSON 보고서 저장 (report_dir/YYYYMMDD/{command}_HHMMSS.json)

        Args:
            report_json: 직렬화된 보고서
            command: 명령 이름
            date: 저장 시각 (None이면 현재 시각)
            base_dir: 저장 루트 (None이면 QARY_REPORT_DIR)

        Returns:
            저장된 파일 경로
        """
        if date is None:
            date = datetime.now()
        base = base_dir or EnvConfig.get_report_dir()
        directory = base / date.strftime("%Y%m%d")
        TableStore.ensure_directory(directory)

        filename = directory / f"{command}_{date.strftime('%H%M%S')}.json"
        filename.write_text(report_json, encoding="utf-8")
        logger.info(f"report saved: {filename}")
        return str(filename)

    @staticmethod
    def save_bound_table(df: pd.DataFrame, name: str = "bounds",
                         base_dir: Optional[Path] = None) -> str:
        """
        상한 비교 표를 CSV 로 저장 (정확한 유리수 열은 문자열 'p/q')

        Returns:
            저장된 파일 경로
        """
        base = base_dir or EnvConfig.get_report_dir()
        TableStore.ensure_directory(base)
        filename = base / f"{name}.csv"
        if filename.exists():
            filename.unlink()

        out = df.copy()
        for column in out.columns:
            if out[column].dtype == object:
                out[column] = out[column].map(str)
        out.to_csv(filename, index=False, encoding='utf-8-sig')
        return str(filename)
