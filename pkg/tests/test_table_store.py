"""
함수 테이블 / 분할 파일 형식과 보고서 저장 테스트
"""
from datetime import datetime

import numpy as np
import pandas as pd
import pytest

from src.analyzers.bound_auditor import regime_table
from src.domain.hamming_space import COMPLEX, INTEGER, PM1, ZERO_ONE, DomainParams, FunctionTable
from src.storage.table_store import TableFormatError, TableStore
from tests.helpers import dictator


def test_parse_pm1_table():
    table = TableStore.parse_function_table("3 2 pm1\n1 1 1\n-1 -1 -1\n-1 -1 -1\n")
    assert table.params == DomainParams(2, 3)
    assert table.mode == PM1
    assert table.values.tolist() == [1, 1, 1, -1, -1, -1, -1, -1, -1]


def test_parse_other_modes():
    zero_one = TableStore.parse_function_table("2 1 01\n0 1")
    assert zero_one.mode == ZERO_ONE
    integer = TableStore.parse_function_table("3 1 int\n5 -2 0")
    assert integer.mode == INTEGER
    assert integer.values.tolist() == [5, -2, 0]
    cplx = TableStore.parse_function_table("2 1 cplx\n1.5 -0.5\n0 2")
    assert cplx.mode == COMPLEX
    assert cplx.values.tolist() == [1.5 - 0.5j, 2j]


def test_format_then_parse_keeps_table():
    params = DomainParams(2, 3)
    table = dictator(params)
    text = TableStore.format_function_table(table)
    assert text.splitlines()[0] == "3 2 pm1"
    assert text.splitlines()[1] == "1 1 1"
    assert np.array_equal(TableStore.parse_function_table(text).values, table.values)

    cplx = FunctionTable(DomainParams(1, 2), COMPLEX, np.array([0.1 + 0.2j, -1.0]))
    parsed = TableStore.parse_function_table(TableStore.format_function_table(cplx))
    assert np.array_equal(parsed.values, cplx.values)


@pytest.mark.parametrize("text,line,column", [
    ("", 1, 1),
    ("3 2\n1 1 1", 1, 4),
    ("3 2 pm1 extra\n", 1, 9),
    ("3 2 bad\n", 1, 5),
    ("x 2 pm1\n", 1, 1),
    ("1 2 pm1\n1", 1, 1),
    ("3 1 pm1\n1 2 1", 2, 3),
    ("3 1 pm1\n1 -1", 2, 5),
    ("3 1 pm1\n1 -1 1\n1", 3, 1),
    ("3 1 01\n0 1 a", 2, 5),
])
def test_format_errors_report_position(text, line, column):
    with pytest.raises(TableFormatError) as excinfo:
        TableStore.parse_function_table(text)
    assert (excinfo.value.line, excinfo.value.column) == (line, column)
    assert str(excinfo.value).startswith(f"{line}행 {column}열")
    assert isinstance(excinfo.value, ValueError)


def test_parse_partition():
    partition = TableStore.parse_partition("3 1 3\n1 2 3\n")
    assert partition.r == 3
    assert partition.labels.tolist() == [1, 2, 3]
    assert TableStore.format_partition(partition) == "3 1 3\n1 2 3\n"


@pytest.mark.parametrize("text,line,column", [
    ("3 1 2\n1 3 2", 2, 3),
    ("3 1 0\n1 1 1", 1, 5),
    ("3 1 2\n1 1 1", 2, 6),
    ("3 1 2\n1 2", 2, 4),
])
def test_partition_errors(text, line, column):
    with pytest.raises(TableFormatError) as excinfo:
        TableStore.parse_partition(text)
    assert (excinfo.value.line, excinfo.value.column) == (line, column)


def test_load_and_save_function_table(tmp_path):
    table = dictator(DomainParams(2, 3))
    path = TableStore.save_function_table(table, tmp_path / "nested" / "dictator.txt")
    loaded = TableStore.load_function_table(path)
    assert np.array_equal(loaded.values, table.values)
    with pytest.raises(FileNotFoundError):
        TableStore.load_function_table(tmp_path / "missing.txt")


def test_save_report(tmp_path):
    path = TableStore.save_report('{"a": 1}', "bounds",
                                  date=datetime(2024, 6, 11, 9, 30, 5), base_dir=tmp_path)
    assert path == str(tmp_path / "20240611" / "bounds_093005.json")
    assert (tmp_path / "20240611" / "bounds_093005.json").read_text(encoding="utf-8") == '{"a": 1}'


def test_save_report_uses_env_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("QARY_REPORT_DIR", str(tmp_path))
    path = TableStore.save_report("{}", "analyze", date=datetime(2024, 1, 2, 3, 4, 5))
    assert path == str(tmp_path / "20240102" / "analyze_030405.json")


def test_save_bound_table(tmp_path):
    path = TableStore.save_bound_table(regime_table([3], [1, 2]), base_dir=tmp_path)
    df = pd.read_csv(path, encoding="utf-8-sig")
    assert list(df["q"]) == [3, 3]
    assert list(df["degree_bound"]) == ["9/8", "27/4"]
    assert list(df["degree_winner"]) == ["main", "main"]


def test_format_complex_cells_are_plain_floats():
    cplx = FunctionTable(DomainParams(1, 2), COMPLEX, np.array([0.1 + 0.2j, -1.0]))
    text = TableStore.format_function_table(cplx)
    assert text == "2 1 cplx\n0.1 0.2 -1.0 0.0\n"
    assert "np." not in text
    assert TableStore.parse_function_table(text).values.tolist() == [0.1 + 0.2j, -1.0 + 0j]
