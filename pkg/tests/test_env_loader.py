"""
환경 변수 설정 테스트
"""
from pathlib import Path

import pytest

from src.config.env_loader import (
    DEFAULT_DESK_LIMIT,
    DEFAULT_INDEX_CAPACITY,
    DEFAULT_MAX_ENUM,
    DEFAULT_ZERO_TOLERANCE,
    EnvConfig,
)
from src.domain.hamming_space import DomainError, DomainParams


def test_defaults_when_unset():
    assert EnvConfig.get_zero_tolerance() == DEFAULT_ZERO_TOLERANCE
    assert EnvConfig.get_index_capacity() == DEFAULT_INDEX_CAPACITY
    assert EnvConfig.get_max_enum() == DEFAULT_MAX_ENUM
    assert EnvConfig.get_desk_limit() == DEFAULT_DESK_LIMIT
    assert EnvConfig.get_threads() == 1
    assert EnvConfig.get_seed() == 0
    assert EnvConfig.get_report_dir() == Path("data") / "reports"
    assert EnvConfig.validate_config() == (True, [])


def test_values_are_read(monkeypatch):
    monkeypatch.setenv("QARY_ZERO_TOLERANCE", "1e-6")
    monkeypatch.setenv("QARY_THREADS", "4")
    monkeypatch.setenv("QARY_SEED", "17")
    monkeypatch.setenv("QARY_REPORT_DIR", "out/reports")
    assert EnvConfig.get_zero_tolerance() == pytest.approx(1e-6)
    assert EnvConfig.get_threads() == 4
    assert EnvConfig.get_seed() == 17
    assert EnvConfig.get_report_dir() == Path("out/reports")


def test_malformed_values_fall_back_and_are_reported(monkeypatch):
    monkeypatch.setenv("QARY_THREADS", "many")
    monkeypatch.setenv("QARY_ZERO_TOLERANCE", "tiny")
    assert EnvConfig.get_threads() == 1
    assert EnvConfig.get_zero_tolerance() == DEFAULT_ZERO_TOLERANCE
    ok, problems = EnvConfig.validate_config()
    assert not ok
    assert set(problems) == {"QARY_THREADS", "QARY_ZERO_TOLERANCE"}


def test_index_capacity_is_capped_and_enforced(monkeypatch):
    monkeypatch.setenv("QARY_INDEX_CAPACITY", str(2 ** 40))
    assert EnvConfig.get_index_capacity() == 2 ** 31

    monkeypatch.setenv("QARY_INDEX_CAPACITY", "100")
    DomainParams(2, 10)
    with pytest.raises(DomainError):
        DomainParams(3, 5)
