"""
공통 픽스처
"""
import numpy as np
import pytest

QARY_VARIABLES = (
    "QARY_ZERO_TOLERANCE", "QARY_INDEX_CAPACITY", "QARY_MAX_ENUM", "QARY_DESK_LIMIT",
    "QARY_THREADS", "QARY_SEED", "QARY_REPORT_DIR",
)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """로컬 .env 값이 테스트에 섞이지 않도록 QARY_* 변수 제거"""
    for name in QARY_VARIABLES:
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
