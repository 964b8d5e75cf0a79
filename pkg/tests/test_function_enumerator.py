"""
불리언 함수 전수 / 무작위 열거 테스트
"""
import numpy as np
import pytest

from src.analyzers.bound_auditor import FAIL, NOT_APPLICABLE, PASS
from src.collectors.function_enumerator import (
    EXHAUSTIVE,
    RANDOM,
    SUPPORT_SIZE,
    EnumerationLimitError,
    EnumerationPlan,
    Witness,
    bits_for_range,
    enumerate_boolean,
    integer_witness,
    table_from_bits,
    weight_presence,
)
from src.domain.hamming_space import DomainError, DomainParams
from src.processors.cyclotomic import exact_nonzero_mask
from src.processors.fourier_transform import spectrum_report, transform


def test_bits_for_range_msb_first():
    bits = bits_for_range(5, 7, 3)
    assert bits.tolist() == [[1, 0, 1], [1, 1, 0]]
    table = table_from_bits(bits[0], DomainParams(1, 3))
    assert table.values.tolist() == [-1, 1, -1]


def test_weight_presence_matches_report(rng):
    params = DomainParams(2, 3)
    bits = rng.integers(0, 2, size=(20, 9), dtype=np.uint8)
    presence = weight_presence(exact_nonzero_mask(1 - 2 * bits.astype(np.int64), params), params)
    for row, flags in zip(bits, presence):
        weights = spectrum_report(transform(table_from_bits(row, params))).weight_support
        assert {w for w in range(3) if flags[w]} == weights


def test_exhaustive_h13():
    summary = enumerate_boolean(EnumerationPlan(DomainParams(1, 3)))
    assert summary.count_visited == 8
    assert summary.count_matching == 8
    assert summary.degree_counts == {0: 2, 1: 6}
    assert summary.verdict_counts == {PASS: 6, FAIL: 0, NOT_APPLICABLE: 2}
    assert summary.first_failure is None

    worst = summary.worst_case
    assert worst.table.values.tolist() == [1, 1, -1]
    assert (worst.achieved, worst.target) == (1, 1)
    assert worst.verify()


def test_spectrum_filter_h23():
    seen = []
    plan = EnumerationPlan(DomainParams(2, 3), spectrum_filter={0, 1})
    summary = enumerate_boolean(plan, visitor=seen.append)
    assert summary.count_visited == 512
    assert summary.count_matching == 14
    assert summary.degree_counts == {0: 2, 1: 12}
    assert summary.verdict_counts[PASS] == 12
    assert len(seen) == 14
    for table in seen:
        assert spectrum_report(transform(table)).weight_support <= {0, 1}


@pytest.mark.parametrize("n,q", [(2, 3), (2, 4)])
def test_exhaustive_has_no_failures(n, q):
    summary = enumerate_boolean(EnumerationPlan(DomainParams(n, q), batch_size=2048))
    assert summary.count_visited == 2 ** (q ** n)
    assert summary.failures == 0
    assert summary.worst_case.verify()
    assert sum(summary.verdict_counts.values()) == summary.count_matching


@pytest.mark.parametrize("threads", [4, 8])
def test_random_mode_is_deterministic_across_threads(threads):
    params = DomainParams(2, 4)
    base = dict(params=params, mode=RANDOM, sample_count=3000, seed=7, batch_size=256)
    single = enumerate_boolean(EnumerationPlan(threads=1, **base))
    pooled = enumerate_boolean(EnumerationPlan(threads=threads, **base))
    assert single.count_visited == 3000
    assert single.to_dict() == pooled.to_dict()

    other = enumerate_boolean(EnumerationPlan(threads=1, **{**base, "seed": 8}))
    assert other.count_visited == 3000


@pytest.mark.parametrize("threads", [3, 8])
def test_exhaustive_is_deterministic_across_threads(threads):
    params = DomainParams(2, 3)
    single = enumerate_boolean(EnumerationPlan(params, threads=1, batch_size=64))
    pooled = enumerate_boolean(EnumerationPlan(params, threads=threads, batch_size=64))
    assert single.to_dict() == pooled.to_dict()


def test_symmetry_reduction_visits_orbit_representatives():
    params = DomainParams(1, 3)
    summary = enumerate_boolean(EnumerationPlan(params, symmetry_reduction=True))
    assert summary.count_visited == 8
    assert summary.count_matching == 4
    assert summary.degree_counts == {0: 2, 1: 2}

    reduced = enumerate_boolean(
        EnumerationPlan(DomainParams(2, 3), symmetry_reduction=True, batch_size=128)
    )
    assert reduced.count_matching < 512
    assert reduced.failures == 0


def test_exhaustive_limit(monkeypatch):
    with pytest.raises(EnumerationLimitError):
        enumerate_boolean(EnumerationPlan(DomainParams(2, 3), max_enum=100))
    monkeypatch.setenv("QARY_MAX_ENUM", "256")
    with pytest.raises(EnumerationLimitError):
        EnumerationPlan(DomainParams(2, 3)).validate()
    assert isinstance(EnumerationLimitError("x"), DomainError)


def test_plan_validation():
    params = DomainParams(1, 3)
    with pytest.raises(DomainError):
        EnumerationPlan(params, mode="gray").validate()
    with pytest.raises(DomainError):
        EnumerationPlan(params, mode=RANDOM, sample_count=0).validate()
    with pytest.raises(DomainError):
        EnumerationPlan(params, batch_size=0).validate()
    plan = EnumerationPlan(params, spectrum_filter=[0, 1])
    assert plan.spectrum_filter == frozenset({0, 1})
    assert plan.mode == EXHAUSTIVE
    assert plan.total() == 8


def test_integer_witness():
    params = DomainParams(1, 3)
    witness = integer_witness(np.array([1, -1, 0]), params, 2)
    assert witness.kind == SUPPORT_SIZE
    assert witness.achieved == 2
    assert witness.verify()
    assert witness.to_dict()["values"] == [1, -1, 0]

    bogus = Witness(witness.table, 3, 2, SUPPORT_SIZE)
    assert not bogus.verify()
