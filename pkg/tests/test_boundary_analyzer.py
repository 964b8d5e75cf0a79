"""
제한 함수, 간선 경계, 관련 변수 테스트
"""
import numpy as np
import pytest

from src.collectors.function_enumerator import bits_for_range, table_from_bits
from src.domain.hamming_space import COMPLEX, INTEGER, ZERO_ONE, DomainError, DomainParams, FunctionTable
from src.processors.boundary_analyzer import (
    coordinate_classes,
    coordinate_edge_counts,
    nu,
    nu_iab,
    nu_via_fourier,
    relevant_indices,
    relevant_mask_batch,
    restriction,
    restriction_values,
    support,
)
from tests.helpers import dictator, random_pm1


def _decomposed(f):
    n, q = f.params.n, f.params.q
    return sum(
        nu_iab(f, i, a, b)
        for i in range(1, n + 1)
        for a in range(q)
        for b in range(a + 1, q)
    )


def test_edge_count_decomposition_exhaustive():
    params = DomainParams(2, 3)
    for bits in bits_for_range(0, 2 ** 9, 9):
        f = table_from_bits(bits, params)
        assert nu(f) == _decomposed(f)


@pytest.mark.parametrize("n,q", [(2, 3), (3, 3), (2, 5), (3, 4)])
def test_edge_count_decomposition_random(rng, n, q):
    params = DomainParams(n, q)
    for _ in range(1000):
        f = random_pm1(rng, params)
        count = nu(f)
        assert count == _decomposed(f)
        assert count == sum(coordinate_edge_counts(f).values())


def test_dictator_restrictions():
    f = dictator(DomainParams(2, 3))
    assert restriction(f, 1, 0, 1).values.tolist() == [2, 2, 2]
    assert restriction(f, 1, 1, 2).values.tolist() == [0, 0, 0]
    assert restriction(f, 2, 0, 1).values.tolist() == [0, 0, 0]
    assert restriction(f, 1, 0, 1).mode == INTEGER
    assert relevant_indices(f) == frozenset({1})
    assert nu(f) == 6
    assert coordinate_edge_counts(f) == {1: 6, 2: 0}


def test_restriction_errors():
    f = dictator(DomainParams(2, 3))
    with pytest.raises(DomainError):
        restriction(f, 1, 2, 2)
    with pytest.raises(DomainError):
        restriction(f, 3, 0, 1)
    with pytest.raises(DomainError):
        restriction(f, 1, 0, 3)
    with pytest.raises(DomainError):
        restriction(dictator(DomainParams(1, 3)), 1, 0, 1)
    assert restriction_values(dictator(DomainParams(1, 3)), 1, 0, 1).tolist() == [2]


def test_coordinate_classes():
    f = dictator(DomainParams(2, 3))
    first = coordinate_classes(f, 1)
    assert first.classes == ((0,), (1, 2))
    assert first.class_sizes == (1, 2)
    assert first.cross_pair_count == 2
    second = coordinate_classes(f, 2)
    assert second.t == 1
    assert second.cross_pair_count == 0


def test_cross_pairs_count_nonzero_restrictions(rng):
    params = DomainParams(2, 5)
    for _ in range(20):
        f = random_pm1(rng, params)
        for i in (1, 2):
            classes = coordinate_classes(f, i)
            nonzero = sum(
                1 for a in range(5) for b in range(a + 1, 5)
                if np.any(restriction_values(f, i, a, b) != 0)
            )
            assert classes.cross_pair_count == nonzero


def test_support_and_relevant_mask_batch(rng):
    params = DomainParams(2, 3)
    g = FunctionTable(params, ZERO_ONE, [0, 0, 1, 0, 0, 0, 0, 0, 1])
    assert support(g) == frozenset({2, 8})

    tables = [random_pm1(rng, params) for _ in range(10)] + [dictator(params, 2)]
    batch = np.stack([t.values for t in tables])
    mask = relevant_mask_batch(batch, params)
    for row, table in zip(mask, tables):
        assert {i + 1 for i in np.flatnonzero(row)} == set(relevant_indices(table))
    assert relevant_mask_batch(batch[:0], params).shape == (0, 2)


def test_nu_via_fourier_requires_pm1():
    with pytest.raises(DomainError):
        nu_via_fourier(FunctionTable(DomainParams(1, 3), INTEGER, [0, 1, 2]))


def test_single_coordinate_restrictions_are_values():
    f = dictator(DomainParams(1, 3))
    assert restriction_values(f, 1, 0, 1).tolist() == [2]
    assert restriction_values(f, 1, 1, 2).tolist() == [0]
    assert nu_iab(f, 1, 0, 1) == 1
    assert nu_iab(f, 1, 1, 2) == 0
    assert nu(f) == 2
    with pytest.raises(DomainError):
        restriction(f, 1, 0, 1)


def test_coordinate_classes_merge_tolerance_chains():
    # 0 ~ 1, 1 ~ 2 이지만 0 과 2 는 허용오차 밖
    f = FunctionTable(DomainParams(1, 3), COMPLEX, [0.0, 0.6e-9, 1.2e-9])
    classes = coordinate_classes(f, 1, zero_tolerance=1e-9)
    assert classes.classes == ((0, 1, 2),)
    assert classes.t == 1

    separated = coordinate_classes(f, 1, zero_tolerance=1e-12)
    assert separated.classes == ((0,), (1,), (2,))


def test_coordinate_classes_are_disjoint(rng):
    params = DomainParams(2, 5)
    for _ in range(50):
        values = np.round(rng.normal(size=params.size), 1) * 1e-9
        f = FunctionTable(params, COMPLEX, values)
        for i in (1, 2):
            classes = coordinate_classes(f, i, zero_tolerance=1e-10).classes
            symbols = [a for group in classes for a in group]
            assert sorted(symbols) == list(range(5))
