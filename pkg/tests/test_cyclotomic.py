"""
원분다항식 기반 정확한 영판정 테스트
"""
import numpy as np
import pytest

from src.domain.hamming_space import (
    COMPLEX,
    INTEGER,
    DomainError,
    DomainParams,
    FunctionTable,
    Point,
    index_to_point,
)
from src.processors.cyclotomic import (
    CyclotomicInt,
    cyclotomic_counts,
    cyclotomic_polynomial,
    exact_coefficient_is_zero,
    exact_nonzero_mask,
    exact_spectrum_report,
    reduction_matrix,
)
from src.processors.fourier_transform import spectrum_report, transform
from tests.helpers import dictator, random_pm1


def test_cyclotomic_polynomial():
    assert cyclotomic_polynomial(3).all_coeffs() == [1, 1, 1]
    assert cyclotomic_polynomial(4).all_coeffs() == [1, 0, 1]
    assert cyclotomic_polynomial(6).all_coeffs() == [1, -1, 1]


def test_reduction_matrix_q3():
    assert reduction_matrix(3).tolist() == [[1, 0], [0, 1], [-1, -1]]


def test_cyclotomic_int_zero_test():
    assert CyclotomicInt(3, (1, 1, 1)).is_zero()
    assert not CyclotomicInt(3, (1, 0, 0)).is_zero()
    assert CyclotomicInt(4, (1, 0, 1, 0)).is_zero()
    assert CyclotomicInt(6, (1, 0, 0, 1, 0, 0)).is_zero()
    value = CyclotomicInt(5, (2, 1, 0, 0, 0))
    assert value.to_complex() == pytest.approx(2 + np.exp(2j * np.pi / 5))
    with pytest.raises(DomainError):
        CyclotomicInt(3, (1, 1))


def test_counts_of_constant():
    params = DomainParams(1, 3)
    f = FunctionTable(params, INTEGER, [1, 1, 1])
    assert cyclotomic_counts(f, Point(params, (1,))).counts == (1, 1, 1)
    assert cyclotomic_counts(f, Point(params, (0,))).counts == (3, 0, 0)
    assert exact_coefficient_is_zero(f, Point(params, (1,)))
    assert not exact_coefficient_is_zero(f, Point(params, (0,)))


def test_counts_require_integer_table():
    params = DomainParams(1, 3)
    with pytest.raises(DomainError):
        cyclotomic_counts(FunctionTable(params, COMPLEX, [1, 0, 0]), Point(params, (1,)))


@pytest.mark.parametrize("q", [3, 4, 5, 6])
def test_exact_mask_matches_float_mask(rng, q):
    params = DomainParams(2, q)
    for _ in range(50):
        f = random_pm1(rng, params)
        exact = exact_nonzero_mask(f.values, params)
        approx = transform(f).nonzero_mask()
        np.testing.assert_array_equal(exact, approx)


def test_exact_mask_batch_shape(rng):
    params = DomainParams(2, 3)
    batch = np.stack([random_pm1(rng, params).values for _ in range(5)])
    assert exact_nonzero_mask(batch, params).shape == (5, 9)


def test_exact_spectrum_report_of_dictator():
    f = dictator(DomainParams(3, 4), coordinate=2)
    exact = exact_spectrum_report(f)
    assert exact == spectrum_report(transform(f))
    assert exact.weight_support == frozenset({0, 1})


@pytest.mark.parametrize("n,q", [(3, 3), (2, 5)])
def test_exact_mask_matches_float_on_integer_tables(rng, n, q):
    params = DomainParams(n, q)
    for _ in range(200):
        f = FunctionTable(params, INTEGER, rng.integers(-3, 4, size=params.size))
        exact = exact_nonzero_mask(f.values, params)
        np.testing.assert_array_equal(exact, transform(f).nonzero_mask())
        assert exact_spectrum_report(f) == spectrum_report(transform(f))


def test_exact_mask_matches_counts_per_point(rng):
    params = DomainParams(2, 4)
    f = FunctionTable(params, INTEGER, rng.integers(-2, 3, size=params.size))
    mask = exact_nonzero_mask(f.values, params)
    for u in range(params.size):
        point = index_to_point(u, params)
        assert mask[u] == (not exact_coefficient_is_zero(f, point))


def test_exact_spectrum_on_large_domain(rng):
    params = DomainParams(8, 3)
    f = random_pm1(rng, params)
    assert exact_spectrum_report(f) == spectrum_report(transform(f))
    g = dictator(params, coordinate=5)
    assert exact_spectrum_report(g).weight_support == frozenset({0, 1})
