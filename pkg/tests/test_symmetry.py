"""
대칭군 생성, 작용 및 궤도 대표 테스트
"""
import numpy as np
import pytest

from src.collectors.function_enumerator import bits_for_range
from src.collectors.symmetry import (
    SymmetryElement,
    apply_symmetry,
    canonical_support,
    canonical_table_mask,
    group_order,
    is_canonical_support,
    iter_elements,
    symmetry_group,
    units,
)
from src.domain.hamming_space import DomainError, DomainParams
from src.processors.boundary_analyzer import nu, relevant_indices, support
from src.processors.fourier_transform import spectrum_report, transform
from tests.helpers import random_pm1


def test_units():
    assert units(3) == (1, 2)
    assert units(4) == (1, 3)
    assert units(6) == (1, 5)
    assert units(7) == (1, 2, 3, 4, 5, 6)


@pytest.mark.parametrize("n,q,order", [(2, 3, 72), (1, 4, 8), (3, 3, 1296), (2, 5, 800)])
def test_group_order(n, q, order):
    params = DomainParams(n, q)
    assert group_order(params) == order
    assert symmetry_group(params).shape == (order, params.size)


def test_group_rows_are_permutations():
    params = DomainParams(2, 4)
    group = symmetry_group(params)
    assert np.array_equal(group[0], np.arange(params.size))
    assert np.all(np.sort(group, axis=1) == np.arange(params.size))
    assert len({row.tobytes() for row in group}) == group.shape[0]


def test_element_order_matches_rows(rng):
    params = DomainParams(2, 3)
    f = random_pm1(rng, params)
    elements = list(iter_elements(params))
    assert elements[0] == SymmetryElement((0, 1), (1, 1), (0, 0))
    for index in (0, 1, 7, 35, 36, 71):
        assert np.array_equal(
            apply_symmetry(f, elements[index]).values, apply_symmetry(f, index).values
        )


def test_apply_coords():
    element = SymmetryElement(perm=(1, 0), multipliers=(2, 1), shifts=(1, 0))
    assert element.apply_coords((0, 1), 3) == (0, 0)
    assert element.apply_coords((2, 2), 3) == (2, 2)


@pytest.mark.parametrize("n,q", [(2, 3), (2, 4), (3, 3)])
def test_symmetry_preserves_invariants(rng, n, q):
    params = DomainParams(n, q)
    group = symmetry_group(params)
    for _ in range(5):
        f = random_pm1(rng, params)
        base = spectrum_report(transform(f)).weight_support
        for index in rng.integers(0, group.shape[0], size=10):
            g = apply_symmetry(f, int(index))
            assert spectrum_report(transform(g)).weight_support == base
            assert nu(g) == nu(f)
            assert len(relevant_indices(g)) == len(relevant_indices(f))
            assert len(support(g.to_zero_one())) == len(support(f.to_zero_one()))


def test_canonical_support_is_orbit_invariant(rng):
    params = DomainParams(2, 3)
    group = symmetry_group(params)
    members = (1, 5, 7)
    canonical = canonical_support(members, group)
    assert is_canonical_support(canonical, group)
    for row in group:
        assert canonical_support(row[list(members)], group) == canonical
    assert canonical_support((), group) == ()
    assert canonical_support((4,), group) == (0,)


def test_canonical_table_mask_h13():
    params = DomainParams(1, 3)
    bits = bits_for_range(0, 8, 3)
    mask = canonical_table_mask(bits, symmetry_group(params))
    # 무게별 궤도 하나씩: 000, 001, 011, 111
    assert mask.tolist() == [True, True, False, True, False, False, False, True]


def test_canonical_table_mask_rejects_long_tables():
    with pytest.raises(DomainError):
        canonical_table_mask(np.zeros((1, 64), dtype=np.uint8), np.zeros((1, 64), dtype=np.int64))


def test_group_too_large():
    with pytest.raises(DomainError):
        symmetry_group(DomainParams(6, 7))
