"""
정의역, 정점 인덱스, 간선 및 함수 테이블 테스트
"""
import numpy as np
import pytest

from src.domain.hamming_space import (
    COMPLEX,
    INTEGER,
    PM1,
    ZERO_ONE,
    DomainError,
    DomainParams,
    FunctionTable,
    Point,
    adjacency_matrix,
    dot_mod_q,
    edge_array,
    edges,
    hamming_weight,
    index_to_point,
    neighbors,
    point_to_index,
    weight_array,
)


def test_params_validation():
    with pytest.raises(DomainError):
        DomainParams(0, 3)
    with pytest.raises(DomainError):
        DomainParams(2, 1)
    params = DomainParams(3, 4)
    assert params.size == 64
    assert params.degree == 9
    assert params.shape == (4, 4, 4)
    assert params.edge_count() == 9 * 64 // 2
    assert params.reduced() == DomainParams(2, 4)


def test_mixed_radix_first_coordinate_most_significant():
    params = DomainParams(2, 3)
    assert point_to_index(Point(params, (1, 2))) == 5
    assert index_to_point(5, params).coords == (1, 2)
    assert index_to_point(0, params).coords == (0, 0)
    assert index_to_point(8, params).coords == (2, 2)


def test_index_bijection():
    params = DomainParams(3, 4)
    indices = [point_to_index(index_to_point(i, params)) for i in range(params.size)]
    assert indices == list(range(params.size))
    with pytest.raises(DomainError):
        index_to_point(params.size, params)


def test_point_validation():
    params = DomainParams(2, 3)
    with pytest.raises(DomainError):
        Point(params, (0, 3))
    with pytest.raises(DomainError):
        Point(params, (0,))


def test_weight_and_dot():
    params = DomainParams(3, 5)
    u = Point(params, (0, 2, 4))
    x = Point(params, (3, 1, 2))
    assert hamming_weight(u) == 2
    assert dot_mod_q(u, x) == (2 + 8) % 5
    with pytest.raises(DomainError):
        dot_mod_q(u, Point(DomainParams(3, 4), (0, 0, 0)))
    assert weight_array(DomainParams(2, 3)).tolist() == [0, 1, 1, 1, 2, 2, 1, 2, 2]


def test_neighbors_order():
    params = DomainParams(2, 3)
    result = [p.coords for p in neighbors(Point(params, (0, 0)))]
    assert result == [(1, 0), (2, 0), (0, 1), (0, 2)]


@pytest.mark.parametrize("n,q", [(1, 3), (2, 3), (2, 4), (3, 3)])
def test_edges_each_once(n, q):
    params = DomainParams(n, q)
    stream = list(edges(params))
    assert len(stream) == params.edge_count()
    assert len(set(stream)) == len(stream)
    assert all(x < y for x, y in stream)

    x_idx, y_idx = edge_array(params)
    assert set(zip(x_idx.tolist(), y_idx.tolist())) == set(stream)


def test_adjacency_matrix_spectrum():
    params = DomainParams(2, 3)
    matrix = adjacency_matrix(params)
    assert np.all(matrix.sum(axis=1) == params.degree)
    eigenvalues = {int(round(v)) for v in np.linalg.eigvalsh(matrix.astype(float))}
    assert eigenvalues == {4, 1, -2}


def test_function_table_modes():
    params = DomainParams(1, 3)
    with pytest.raises(DomainError):
        FunctionTable(params, PM1, [1, 0, -1])
    with pytest.raises(DomainError):
        FunctionTable(params, ZERO_ONE, [0, 2, 1])
    with pytest.raises(DomainError):
        FunctionTable(params, INTEGER, [0.5, 1, 1])
    with pytest.raises(DomainError):
        FunctionTable(params, INTEGER, [1, 2])
    with pytest.raises(DomainError):
        FunctionTable(params, "ternary", [1, 2, 3])

    f = FunctionTable(params, ZERO_ONE, [0, 1, 1])
    assert f.to_pm1().values.tolist() == [1, -1, -1]
    assert f.to_pm1().to_zero_one() == f
    with pytest.raises(DomainError):
        FunctionTable(params, COMPLEX, [1j, 0, 0]).to_pm1()


def test_function_table_is_immutable():
    f = FunctionTable(DomainParams(1, 3), INTEGER, [1, 2, 3])
    with pytest.raises(ValueError):
        f.values[0] = 7


def test_from_function_and_value_at():
    params = DomainParams(2, 3)
    f = FunctionTable.from_function(params, INTEGER, lambda x: 3 * x[0] + x[1])
    assert f.values.tolist() == list(range(9))
    assert f.value_at(Point(params, (2, 1))) == 7
    assert f.as_tensor()[2, 1] == 7
