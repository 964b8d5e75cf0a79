"""
테스트용 테이블 생성 도우미
"""
from src.domain.hamming_space import PM1, DomainParams, FunctionTable


def random_pm1(rng, params: DomainParams) -> FunctionTable:
    return FunctionTable(params, PM1, rng.choice([-1, 1], size=params.size))


def dictator(params: DomainParams, coordinate: int = 1) -> FunctionTable:
    """x_i = 0 이면 +1, 아니면 -1"""
    return FunctionTable.from_function(
        params, PM1, lambda x: 1 if x[coordinate - 1] == 0 else -1
    )


def first_coordinate_labels(params: DomainParams):
    """x_1 = 0 이면 클래스 1, 아니면 클래스 2"""
    return [1 if index < params.size // params.q else 2 for index in range(params.size)]
