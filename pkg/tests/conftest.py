import pytest

from eqlr import Calculator, Rect, parse_partition


@pytest.fixture(scope="session")
def rect24():
    return Rect(2, 4)


@pytest.fixture(scope="session")
def calc24(rect24):
    return Calculator(rect24)


@pytest.fixture(scope="session")
def calc25():
    return Calculator(Rect(2, 5))


@pytest.fixture(scope="session")
def calc26():
    return Calculator(Rect(2, 6))


@pytest.fixture(scope="session")
def calc36():
    return Calculator(Rect(3, 6))


def part(calc_or_rect, text):
    rect = getattr(calc_or_rect, "rect", calc_or_rect)
    return parse_partition(text, rect)
