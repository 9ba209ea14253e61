import pytest

from squarezero.polyalg import GF, QQ, PolyMatrix


def koszul(field=None):
    field = field or GF(101)
    return PolyMatrix.from_rows(
        [["0", "x1", "x2", "0"],
         ["0", "0", "0", "x2"],
         ["0", "0", "0", "-x1"],
         ["0", "0", "0", "0"]],
        field, 2)


@pytest.fixture
def kz():
    return koszul()


@pytest.fixture
def kz_q():
    return koszul(QQ)
