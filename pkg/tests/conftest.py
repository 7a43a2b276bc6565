import pytest

from canonform.field import GF, QQ

FIELDS = [GF(2), GF(3), GF(7), GF(101), QQ]


@pytest.fixture(params=FIELDS, ids=repr)
def field(request):
    return request.param
