import random

import pytest

from endok.fields import GF, QQ

ALL_FIELDS = [QQ, GF(2), GF(3), GF(5)]


@pytest.fixture
def rng():
    return random.Random(0)


def field_id(field):
    return repr(field)
