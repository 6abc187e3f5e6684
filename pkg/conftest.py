# conftest.py
# Fixture bersama untuk semua test qforge.

import pytest

from freealg import AlgebraSpec
from specfile import parse_spec
from algebra import Algebra


@pytest.fixture
def generic1():
    return AlgebraSpec.generic((1,))


@pytest.fixture
def generic2():
    return AlgebraSpec.generic((1, 2))


@pytest.fixture
def minus_one():
    return parse_spec("preset:minus-one")


@pytest.fixture
def sl3():
    return parse_spec("preset:sl3")


@pytest.fixture
def sl3_twisted():
    return parse_spec("preset:sl3-twisted")


@pytest.fixture
def algebra2(generic2):
    return Algebra(generic2)
