from pathlib import Path

import pytest

from garside import builtins as germ_builtins
from garside import divided, parse_germ, validate

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def a2_text() -> str:
    return (DATA / "a2.germ").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def a2(a2_text):
    return validate(parse_germ(a2_text))


@pytest.fixture(scope="session")
def artin3():
    return validate(germ_builtins.artin_symmetric(3))


@pytest.fixture(scope="session")
def artin4():
    return validate(germ_builtins.artin_symmetric(4))


@pytest.fixture(scope="session")
def dual3():
    return validate(germ_builtins.dual_braid(3))


@pytest.fixture(scope="session")
def chamber3():
    return validate(germ_builtins.dihedral_chamber(3))


@pytest.fixture(scope="session")
def rank2():
    return validate(germ_builtins.rank2_counterexample())


# structure group Z, with Delta an atom loop and phi = id
FREE_LOOP_TEXT = """garside-germ v1
object x
simple g : x -> x
delta x = g
"""


@pytest.fixture(scope="session")
def free_loop():
    return validate(parse_germ(FREE_LOOP_TEXT))


@pytest.fixture(scope="session")
def a2_div2(a2):
    return divided.build_divided_germ(a2, 2)


@pytest.fixture(scope="session")
def a2_div3(a2):
    return divided.build_divided_germ(a2, 3)
