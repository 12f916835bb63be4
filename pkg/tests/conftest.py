import pytest

from mcgcalc import fixture_path
from mcgcalc.parser import parse_scripts, parse_system


def load_fixture_system(name):
    return parse_system(fixture_path(name).read_text(), name)


def load_fixture_scripts(name, system):
    return parse_scripts(fixture_path(name).read_text(), system, name)


@pytest.fixture(scope="session")
def g2():
    return load_fixture_system("genus2_chain.mcg")


@pytest.fixture(scope="session")
def g3():
    return load_fixture_system("genus3_chain.mcg")


@pytest.fixture(scope="session")
def rel_g2():
    return load_fixture_system("relations_g2.mcg")


@pytest.fixture(scope="session")
def ex53(g2):
    return load_fixture_scripts("ex53.script", g2)["ex53"]


@pytest.fixture(scope="session")
def ex52(g3):
    return load_fixture_scripts("ex52.script", g3)
