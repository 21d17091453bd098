import pytest
from hypothesis import settings

from twotone.diagram import generate_pretzel, generate_torus_two_strand, parse_link_text, read_fixtures
from twotone.verify import bundled_corpus

# numba compiles on first call, so per-example deadlines are meaningless
settings.register_profile("default", deadline=None)
settings.load_profile("default")

HOPF = "X[4,1,3,2] X[2,3,1,4]"
TREFOIL = "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]"
FIGURE8 = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"
WHITEHEAD = "X[6,1,7,2] X[10,7,5,8] X[4,5,1,6] X[2,10,3,9] X[8,4,9,3]"


@pytest.fixture(scope="session")
def corpus():
    return {fx.name: fx for fx in read_fixtures(bundled_corpus())}


@pytest.fixture(scope="session")
def hopf():
    return parse_link_text(HOPF)


@pytest.fixture(scope="session")
def trefoil():
    return parse_link_text(TREFOIL)


@pytest.fixture(scope="session")
def figure8():
    return parse_link_text(FIGURE8)


@pytest.fixture(scope="session")
def whitehead():
    return parse_link_text(WHITEHEAD)


@pytest.fixture(scope="session")
def p666():
    return generate_pretzel([6, 6, 6])


@pytest.fixture(scope="session")
def torus():
    return {q: generate_torus_two_strand(q) for q in range(2, 13)}
