import pytest

from hlk import catalog, gkcoh


@pytest.fixture(scope="session")
def torus():
    return catalog.torus_algebra()


@pytest.fixture(scope="session")
def abelian():
    return catalog.abelian_surface_algebra()


@pytest.fixture(scope="session")
def k3():
    return catalog.k3_algebra()


@pytest.fixture(scope="session")
def g2k2():
    return catalog.g2_family_algebra(2)


@pytest.fixture(scope="session")
def g2k3():
    return catalog.g2_family_algebra(3)


@pytest.fixture(scope="session")
def sl2():
    return catalog.sl2_pair()


@pytest.fixture(scope="session")
def sl2_split(sl2):
    return gkcoh.split_p(sl2)


@pytest.fixture(scope="session")
def sl2_modules():
    return {
        "trivial": catalog.sl2_trivial_module(),
        "adjoint": catalog.sl2_adjoint_module(),
        "ds-plus": catalog.sl2_discrete_series_module(1),
        "ds-minus": catalog.sl2_discrete_series_module(-1),
    }
