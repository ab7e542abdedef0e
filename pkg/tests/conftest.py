import pytest

from ellqg.params import ModularParams

#: generic sample points off the real zero lattice
P_SAMPLES = [1.3 + 0.137j, -0.7 + 0.4j, 2.2 + 0.9j, 0.45 - 1.1j]
U_SAMPLES = [0.4 + 0.21j, -0.55 + 0.34j, 1.2 - 0.18j]


@pytest.fixture(scope="session")
def pa():
    """Default context, real r."""
    return ModularParams(0.5, 3.0)


@pytest.fixture(scope="session")
def pao():
    """Generic-r context: real integer r sits on the zero lattice of the
    forced-integer factorials ([1]_j at j = r, [-l］_m at l = r, ...)."""
    return ModularParams(0.5, 3.0 + 0.137j)


@pytest.fixture(scope="session")
def pa_star():
    """Distinct r* for the scalar normalization identities."""
    return ModularParams(0.5, 3.0, 2.5)
