import numpy as np
import pytest

from frontrom.distance import sdf_series
from frontrom.ftr import error_report, ftr_decompose
from frontrom.synth import gen_advection_1d, gen_merging_discs, gen_moving_disc

# sampling band used for dataset-level comparisons, in units of L
WIDE_BAND = 0.1


@pytest.fixture(scope="session")
def disc():
    """Shipped moving-disc dataset: 256^2 grid, 60 snapshots, lambda = 0.01."""
    return gen_moving_disc()


@pytest.fixture(scope="session")
def disc_paraboloid():
    return gen_moving_disc(phi_kind="paraboloid")


@pytest.fixture(scope="session")
def disc_sdf(disc):
    return sdf_series(disc[0], 0.5)


@pytest.fixture(scope="session")
def disc_model(disc, disc_sdf):
    return ftr_decompose(disc[0], 0.5, band=WIDE_BAND, phi=disc_sdf)


@pytest.fixture(scope="session")
def disc_report(disc, disc_model):
    return error_report(disc[0], disc_model)


@pytest.fixture(scope="session")
def merging():
    return gen_merging_discs(return_phi=True)


@pytest.fixture(scope="session")
def merging_model(merging):
    return ftr_decompose(merging[0], 0.5, band=WIDE_BAND)


@pytest.fixture(scope="session")
def merging_report(merging, merging_model):
    return error_report(merging[0], merging_model)


@pytest.fixture(scope="session")
def paraboloid_model(disc, disc_paraboloid):
    return ftr_decompose(disc[0], 0.5, band=WIDE_BAND, phi=disc_paraboloid[1])


@pytest.fixture(scope="session")
def paraboloid_report(disc, paraboloid_model):
    return error_report(disc[0], paraboloid_model)


@pytest.fixture(scope="session")
def advection():
    return gen_advection_1d()


@pytest.fixture(scope="session")
def advection_model(advection):
    # at t = 0 the 0.5 level sits on the left boundary; 0.6 keeps it inside
    return ftr_decompose(advection[0], 0.6, band=WIDE_BAND)


@pytest.fixture(scope="session")
def advection_report(advection, advection_model):
    return error_report(advection[0], advection_model)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


@pytest.fixture
def record():
    """Log one acceptance line; the assertion stays in the test."""
    def _record(label, ok, detail):
        line = f"{label}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
