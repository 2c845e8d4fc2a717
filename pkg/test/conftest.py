import pytest

from powexp.ode import default_grid
from powexp.series import TruncationPolicy


@pytest.fixture
def policy():
    return TruncationPolicy()


# Runs every series to the cap
@pytest.fixture
def capped_policy_factory():
    def _make(max_terms):
        return TruncationPolicy(max_terms=max_terms, rel_tol=1e-300, abs_tol=1e-300)

    return _make


@pytest.fixture
def forty_terms():
    return TruncationPolicy(max_terms=40, rel_tol=1e-15, abs_tol=1e-18)


@pytest.fixture
def ode_grid():
    return default_grid(0.1, 1.2, 40)


@pytest.fixture
def data_file(tmp_path):
    def _write(text):
        path = tmp_path / "samples.txt"
        path.write_text(text)
        return path

    return _write
