import pytest

from CyclicHWP.functions.completion import assemble
from CyclicHWP.functions.core import make_params
from CyclicHWP.functions.short_cycles import build_base_gons, build_D
from CyclicHWP.verifier import check_base


@pytest.fixture(autouse=True)
def no_progress(monkeypatch):
    monkeypatch.setenv("CYCLICHWP_NO_PROGRESS", "1")


@pytest.fixture(scope="session")
def params95():
    return make_params(9, 5)


@pytest.fixture(scope="session")
def dset95(params95):
    return build_D(params95)


@pytest.fixture(scope="session")
def gons95(params95, dset95):
    """(A, B, gons) of the ell=9, n=5 instance"""
    return build_base_gons(params95, dset=dset95)


@pytest.fixture(scope="session")
def base95(params95):
    base = assemble(params95)
    check_base(base)
    return base
