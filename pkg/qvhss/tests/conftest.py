"""Fixtures for the qvhss test suite."""

import os

import numpy as np
import pytest

from qvhss.codes.classical import hamming_7_4
from qvhss.codes.css import steane_code


def pytest_addoption(parser):
    """Collect pytest parameters for running tests."""
    parser.addoption("--working_dir", action="store", default="/tmp")


@pytest.fixture(scope="session")
def working_dir(request):
    """Grab working directory."""
    workdir = request.config.getoption("--working_dir")
    os.makedirs(workdir, exist_ok=True)
    return workdir


@pytest.fixture(scope="session")
def steane():
    """Steane's [[7,1,3]] code."""
    return steane_code()


@pytest.fixture(scope="session")
def hamming():
    """The [7,4,3] Hamming code."""
    return hamming_7_4()


@pytest.fixture
def rng():
    """A fresh, fixed-seed generator per test."""
    return np.random.default_rng(20240611)


@pytest.fixture
def pristine_config():
    """Restore the settings singleton after a test that loads settings."""
    from qvhss import config

    sections = [config.execution, config.protocol, config.seeds]
    saved = [
        {k: v for k, v in vars(s).items() if not (k.startswith("_") or hasattr(v, "__func__"))}
        for s in sections
    ]
    yield config
    for section, attrs in zip(sections, saved):
        for k, v in attrs.items():
            setattr(section, k, v)
