# encoding: utf-8

import os
import shutil
from pathlib import Path

import pytest

from pibase import settings
from pibase.finite_space import FiniteSpace, discrete_space, sierpinski_space


@pytest.fixture(scope="module")
def temporary_data_dir(request) -> Path:
    """
    Create a temporary directory for space documents and delete it after test end.

    The temporary directory is created in the working directory and it is
    named "temp_test_data_folder". A finalizer deletes it, with every document
    saved inside, when the tests of the module are over.

    Returns
    -------
    Path
        Path where the temporary space documents are saved.
    """
    temp_data_dir = Path(os.getcwd()) / "temp_test_data_folder"
    try:
        os.mkdir(temp_data_dir)
    except FileExistsError:
        pass

    def remove_temp_dir_created():
        shutil.rmtree(temp_data_dir)

    request.addfinalizer(remove_temp_dir_created)
    return temp_data_dir


@pytest.fixture(autouse=True)
def default_max_level(monkeypatch):
    """Run every test with the default maxLevel, whatever the environment says."""
    monkeypatch.delenv(settings.MAX_LEVEL_ENV_VAR, raising=False)


@pytest.fixture
def sierpinski() -> FiniteSpace:
    return sierpinski_space()


@pytest.fixture
def discrete3() -> FiniteSpace:
    return discrete_space(3)


@pytest.fixture
def two_blocks() -> FiniteSpace:
    """{a, b, c} with open sets {}, {a,b}, {c}, X: regular, not T0."""
    return FiniteSpace(("a", "b", "c"), frozenset({0b000, 0b011, 0b100, 0b111}))


@pytest.fixture
def chain3() -> FiniteSpace:
    """{a, b, c} with open sets {}, {a}, {a,b}, X: the order topology of a chain."""
    return FiniteSpace(("a", "b", "c"), frozenset({0b000, 0b001, 0b011, 0b111}))
