"""Shared fixtures: the example programs and their test files."""

import pathlib

import pytest

from aspdebug import load_tests, parse_files

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def bidding_program():
    """Two rules with a deliberately inverted default, then four facts."""
    return parse_files([str(FIXTURES / "bidding.lp")])


@pytest.fixture(scope="session")
def umbrella_program():
    """Weather program whose drying constraint is too strict."""
    return parse_files([str(FIXTURES / "umbrella.lp")])


@pytest.fixture(scope="session")
def dry_umbrella_test():
    return load_tests([str(FIXTURES / "tests" / "dry_umbrella.test")])[0]


@pytest.fixture(scope="session")
def some_model_test():
    return load_tests([str(FIXTURES / "tests" / "some_model.test")])[0]
