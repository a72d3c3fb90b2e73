import pathlib

import pytest

from leavitt import corpus

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixture_dir():
    return FIXTURES


def fixture_path(name: str) -> str:
    return str(FIXTURES / f"{name}.graph")


@pytest.fixture(scope="session")
def corpus_graphs():
    return {name: build() for name, build in corpus.CORPUS.items()}
