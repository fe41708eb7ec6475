import os
import pathlib

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("SIGMATREE_CLI", str(ROOT / "build" / "sigmatree"))
    if not pathlib.Path(path).exists():
        pytest.skip("sigmatree CLI not built")
    return path


@pytest.fixture(scope="session")
def corpus_dir():
    return ROOT / "corpus"
