import shutil

import pytest
from fastapi.testclient import TestClient

from heats.api import create_app
from heats.catalog import DEVICES_FILE, ingest_catalog
from heats.config import default_data_dir
from heats.heatcalc import load_tables


@pytest.fixture(scope="session")
def data_dir():
    return default_data_dir()


@pytest.fixture(scope="session")
def tables(data_dir):
    return load_tables(data_dir)


@pytest.fixture(scope="session")
def catalog(data_dir):
    return ingest_catalog(data_dir / DEVICES_FILE)


@pytest.fixture(scope="session")
def client(data_dir):
    return TestClient(create_app(data_dir))


@pytest.fixture
def seed_copy(data_dir, tmp_path):
    """A writable copy of the seed data directory, for corruption tests."""
    target = tmp_path / "data"
    shutil.copytree(data_dir, target)
    return target
