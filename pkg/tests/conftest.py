"""
Shared fixtures for the adhesive-egg test suite.
"""

import pytest

from src.core.termgraph import example_signature
from src.utils.config import set_config

ENV_OVERRIDES = {
    'ADHESIVE_EGG_SEED': '42',
    'ADHESIVE_EGG_MAX_ITERS': '7',
    'ADHESIVE_EGG_MATCH_CLASS': 'mono',
    'ADHESIVE_EGG_DEBUG': 'true',
}


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch):
    """Start every test from defaults, whatever the developer's shell exports."""
    for key in list(ENV_OVERRIDES) + ['ADHESIVE_EGG_WORKERS']:
        monkeypatch.delenv(key, raising=False)
    set_config(None)
    yield
    set_config(None)


@pytest.fixture
def temp_dir(tmp_path):
    return tmp_path


@pytest.fixture
def mock_env(monkeypatch):
    """Export a fixed set of ADHESIVE_EGG_* overrides for one test."""
    for key, value in ENV_OVERRIDES.items():
        monkeypatch.setenv(key, value)
    set_config(None)
    return dict(ENV_OVERRIDES)


@pytest.fixture
def sig():
    """Constants a, b, 0, 1, 2 with binary * and /."""
    return example_signature()
