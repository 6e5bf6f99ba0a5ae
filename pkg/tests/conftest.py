"""Shared pytest setup: backend/ on sys.path, .env loaded before config is imported"""
import sys
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

sys.path.insert(0, str(Path(__file__).parent.parent / 'backend'))

import pytest  # noqa: E402


@pytest.fixture
def output_dir(tmp_path, monkeypatch):
    """Report directory isolated per test"""
    import config
    monkeypatch.setattr(config.Config, 'OUTPUT_DIR', str(tmp_path))
    return tmp_path
