"""
Path utilities for report output
"""
import logging
import os
from pathlib import Path
from typing import Optional

logger = logging.getLogger(__name__)

STDOUT_TOKEN = '-'


def default_output_dir() -> Path:
    """OUTPUT_DIR from configuration, read at call time so `.env` overrides apply"""
    from config import get_config
    return Path(get_config().OUTPUT_DIR)


def resolve_output_path(out: Optional[str], command: str, fmt: str) -> Optional[Path]:
    """
    Resolve where a report goes

    Args:
        out: '-' for stdout, an explicit path, or None for <OUTPUT_DIR>/<command>.<fmt>
        command: Sub-command name
        fmt: csv or json

    Returns:
        The file path (parent directories created), or None for stdout
    """
    if out == STDOUT_TOKEN:
        return None
    if out is None:
        path = default_output_dir() / f"{command}.{fmt}"
    else:
        path = Path(out).expanduser()
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        logger.warning(f"Failed to create output directory {path.parent}: {str(e)}")
        raise
    return path


def find_input_file(path: str) -> Path:
    """Resolve an input sample file relative to the working directory"""
    candidate = Path(path).expanduser()
    if not candidate.is_absolute():
        candidate = Path(os.getcwd()) / candidate
    return candidate
