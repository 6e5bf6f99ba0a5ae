"""
Unified report format utilities

Every sub-command ends in one of these writers. CSV and JSON renderings are
deterministic: fixed column order, sorted keys, and repr-exact floats.
"""
import csv
import io
import json
import logging
import sys
from typing import Any, Dict, Iterable, List, Optional, Sequence

from .errors import LabError, UsageError
from .path_utils import resolve_output_path

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED_CHECKS = 1
EXIT_USAGE = 2


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Render rows as CSV with a header line"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buffer.getvalue()


def _cell(value: Any) -> Any:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, complex):
        return f"{value.real!r}{value.imag:+.17g}j"
    return value


def json_text(payload: Any) -> str:
    """Render a payload as indented JSON with sorted keys"""
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=True) + '\n'


def success_response(data: Any, command: str, fmt: str = 'json', out: Optional[str] = None,
                     header: Sequence[str] = None, rows: List[Sequence[Any]] = None) -> int:
    """
    Write a report and return the success exit code

    Args:
        data: JSON payload
        command: Sub-command name, used for the default file name
        fmt: csv or json
        out: Output path; '-' for stdout, None for the configured output directory
        header: CSV header (required for csv)
        rows: CSV rows (required for csv)

    Returns:
        EXIT_OK
    """
    if fmt == 'csv':
        if header is None or rows is None:
            raise UsageError(f"{command} has no CSV rendering")
        text = csv_text(header, rows)
    else:
        text = json_text(data)
    write_text(text, command, fmt, out)
    return EXIT_OK


def write_text(text: str, command: str, fmt: str, out: Optional[str]) -> None:
    """Write rendered text to stdout or a file"""
    path = resolve_output_path(out, command, fmt)
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, 'w', encoding='utf-8', newline='') as f:
        f.write(text)
    logger.info(f"Report written to {path}")


def error_payload(error: Exception) -> Dict[str, Any]:
    """{"success": false, "error": {"code", "message"}}"""
    code = error.code if isinstance(error, LabError) else 'LAB_ERROR'
    return {
        "success": False,
        "error": {
            "code": code,
            "message": str(error)
        }
    }


def error_response(error: Exception) -> int:
    """Print the error payload on stderr and return the matching exit code"""
    sys.stderr.write(json.dumps(error_payload(error), sort_keys=True) + '\n')
    if isinstance(error, UsageError):
        return EXIT_USAGE
    return EXIT_FAILED_CHECKS


def exit_code_for(results: Iterable) -> int:
    """EXIT_OK when no result carries a failed check"""
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAILED_CHECKS
