"""Deterministic CSV and JSON emission."""

import csv
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO

from ..core.types import OutputFormat
from ..spectral.finite import FiniteSpectrum

EIGENVALUE_HEADER = ("p", "index", "eigenvalue")


def format_value(value: Any) -> str:
    """Text form of a table cell; floats keep all 17 significant digits."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_csv(header: Sequence[str], rows: List[Sequence[Any]], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(v) for v in row])


def write_json(payload: Any, stream: TextIO) -> None:
    stream.write(json.dumps(payload, sort_keys=True, indent=2))
    stream.write("\n")


def emit_table(
    header: Sequence[str],
    rows: List[Sequence[Any]],
    fmt: OutputFormat,
    stream: TextIO,
    extra: Optional[Dict[str, Any]] = None,
) -> None:
    """
    Write rows as CSV, or as a JSON object whose ``rows`` mirror the CSV records.

    Args:
        header: Column names
        rows: Records in column order
        fmt: Output format
        stream: Destination
        extra: Additional top-level JSON members (ignored for CSV)
    """
    if fmt is OutputFormat.CSV:
        write_csv(header, rows, stream)
        return
    payload: Dict[str, Any] = dict(extra or {})
    payload["rows"] = [dict(zip(header, row)) for row in rows]
    write_json(payload, stream)


def write_eigenvalue_csv(spectrum: FiniteSpectrum, directory: str) -> Path:
    """Write ``spectrum_p{p}.csv`` with one ascending eigenvalue per row."""
    out_dir = Path(directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"spectrum_p{spectrum.p}.csv"
    rows = [(spectrum.p, i, value) for i, value in enumerate(spectrum.eigenvalues)]
    with open(path, "w", newline="") as f:
        write_csv(EIGENVALUE_HEADER, rows, f)
    return path
