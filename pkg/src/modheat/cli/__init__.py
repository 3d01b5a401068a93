"""Command-line surface: configuration loading, commands and output."""

from .config import load_config, read_config_file, read_environment
from .output import emit_table, format_value, write_csv, write_eigenvalue_csv, write_json
from .commands import (
    CheckResult,
    VerificationReport,
    build_parser,
    cmd_finite,
    cmd_heat,
    cmd_spectrum,
    cmd_verify,
    main,
    parse_range,
    run_verification,
)

__all__ = [
    "load_config",
    "read_config_file",
    "read_environment",
    "emit_table",
    "format_value",
    "write_csv",
    "write_eigenvalue_csv",
    "write_json",
    "CheckResult",
    "VerificationReport",
    "build_parser",
    "cmd_finite",
    "cmd_heat",
    "cmd_spectrum",
    "cmd_verify",
    "main",
    "parse_range",
    "run_verification",
]
