"""
File: io.py

Description: Read and write tactical configurations in the plain text format:
line 1 is "N M n c", then one line per sample of n sorted, space separated, 1-based unit indices

@author Derek Garcia
"""

import hashlib
from os.path import exists

from tactical.config import CONFIGURATION_ENCODING, CONFIGURATION_EXTENSION
from tactical.configuration import TacticalConfiguration, validate
from tactical.exception import MalformedConfigurationError


def format_configuration(D: TacticalConfiguration) -> str:
    """
    Render a configuration in canonical text form

    :param D: Configuration
    :return: Text with a trailing newline
    """
    lines = [f"{D.N} {D.M} {D.n} {D.c}"]
    lines.extend(" ".join(str(i + 1) for i in col) for col in D.columns)
    return "\n".join(lines) + "\n"


def digest(D: TacticalConfiguration) -> str:
    """
    :param D: Configuration
    :return: SHA-256 hex digest of the canonical text
    """
    return hashlib.sha256(format_configuration(D).encode(CONFIGURATION_ENCODING)).hexdigest()


def write_configuration(D: TacticalConfiguration, path: str) -> str:
    """
    Save a configuration to file

    :param D: Configuration to save
    :param path: Output path, extension added if missing
    :return: Path written to
    """
    path = path if path.endswith(CONFIGURATION_EXTENSION) else f"{path}{CONFIGURATION_EXTENSION}"
    with open(path, 'w', encoding=CONFIGURATION_ENCODING, newline='\n') as f:
        f.write(format_configuration(D))
    return path


def _parse_ints(path: str, line_no: int, line: str, count: int, what: str) -> list[int]:
    """
    Parse a line of exactly count integers

    :raises MalformedConfigurationError: If the line does not hold count integers
    """
    tokens = line.split()
    if len(tokens) != count:
        raise MalformedConfigurationError(path, line_no, f"expected {count} {what}, found {len(tokens)}")
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise MalformedConfigurationError(path, line_no, f"non-integer {what} in '{line.strip()}'")


def read_configuration(path: str) -> TacticalConfiguration:
    """
    Load a configuration from file and check it

    :param path: Path to the configuration file
    :raises FileNotFoundError: If the file does not exist
    :raises MalformedConfigurationError: If the file cannot be parsed or the configuration is invalid
    :return: Configuration
    """
    if not exists(path):
        raise FileNotFoundError(f"Configuration file '{path}' does not exist")
    with open(path, 'r', encoding=CONFIGURATION_ENCODING) as f:
        lines = f.read().splitlines()
    # ignore trailing blank lines only
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise MalformedConfigurationError(path, 1, "file is empty")

    N, M, n, c = _parse_ints(path, 1, lines[0], 4, "header fields")
    if N < 1 or M < 1 or not 1 <= n <= N or c < 1:
        raise MalformedConfigurationError(path, 1, f"invalid header 'N={N} M={M} n={n} c={c}'")
    if len(lines) - 1 != M:
        raise MalformedConfigurationError(path, len(lines), f"expected {M} sample lines, found {len(lines) - 1}")

    columns = []
    for k, line in enumerate(lines[1:]):
        ids = _parse_ints(path, k + 2, line, n, "unit indices")
        if ids != sorted(ids):
            raise MalformedConfigurationError(path, k + 2, "unit indices are not sorted")
        columns.append([i - 1 for i in ids])

    D = TacticalConfiguration(N, n, columns)
    if D.c != c:
        raise MalformedConfigurationError(path, 1, f"header c={c} does not match n * M / N = {D.c}")
    report = validate(D)
    if not report:
        # row sum problems have no single line
        line = report.column + 2 if report.column is not None else 1
        raise MalformedConfigurationError(path, line, report.message)
    return D
