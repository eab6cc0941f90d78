"""
Utility functions for the tfa app.

Functions:
    as_signal: Validate a signal on Z_N
    as_kernel: Validate a square kernel matrix
    require_same_modulus: Check that signals and kernels share N
    require_nonzero_window: Reject the zero window
    gaussian_window: Periodized, l2-normalized Gaussian on Z_N
    read_complex_csv / write_complex_csv: 're,im' files, axis 1 fastest
    write_table_csv: Report tables as CSV
    write_json_report: Report record as JSON
    read_json_config: Load a RunConfig JSON file
    jsonable: Convert report values to JSON-safe types ('inf' for infinity)
    format_table: Aligned plain-text table
"""

import csv
import dataclasses
import json
import math
from pathlib import Path

import numpy as np
from django.core.exceptions import ValidationError

from core.conf import get_setting
from core.tensors import AxisPermutation, Exponent, ExponentVector, as_complex_tensor

CSV_HEADER = ["re", "im"]


def as_signal(values, name="signal"):
    """
    Validate a signal on Z_N.

    Args:
        values: Array-like of length N >= 1
        name: Field name used in error messages

    Returns:
        numpy.ndarray: complex128 vector

    Raises:
        ValidationError: If not rank 1 or not finite
    """
    signal = as_complex_tensor(values, name=name)
    if signal.ndim != 1:
        raise ValidationError(f"{name}: a signal must be rank 1, got shape {signal.shape}")
    return signal


def as_kernel(values, name="kernel"):
    """
    Validate a kernel matrix K(x, y) on Z_N x Z_N.

    Raises:
        ValidationError: If not square rank 2
    """
    kernel = as_complex_tensor(values, name=name)
    if kernel.ndim != 2 or kernel.shape[0] != kernel.shape[1]:
        raise ValidationError(f"{name}: a kernel must be square (N, N), got shape {kernel.shape}")
    return kernel


def require_same_modulus(*arrays):
    """
    Check that all arrays live on the same Z_N.

    Args:
        arrays: (name, array) pairs

    Returns:
        int: The common modulus N

    Raises:
        ValidationError: On modulus mismatch
    """
    moduli = {name: array.shape[0] for name, array in arrays}
    if len(set(moduli.values())) > 1:
        described = ", ".join(f"{name}: N={N}" for name, N in moduli.items())
        raise ValidationError(f"Modulus mismatch ({described})")
    return next(iter(moduli.values()))


def require_nonzero_window(window, name="window"):
    """
    Raises:
        ValidationError: If the window is identically zero
    """
    if not np.any(window):
        raise ValidationError(f"{name}: the zero window is not admissible")
    return window


def gaussian_window(N, periods=None):
    """
    Periodized Gaussian g(t) = sum_{|m| <= periods} exp(-pi (t + mN)^2 / N), unit l2 norm.

    Args:
        N: Modulus
        periods: Truncation of the periodization (default MODKERNEL_GAUSSIAN_PERIODS)

    Returns:
        numpy.ndarray: complex128 window of length N
    """
    if int(N) < 1:
        raise ValidationError(f"Modulus N must be >= 1, got {N}")
    if periods is None:
        periods = get_setting("MODKERNEL_GAUSSIAN_PERIODS", 3)
    t = np.arange(N)
    shifts = np.arange(-periods, periods + 1) * N
    values = np.exp(-np.pi * (t[:, None] + shifts[None, :]) ** 2 / N).sum(axis=1)
    return (values / np.linalg.norm(values)).astype(np.complex128)


def read_complex_csv(path):
    """
    Read complex entries from a 're,im' CSV file.

    Args:
        path: File path

    Returns:
        numpy.ndarray: 1-D complex128 array, in file order

    Raises:
        ValidationError: On a missing file, a wrong header or a malformed row
    """
    path = Path(path)
    try:
        with path.open(newline="") as handle:
            rows = list(csv.reader(handle))
    except OSError as e:
        raise ValidationError(f"input: cannot read {path} ({e.strerror})")

    if not rows or [cell.strip() for cell in rows[0]] != CSV_HEADER:
        raise ValidationError(f"input: {path} row 1 must be the header 're,im'")

    values = []
    for row_number, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 2:
            raise ValidationError(
                f"input: {path} row {row_number} has {len(row)} fields, expected 2"
            )
        try:
            real, imag = float(row[0]), float(row[1])
        except ValueError:
            raise ValidationError(f"input: {path} row {row_number} is not numeric: {row!r}")
        if not (math.isfinite(real) and math.isfinite(imag)):
            raise ValidationError(f"input: {path} row {row_number} is not finite")
        values.append(complex(real, imag))

    if not values:
        raise ValidationError(f"input: {path} contains no entries")
    return np.array(values, dtype=np.complex128)


def write_complex_csv(path, values):
    """
    Write a tensor as a 're,im' CSV file, axis 1 fastest.

    Floats are written with repr so reading the file back is bit-exact.
    """
    flat = np.asarray(values, dtype=np.complex128).ravel(order="F")
    path = Path(path)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for value in flat:
            writer.writerow([repr(float(value.real)), repr(float(value.imag))])
    return path


def write_table_csv(path, headers, rows):
    """Write a plain CSV table; floats with repr, infinity as 'inf'."""
    path = Path(path)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(headers)
        for row in rows:
            writer.writerow([_cell(value) for value in row])
    return path


def write_json_report(path, payload):
    path = Path(path)
    path.write_text(json.dumps(jsonable(payload), indent=2) + "\n")
    return path


def read_json_config(path):
    """
    Load a JSON run configuration.

    Raises:
        ValidationError: If the file is unreadable or not a JSON object
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as e:
        raise ValidationError(f"config: cannot read {path} ({e.strerror})")
    except json.JSONDecodeError as e:
        raise ValidationError(f"config: {path} is not valid JSON (line {e.lineno}: {e.msg})")
    if not isinstance(data, dict):
        raise ValidationError(f"config: {path} must contain a JSON object")
    return data


def jsonable(value):
    """Convert report values to JSON-safe types, spelling infinity 'inf'."""
    if isinstance(value, dict):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    if isinstance(value, (Exponent, ExponentVector, AxisPermutation)):
        return str(value)
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        fields = dataclasses.fields(value)
        return {field.name: jsonable(getattr(value, field.name)) for field in fields}
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, (complex, np.complexfloating)):
        return [jsonable(value.real), jsonable(value.imag)]
    if isinstance(value, Path):
        return str(value)
    return value


def format_table(headers, rows):
    """
    Render rows as an aligned plain-text table.

    Args:
        headers: Column titles
        rows: Iterables of cell values (floats printed with repr)

    Returns:
        str: Table text, one line per row
    """
    cells = [[_cell(value) for value in row] for row in rows]
    widths = [len(header) for header in headers]
    for row in cells:
        widths = [max(width, len(cell)) for width, cell in zip(widths, row)]
    lines = ["  ".join(header.ljust(width) for header, width in zip(headers, widths))]
    lines.append("  ".join("-" * width for width in widths))
    for row in cells:
        lines.append("  ".join(cell.rjust(width) for cell, width in zip(row, widths)))
    return "\n".join(lines)


def _cell(value):
    value = jsonable(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)
