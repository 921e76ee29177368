"""Readers and writers for parameter files, binary matrices and label vectors.

Matrices are stored either as CSV (``0,1,1``) or as raw text with one
contiguous ``0``/``1`` string per row (``011``). Both use ``\\n`` line
endings, no header, and any other character is rejected.
"""

import json
from pathlib import Path

import numpy as np

from ._validation import check_binary_matrix
from .model import LBMParameters

_ZERO, _ONE, _COMMA = ord("0"), ord("1"), ord(",")


class MatrixFormatError(ValueError):
    pass


def load_params(path):
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    for key in ("pi", "rho", "alpha"):
        if key not in doc:
            raise ValueError(f"{path}: missing field {key!r}")
    return LBMParameters.from_dict(doc)


def save_params(params, path):
    Path(path).write_text(json.dumps(params.to_dict(), indent=2) + "\n", encoding="utf-8")


def _split_lines(data, path):
    if not data:
        raise MatrixFormatError(f"{path}: empty matrix file")
    if data.endswith(b"\n"):
        data = data[:-1]
    lines = data.split(b"\n")
    width = len(lines[0])
    for i, line in enumerate(lines):
        if len(line) != width:
            raise MatrixFormatError(f"{path}: line {i + 1} has {len(line)} characters, line 1 has {width}")
    if width == 0:
        raise MatrixFormatError(f"{path}: empty line")
    return np.frombuffer(b"".join(lines), dtype=np.uint8).reshape(len(lines), width)


def parse_matrix(data, fmt=None, path="<matrix>"):
    """Parse matrix bytes. ``fmt`` is ``"csv"``, ``"raw"`` or ``None`` to auto-detect.

    Auto-detection treats the input as CSV when its first line holds a comma.
    """
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    if fmt is None:
        fmt = "csv" if b"," in data.split(b"\n", 1)[0] else "raw"
    chars = _split_lines(data, path)
    if fmt == "csv":
        if chars.shape[1] % 2 == 0:
            raise MatrixFormatError(
                f"{path}: CSV rows must alternate digits and commas, got a line of even length {chars.shape[1]}"
            )
        sep = chars[:, 1::2]
        bad = sep != _COMMA
        if bad.any():
            i, j = np.argwhere(bad)[0]
            raise MatrixFormatError(
                f"{path}: invalid character {chr(sep[i, j])!r} at line {i + 1}, column {2 * j + 2}"
            )
        digits = chars[:, 0::2]
    elif fmt == "raw":
        digits = chars
    else:
        raise ValueError(f"unknown matrix format {fmt!r}")
    bad = (digits != _ZERO) & (digits != _ONE)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        col = 2 * j + 1 if fmt == "csv" else j + 1
        raise MatrixFormatError(f"{path}: invalid character {chr(digits[i, j])!r} at line {i + 1}, column {col}")
    return (digits - _ZERO).astype(np.uint8)


def load_matrix(path, fmt=None):
    return parse_matrix(Path(path).read_bytes(), fmt=fmt, path=str(path))


def format_matrix(x, fmt="csv"):
    x = check_binary_matrix(x)
    n, d = x.shape
    if fmt == "csv":
        out = np.full((n, 2 * d), _COMMA, dtype=np.uint8)
        out[:, 0:2 * d:2] = x + _ZERO
    elif fmt == "raw":
        out = np.empty((n, d + 1), dtype=np.uint8)
        out[:, :d] = x + _ZERO
    else:
        raise ValueError(f"unknown matrix format {fmt!r}")
    out[:, -1] = ord("\n")
    return out.tobytes()


def save_matrix(x, path, fmt="csv"):
    Path(path).write_bytes(format_matrix(x, fmt))


def save_labels(labels, path):
    Path(path).write_text("".join(f"{v}\n" for v in labels.labels.tolist()), encoding="utf-8")


def load_label_vector(path):
    """Read a single-column CSV of non-negative class indices."""
    values = []
    for i, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines()):
        if not line.isdigit():
            raise ValueError(f"{path}: line {i + 1} is not a class index: {line!r}")
        values.append(int(line))
    if not values:
        raise ValueError(f"{path}: no labels")
    return np.asarray(values, dtype=np.intp)
