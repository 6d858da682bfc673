"""Matrix file formats.

JSON is the canonical format::

    {"semiring": "min", "rows": 3, "cols": 3, "data": [[0, 1, "5/4"], ...]}

CSV holds one matrix row per line with comma-separated tokens.  In both
formats rationals are written ``p/q`` or as decimal strings (parsed with
exact decimal semantics) and Bottom is ``inf`` (min-plus) or ``-inf``
(max-plus).  Parsing round-trips values bit-exactly.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .core import Entry, Semiring, TropMatrix, as_rational
from .errors import FormatError


def format_scalar(entry: Entry, semiring: Semiring) -> str:
    """Render an entry as a file token (exact; integers stay bare)."""
    if entry is None:
        return semiring.bottom_token
    if entry.denominator == 1:
        return str(entry.numerator)
    return f"{entry.numerator}/{entry.denominator}"


def parse_scalar(token: str, semiring: Semiring) -> Entry:
    """Inverse of :func:`format_scalar`; accepts p/q, decimals, and inf tokens."""
    token = token.strip()
    if token in ("inf", "+inf", "-inf"):
        if token.lstrip("+") == semiring.bottom_token:
            return None
        raise FormatError(
            f"token {token!r} is not an element of the {semiring.value}-plus semiring"
        )
    return as_rational(token)


def _json_scalar(entry: Entry, semiring: Semiring):
    if entry is None or entry.denominator != 1:
        return format_scalar(entry, semiring)
    return entry.numerator


def matrix_to_json_obj(A: TropMatrix) -> dict:
    return {
        "semiring": A.semiring.value,
        "rows": A.rows,
        "cols": A.cols,
        "data": [[_json_scalar(cell, A.semiring) for cell in row] for row in A.entries],
    }


def matrix_from_json_obj(obj) -> TropMatrix:
    if not isinstance(obj, dict):
        raise FormatError("matrix JSON must be an object with a 'data' field")
    try:
        mode = obj["semiring"]
        data = obj["data"]
    except KeyError as exc:
        raise FormatError(f"matrix JSON is missing field {exc}") from exc
    try:
        sr = Semiring(mode)
    except ValueError as exc:
        raise FormatError(f"unknown semiring {mode!r}") from exc
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise FormatError("'data' must be a list of rows")
    A = TropMatrix.from_rows(data, sr)
    if "rows" in obj and obj["rows"] != A.rows:
        raise FormatError(f"declared rows={obj['rows']} but data has {A.rows}")
    if "cols" in obj and obj["cols"] != A.cols:
        raise FormatError(f"declared cols={obj['cols']} but data has {A.cols}")
    return A


def dumps_matrix_json(A: TropMatrix) -> str:
    return json.dumps(matrix_to_json_obj(A), sort_keys=True)


def loads_matrix_json(text: str) -> TropMatrix:
    try:
        # parse_float sees the literal token, so decimals stay exact
        obj = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return matrix_from_json_obj(obj)


def matrix_to_csv(A: TropMatrix) -> str:
    return "\n".join(
        ",".join(format_scalar(cell, A.semiring) for cell in row)
        for row in A.entries
    ) + "\n"


def matrix_from_csv(text: str, semiring: Semiring) -> TropMatrix:
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        rows.append([parse_scalar(tok, semiring) for tok in line.split(",")])
    if not rows:
        raise FormatError("empty CSV matrix")
    return TropMatrix(semiring, tuple(tuple(r) for r in rows))


def load_matrix(path, semiring: Semiring | None = None) -> TropMatrix:
    """Load a matrix file; format chosen by extension (.json / .csv).

    For JSON the embedded semiring wins and a conflicting ``semiring``
    argument is an error; CSV carries no metadata and requires one.
    """
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {p}: {exc}") from exc
    if p.suffix.lower() == ".csv":
        if semiring is None:
            raise FormatError("CSV matrices need an explicit semiring (--semiring)")
        return matrix_from_csv(text, semiring)
    A = loads_matrix_json(text)
    if semiring is not None and A.semiring is not semiring:
        raise FormatError(
            f"file declares semiring {A.semiring.value!r}, got {semiring.value!r}"
        )
    return A


def save_matrix(path, A: TropMatrix, fmt: str = "json") -> None:
    text = matrix_to_csv(A) if fmt == "csv" else dumps_matrix_json(A) + "\n"
    Path(path).write_text(text)


def load_plain_matrix(path) -> list[list[Fraction]]:
    """Load an ordinary (non-tropical) rational matrix.

    Accepts a bare JSON array of rows, a matrix JSON object (semiring
    ignored, Bottom forbidden), or CSV without infinity tokens.
    """
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {p}: {exc}") from exc
    if p.suffix.lower() == ".csv":
        rows = [
            [as_rational(tok) for tok in line.strip().split(",")]
            for line in text.splitlines()
            if line.strip()
        ]
    else:
        try:
            obj = json.loads(text, parse_float=Fraction)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc}") from exc
        if isinstance(obj, dict):
            obj = obj.get("data")
        if not isinstance(obj, list):
            raise FormatError("expected a JSON array of rows or a 'data' field")
        rows = [[as_rational(cell) for cell in row] for row in obj]
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise FormatError("ordinary matrix must be a nonempty rectangular grid")
    return rows
