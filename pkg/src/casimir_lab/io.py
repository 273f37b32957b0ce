"""CSV/JSON ingestion and emission.

Input formats (``#`` comment lines allowed everywhere):

* optical table: ``omega_ev,im_eps``
* force dataset: ``d_um,f_pn,sigma_pn``
* imperfections: ``r1_cm,d_offset_um``
* oscillators (JSON): ``[{"g_ev2": .., "omega_ev": .., "gamma_ev": ..}, ...]``

Output tables start with a ``# key: value`` provenance block (CSV) or carry
a ``provenance`` object (JSON). Files are written atomically.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .constants import CM, EV, UM
from .errors import DataError
from .fitstats import ForceDataset, dataset_from_arrays
from .permittivity import OpticalDataTable, Oscillator
from .pfa import Imperfection


def _read_rows(path, columns: tuple[str, ...]) -> np.ndarray:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise DataError(f"{path}: no header row")
    reader = csv.reader(lines)
    header = [h.strip() for h in next(reader)]
    if tuple(header) != columns:
        raise DataError(f"{path}: expected header {','.join(columns)}, got {','.join(header)}")
    rows = []
    for lineno, row in enumerate(reader, start=2):
        if len(row) != len(columns):
            raise DataError(f"{path}: row {lineno} has {len(row)} fields, expected {len(columns)}")
        try:
            rows.append([float(v) for v in row])
        except ValueError as exc:
            raise DataError(f"{path}: row {lineno}: {exc}") from exc
    if not rows:
        raise DataError(f"{path}: no data rows")
    return np.array(rows)


def read_optical_table(path) -> OpticalDataTable:
    rows = _read_rows(path, ("omega_ev", "im_eps"))
    try:
        return OpticalDataTable(rows[:, 0] * EV, rows[:, 1])
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from exc


def read_dataset(path, attractive_magnitudes: bool = False, label: str | None = None) -> ForceDataset:
    rows = _read_rows(path, ("d_um", "f_pn", "sigma_pn"))
    return dataset_from_arrays(rows[:, 0], rows[:, 1], rows[:, 2],
                               label=label or Path(path).name,
                               attractive_magnitudes=attractive_magnitudes)


def read_imperfections(path) -> list[Imperfection]:
    rows = _read_rows(path, ("r1_cm", "d_offset_um"))
    try:
        return [Imperfection(r * CM, D * UM) for r, D in rows]
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from exc


def oscillators_from_config(entries) -> tuple[Oscillator, ...]:
    """Oscillators from a list of ``{"g_ev2", "omega_ev", "gamma_ev"}`` dicts."""
    out = []
    for e in entries:
        try:
            out.append(Oscillator(g=float(e["g_ev2"]) * EV**2, omega=float(e["omega_ev"]) * EV,
                                  gamma=float(e.get("gamma_ev", 0.0)) * EV))
        except (KeyError, TypeError, ValueError) as exc:
            raise DataError(f"bad oscillator entry {e!r}: {exc}") from exc
    return tuple(out)


def read_oscillators(path) -> tuple[Oscillator, ...]:
    try:
        entries = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DataError(f"cannot read oscillators from {path}: {exc}") from exc
    if isinstance(entries, dict):
        entries = entries.get("oscillators", [])
    return oscillators_from_config(entries)


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def render_table(columns, rows, provenance: dict, fmt: str = "csv", extra: dict | None = None) -> str:
    if fmt == "json":
        payload = {"provenance": provenance, "columns": list(columns),
                   "rows": [[_jsonable(v) for v in row] for row in rows]}
        if extra:
            payload.update(extra)
        return json.dumps(payload, indent=2, sort_keys=False) + "\n"
    buf = io.StringIO()
    for key, value in provenance.items():
        buf.write(f"# {key}: {json.dumps(value, sort_keys=True) if isinstance(value, (dict, list)) else value}\n")
    for key, value in (extra or {}).items():
        buf.write(f"# {key}: {json.dumps(value, sort_keys=True)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _jsonable(v):
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, float) and not np.isfinite(v):
        return None
    return v


def write_atomic(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_table(path) -> tuple[list[str], list[list], dict]:
    """Read back a table written by the CLI; returns ``(columns, rows, provenance)``."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        payload = json.loads(text)
        rows = [[float("nan") if v is None else v for v in row] for row in payload["rows"]]
        return payload["columns"], rows, payload["provenance"]
    prov = {}
    body = []
    for ln in text.splitlines():
        if ln.startswith("# "):
            key, _, value = ln[2:].partition(": ")
            prov[key] = value
        elif ln.strip():
            body.append(ln)
    reader = csv.reader(body)
    columns = next(reader)
    rows = [[_parse_cell(v) for v in row] for row in reader]
    return columns, rows, prov


def _parse_cell(v: str):
    if v in ("true", "false"):
        return v == "true"
    try:
        return float(v)
    except ValueError:
        return v
