"""Helpers shared by the experiment scripts."""

import json
import sys
from pathlib import Path

from casimir_lab import __version__
from casimir_lab.io import render_table, write_atomic

RESULTS = Path(__file__).resolve().parent / "results"


def save(name, columns, rows, meta):
    """Write ``results/<name>.csv`` with a provenance header and echo it."""
    prov = {"tool": f"casimir-lab {__version__}", "script": Path(sys.argv[0]).name, **meta}
    text = render_table(columns, rows, prov)
    write_atomic(RESULTS / f"{name}.csv", text)
    sys.stdout.write(text)
    return RESULTS / f"{name}.csv"


def dump_json(name, payload):
    write_atomic(RESULTS / f"{name}.json", json.dumps(payload, indent=2) + "\n")
