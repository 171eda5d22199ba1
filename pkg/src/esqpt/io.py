"""Deterministic CSV/JSON artifact writers with reproducibility manifests.

Every data file is written with a fixed numeric format and '\n' line endings
so that repeated runs with the same configuration and seed are byte-identical;
the accompanying manifest records the exact inputs, seed, package versions,
and wall time needed to re-run the job.
"""

from __future__ import annotations

import json
import platform
import sys
import time

import numpy as np
import scipy


def fmt(value):
    """Canonical text form: ints verbatim, floats at 12 significant digits."""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.12g" % float(value)
    return str(value)


def write_csv(path, header, rows):
    """Single header row, '.'-decimal numbers, '\n' line endings."""
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")


def write_json_records(path, header, rows):
    """The same table as a list of JSON objects (format = json option)."""
    records = []
    for row in rows:
        rec = {}
        for key, value in zip(header, row):
            if isinstance(value, (np.integer,)):
                value = int(value)
            elif isinstance(value, (np.floating,)):
                value = float(value)
            rec[key] = value
        records.append(rec)
    with open(path, "w", newline="") as fh:
        json.dump(records, fh, indent=1)
        fh.write("\n")


def write_table(path, header, rows, fmt_kind="csv"):
    if fmt_kind == "json":
        write_json_records(path, header, rows)
    else:
        write_csv(path, header, rows)


def manifest_path(data_path):
    return str(data_path) + ".manifest.json"


def write_manifest(data_path, command, inputs, seed, wall_time):
    """JSON sidecar sufficient to re-run the job exactly."""
    try:
        version = __import__("esqpt").__version__
    except Exception:
        version = "unknown"
    doc = {
        "command": command,
        "inputs": {k: _jsonable(v) for k, v in sorted(inputs.items())},
        "seed": None if seed is None else int(seed),
        "versions": {
            "esqpt": version,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "python": platform.python_version(),
        },
        "argv": sys.argv[1:],
        "wall_time_s": round(float(wall_time), 3),
        "written_at": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
    }
    with open(manifest_path(data_path), "w", newline="") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def _jsonable(value):
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value]
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value
