"""Delimited and JSON output with shortest round-trip float formatting."""

import csv
import json
import math

import numpy as np

NA = "NA"


def fmt(value):
    """Render one CSV cell; floats use Python's shortest round-trip repr."""
    if value is None:
        return NA
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(value)
    if isinstance(value, float) or hasattr(value, "__float__"):
        x = float(value)
        return NA if math.isnan(x) else repr(x)
    return str(value)


def write_csv(fh, columns, rows):
    """Write dict rows under a fixed header; missing keys become NA."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt(row.get(c)) for c in columns])


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if value is None or isinstance(value, str):
        return value
    x = float(value)
    return None if math.isnan(x) else x


def dumps(obj):
    # json emits repr(float), which is the shortest round-trip form.
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"
