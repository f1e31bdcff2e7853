"""Deterministic CSV / JSON / key-value writers."""

from __future__ import annotations

import csv
import json
import os
from numbers import Integral, Real

import numpy as np


def fmt(value) -> str:
    """17 significant digits for floats, plain text otherwise."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (Integral, np.integer)):
        return str(int(value))
    if isinstance(value, (Real, np.floating)):
        v = float(value)
        return f"{v:.17g}" if v != 0 else "0"
    if isinstance(value, (complex, np.complexfloating)):
        return f"{fmt(value.real)}{'+' if value.imag >= 0 else '-'}{fmt(abs(value.imag))}j"
    return str(value)


def _plain(value):
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    return value


def write_csv(path, header, rows) -> str:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])
    return str(path)


def write_json(path, header, rows) -> str:
    doc = {"columns": list(header), "rows": [[_plain(v) for v in row] for row in rows]}
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")
    return str(path)


def write_table(path, header, rows, json_mirror: bool = False) -> list:
    rows = list(rows)
    out = [write_csv(path, header, rows)]
    if json_mirror:
        out.append(write_json(os.path.splitext(path)[0] + ".json", header, rows))
    return out


def write_keyvalue(path, items) -> str:
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        for k, v in items:
            fh.write(f"{k}={fmt(v)}\n")
    return str(path)


def read_csv(path) -> tuple:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]
