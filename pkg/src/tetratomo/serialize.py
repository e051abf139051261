"""JSON / CSV encodings shared by the command-line tools.

JSON documents have the layout ``{meta, inputs, results}``; matrices are
row-major lists of rows and complex entries are ``[re, im]`` pairs.  CSV
files start with ``# key=value`` metadata lines and hold 4x4 tables in
``k,l,value`` rows.  Floats are written with 17 significant digits in CSV and
as the shortest round-trip repr in JSON, so both decode to identical values.
"""
import csv
import io
import json

import numpy as np


def to_jsonable(x):
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        if np.iscomplexobj(x):
            return [[[float(z.real), float(z.imag)] for z in row] for row in x]
        return to_jsonable(x.tolist())
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, (np.floating, float)):
        return float(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    return x


def dumps(doc: dict) -> str:
    return json.dumps(to_jsonable(doc), indent=1, sort_keys=True) + "\n"


def complex_matrix_from_json(rows) -> np.ndarray:
    a = np.asarray(rows, dtype=float)
    if a.ndim == 3:
        return a[..., 0] + 1j * a[..., 1]
    return a.astype(complex)


def fmt(x) -> str:
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return format(float(x), ".17g")


def _meta_lines(meta: dict) -> list:
    return [f"# {k}={json.dumps(to_jsonable(v), sort_keys=True)}" for k, v in sorted(meta.items())]


def table_csv(table, meta: dict) -> str:
    buf = io.StringIO()
    buf.write("\n".join(_meta_lines(meta)) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "l", "value"])
    table = np.asarray(table)
    for k in range(table.shape[0]):
        for l in range(table.shape[1]):
            w.writerow([k, l, fmt(table[k, l])])
    return buf.getvalue()


def rows_csv(header, rows, meta: dict) -> str:
    buf = io.StringIO()
    buf.write("\n".join(_meta_lines(meta)) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) if isinstance(v, (float, np.floating, np.integer)) else v for v in r])
    return buf.getvalue()


def read_csv(text: str):
    """Return ``(meta, header, rows)`` from a CSV written by this module."""
    meta = {}
    body = []
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition("=")
            meta[key] = json.loads(value)
        else:
            body.append(line)
    rows = list(csv.reader(body))
    return meta, rows[0], rows[1:]
