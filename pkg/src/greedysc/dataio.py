"""CSV and JSON file formats used by the command-line tools.

Points: N rows of p comma-separated decimal floats, no header. Labels: one
integer per line. Neighborhoods: one "i,j" edge per line, 0-based. Bases: a
JSON document with the stacked basis columns. Floats are written with 17
significant digits, which round-trips IEEE doubles exactly.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import ParseError

_FLOAT_FMT = "%.17g"


def write_points_csv(path, points) -> None:
    pts = np.asarray(points, dtype=float)
    with open(path, "w", encoding="ascii") as fh:
        for row in pts:
            fh.write(",".join(_FLOAT_FMT % v for v in row))
            fh.write("\n")


def read_points_csv(path) -> np.ndarray:
    rows = []
    width = None
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            fields = line.split(",")
            if width is None:
                width = len(fields)
            elif len(fields) != width:
                raise ParseError(path, lineno,
                                 f"expected {width} columns, got {len(fields)}")
            try:
                rows.append([float(f) for f in fields])
            except ValueError as exc:
                raise ParseError(path, lineno, f"not a number: {exc}") from exc
    if not rows:
        raise ParseError(path, 1, "file contains no data rows")
    return np.array(rows, dtype=float)


def write_labels_csv(path, labels) -> None:
    lab = np.asarray(labels)
    with open(path, "w", encoding="ascii") as fh:
        for v in lab:
            fh.write(f"{int(v)}\n")


def read_labels_csv(path) -> np.ndarray:
    out = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                out.append(int(line))
            except ValueError as exc:
                raise ParseError(path, lineno, f"not an integer label: {line!r}") from exc
    if not out:
        raise ParseError(path, 1, "file contains no labels")
    return np.array(out, dtype=np.int64)


def write_edges_csv(path, W) -> None:
    """Write the support of a binary neighborhood matrix as 0-based i,j pairs."""
    Wb = np.asarray(W, dtype=bool)
    with open(path, "w", encoding="ascii") as fh:
        for i, j in np.argwhere(Wb):
            fh.write(f"{i},{j}\n")


def read_edges_csv(path, n: int | None = None) -> np.ndarray:
    """Rebuild a boolean neighborhood matrix from an edge list.

    The matrix size defaults to one more than the largest index seen (every
    row is self-connected, so the last point always appears).
    """
    edges = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise ParseError(path, lineno, f"expected 'i,j', got {line!r}")
            try:
                i, j = int(parts[0]), int(parts[1])
            except ValueError as exc:
                raise ParseError(path, lineno, f"not an integer pair: {line!r}") from exc
            if i < 0 or j < 0:
                raise ParseError(path, lineno, "indices must be nonnegative")
            edges.append((i, j))
    if not edges:
        raise ParseError(path, 1, "file contains no edges")
    size = n if n is not None else max(max(i, j) for i, j in edges) + 1
    W = np.zeros((size, size), dtype=bool)
    for i, j in edges:
        W[i, j] = True
    return W


def write_bases_json(path, bases, **meta) -> None:
    arrs = [np.asarray(b, dtype=float) for b in bases]
    doc = dict(meta)
    doc.update({
        "p": int(arrs[0].shape[0]),
        "d": int(arrs[0].shape[1]),
        "L": len(arrs),
        "bases": [b.tolist() for b in arrs],
    })
    with open(path, "w", encoding="ascii") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def read_bases_json(path) -> list[np.ndarray]:
    with open(path, "r", encoding="ascii") as fh:
        doc = json.load(fh)
    bases = [np.asarray(b, dtype=float) for b in doc["bases"]]
    p, d = int(doc["p"]), int(doc["d"])
    for b in bases:
        if b.shape != (p, d):
            raise ParseError(path, 1, f"basis of shape {b.shape} does not match ({p}, {d})")
    return bases
