"""CSV formats for coefficients, points, values, and experiment tables.

Every file starts with the schema comment line ``# sglnufft-csv v1`` (plus
optional ``key=value`` annotations) followed by a mandatory header row.
Floats are written with %.17g so values round-trip exactly; identical
inputs therefore produce byte-identical files.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field

import numpy as np

from .indexing import coeff_count, mu_to_nlm_array

SCHEMA = "sglnufft-csv v1"


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return "%.17g" % float(x)


@dataclass
class CsvTable:
    """Rectangular numeric table with a comment header."""

    columns: list[str]
    rows: list[list] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def render(self) -> str:
        buf = io.StringIO()
        tags = "".join(f" {k}={v}" for k, v in self.meta.items())
        buf.write(f"# {SCHEMA}{tags}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError("ragged table")
            w.writerow([_fmt(v) for v in row])
        return buf.getvalue()

    def write(self, path: str) -> None:
        text = self.render()
        tmp = f"{path}.tmp.{os.getpid()}"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)


def _read_rows(path: str) -> tuple[list[str], list[list[str]]]:
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    rows = list(csv.reader(lines))
    if not rows:
        raise ValueError(f"{path}: empty table")
    return rows[0], rows[1:]


def write_coeffs(path: str, coeffs: np.ndarray, B: int) -> None:
    tab = CsvTable(["mu", "n", "l", "m", "re", "im"], meta={"kind": "coeffs", "B": B})
    triples = mu_to_nlm_array(B)
    for mu, c in enumerate(np.asarray(coeffs)):
        n, l, m = triples[mu]
        tab.rows.append([mu, n, l, m, c.real, c.imag])
    tab.write(path)


def read_coeffs(path: str) -> tuple[np.ndarray, int]:
    header, rows = _read_rows(path)
    if header[:6] != ["mu", "n", "l", "m", "re", "im"]:
        raise ValueError(f"{path}: expected coefficient header mu,n,l,m,re,im")
    mus = np.array([int(r[0]) for r in rows])
    if not np.array_equal(np.sort(mus), np.arange(len(rows))):
        raise ValueError(f"{path}: coefficient indices must cover 0..count-1")
    B = 1
    while coeff_count(B) < len(rows):
        B += 1
    if coeff_count(B) != len(rows):
        raise ValueError(f"{path}: row count {len(rows)} is not a valid coefficient count")
    out = np.zeros(len(rows), dtype=complex)
    out[mus] = [float(r[4]) + 1j * float(r[5]) for r in rows]
    return out, B


def write_points(path: str, points: np.ndarray) -> None:
    tab = CsvTable(["r", "theta", "phi"], meta={"kind": "points"})
    for p in np.atleast_2d(points):
        tab.rows.append([p[0], p[1], p[2]])
    tab.write(path)


def read_points(path: str) -> np.ndarray:
    header, rows = _read_rows(path)
    if header[:3] != ["r", "theta", "phi"]:
        raise ValueError(f"{path}: expected point header r,theta,phi")
    return np.array([[float(v) for v in r[:3]] for r in rows])


def write_values(path: str, values: np.ndarray) -> None:
    tab = CsvTable(["i", "re", "im"], meta={"kind": "values"})
    for i, v in enumerate(np.asarray(values)):
        tab.rows.append([i, v.real, v.imag])
    tab.write(path)


def read_values(path: str) -> np.ndarray:
    header, rows = _read_rows(path)
    if header[:3] != ["i", "re", "im"]:
        raise ValueError(f"{path}: expected value header i,re,im")
    out = np.zeros(len(rows), dtype=complex)
    for r in rows:
        out[int(r[0])] = float(r[1]) + 1j * float(r[2])
    return out
