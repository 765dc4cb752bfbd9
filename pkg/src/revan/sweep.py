"""Sweep rows: one ensemble point of a parameter sweep, serialised as CSV.

Column order is fixed::

    model, n, param, realizations, mean_edges, mean_d, sem_d,
    mean_Delta, mean_delta, mean_r,
    mean_<X>, sem_<X>[, degenerate_<X>]   for X in INDEX_NAMES

``degenerate_<X>`` exists for product indices only. Floats are written with
17 significant digits, which round-trips IEEE doubles exactly.
"""

from __future__ import annotations

import csv
import io
import os
import tempfile
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .dense_limit import ScalingCurve
from .ensemble import EnsembleStats
from .errors import FormatError
from .indices import INDEX_NAMES, PRODUCT_NAMES, IndexKind, Variant

__all__ = [
    "SweepRow",
    "COLUMNS",
    "format_float",
    "write_rows",
    "read_rows",
    "format_rows",
    "parse_rows",
    "atomic_write_text",
    "curves_by_n",
]

_HEAD = (
    "model", "n", "param", "realizations", "mean_edges", "mean_d", "sem_d",
    "mean_Delta", "mean_delta", "mean_r",
)


def _index_columns():
    cols = []
    for name in INDEX_NAMES:
        cols += [f"mean_{name}", f"sem_{name}"]
        if name in PRODUCT_NAMES:
            cols.append(f"degenerate_{name}")
    return tuple(cols)


COLUMNS = _HEAD + _index_columns()
_INT_COLUMNS = {"n", "realizations"} | {c for c in COLUMNS if c.startswith("degenerate_")}


def format_float(x: float) -> str:
    return format(float(x), ".17g")


@dataclass
class SweepRow:
    model: str
    n: int
    param: float
    realizations: int
    mean_edges: float
    mean_d: float
    sem_d: float
    mean_Delta: float
    mean_delta: float
    mean_r: float
    index_mean: dict = field(default_factory=dict)
    index_sem: dict = field(default_factory=dict)
    degenerate: dict = field(default_factory=dict)

    @classmethod
    def from_stats(cls, model: str, n: int, param: float, stats: EnsembleStats) -> "SweepRow":
        return cls(
            model=model,
            n=int(n),
            param=float(param),
            realizations=stats.realizations,
            mean_edges=stats.mean("edges"),
            mean_d=stats.mean("d"),
            sem_d=stats.sem("d"),
            mean_Delta=stats.mean("Delta"),
            mean_delta=stats.mean("delta"),
            mean_r=stats.mean("r"),
            index_mean={k: stats.mean(k) for k in INDEX_NAMES},
            index_sem={k: stats.sem(k) for k in INDEX_NAMES},
            degenerate={k: stats.degenerate_count(k) for k in PRODUCT_NAMES},
        )

    def values(self) -> dict:
        out = {c: getattr(self, c) for c in _HEAD}
        for name in INDEX_NAMES:
            out[f"mean_{name}"] = self.index_mean[name]
            out[f"sem_{name}"] = self.index_sem[name]
            if name in PRODUCT_NAMES:
                out[f"degenerate_{name}"] = self.degenerate[name]
        return out

    def cells(self) -> list[str]:
        vals = self.values()
        out = []
        for c in COLUMNS:
            v = vals[c]
            if c == "model":
                out.append(str(v))
            elif c in _INT_COLUMNS:
                out.append(str(int(v)))
            else:
                out.append(format_float(v))
        return out

    @classmethod
    def from_cells(cls, cells: dict, lineno: int) -> "SweepRow":
        def num(col):
            raw = cells[col]
            try:
                return int(raw) if col in _INT_COLUMNS else float(raw)
            except ValueError:
                raise FormatError(f"column {col}: cannot parse {raw!r}", lineno) from None

        head = {c: (cells[c] if c == "model" else num(c)) for c in _HEAD}
        return cls(
            **head,
            index_mean={k: num(f"mean_{k}") for k in INDEX_NAMES},
            index_sem={k: num(f"sem_{k}") for k in INDEX_NAMES},
            degenerate={k: num(f"degenerate_{k}") for k in PRODUCT_NAMES},
        )

    def mean_of(self, name: str) -> float:
        return self.index_mean[name]


def format_rows(rows: Iterable[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for row in rows:
        w.writerow(row.cells())
    return buf.getvalue()


def parse_rows(text: str) -> list[SweepRow]:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise FormatError("empty CSV", 1) from None
    missing = [c for c in COLUMNS if c not in header]
    if missing:
        raise FormatError(f"missing columns: {', '.join(missing)}", 1)
    rows = []
    for lineno, rec in enumerate(reader, start=2):
        if not rec:
            continue
        if len(rec) != len(header):
            raise FormatError(f"expected {len(header)} fields, got {len(rec)}", lineno)
        rows.append(SweepRow.from_cells(dict(zip(header, rec)), lineno))
    return rows


def atomic_write_text(path, text: str) -> None:
    """Write via a temporary file in the target directory, then rename over ``path``."""
    path = os.fspath(path)
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", suffix=".csv", dir=folder)
    try:
        with os.fdopen(fd, "w", encoding="ascii", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_rows(path, rows: Sequence[SweepRow]) -> None:
    atomic_write_text(path, format_rows(rows))


def read_rows(path) -> list[SweepRow]:
    with open(path, "r", encoding="ascii", newline="") as fh:
        return parse_rows(fh.read())


def curves_by_n(rows: Iterable[SweepRow], kind: IndexKind) -> dict[tuple[str, int], ScalingCurve]:
    """Scaling curve of ``kind`` for every ``(model, n)`` present in ``rows``.

    Revan indices are placed against ``mean_r``, degree indices against ``mean_d``.
    """
    groups = defaultdict(list)
    for row in rows:
        groups[row.model, row.n].append(row)
    out = {}
    for (model, n), group in sorted(groups.items()):
        group.sort(key=lambda r: r.param)
        axis = [r.mean_r if kind.variant is Variant.REVAN else r.mean_d for r in group]
        vals = [r.index_mean[kind.name] for r in group]
        out[model, n] = ScalingCurve.from_means(
            n, axis, vals, kind=kind, label=f"{model} n={n} {kind.name}"
        )
    return out

