"""Pairwise metric matrices over labelled image collections, plus CSV/JSON I/O."""
from __future__ import annotations

import csv
import enum
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import metrics
from .imaging import GrayImage

__all__ = [
    "MatrixParseError",
    "MetricKind",
    "MetricMatrix",
    "format_value",
    "invariant_violations",
    "pair_metric",
    "pairwise_matrix",
    "parse_matrix",
    "plot_series",
    "serialize_matrix",
]

SIGNIFICANT_DIGITS = 15
SYMMETRY_TOL = 1e-12


class MetricKind(enum.Enum):
    MUTUAL_INFORMATION = "mi"
    ENTROPY_OF_MERGE = "entropy-merge"
    INFORMATION_GAIN = "info-gain"
    JOINT_ENTROPY = "joint-entropy"
    CONDITIONAL_ENTROPY = "cond-entropy"

    @classmethod
    def parse(cls, name: str) -> "MetricKind":
        try:
            return cls(name)
        except ValueError:
            choices = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown metric {name!r} (choose from {choices})") from None

    @property
    def symmetric(self) -> bool:
        return self in _SYMMETRIC

    @property
    def title(self) -> str:
        return _TITLES[self]


_SYMMETRIC = frozenset({
    MetricKind.MUTUAL_INFORMATION,
    MetricKind.ENTROPY_OF_MERGE,
    MetricKind.JOINT_ENTROPY,
})

_TITLES = {
    MetricKind.MUTUAL_INFORMATION: "mutual information",
    MetricKind.ENTROPY_OF_MERGE: "entropy of the merged image",
    MetricKind.INFORMATION_GAIN: "information gain",
    MetricKind.JOINT_ENTROPY: "joint entropy",
    MetricKind.CONDITIONAL_ENTROPY: "conditional entropy",
}

_PAIR_FUNCS: dict[MetricKind, Callable[[GrayImage, GrayImage], float]] = {
    MetricKind.MUTUAL_INFORMATION: metrics.image_mutual_information,
    MetricKind.ENTROPY_OF_MERGE: lambda a, b: metrics.image_entropy(metrics.merge_images(a, b)),
    MetricKind.INFORMATION_GAIN: metrics.information_gain,
    MetricKind.JOINT_ENTROPY: metrics.image_joint_entropy,
    MetricKind.CONDITIONAL_ENTROPY: metrics.image_conditional_entropy,
}


def pair_metric(kind: MetricKind) -> Callable[[GrayImage, GrayImage], float]:
    """The ``(a, b) -> bits`` function behind a metric kind.

    For the asymmetric kinds the first argument is the row image:
    information gain is ``H(a) - H(merge(a, b))`` and conditional entropy is ``H(a|b)``.
    """
    return _PAIR_FUNCS[kind]


@dataclass(frozen=True, eq=False)
class MetricMatrix:
    """Square matrix of pairwise values with row/column labels.

    ``kind`` is ``None`` only for matrices read from CSV without a kind hint.
    """

    labels: tuple[str, ...]
    kind: Optional[MetricKind]
    values: np.ndarray

    def __post_init__(self):
        labels = tuple(str(s) for s in self.labels)
        values = np.array(self.values, dtype=np.float64)
        n = len(labels)
        if values.shape != (n, n):
            raise ValueError(
                f"matrix must be {n}x{n} to match {n} labels, got shape {values.shape}")
        values.flags.writeable = False
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return len(self.labels)

    def __eq__(self, other):
        if not isinstance(other, MetricMatrix):
            return NotImplemented
        return (self.labels == other.labels and self.kind == other.kind
                and np.array_equal(self.values, other.values))

    __hash__ = None


def invariant_violations(m: MetricMatrix, tol: float = SYMMETRY_TOL) -> list[str]:
    """Check the kind-specific matrix invariants; an empty list means all hold."""
    v = m.values
    out = []
    if not np.all(np.isfinite(v)):
        out.append("non-finite entries")
    if m.kind is None:
        return out
    if m.kind.symmetric:
        worst = float(np.max(np.abs(v - v.T))) if m.n else 0.0
        if worst > tol:
            out.append(f"not symmetric (max |v - v.T| = {worst:g})")
    if m.kind is MetricKind.INFORMATION_GAIN:
        bad = [m.labels[i] for i in range(m.n) if v[i, i] != 0.0]
        if bad:
            out.append(f"non-zero information gain diagonal at {bad}")
    if m.kind is MetricKind.MUTUAL_INFORMATION:
        bad = [m.labels[i] for i in range(m.n) if np.any(v[i] > v[i, i] + tol)]
        if bad:
            out.append(f"diagonal does not dominate rows {bad}")
    return out


def pairwise_matrix(images: Sequence[tuple[str, GrayImage]], kind: MetricKind,
                    max_workers: int | None = None) -> MetricMatrix:
    """Apply a metric to every ordered pair of images.

    Parameters
    ----------
    images : sequence of (label, GrayImage)
        All images must share one shape; resize them beforehand.
    kind : MetricKind
        Symmetric kinds evaluate the upper triangle once and mirror it.
    max_workers : int, optional
        Evaluate pairs on a thread pool of this size.  Each cell has a single
        writer so the result does not depend on scheduling.

    Returns
    -------
    MetricMatrix
        ``values[i, j] = metric(image_i, image_j)``, labels in input order.
    """
    images = list(images)
    if not images:
        raise ValueError("need at least one image")
    shape = images[0][1].shape
    odd = [label for label, img in images if img.shape != shape]
    if odd:
        raise ValueError(
            f"images must share one shape ({shape[1]}x{shape[0]} for "
            f"{images[0][0]!r}); mismatched: {odd}")
    func = pair_metric(kind)
    n = len(images)
    if kind.symmetric:
        cells = [(i, j) for i in range(n) for j in range(i, n)]
    else:
        cells = [(i, j) for i in range(n) for j in range(n)]

    values = np.zeros((n, n), dtype=np.float64)

    def work(cell):
        i, j = cell
        values[i, j] = func(images[i][1], images[j][1])

    if max_workers and max_workers > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            list(pool.map(work, cells))
    else:
        for cell in cells:
            work(cell)

    if kind.symmetric:
        lower = np.tril_indices(n, -1)
        values[lower] = values.T[lower]
    return MetricMatrix(tuple(label for label, _ in images), kind, values)


def plot_series(m: MetricMatrix) -> list[tuple[str, float]]:
    """Row-major ``("rowlabel|collabel", value)`` points."""
    return [(f"{a}|{b}", float(m.values[i, j]))
            for i, a in enumerate(m.labels)
            for j, b in enumerate(m.labels)]


def format_value(x: float) -> str:
    """Fixed numeric text form: 15 significant digits, no negative zero."""
    s = f"{float(x):.{SIGNIFICANT_DIGITS}g}"
    return "0" if s == "-0" else s


class MatrixParseError(ValueError):
    """Malformed serialized matrix.  ``lineno``/``offset`` locate the problem (1-based)."""

    def __init__(self, msg: str, lineno: int | None = None, offset: int | None = None):
        where = ""
        if lineno is not None:
            where = f" (line {lineno}" + (f", column {offset}" if offset is not None else "") + ")"
        super().__init__(msg + where)
        self.lineno = lineno
        self.offset = offset


def serialize_matrix(m: MetricMatrix, fmt: str = "csv") -> bytes:
    """Encode as UTF-8 CSV or JSON with ``\\n`` line endings.

    CSV: a header of an empty cell followed by the labels, then one row per
    label.  JSON: an object with ``kind``, ``labels`` and ``values``.
    """
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["", *m.labels])
        for label, row in zip(m.labels, m.values):
            w.writerow([label, *(format_value(x) for x in row)])
        text = buf.getvalue()
    elif fmt == "json":
        kind = json.dumps(None if m.kind is None else m.kind.value)
        labels = json.dumps(list(m.labels), ensure_ascii=False)
        rows = ",\n".join("    [" + ", ".join(format_value(x) for x in row) + "]"
                          for row in m.values)
        text = (f'{{\n  "kind": {kind},\n  "labels": {labels},\n'
                f'  "values": [\n{rows}\n  ]\n}}\n')
    else:
        raise ValueError(f"unknown format {fmt!r} (csv or json)")
    return text.encode("utf-8")


def _number(text, lineno=None, offset=None) -> float:
    if isinstance(text, bool) or text is None:
        raise MatrixParseError(f"expected a number, got {text!r}", lineno, offset)
    try:
        return float(text)
    except (TypeError, ValueError):
        raise MatrixParseError(f"expected a number, got {text!r}", lineno, offset) from None


def _parse_csv(text: str, kind: Optional[MetricKind]) -> MetricMatrix:
    rows = list(csv.reader(io.StringIO(text, newline="")))
    if not rows:
        raise MatrixParseError("empty CSV input", 1)
    header = rows[0]
    if not header or header[0] != "":
        raise MatrixParseError("header must start with an empty cell", 1, 1)
    labels = header[1:]
    body = rows[1:]
    values = []
    for lineno, row in enumerate(body, start=2):
        if len(row) != len(labels) + 1:
            raise MatrixParseError(
                f"expected {len(labels)} values after the label, got {len(row) - 1}", lineno)
        values.append([_number(cell, lineno, col + 2) for col, cell in enumerate(row[1:])])
    if len(body) != len(labels):
        raise ValueError(f"matrix is not square: {len(labels)} labels but {len(body)} rows")
    row_labels = [row[0] for row in body]
    if row_labels != labels:
        bad = next(i for i, (a, b) in enumerate(zip(row_labels, labels)) if a != b)
        raise MatrixParseError(
            f"row label {row_labels[bad]!r} does not match column label {labels[bad]!r}",
            bad + 2, 1)
    n = len(labels)
    return MetricMatrix(tuple(labels), kind, np.array(values, dtype=np.float64).reshape(n, n))


def _parse_json(text: str) -> MetricMatrix:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(obj, dict):
        raise MatrixParseError("top level must be a JSON object")
    for field in ("kind", "labels", "values"):
        if field not in obj:
            raise MatrixParseError(f"missing field {field!r}")
    kind = obj["kind"]
    if kind is not None:
        try:
            kind = MetricKind(kind)
        except ValueError:
            raise MatrixParseError(f"unknown kind {kind!r}") from None
    labels = obj["labels"]
    if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
        raise MatrixParseError("'labels' must be a list of strings")
    rows = obj["values"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise MatrixParseError("'values' must be a list of lists")
    n = len(labels)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError(f"'values' is not {n}x{n} to match {n} labels")
    values = np.array([[_number(x) for x in r] for r in rows], dtype=np.float64).reshape(n, n)
    return MetricMatrix(tuple(labels), kind, values)


def parse_matrix(data: bytes | str, fmt: str = "csv",
                 kind: Optional[MetricKind] = None) -> MetricMatrix:
    """Inverse of :func:`serialize_matrix`.

    CSV carries no kind, so pass ``kind`` to attach one; for JSON the stored
    kind is used and ``kind`` is ignored.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MatrixParseError(f"input is not UTF-8: {exc}") from None
    if fmt == "csv":
        return _parse_csv(data, kind)
    if fmt == "json":
        return _parse_json(data)
    raise ValueError(f"unknown format {fmt!r} (csv or json)")
