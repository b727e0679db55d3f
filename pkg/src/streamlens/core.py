"""Time-series data model, event binning, and CSV/JSON ingestion."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DataError

FLOAT_FMT = "%.17g"  # round-trip safe


def _as_float_array(values, name):
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    return arr


@dataclass(frozen=True)
class TimeSeries:
    """Equidistant real-valued samples; the universal input of every analysis.

    ``values[i]`` is observed at time ``start + i * step``.
    """

    values: np.ndarray
    start: float = 0.0
    step: float = 1.0
    label: str = ""

    def __post_init__(self):
        arr = _as_float_array(self.values, "values")
        if arr.size < 1:
            raise ValueError("values must be non-empty")
        if not np.all(np.isfinite(arr)):
            raise ValueError("values must be finite (no NaN/Inf)")
        if not (self.step > 0):
            raise ValueError("step must be positive")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "start", float(self.start))
        object.__setattr__(self, "step", float(self.step))

    def __len__(self):
        return self.values.shape[0]

    def times(self):
        return self.start + self.step * np.arange(len(self))


@dataclass(frozen=True)
class EventStream:
    """Strictly increasing publication times within the span (t0, t_end)."""

    event_times: np.ndarray
    t0: float
    t_end: float

    def __post_init__(self):
        arr = _as_float_array(self.event_times, "event_times")
        if not (self.t_end > self.t0):
            raise ValueError("t_end must exceed t0")
        if arr.size and np.any(np.diff(arr) <= 0):
            raise DataError("unsorted events")
        if arr.size and (arr[0] < self.t0 or arr[-1] > self.t_end):
            raise DataError("events outside the declared span")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "event_times", arr)
        object.__setattr__(self, "t0", float(self.t0))
        object.__setattr__(self, "t_end", float(self.t_end))


def bin_events(stream: EventStream, step: float) -> TimeSeries:
    """Count events per half-open bin [t0 + i*step, t0 + (i+1)*step).

    Boundary events fall into the bin starting there; an event at exactly
    t_end is kept in the last bin so the counts always sum to the event count.
    """
    if not (step > 0):
        raise ValueError("step must be positive")
    times = stream.event_times
    if times.size == 0:
        raise DataError("no events")
    nbins = int(math.ceil((stream.t_end - stream.t0) / step))
    idx = np.floor((times - stream.t0) / step).astype(np.int64)
    idx = np.clip(idx, 0, nbins - 1)
    counts = np.bincount(idx, minlength=nbins).astype(np.float64)
    return TimeSeries(counts, start=stream.t0, step=step, label="events")


def profile(series: TimeSeries, center: bool = True) -> TimeSeries:
    """Accumulated sums y_t = sum_{k<=t} x_k, mean-centered first by default."""
    x = series.values
    if center:
        x = x - x.mean()
    return TimeSeries(np.cumsum(x), start=series.start, step=series.step,
                      label=series.label)


def _parse_cell(cell, row_num, col_idx):
    try:
        return float(cell)
    except ValueError:
        raise DataError(
            f"non-numeric value {cell!r} at row {row_num}, column {col_idx}"
        ) from None


def read_csv(path, column=None, start=0.0, step=1.0, label=None) -> TimeSeries:
    """Read one value column of a CSV file into a TimeSeries.

    ``column`` selects by header name or 0-based index; default is the last
    column (Google-Trends-style "date,value" exports). A non-numeric first
    row is treated as a header. Rows are assumed equidistant in time; pass
    ``step`` to override the spacing and ``start`` for the origin.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [row for row in csv.reader(fh) if row and any(c.strip() for c in row)]
    if not rows:
        raise DataError(f"{path}: no data rows")

    def numeric(cell):
        try:
            float(cell)
            return True
        except ValueError:
            return False

    header = None
    first_data = 0
    if not all(numeric(c) for c in rows[0]):
        header = [c.strip() for c in rows[0]]
        first_data = 1
    if first_data >= len(rows):
        raise DataError(f"{path}: fewer than 1 data row")

    ncols = len(rows[first_data])
    if column is None:
        col_idx = ncols - 1
    elif isinstance(column, int):
        col_idx = column
    else:
        if header is None or column not in header:
            raise DataError(f"{path}: no column named {column!r}")
        col_idx = header.index(column)
    if not (0 <= col_idx < ncols):
        raise DataError(f"{path}: column index {col_idx} out of range")

    values = []
    for file_row, row in enumerate(rows[first_data:], start=first_data + 1):
        if col_idx >= len(row):
            raise DataError(f"{path}: missing column {col_idx} at row {file_row}")
        values.append(_parse_cell(row[col_idx].strip(), file_row, col_idx))

    if label is None:
        if header is not None:
            label = header[col_idx]
        else:
            import os

            label = os.path.splitext(os.path.basename(str(path)))[0]
    return TimeSeries(np.asarray(values), start=start, step=step, label=label)


def write_csv(series: TimeSeries, path):
    """Write "t,<label>" rows; values at 17 significant digits round-trip."""
    name = series.label if series.label else "value"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(f"t,{name}\n")
        t = series.times()
        for i, v in enumerate(series.values):
            fh.write(f"{FLOAT_FMT % t[i]},{FLOAT_FMT % v}\n")


def series_to_json(series: TimeSeries) -> str:
    return json.dumps(
        {
            "label": series.label,
            "start": series.start,
            "step": series.step,
            "values": list(series.values),
        }
    )


def series_from_json(text: str) -> TimeSeries:
    obj = json.loads(text)
    return TimeSeries(
        np.asarray(obj["values"], dtype=np.float64),
        start=obj["start"],
        step=obj["step"],
        label=obj["label"],
    )
