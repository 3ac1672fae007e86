"""CSV layout shared by every output.

Lines starting with ``#`` are comments.  ``#@ key = value`` comments
carry the resolved configuration and can be fed back through
``--config``.  Numbers are written with ``repr`` (shortest round-trip),
so reading a file back gives the exact same floats.
"""

from __future__ import annotations

import csv
import io
from typing import Iterable, Sequence

import numpy as np

from .dynamics import TrajectoryRecord
from .kernel import AmplitudeSeries, MemoryKernel


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def render(header: Sequence[str], columns: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    for line in header:
        buf.write(f"# {line}\n" if not line.startswith("#") else f"{line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def parse(text: str) -> tuple[list[str], dict[str, np.ndarray]]:
    """Return the comment lines and the columns (float where possible)."""
    comments = [line for line in text.splitlines() if line.startswith("#")]
    body = [line for line in text.splitlines() if line and not line.startswith("#")]
    reader = csv.reader(body)
    names = next(reader)
    raw = list(reader)
    cols: dict[str, np.ndarray] = {}
    for j, name in enumerate(names):
        values = [r[j] for r in raw]
        try:
            cols[name] = np.array([float(v) if v != "" else np.nan for v in values])
        except ValueError:
            cols[name] = np.array(values)
    return comments, cols


def kernel_csv(kernel: MemoryKernel, header: Sequence[str] = ()) -> str:
    rows = zip(kernel.grid, kernel.values.real, kernel.values.imag)
    return render(list(header), ["s", "re_F", "im_F"], rows)


def kernel_from_csv(text: str) -> MemoryKernel:
    _, cols = parse(text)
    s = cols["s"]
    h = (s[-1] - s[0]) / (s.size - 1)
    return MemoryKernel(h, cols["re_F"] + 1j * cols["im_F"])


def amplitude_csv(series: AmplitudeSeries, header: Sequence[str] = ()) -> str:
    v = series.values
    return render(list(header), ["t", "re_a", "im_a", "abs_a"], zip(series.grid, v.real, v.imag, np.abs(v)))


def amplitude_from_csv(text: str) -> AmplitudeSeries:
    _, cols = parse(text)
    t = cols["t"]
    h = (t[-1] - t[0]) / (t.size - 1) if t.size > 1 else 0.0
    return AmplitudeSeries(h, cols["re_a"] + 1j * cols["im_a"])


def record_rows(record: TrajectoryRecord):
    """Rows of ``(t, rho_ee, event)``; the first row has no event."""
    pop = record.excited_population
    for k, t in enumerate(record.times):
        if k == 0 or record.events.size == 0:
            event = None
        elif record.kind == "mcwf":
            event = int(record.events[k - 1])
        else:
            event = float(record.events[k - 1])
        yield t, pop[k], event


def record_csv(record: TrajectoryRecord, header: Sequence[str] = ()) -> str:
    event = {"mcwf": "jump", "homodyne": "current"}.get(record.kind, "event")
    return render(list(header), ["t", "rho_ee", event], record_rows(record))
