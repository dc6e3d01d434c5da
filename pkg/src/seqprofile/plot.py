"""Plot data for peak/trough charts: a marker table plus a gnuplot script."""
from __future__ import annotations

import csv
import io
from pathlib import Path
from xml.sax.saxutils import escape

from .peaks import IppdResult
from .series import TimeSeries

MARKERS = ("none", "max", "min")

_GNUPLOT = """\
# gnuplot script; run with: gnuplot {script}
set datafile separator ","
set key top left
set title "{title}"
set xlabel "index"
set ylabel "value"
set terminal pngcairo size 1200,400
set output "{png}"
plot "{data}" skip 1 using 1:2 with lines lc rgb "#4a4a4a" title "series", \\
     "" skip 1 using 1:(strcol(3) eq "max" ? $2 : 1/0) with points pt 9 lc rgb "#c0392b" title "maxima", \\
     "" skip 1 using 1:(strcol(3) eq "min" ? $2 : 1/0) with points pt 11 lc rgb "#2471a3" title "minima"
"""


def marker_rows(result: IppdResult, series: TimeSeries) -> list:
    marks = ["none"] * len(series)
    for i, _ in result.peaks.maxima:
        marks[i] = "max"
    for i, _ in result.peaks.minima:
        marks[i] = "min"
    return [(i, v, m) for i, (v, m) in enumerate(zip(series.values.tolist(), marks))]


def marker_table(result: IppdResult, series: TimeSeries) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "value", "marker"])
    for i, v, m in marker_rows(result, series):
        w.writerow([i, repr(v), m])
    return buf.getvalue()


def _svg(rows, title: str, width=1200, height=400, pad=40) -> str:
    xs = [r[0] for r in rows]
    ys = [r[1] for r in rows]
    x0, x1 = min(xs), max(xs) or 1
    y0, y1 = min(ys), max(ys)
    yspan = (y1 - y0) or 1.0

    def sx(x):
        return pad + (x - x0) / ((x1 - x0) or 1) * (width - 2 * pad)

    def sy(y):
        return height - pad - (y - y0) / yspan * (height - 2 * pad)

    pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ys))
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
           f'<title>{escape(title)}</title>',
           f'<polyline fill="none" stroke="#4a4a4a" stroke-width="1" points="{pts}"/>']
    colour = {"max": "#c0392b", "min": "#2471a3"}
    for x, y, m in rows:
        if m != "none":
            out.append(f'<circle class="{m}" cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="3" fill="{colour[m]}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_plot(result: IppdResult, series: TimeSeries, path, svg: bool = False) -> list:
    """Write ``path`` (index,value,marker CSV) and ``path`` with a ``.gp``
    suffix (gnuplot script); with ``svg=True`` also a ``.svg`` line chart.

    Returns the list of files written.
    """
    path = Path(path)
    rows = marker_rows(result, series)
    written = [path, path.with_suffix(".gp")]
    path.write_text(marker_table(result, series), encoding="utf-8")
    title = f"{series.id}: {result.peak_count} extrema (lookahead {result.peaks.params.lookahead})"
    path.with_suffix(".gp").write_text(
        _GNUPLOT.format(script=path.with_suffix(".gp").name, data=path.name,
                        png=path.with_suffix(".png").name, title=title.replace('"', "'")),
        encoding="utf-8")
    if svg:
        path.with_suffix(".svg").write_text(_svg(rows, title), encoding="utf-8")
        written.append(path.with_suffix(".svg"))
    return written
