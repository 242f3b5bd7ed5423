"""Observer config files, CSV tables and SVG line plots.

All writers are deterministic: fixed number formatting, no timestamps, LF
line endings.  Files are written to a temporary sibling and renamed into
place so a failed run never leaves a truncated output behind.
"""

from __future__ import annotations

import csv
import io
import math
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence, Union

from .errors import OutputError
from .luneburg import ObserverProfile


class ConfigError(ValueError):
    pass


# --------------------------------------------------------------------------
# observer config
# --------------------------------------------------------------------------

_OBSERVER_KEYS = {"name", "tau", "nu", "K3"}


def parse_observers(text: str) -> dict[str, ObserverProfile]:
    """Parse ``key=value`` observer records separated by blank lines.

    Example::

        name=A.J
        tau=10.68
        nu=6.48

        name=T.K
        tau=11.69
        nu=6.70
        K3=-1

    ``#`` starts a comment.  ``name``, ``tau`` and ``nu`` are required.
    """
    blocks: list[list[tuple[int, str]]] = [[]]
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            if blocks[-1]:
                blocks.append([])
            continue
        blocks[-1].append((lineno, line))

    observers: dict[str, ObserverProfile] = {}
    for block in blocks:
        if not block:
            continue
        rec: dict[str, str] = {}
        for lineno, line in block:
            key, sep, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not sep or not key:
                raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
            if key not in _OBSERVER_KEYS:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
            if key in rec:
                raise ConfigError(f"line {lineno}: duplicate key {key!r}")
            rec[key] = value
        first = block[0][0]
        missing = {"name", "tau", "nu"} - rec.keys()
        if missing:
            raise ConfigError(f"record at line {first}: missing {', '.join(sorted(missing))}")
        try:
            prof = ObserverProfile(float(rec["tau"]), float(rec["nu"]),
                                   float(rec.get("K3", -1.0)), rec["name"])
        except ValueError as exc:
            raise ConfigError(f"record at line {first}: {exc}") from None
        if prof.name in observers:
            raise ConfigError(f"record at line {first}: observer {prof.name!r} defined twice")
        observers[prof.name] = prof
    return observers


def load_observers(path: Union[str, Path]) -> dict[str, ObserverProfile]:
    return parse_observers(Path(path).read_text(encoding="utf-8"))


# --------------------------------------------------------------------------
# writing
# --------------------------------------------------------------------------

def write_atomic(path: Union[str, Path], text: str) -> None:
    path = Path(path)
    parent = path.parent if str(path.parent) else Path(".")
    try:
        fd, tmp = tempfile.mkstemp(dir=parent, prefix=f".{path.name}.", suffix=".tmp")
    except OSError as exc:
        raise OutputError(f"cannot write to {path}: {exc}") from None
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def format_value(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format(v, ".9g")
    return str(v)


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        if len(row) != len(header):
            raise OutputError(f"row has {len(row)} fields, header has {len(header)}")
        w.writerow([format_value(v) for v in row])
    return buf.getvalue()


def emit_csv(rows: Iterable[Sequence], path: Union[str, Path], header: Sequence[str]) -> None:
    """Write ``rows`` under ``header`` as CSV (9 significant digits)."""
    write_atomic(path, csv_text(header, rows))


# --------------------------------------------------------------------------
# SVG
# --------------------------------------------------------------------------

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
           "#8c564b", "#e377c2")


@dataclass(frozen=True)
class Curve:
    name: str
    points: tuple[tuple[float, float], ...]
    color: str | None = None
    dashed: bool = False

    @classmethod
    def of(cls, name, points, **kw) -> "Curve":
        return cls(name, tuple((float(x), float(y)) for x, y in points), **kw)


def _nice_step(span: float, target: int = 6) -> float:
    raw = span / target
    mag = 10.0 ** math.floor(math.log10(raw))
    for m in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= m * mag:
            return m * mag
    return 10.0 * mag


def _ticks(lo: float, hi: float) -> list[float]:
    step = _nice_step(hi - lo)
    start = math.ceil(lo / step - 1e-9)
    out = []
    k = start
    while k * step <= hi + 1e-9 * step:
        out.append(k * step)
        k += 1
    return out


def _fmt_tick(v: float) -> str:
    s = format(v, ".6g")
    return "0" if s == "-0" else s


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def svg_text(curves: Sequence[Curve], *, title: str = "", xlabel: str = "", ylabel: str = "",
             width: int = 720, height: int = 540, equal_aspect: bool = False) -> str:
    if not curves:
        raise OutputError("at least one curve is required")
    for c in curves:
        if not c.points:
            raise OutputError(f"curve {c.name!r} has no points")
        for i, (x, y) in enumerate(c.points):
            if not (math.isfinite(x) and math.isfinite(y)):
                raise OutputError(f"curve {c.name!r} has a non-finite coordinate at index {i}")

    xs = [x for c in curves for x, _ in c.points]
    ys = [y for c in curves for _, y in c.points]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    mx, my = 0.05 * (x1 - x0), 0.05 * (y1 - y0)
    x0, x1, y0, y1 = x0 - mx, x1 + mx, y0 - my, y1 + my

    left, right, top, bottom = 70, 150, 40, 55
    pw, ph = width - left - right, height - top - bottom
    if equal_aspect:
        scale = min(pw / (x1 - x0), ph / (y1 - y0))
        cx, cy = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
        x0, x1 = cx - 0.5 * pw / scale, cx + 0.5 * pw / scale
        y0, y1 = cy - 0.5 * ph / scale, cy + 0.5 * ph / scale

    def px(x):
        return left + (x - x0) / (x1 - x0) * pw

    def py(y):
        return top + (y1 - y) / (y1 - y0) * ph

    f = "{:.2f}".format
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{f(left + pw / 2)}" y="22" text-anchor="middle" '
                   f'font-size="15">{_esc(title)}</text>')
    out.append(f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" '
               'stroke="black" stroke-width="1"/>')
    out.append('<g class="ticks" stroke="#bbbbbb" stroke-width="0.5">')
    xt, yt = _ticks(x0, x1), _ticks(y0, y1)
    for t in xt:
        out.append(f'<line x1="{f(px(t))}" y1="{top}" x2="{f(px(t))}" y2="{top + ph}"/>')
    for t in yt:
        out.append(f'<line x1="{left}" y1="{f(py(t))}" x2="{left + pw}" y2="{f(py(t))}"/>')
    out.append("</g>")
    out.append('<g class="ticklabels">')
    for t in xt:
        out.append(f'<text x="{f(px(t))}" y="{top + ph + 16}" text-anchor="middle">'
                   f"{_fmt_tick(t)}</text>")
    for t in yt:
        out.append(f'<text x="{left - 6}" y="{f(py(t) + 4)}" text-anchor="end">'
                   f"{_fmt_tick(t)}</text>")
    out.append("</g>")
    if xlabel:
        out.append(f'<text x="{f(left + pw / 2)}" y="{height - 12}" text-anchor="middle">'
                   f"{_esc(xlabel)}</text>")
    if ylabel:
        out.append(f'<text x="16" y="{f(top + ph / 2)}" text-anchor="middle" '
                   f'transform="rotate(-90 16 {f(top + ph / 2)})">{_esc(ylabel)}</text>')

    out.append(f'<clipPath id="plot-area"><rect x="{left}" y="{top}" width="{pw}" '
               f'height="{ph}"/></clipPath>')
    legend = []
    for i, c in enumerate(curves):
        color = c.color or PALETTE[i % len(PALETTE)]
        dash = ' stroke-dasharray="6 4"' if c.dashed else ""
        pts = " ".join(f"{f(px(x))},{f(py(y))}" for x, y in c.points)
        out.append(f'<polyline clip-path="url(#plot-area)" fill="none" stroke="{color}" '
                   f'stroke-width="1.5"{dash} points="{pts}"><title>{_esc(c.name)}</title>'
                   "</polyline>")
        ly = top + 10 + 18 * i
        lx = left + pw + 12
        legend.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 24}" y2="{ly}" stroke="{color}" '
                      f'stroke-width="2"{dash}/>')
        legend.append(f'<text x="{lx + 30}" y="{ly + 4}">{_esc(c.name)}</text>')
    out.append('<g class="legend">')
    out.extend(legend)
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(curves: Union[Sequence[Curve], Mapping[str, Sequence[tuple[float, float]]]],
             path: Union[str, Path], **style) -> None:
    """Render ``curves`` as polylines with axes and a legend and write ``path``.

    ``curves`` is a sequence of :class:`Curve` or a mapping from name to
    points.  Raises ``OutputError`` (and writes nothing) if any coordinate
    is NaN or infinite.
    """
    if isinstance(curves, Mapping):
        curves = [Curve.of(name, pts) for name, pts in curves.items()]
    write_atomic(path, svg_text(list(curves), **style))
