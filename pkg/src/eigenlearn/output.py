"""Deterministic CSV / JSON / SVG emission.

Floats are written with 17 significant digits so every value round-trips
bit-exactly; JSON keys keep insertion order; CSV uses LF line endings.
SVG plots are hand-assembled rect/path/text primitives on a fixed
800x800 canvas (no plotting library).
"""

from __future__ import annotations

import math
import sys
from typing import Iterable, Sequence

import numpy as np

CANVAS = 800
_MARGIN = 70


def fmt(value) -> str:
    """17-significant-digit rendering for floats; str() for everything else."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(float(value), ".17g")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def _json_token(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        if math.isnan(value) or math.isinf(value):
            return '"%s"' % fmt(value)
        return fmt(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, complex):
        return "[%s, %s]" % (fmt(value.real), fmt(value.imag))
    if isinstance(value, str):
        return '"%s"' % value.replace("\\", "\\\\").replace('"', '\\"')
    if isinstance(value, dict):
        parts = ('"%s": %s' % (k, _json_token(v)) for k, v in value.items())
        return "{" + ", ".join(parts) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_json_token(v) for v in value) + "]"
    if isinstance(value, np.ndarray):
        return _json_token(value.tolist())
    raise TypeError(f"cannot serialize {type(value)!r}")


def to_json(obj: dict) -> str:
    """Stable-key-order JSON with 17-significant-digit numbers."""
    return _json_token(obj) + "\n"


def to_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def write_text(text: str, path: str) -> None:
    """Write to a file or to standard output when path is '-'."""
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _map_x(x, lo, hi):
    return _MARGIN + (x - lo) / (hi - lo) * (CANVAS - 2 * _MARGIN)


def _map_y(y, lo, hi):
    return CANVAS - _MARGIN - (y - lo) / (hi - lo) * (CANVAS - 2 * _MARGIN)


def _axes_svg(re_range, im_range, x_label: str, y_label: str, legend: str) -> list:
    lo_x, hi_x = re_range
    lo_y, hi_y = im_range
    parts = [
        f'<rect x="{_MARGIN}" y="{_MARGIN}" width="{CANVAS - 2 * _MARGIN}" '
        f'height="{CANVAS - 2 * _MARGIN}" fill="none" stroke="black"/>'
    ]
    if lo_x < 0 < hi_x:
        x0 = _map_x(0, lo_x, hi_x)
        parts.append(
            f'<line x1="{x0:.2f}" y1="{_MARGIN}" x2="{x0:.2f}" '
            f'y2="{CANVAS - _MARGIN}" stroke="gray" stroke-dasharray="4"/>'
        )
    if lo_y < 0 < hi_y:
        y0 = _map_y(0, lo_y, hi_y)
        parts.append(
            f'<line x1="{_MARGIN}" y1="{y0:.2f}" x2="{CANVAS - _MARGIN}" '
            f'y2="{y0:.2f}" stroke="gray" stroke-dasharray="4"/>'
        )
    parts.append(
        f'<text x="{CANVAS // 2}" y="{CANVAS - 20}" text-anchor="middle" '
        f'font-size="16">{x_label} ({fmt(lo_x)} .. {fmt(hi_x)})</text>'
    )
    parts.append(
        f'<text x="20" y="{CANVAS // 2}" text-anchor="middle" font-size="16" '
        f'transform="rotate(-90 20 {CANVAS // 2})">{y_label} ({fmt(lo_y)} .. {fmt(hi_y)})</text>'
    )
    parts.append(
        f'<text x="{_MARGIN}" y="{_MARGIN - 20}" font-size="16">{legend}</text>'
    )
    return parts


def heatmap_svg(region_map, color_fn, x_label: str, y_label: str, legend: str,
                polyline=None) -> str:
    """Filled-cell heatmap of a RegionMap plus an optional boundary polyline.

    ``color_fn`` maps a cell value to an SVG fill color or None (skip cell).
    """
    lo_x, hi_x = region_map.re_range
    lo_y, hi_y = region_map.im_range
    nx, ny = region_map.nx, region_map.ny
    w = (CANVAS - 2 * _MARGIN) / nx
    h = (CANVAS - 2 * _MARGIN) / ny
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" '
        f'viewBox="0 0 {CANVAS} {CANVAS}">',
        f'<rect width="{CANVAS}" height="{CANVAS}" fill="white"/>',
    ]
    cells = region_map.cells
    for i in range(nx):
        for j in range(ny):
            color = color_fn(cells[i, j])
            if color is None:
                continue
            px = _MARGIN + i * w
            py = CANVAS - _MARGIN - (j + 1) * h
            parts.append(
                f'<rect x="{px:.2f}" y="{py:.2f}" width="{w + 0.5:.2f}" '
                f'height="{h + 0.5:.2f}" fill="{color}"/>'
            )
    if polyline:
        pts = " ".join(
            f"{_map_x(p.real, lo_x, hi_x):.2f},{_map_y(p.imag, lo_y, hi_y):.2f}"
            for p in polyline
        )
        parts.append(f'<polyline points="{pts}" fill="none" stroke="red"/>')
    parts.extend(_axes_svg((lo_x, hi_x), (lo_y, hi_y), x_label, y_label, legend))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def curve_svg(points, x_label: str, y_label: str, legend: str) -> str:
    """Polyline plot of complex points (Re on x, Im on y)."""
    xs = [p.real for p in points]
    ys = [p.imag for p in points]
    lo_x, hi_x = min(xs), max(xs)
    lo_y, hi_y = min(ys), max(ys)
    pad_x = (hi_x - lo_x or 1.0) * 0.05
    pad_y = (hi_y - lo_y or 1.0) * 0.05
    lo_x, hi_x = lo_x - pad_x, hi_x + pad_x
    lo_y, hi_y = lo_y - pad_y, hi_y + pad_y
    pts = " ".join(
        f"{_map_x(x, lo_x, hi_x):.2f},{_map_y(y, lo_y, hi_y):.2f}"
        for x, y in zip(xs, ys)
    )
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" '
        f'viewBox="0 0 {CANVAS} {CANVAS}">',
        f'<rect width="{CANVAS}" height="{CANVAS}" fill="white"/>',
        f'<polyline points="{pts}" fill="none" stroke="red"/>',
    ]
    parts.extend(_axes_svg((lo_x, hi_x), (lo_y, hi_y), x_label, y_label, legend))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def log_heat_color(value) -> str | None:
    """Grayscale for log10-objective heatmaps; +inf cells stay white."""
    if not math.isfinite(value):
        return None
    clipped = max(min(value, 2.0), -18.0)
    level = int(255 * (clipped + 18.0) / 20.0)
    return f"rgb({level},{level},{level})"
