"""Static SVG heatmaps of step-versus-position probability maps."""

from __future__ import annotations

from pathlib import Path

from .experiments import RunRecord

__all__ = ["emit_heatmap", "heatmap_svg"]

_CELL = 14
_LEFT = 46
_TOP = 24
_BOTTOM = 30


def _shade(t: float) -> str:
    """White-to-blue shade for intensity t in [0, 1]; integer math only."""
    t = min(max(t, 0.0), 1.0)
    r = 255 - round(207 * t)
    g = 255 - round(161 * t)
    b = 255 - round(71 * t)
    return f"rgb({r},{g},{b})"


def heatmap_svg(record: RunRecord) -> str:
    """Render the record as an SVG string (position on x, step on y).

    Byte-deterministic for a fixed record: no timestamps, fixed float
    formatting, stable element order.
    """
    rows = record.distributions
    if not rows:
        raise ValueError("empty record: no distributions to render")
    lo = min(offset for _, offset, _ in rows)
    hi = max(offset + len(probs) - 1 for _, offset, probs in rows)
    vmax = max((max(probs) for _, _, probs in rows if probs), default=0.0)
    if vmax <= 0.0:
        vmax = 1.0
    ncols = hi - lo + 1
    width = _LEFT + ncols * _CELL + 10
    height = _TOP + len(rows) * _CELL + _BOTTOM
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{_LEFT}" y="14" font-family="monospace" font-size="11">'
        f"probability by step and position (max {vmax:.6g})</text>",
    ]
    for r, (step, offset, probs) in enumerate(rows):
        y = _TOP + r * _CELL
        parts.append(
            f'<text x="4" y="{y + _CELL - 3}" font-family="monospace" '
            f'font-size="10">t={step}</text>'
        )
        for i, p in enumerate(probs):
            x = _LEFT + (offset + i - lo) * _CELL
            parts.append(
                f'<rect x="{x}" y="{y}" width="{_CELL}" height="{_CELL}" '
                f'fill="{_shade(p / vmax)}"><title>t={step} x={offset + i} '
                f"p={p:.6g}</title></rect>"
            )
    axis_y = _TOP + len(rows) * _CELL + 14
    ticks = {lo, hi}
    if lo <= 0 <= hi:
        ticks.add(0)
    for x_pos in sorted(ticks):
        x = _LEFT + (x_pos - lo) * _CELL + _CELL // 2
        parts.append(
            f'<text x="{x}" y="{axis_y}" font-family="monospace" '
            f'font-size="10" text-anchor="middle">{x_pos}</text>'
        )
    parts.append(
        f'<text x="{_LEFT + ncols * _CELL // 2}" y="{axis_y + 14}" '
        f'font-family="monospace" font-size="10" text-anchor="middle">'
        "position</text>"
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_heatmap(record: RunRecord, path: str | Path) -> Path:
    """Write the heatmap SVG to ``path`` and return it."""
    out = Path(path)
    out.write_text(heatmap_svg(record), encoding="utf-8", newline="\n")
    return out
