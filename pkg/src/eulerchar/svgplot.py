"""Minimal deterministic SVG line plots.

Just enough plotting for the experiment outputs: polylines over linear or
log10 y axes, 1-2-5 tick ladders, dashed horizontal reference lines, and a
legend. Output is plain text with fixed number formatting, so a rerun with
identical data produces an identical file; every plot ships next to a CSV
with the same numbers, the SVG is never the only record.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = ["Series", "line_plot"]

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

_WIDTH = 640.0
_HEIGHT = 420.0
_MARGIN_L = 64.0
_MARGIN_R = 16.0
_MARGIN_T = 34.0
_MARGIN_B = 46.0


@dataclass
class Series:
    """One polyline: a label for the legend and matching x/y sequences."""

    label: str
    xs: list[float] = field(default_factory=list)
    ys: list[float] = field(default_factory=list)


def _nice_step(span: float) -> float:
    """Tick spacing from the 1-2-5 ladder giving four to eight ticks."""
    if span <= 0.0:
        return 1.0
    raw = span / 5.0
    power = math.floor(math.log10(raw))
    base = raw / 10.0**power
    for mult in (1.0, 2.0, 5.0):
        if base <= mult:
            return mult * 10.0**power
    return 10.0 ** (power + 1)


def _linear_ticks(lo: float, hi: float) -> list[float]:
    step = _nice_step(hi - lo)
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    v = first
    while v <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(v) < step * 1e-9 else v)
        v += step
    return ticks


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def line_plot(
    path,
    title: str,
    xlabel: str,
    ylabel: str,
    series: list[Series],
    *,
    log_y: bool = False,
    hlines: tuple[float, ...] = (),
) -> None:
    """Write an SVG line plot of the given series.

    With log_y the y axis shows log10 of the values and only positive finite
    points are drawn; non-finite points split a polyline into segments either
    way. Horizontal dashed lines mark the hlines values (skipped when outside
    the data range after padding).
    """
    pts_x: list[float] = []
    pts_y: list[float] = []
    for s in series:
        if len(s.xs) != len(s.ys):
            raise ValueError(f"series {s.label!r} has mismatched lengths")
        for x, y in zip(s.xs, s.ys):
            if not (math.isfinite(x) and math.isfinite(y)):
                continue
            if log_y and y <= 0.0:
                continue
            pts_x.append(x)
            pts_y.append(math.log10(y) if log_y else y)
    if not pts_x:
        raise ValueError("nothing to plot: no finite data points")
    for h in hlines:
        if not log_y:
            pts_y.append(h)

    x_lo, x_hi = min(pts_x), max(pts_x)
    y_lo, y_hi = min(pts_y), max(pts_y)
    if x_hi - x_lo < 1e-12:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_hi - y_lo < 1e-12:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    y_pad = 0.05 * (y_hi - y_lo)
    y_lo -= y_pad
    y_hi += y_pad

    plot_w = _WIDTH - _MARGIN_L - _MARGIN_R
    plot_h = _HEIGHT - _MARGIN_T - _MARGIN_B

    def sx(x: float) -> float:
        return _MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w

    def sy(y: float) -> float:
        return _MARGIN_T + (y_hi - y) / (y_hi - y_lo) * plot_h

    if log_y:
        y_ticks = [float(p) for p in range(math.ceil(y_lo), math.floor(y_hi) + 1)]
        if not y_ticks:
            y_ticks = [y_lo + (y_hi - y_lo) * f for f in (0.15, 0.5, 0.85)]
        y_labels = [f"1e{p:.3g}" for p in y_ticks]
    else:
        y_ticks = _linear_ticks(y_lo, y_hi)
        y_labels = [_fmt(v) for v in y_ticks]
    x_ticks = _linear_ticks(x_lo, x_hi)

    out: list[str] = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH:.0f}" '
        f'height="{_HEIGHT:.0f}" viewBox="0 0 {_WIDTH:.0f} {_HEIGHT:.0f}">'
    )
    out.append('<rect width="100%" height="100%" fill="white"/>')
    out.append(
        f'<text x="{_WIDTH / 2:.1f}" y="20" font-family="sans-serif" font-size="14" '
        f'text-anchor="middle">{_escape(title)}</text>'
    )

    for v, label in zip(y_ticks, y_labels):
        y = sy(v)
        out.append(
            f'<line x1="{_MARGIN_L:.1f}" y1="{y:.2f}" x2="{_WIDTH - _MARGIN_R:.1f}" '
            f'y2="{y:.2f}" stroke="#dddddd" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{_MARGIN_L - 6:.1f}" y="{y + 4:.2f}" font-family="sans-serif" '
            f'font-size="11" text-anchor="end">{label}</text>'
        )
    for v in x_ticks:
        x = sx(v)
        out.append(
            f'<line x1="{x:.2f}" y1="{_MARGIN_T:.1f}" x2="{x:.2f}" '
            f'y2="{_HEIGHT - _MARGIN_B:.1f}" stroke="#dddddd" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{x:.2f}" y="{_HEIGHT - _MARGIN_B + 16:.1f}" font-family="sans-serif" '
            f'font-size="11" text-anchor="middle">{_fmt(v)}</text>'
        )

    for h in hlines:
        hv = math.log10(h) if log_y and h > 0.0 else h
        if log_y and h <= 0.0:
            continue
        if hv < y_lo or hv > y_hi:
            continue
        y = sy(hv)
        out.append(
            f'<line x1="{_MARGIN_L:.1f}" y1="{y:.2f}" x2="{_WIDTH - _MARGIN_R:.1f}" '
            f'y2="{y:.2f}" stroke="#888888" stroke-width="1" stroke-dasharray="6 4"/>'
        )

    out.append(
        f'<rect x="{_MARGIN_L:.1f}" y="{_MARGIN_T:.1f}" width="{plot_w:.1f}" '
        f'height="{plot_h:.1f}" fill="none" stroke="#333333" stroke-width="1"/>'
    )

    for idx, s in enumerate(series):
        color = _PALETTE[idx % len(_PALETTE)]
        segment: list[str] = []
        chunks: list[list[str]] = []
        for x, y in zip(s.xs, s.ys):
            usable = math.isfinite(x) and math.isfinite(y) and not (log_y and y <= 0.0)
            if not usable:
                if segment:
                    chunks.append(segment)
                    segment = []
                continue
            yy = math.log10(y) if log_y else y
            segment.append(f"{sx(x):.2f},{sy(yy):.2f}")
        if segment:
            chunks.append(segment)
        for chunk in chunks:
            if len(chunk) == 1:
                cx, cy = chunk[0].split(",")
                out.append(f'<circle cx="{cx}" cy="{cy}" r="2.5" fill="{color}"/>')
            else:
                out.append(
                    f'<polyline points="{" ".join(chunk)}" fill="none" '
                    f'stroke="{color}" stroke-width="1.5"/>'
                )

    legend_x = _MARGIN_L + plot_w - 150.0
    legend_y = _MARGIN_T + 10.0
    for idx, s in enumerate(series):
        color = _PALETTE[idx % len(_PALETTE)]
        y = legend_y + 16.0 * idx
        out.append(
            f'<line x1="{legend_x:.1f}" y1="{y:.1f}" x2="{legend_x + 22:.1f}" '
            f'y2="{y:.1f}" stroke="{color}" stroke-width="2"/>'
        )
        out.append(
            f'<text x="{legend_x + 28:.1f}" y="{y + 4:.1f}" font-family="sans-serif" '
            f'font-size="11">{_escape(s.label)}</text>'
        )

    out.append(
        f'<text x="{_MARGIN_L + plot_w / 2:.1f}" y="{_HEIGHT - 8:.1f}" '
        f'font-family="sans-serif" font-size="12" text-anchor="middle">{_escape(xlabel)}</text>'
    )
    out.append(
        f'<text x="16" y="{_MARGIN_T + plot_h / 2:.1f}" font-family="sans-serif" '
        f'font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 16 {_MARGIN_T + plot_h / 2:.1f})">{_escape(ylabel)}</text>'
    )
    out.append("</svg>")

    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(out) + "\n")


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
