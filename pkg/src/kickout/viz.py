"""Deterministic SVG renderings: court diagrams, zone heatmaps, centroid
paths, and equilibrium strategy bars.

Everything is emitted with fixed numeric formatting and no timestamps or
generated ids, so the same inputs always produce byte-identical files.
"""

from __future__ import annotations

import numpy as np

from .court import CourtSpec, classify_zone_indices
from .game import DEFENDER_DISTANCES, Equilibrium
from .shotmodel import EfficiencySummary
from .trajectories import ClusterModel

SCALE = 10.0  # px per foot
MARGIN = 28.0

PALETTE = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
)


def _fmt(v: float) -> str:
    return f"{v:.2f}"


class _Svg:
    def __init__(self, width: float, height: float):
        self.parts = [
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
            f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">\n'
        ]

    def rect(self, x, y, w, h, fill, stroke="none", opacity=None):
        op = f' fill-opacity="{_fmt(opacity)}"' if opacity is not None else ""
        self.parts.append(
            f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(w)}" height="{_fmt(h)}" '
            f'fill="{fill}" stroke="{stroke}"{op}/>\n'
        )

    def line(self, x1, y1, x2, y2, stroke="#222222", width=1.5):
        self.parts.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="{stroke}" stroke-width="{_fmt(width)}"/>\n'
        )

    def polyline(self, points, stroke, width=2.0, dash=None):
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        self.parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{stroke}" '
            f'stroke-width="{_fmt(width)}"{dash_attr}/>\n'
        )

    def circle(self, cx, cy, r, stroke="#222222", fill="none", width=1.5):
        self.parts.append(
            f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" fill="{fill}" '
            f'stroke="{stroke}" stroke-width="{_fmt(width)}"/>\n'
        )

    def text(self, x, y, content, size=12.0, anchor="middle", fill="#111111"):
        self.parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="Helvetica,Arial,sans-serif" '
            f'font-size="{_fmt(size)}" text-anchor="{anchor}" fill="{fill}">{content}</text>\n'
        )

    def render(self) -> str:
        return "".join(self.parts) + "</svg>\n"


def _court_transform(court: CourtSpec):
    def to_px(x, y):
        px = MARGIN + (x + court.court_halfwidth) * SCALE
        py = MARGIN + (court.max_y - y) * SCALE
        return px, py

    width = 2 * MARGIN + 2 * court.court_halfwidth * SCALE
    height = 2 * MARGIN + (court.max_y - court.min_y) * SCALE
    return to_px, width, height


def _draw_court_lines(svg: _Svg, court: CourtSpec, to_px):
    # Boundary
    x0, y0 = to_px(-court.court_halfwidth, court.max_y)
    x1, y1 = to_px(court.court_halfwidth, court.min_y)
    svg.rect(x0, y0, x1 - x0, y1 - y0, fill="none", stroke="#222222")
    # Corner lines
    for sign in (-1.0, 1.0):
        a = to_px(sign * court.corner_line_distance, court.min_y)
        b = to_px(sign * court.corner_line_distance, court.corner_break_y)
        svg.line(*a, *b)
    # Arc between the break points, sampled densely
    theta_break = np.arcsin(min(1.0, court.corner_break_y / court.arc_radius))
    thetas = np.linspace(theta_break, np.pi - theta_break, 120)
    arc = [
        to_px(court.arc_radius * np.cos(t), court.arc_radius * np.sin(t)) for t in thetas
    ]
    svg.polyline(arc, stroke="#222222", width=1.5)
    # Rim
    svg.circle(*to_px(0.0, 0.0), 0.75 * SCALE, stroke="#cc6600")


def _blend(v: float, low=(247, 251, 255), high=(0, 104, 55)) -> str:
    v = min(1.0, max(0.0, v))
    rgb = tuple(round(a + (b - a) * v) for a, b in zip(low, high))
    return f"#{rgb[0]:02x}{rgb[1]:02x}{rgb[2]:02x}"


def heatmap_svg(summary: EfficiencySummary, court: CourtSpec, metric: str = "pps") -> str:
    """Half-court heatmap of a per-zone efficiency metric with FG% labels."""
    to_px, width, height = _court_transform(court)
    svg = _Svg(width, height + 24.0)
    values = {}
    for name, stats in summary.per_zone.items():
        values[name] = getattr(stats, metric)
    vmax = max(values.values()) if values else 1.0
    vmax = vmax if vmax > 0 else 1.0

    step = 1.0
    xs = np.arange(-court.court_halfwidth + step / 2, court.court_halfwidth, step)
    ys = np.arange(court.min_y + step / 2, court.max_y, step)
    gx, gy = np.meshgrid(xs, ys)
    idx = classify_zone_indices(gx.ravel(), gy.ravel(), court).reshape(gx.shape)
    names = [rule.name.value for rule in court.zones]
    anchors: dict[str, list] = {}
    for i in range(gx.shape[0]):
        for j in range(gx.shape[1]):
            if idx[i, j] < 0:
                continue
            name = names[idx[i, j]]
            value = values.get(name)
            fill = "#eeeeee" if value is None else _blend(value / vmax)
            px, py = to_px(gx[i, j] - step / 2, gy[i, j] + step / 2)
            svg.rect(px, py, step * SCALE, step * SCALE, fill=fill)
            anchors.setdefault(name, []).append((gx[i, j], gy[i, j]))
    _draw_court_lines(svg, court, to_px)
    for name in sorted(anchors):
        stats = summary.per_zone.get(name)
        if stats is None or stats.attempts == 0:
            continue
        pts = np.array(anchors[name])
        px, py = to_px(float(pts[:, 0].mean()), float(pts[:, 1].mean()))
        svg.text(px, py, f"{100 * stats.fg_pct:.1f}%", size=11.0)
    svg.text(
        MARGIN,
        height + 12.0,
        f"zone fill: {metric} (max {vmax:.2f}), labels: FG%",
        anchor="start",
        size=11.0,
    )
    return svg.render()


def zone_reference_svg(court: CourtSpec) -> str:
    """Reference figure of the zone partition used by this court config."""
    to_px, width, height = _court_transform(court)
    svg = _Svg(width + 150.0, height)
    step = 1.0
    xs = np.arange(-court.court_halfwidth + step / 2, court.court_halfwidth, step)
    ys = np.arange(court.min_y + step / 2, court.max_y, step)
    gx, gy = np.meshgrid(xs, ys)
    idx = classify_zone_indices(gx.ravel(), gy.ravel(), court).reshape(gx.shape)
    for i in range(gx.shape[0]):
        for j in range(gx.shape[1]):
            if idx[i, j] < 0:
                continue
            px, py = to_px(gx[i, j] - step / 2, gy[i, j] + step / 2)
            svg.rect(px, py, step * SCALE, step * SCALE, fill=PALETTE[idx[i, j] % 10], opacity=0.55)
    _draw_court_lines(svg, court, to_px)
    for i, rule in enumerate(court.zones):
        y = 20.0 + 16.0 * i
        svg.rect(width + 8.0, y - 10.0, 12.0, 12.0, fill=PALETTE[i % 10], opacity=0.55)
        svg.text(width + 26.0, y, rule.name.value, anchor="start", size=11.0)
    return svg.render()


def centroid_paths_svg(model: ClusterModel, court: CourtSpec) -> str:
    """Cluster centroid movement: shooter solid, defender dashed."""
    to_px, width, height = _court_transform(court)
    svg = _Svg(width + 170.0, height)
    _draw_court_lines(svg, court, to_px)
    sizes = np.bincount(model.assignments, minlength=model.k)
    for j in range(model.k):
        vec = model.centroids[j]
        half = len(vec) // 2
        shooter = vec[:half].reshape(-1, 2)
        defender = vec[half:].reshape(-1, 2)
        color = PALETTE[j % 10]
        svg.polyline([to_px(x, y) for x, y in shooter], stroke=color, width=2.2)
        svg.polyline([to_px(x, y) for x, y in defender], stroke=color, width=1.6, dash="5,4")
        end = to_px(*shooter[-1])
        svg.circle(*end, 3.5, stroke=color, fill=color)
        y = 20.0 + 16.0 * j
        svg.rect(width + 8.0, y - 10.0, 12.0, 12.0, fill=color)
        svg.text(width + 26.0, y, f"cluster {j} (n={int(sizes[j])})", anchor="start", size=11.0)
    svg.text(
        width + 8.0,
        20.0 + 16.0 * model.k + 8.0,
        "solid: shooter, dashed: defender",
        anchor="start",
        size=10.0,
    )
    return svg.render()


def strategy_bars_svg(eq: Equilibrium, alpha: float | None = None) -> str:
    """Bar chart of the defender's equilibrium mix over the 21 distance bins."""
    bar_w, gap, left, base, chart_h = 22.0, 4.0, 50.0, 220.0, 180.0
    width = left + 21 * (bar_w + gap) + 30.0
    svg = _Svg(width, base + 60.0)
    pmax = max(float(eq.defender_mix.max()), 1e-9)
    svg.line(left - 6.0, base, width - 24.0, base)
    for i, d in enumerate(DEFENDER_DISTANCES):
        p = float(eq.defender_mix[i])
        h = chart_h * p / pmax
        x = left + i * (bar_w + gap)
        if p > 1e-12:
            svg.rect(x, base - h, bar_w, h, fill="#1f77b4")
        svg.text(x + bar_w / 2, base + 14.0, str(d), size=10.0)
        if p > 0.005:
            svg.text(x + bar_w / 2, base - h - 4.0, f"{p:.2f}", size=9.0)
    title = "defender equilibrium mix by distance (ft)"
    if alpha is not None:
        title += f", alpha={alpha:g}"
    svg.text(left - 6.0, 24.0, title, anchor="start", size=13.0)
    svg.text(
        left - 6.0,
        42.0,
        f"value={eq.value:.3f} pts, expected distance={eq.expected_defender_distance:.2f} ft",
        anchor="start",
        size=11.0,
    )
    svg.text(width / 2, base + 34.0, "distance from corner shooter (ft)", size=11.0)
    return svg.render()
