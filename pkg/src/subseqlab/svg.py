"""Hand-rolled SVG line charts: polylines, axes, ticks, legend.  No plotting
dependency; the curves these figures need are simple enough that raw SVG is
less machinery than any charting stack."""

from __future__ import annotations

import math

_WIDTH, _HEIGHT = 760, 500
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 70, 160, 40, 55


def _ticks(lo: float, hi: float, n: int = 6):
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / n
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1, 2, 2.5, 5, 10):
        if raw <= mult * mag:
            step = mult * mag
            break
    start = math.ceil(lo / step) * step
    out = []
    t = start
    while t <= hi + 1e-12:
        out.append(round(t, 12))
        t += step
    return out


def render_line_chart(series, x_label: str, y_label: str, title: str) -> str:
    """series: list of dicts with keys name, color, points (list of (x, y)),
    and optional dashed=True.  Returns the SVG document as a string."""
    xs = [p[0] for s in series for p in s["points"]]
    ys = [p[1] for s in series for p in s["points"] if math.isfinite(p[1])]
    if not xs or not ys:
        raise ValueError("nothing to plot")
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys + [0.0]), max(ys)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    pad = 0.05 * (y_hi - y_lo or 1.0)
    y_lo, y_hi = y_lo - pad, y_hi + pad
    plot_w = _WIDTH - _MARGIN_L - _MARGIN_R
    plot_h = _HEIGHT - _MARGIN_T - _MARGIN_B

    def px(x):
        return _MARGIN_L + plot_w * (x - x_lo) / (x_hi - x_lo)

    def py(y):
        return _MARGIN_T + plot_h * (1.0 - (y - y_lo) / (y_hi - y_lo))

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}" font-family="sans-serif" font-size="13">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH / 2:.1f}" y="22" text-anchor="middle" font-size="16">{title}</text>',
    ]
    ax_bottom = _MARGIN_T + plot_h
    ax_right = _MARGIN_L + plot_w
    parts.append(
        f'<line x1="{_MARGIN_L}" y1="{ax_bottom}" x2="{ax_right}" y2="{ax_bottom}" stroke="black"/>'
    )
    parts.append(
        f'<line x1="{_MARGIN_L}" y1="{_MARGIN_T}" x2="{_MARGIN_L}" y2="{ax_bottom}" stroke="black"/>'
    )
    for t in _ticks(x_lo, x_hi):
        parts.append(f'<line x1="{px(t):.1f}" y1="{ax_bottom}" x2="{px(t):.1f}" y2="{ax_bottom + 5}" stroke="black"/>')
        parts.append(f'<text x="{px(t):.1f}" y="{ax_bottom + 20}" text-anchor="middle">{t:g}</text>')
    for t in _ticks(y_lo, y_hi):
        parts.append(f'<line x1="{_MARGIN_L - 5}" y1="{py(t):.1f}" x2="{_MARGIN_L}" y2="{py(t):.1f}" stroke="black"/>')
        parts.append(f'<text x="{_MARGIN_L - 9}" y="{py(t) + 4:.1f}" text-anchor="end">{t:g}</text>')
    parts.append(
        f'<text x="{_MARGIN_L + plot_w / 2:.1f}" y="{_HEIGHT - 12}" text-anchor="middle">{x_label}</text>'
    )
    parts.append(
        f'<text x="18" y="{_MARGIN_T + plot_h / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {_MARGIN_T + plot_h / 2:.1f})">{y_label}</text>'
    )
    legend_y = _MARGIN_T + 10
    for s in series:
        pts = [(x, y) for x, y in s["points"] if math.isfinite(y)]
        if not pts:
            continue
        coords = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in pts)
        dash = ' stroke-dasharray="6 4"' if s.get("dashed") else ""
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{s["color"]}" stroke-width="2"{dash}/>'
        )
        lx = ax_right + 12
        parts.append(f'<line x1="{lx}" y1="{legend_y}" x2="{lx + 26}" y2="{legend_y}" stroke="{s["color"]}" stroke-width="2"{dash}/>')
        parts.append(f'<text x="{lx + 32}" y="{legend_y + 4}">{s["name"]}</text>')
        legend_y += 20
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
