"""Self-contained SVG output: the regime map and an error-versus-n chart.

Coordinates are printed with fixed decimals so files are byte-stable.
"""

from __future__ import annotations

import math
from html import escape

REGIME_FILL = {
    "sub_critical": "#f4c7c3",
    "critical": "#fce8b2",
    "super_critical": "#b7e1cd",
}


def _f(v):
    return f"{v:.2f}"


def _heat(value, lo, hi):
    # log10 error -> blue (small) .. red (large)
    t = 0.5 if hi <= lo else (value - lo) / (hi - lo)
    t = min(max(t, 0.0), 1.0)
    r, g, b = int(40 + 200 * t), int(90 + 40 * (1 - abs(2 * t - 1))), int(220 - 180 * t)
    return f"#{r:02x}{g:02x}{b:02x}"


def phase_svg(cells, wall_beta, title="Regime map") -> str:
    """Cells are laid out by ``log(beta)`` (x) and ``N`` (y); the wall is a vertical line."""
    betas = sorted({float(c.beta) for c in cells})
    Ns = sorted({c.N for c in cells})
    wall = float(wall_beta)
    lo = math.log(min(betas + [wall]))
    hi = math.log(max(betas + [wall]))
    if hi == lo:
        hi = lo + 1.0
    width, height = 760, 120 + 60 * len(Ns)
    left, right, top = 80, 40, 70
    plot_w = width - left - right
    pad = 0.08 * (hi - lo)

    def X(beta):
        return left + plot_w * (math.log(beta) - lo + pad) / (hi - lo + 2 * pad)

    def Y(N):
        return top + 60 * (len(Ns) - 1 - Ns.index(N))

    measured = [c.log10_error_or_bound for c in cells if not math.isnan(c.log10_error_or_bound)]
    vmin, vmax = (min(measured), max(measured)) if measured else (0.0, 1.0)
    wx = X(wall)
    bottom = top + 60 * len(Ns)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<title>{escape(title)}</title>',
        f'<rect x="{left}" y="{top}" width="{_f(wx - left)}" height="{60 * len(Ns)}" '
        f'fill="{REGIME_FILL["sub_critical"]}" class="region sub_critical"/>',
        f'<rect x="{_f(wx)}" y="{top}" width="{_f(left + plot_w - wx)}" height="{60 * len(Ns)}" '
        f'fill="{REGIME_FILL["super_critical"]}" class="region super_critical"/>',
        f'<rect x="{_f(wx - 6)}" y="{top}" width="12" height="{60 * len(Ns)}" '
        f'fill="{REGIME_FILL["critical"]}" class="region critical"/>',
        f'<text x="{_f((left + wx) / 2)}" y="{top - 10}" text-anchor="middle" class="label">sub-critical</text>',
        f'<text x="{_f(wx)}" y="{top - 28}" text-anchor="middle" class="label">critical</text>',
        f'<text x="{_f((wx + left + plot_w) / 2)}" y="{top - 10}" text-anchor="middle" '
        f'class="label">super-critical</text>',
    ]
    for c in cells:
        x, y = X(float(c.beta)), Y(c.N)
        v = c.log10_error_or_bound
        fill = "#d0d0d0" if math.isnan(v) else _heat(v, vmin, vmax)
        text = c.measured if math.isnan(v) else f"{v:.2f}"
        out.append(
            f'<rect x="{_f(x - 34)}" y="{_f(y + 8)}" width="68" height="44" fill="{fill}" '
            f'stroke="#333" class="cell {c.regime.value} {c.measured}"/>'
        )
        out.append(f'<text x="{_f(x)}" y="{_f(y + 34)}" text-anchor="middle">{escape(text)}</text>')
    for beta in betas:
        out.append(f'<text x="{_f(X(beta))}" y="{bottom + 18}" text-anchor="middle">{beta:g}</text>')
    for N in Ns:
        out.append(f'<text x="{left - 10}" y="{_f(Y(N) + 34)}" text-anchor="end">N={N}</text>')
    out += [
        f'<line x1="{_f(wx)}" y1="{top - 20}" x2="{_f(wx)}" y2="{bottom}" stroke="#000" '
        f'stroke-width="2" stroke-dasharray="6,4" class="wall"/>',
        f'<text x="{_f(wx + 4)}" y="{bottom + 36}" class="wall-label">wall: beta = a*b^3 = {wall:g}</text>',
        f'<text x="{_f(left + plot_w / 2)}" y="{height - 8}" text-anchor="middle">'
        'schedule growth beta (log scale); cells show log10 of sup error</text>',
        "</svg>",
        "",
    ]
    return "\n".join(out)


def error_chart_svg(ns, errors, bounds, title="Error versus n") -> str:
    """Log-log chart of measured sup error and the analytic bound (``None`` points skipped)."""
    width, height, left, right, top, bot = 640, 420, 80, 30, 40, 60
    pts = [(n, e) for n, e in zip(ns, errors) if e is not None and e > 0]
    bpts = [(n, b) for n, b in zip(ns, bounds) if b is not None and b > 0]
    xs = [math.log10(n) for n, _ in pts + bpts] or [0.0, 1.0]
    ys = [math.log10(v) for _, v in pts + bpts] or [0.0, 1.0]
    x0, x1 = min(xs), max(xs) if max(xs) > min(xs) else min(xs) + 1
    y0, y1 = min(ys), max(ys) if max(ys) > min(ys) else min(ys) + 1

    def P(n, v):
        px = left + (width - left - right) * (math.log10(n) - x0) / (x1 - x0)
        py = height - bot - (height - top - bot) * (math.log10(v) - y0) / (y1 - y0)
        return f"{px:.2f},{py:.2f}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<title>{escape(title)}</title>',
        f'<rect x="{left}" y="{top}" width="{width - left - right}" height="{height - top - bot}" '
        'fill="none" stroke="#333"/>',
    ]
    if pts:
        out.append(f'<polyline points="{" ".join(P(*q) for q in pts)}" fill="none" stroke="#1f77b4" '
                   'stroke-width="2" class="measured"/>')
    if bpts:
        out.append(f'<polyline points="{" ".join(P(*q) for q in bpts)}" fill="none" stroke="#d62728" '
                   'stroke-width="2" stroke-dasharray="6,4" class="bound"/>')
    for n, _ in pts:
        px = P(n, 10 ** y0).split(",")[0]
        out.append(f'<text x="{px}" y="{height - bot + 18}" text-anchor="middle">{n}</text>')
    out += [
        f'<text x="{left + 10}" y="{top + 16}" fill="#1f77b4">measured sup error</text>',
        f'<text x="{left + 10}" y="{top + 32}" fill="#d62728">analytic bound</text>',
        f'<text x="{(width + left) // 2}" y="{height - 12}" text-anchor="middle">n (log scale)</text>',
        f'<text x="16" y="{(height) // 2}" transform="rotate(-90 16 {(height) // 2})" '
        f'text-anchor="middle">log10 error: {y0:.2f} .. {y1:.2f}</text>',
        "</svg>",
        "",
    ]
    return "\n".join(out)
