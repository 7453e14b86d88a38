"""Tiny SVG line-plot writer; enough to eyeball a CSV series."""
import math

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")


def _fmt(v):
    return f"{v:.2f}"


def polyline_svg(series, xlabel="", ylabel="", width=640, height=420):
    """Render ``{label: (xs, ys)}`` as an SVG document string."""
    pad_l, pad_r, pad_t, pad_b = 60, 20, 20, 45
    pts = [(x, y) for xs, ys in series.values() for x, y in zip(xs, ys)
           if math.isfinite(x) and math.isfinite(y)]
    if not pts:
        pts = [(0.0, 0.0), (1.0, 1.0)]
    x0, x1 = min(p[0] for p in pts), max(p[0] for p in pts)
    y0, y1 = min(p[1] for p in pts), max(p[1] for p in pts)
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    iw, ih = width - pad_l - pad_r, height - pad_t - pad_b

    def sx(x):
        return pad_l + (x - x0) / (x1 - x0) * iw

    def sy(y):
        return pad_t + (1.0 - (y - y0) / (y1 - y0)) * ih

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'font-family="sans-serif" font-size="11">',
           f'<rect x="{pad_l}" y="{pad_t}" width="{iw}" height="{ih}" fill="none" stroke="#000"/>',
           f'<text x="{pad_l}" y="{height - 8}">{x0:.4g}</text>',
           f'<text x="{width - pad_r}" y="{height - 8}" text-anchor="end">{x1:.4g}</text>',
           f'<text x="{pad_l + iw / 2:.1f}" y="{height - 8}" text-anchor="middle">{xlabel}</text>',
           f'<text x="{pad_l - 4}" y="{pad_t + ih:.1f}" text-anchor="end">{y0:.4g}</text>',
           f'<text x="{pad_l - 4}" y="{pad_t + 10}" text-anchor="end">{y1:.4g}</text>',
           f'<text x="12" y="{pad_t + ih / 2:.1f}" transform="rotate(-90 12 {pad_t + ih / 2:.1f})" '
           f'text-anchor="middle">{ylabel}</text>']
    for i, (label, (xs, ys)) in enumerate(series.items()):
        color = _COLORS[i % len(_COLORS)]
        coords = " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in zip(xs, ys)
                          if math.isfinite(x) and math.isfinite(y))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{coords}"/>')
        out.append(f'<text x="{width - pad_r - 4}" y="{pad_t + 14 * (i + 1)}" text-anchor="end" '
                   f'fill="{color}">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
