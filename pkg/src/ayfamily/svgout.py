"""Flat SVG pictures of triangulated surfaces, for eyeballing builds.

The drawing is a developed view: every triangle is drawn where its
coordinates put it, gluings are not unfolded.  Exact coordinates are
rounded only at the formatting step, so the output is a deterministic
function of the complex.  Cone points (vertex classes of winding != 1)
are marked with filled dots.
"""

from __future__ import annotations

from .surface import SurfaceComplex

_FILL = "#e8f0f8"
_STROKE = "#40506a"
_CONE = "#c03028"


def _fmt(v: float) -> str:
    return f"{v:.4f}".rstrip("0").rstrip(".")


def surface_svg(S: SurfaceComplex, *, width: int = 640, margin: int = 20) -> str:
    """Render the complex as a standalone SVG document (a str)."""
    pts = [(float(p.x), float(p.y)) for tri in S.triangles for p in tri]
    xs = [x for x, _ in pts]
    ys = [y for _, y in pts]
    min_x, max_x = min(xs), max(xs)
    min_y, max_y = min(ys), max(ys)
    span = max(max_x - min_x, max_y - min_y, 1e-9)
    scale = (width - 2 * margin) / span
    height = 2 * margin + (max_y - min_y) * scale

    def place(x: float, y: float) -> tuple[float, float]:
        return (margin + (x - min_x) * scale, margin + (max_y - y) * scale)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{_fmt(height)}" viewBox="0 0 {width} {_fmt(height)}">',
        f'<g fill="{_FILL}" stroke="{_STROKE}" stroke-width="1" '
        'stroke-linejoin="round">',
    ]
    for ti, tri in enumerate(S.triangles):
        corners = " ".join(
            "{},{}".format(*map(_fmt, place(float(p.x), float(p.y))))
            for p in tri
        )
        lines.append(f'<polygon data-triangle="{ti}" points="{corners}"/>')
    lines.append("</g>")

    windings = S.cone_windings()
    cone_corners = sorted(
        (t, i)
        for t in range(len(S.triangles))
        for i in range(3)
        if windings[S.corner_class[(t, i)]] != 1
    )
    if cone_corners:
        lines.append(f'<g fill="{_CONE}" stroke="none">')
        for t, i in cone_corners:
            p = S.triangles[t][i]
            cx, cy = place(float(p.x), float(p.y))
            lines.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="3"/>')
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
