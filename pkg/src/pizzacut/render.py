"""Static SVG figures of an instance and an arrangement."""

from __future__ import annotations

from fractions import Fraction

from .arrangement import Arrangement
from .geometry import Point, orientation_value
from .instance import PointFamily

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
           "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f")
WIDTH = 600


def _split(poly, a, b):
    """Split a convex polygon by the line ``a -> b`` into (left, right)."""
    left, right = [], []
    k = len(poly)
    for i in range(k):
        p, q = poly[i], poly[(i + 1) % k]
        fp, fq = orientation_value(a, b, p), orientation_value(a, b, q)
        if fp >= 0:
            left.append(p)
        if fp <= 0:
            right.append(p)
        if fp * fq < 0:
            t = Fraction(fp) / (fp - fq)
            x = Point(p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
            left.append(x)
            right.append(x)
    return left, right


def _area2(poly):
    return sum(poly[i][0] * poly[(i + 1) % len(poly)][1] - poly[(i + 1) % len(poly)][0] * poly[i][1]
               for i in range(len(poly)))


def _cells(box, lines):
    cells = [box]
    for a, b in lines:
        nxt = []
        for c in cells:
            for part in _split(c, a, b):
                if len(part) >= 3 and _area2(part) != 0:
                    nxt.append(part)
        cells = nxt
    return cells


def _chord(box, a, b):
    pts = [p for part in _split(box, a, b) for p in part if orientation_value(a, b, p) == 0]
    if not pts:
        return None
    pts.sort()
    return pts[0], pts[-1]


def render_svg(family: PointFamily, arr: Arrangement) -> str:
    """Byte-for-byte deterministic SVG: points coloured by set, lines clipped
    to a padded bounding box, the positive parity region shaded."""
    anchors = [family.resolve(x) for x in arr.anchors()]
    pts = list(family.points) + anchors
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    w = max(max(xs) - min(xs), max(ys) - min(ys), Fraction(1))
    pad = w / 10
    x0, x1 = min(xs) - pad, max(xs) + pad
    y0, y1 = min(ys) - pad, max(ys) + pad
    box = [Point(x0, y0), Point(x1, y0), Point(x1, y1), Point(x0, y1)]
    scale = Fraction(WIDTH) / (x1 - x0)
    height = (y1 - y0) * scale

    def sx(x):
        return f"{float((x - x0) * scale):.3f}"

    def sy(y):
        return f"{float((y1 - y) * scale):.3f}"

    lines = []
    for l in arr.lines:
        a, b = family.resolve(l.a), family.resolve(l.b)
        lines.append((a, b) if l.positive_left else (b, a))
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
           f'height="{float(height):.3f}" viewBox="0 0 {WIDTH} {float(height):.3f}">',
           f'<rect x="0" y="0" width="{WIDTH}" height="{float(height):.3f}" fill="white"/>']
    for cell in _cells(box, lines):
        cx = sum(p[0] for p in cell) / len(cell)
        cy = sum(p[1] for p in cell) / len(cell)
        par = sum(1 for a, b in lines if orientation_value(a, b, (cx, cy)) > 0) % 2
        if par == 0:
            path = " ".join(f"{sx(p[0])},{sy(p[1])}" for p in cell)
            out.append(f'<polygon points="{path}" fill="#e6e6e6" stroke="none"/>')
    for a, b in lines:
        ch = _chord(box, a, b)
        if ch is not None:
            p, q = ch
            out.append(f'<line x1="{sx(p[0])}" y1="{sy(p[1])}" x2="{sx(q[0])}" '
                       f'y2="{sy(q[1])}" stroke="black" stroke-width="1.5"/>')
    for s, members in enumerate(family.sets):
        colour = PALETTE[s % len(PALETTE)]
        for p in members:
            out.append(f'<circle cx="{sx(p.x)}" cy="{sy(p.y)}" r="4" fill="{colour}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
