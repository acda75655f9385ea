"""Deterministic SVG rendering of marked subdivisions and tropical curves.

Conventions (also documented in the README): marked lattice points are solid
black, unmarked ones white with a black outline, curve edges of weight >= 2
carry a weight label, the origin gets a distinct marker on curve renders, and
rays are clipped at the padded viewport.  The y-axis points up.
"""

from fractions import Fraction

from .curves import TropicalCurve
from .subdivisions import MarkedSubdivision

SCALE = 60
POINT_RADIUS = 5
STROKE = "#202020"
CURVE_COLOR = "#1f6f43"
ORIGIN_COLOR = "#c01818"
FONT = "font-family=\"monospace\" font-size=\"14\""


def _fmt(x) -> str:
    return f"{float(x):.3f}"


class _Canvas:
    def __init__(self, xmin, xmax, ymin, ymax, padding):
        pad_x = (xmax - xmin) * padding
        pad_y = (ymax - ymin) * padding
        pad = max(pad_x, pad_y, Fraction(1))
        self.xmin, self.xmax = xmin - pad, xmax + pad
        self.ymin, self.ymax = ymin - pad, ymax + pad
        self.width = float(self.xmax - self.xmin) * SCALE
        self.height = float(self.ymax - self.ymin) * SCALE

    def to_svg(self, p):
        x = (Fraction(p[0]) - self.xmin) * SCALE
        y = (self.ymax - Fraction(p[1])) * SCALE
        return _fmt(x), _fmt(y)

    def clip_ray(self, start, direction):
        """Largest segment of start + t*direction, t >= 0, inside the canvas."""
        best = None
        sx, sy = Fraction(start[0]), Fraction(start[1])
        dx, dy = direction
        for bound, coord, d in (
            (self.xmin, sx, dx),
            (self.xmax, sx, dx),
            (self.ymin, sy, dy),
            (self.ymax, sy, dy),
        ):
            if d == 0:
                continue
            t = (Fraction(bound) - coord) / d
            if t > 0:
                other = (sx + t * dx, sy + t * dy)
                if (
                    self.xmin <= other[0] <= self.xmax
                    and self.ymin <= other[1] <= self.ymax
                ):
                    if best is None or t > best[0]:
                        best = (t, other)
        return best[1] if best else (sx, sy)


def _header(canvas):
    return (
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
        f"width=\"{_fmt(canvas.width)}\" height=\"{_fmt(canvas.height)}\" "
        f"viewBox=\"0 0 {_fmt(canvas.width)} {_fmt(canvas.height)}\">"
    )


def _subdivision_body(ms: MarkedSubdivision, canvas, parts):
    marked = set(ms.marked_union())
    for cell in ms.cells:
        pts = " ".join(",".join(canvas.to_svg(p)) for p in cell.polygon)
        parts.append(
            f"<polygon points=\"{pts}\" fill=\"none\" stroke=\"{STROKE}\" stroke-width=\"2\"/>"
        )
    for idx, p in enumerate(ms.config.points):
        x, y = canvas.to_svg(p)
        fill = STROKE if idx in marked else "#ffffff"
        parts.append(
            f"<circle cx=\"{x}\" cy=\"{y}\" r=\"{POINT_RADIUS}\" "
            f"fill=\"{fill}\" stroke=\"{STROKE}\" stroke-width=\"1.5\"/>"
        )


def _curve_body(curve: TropicalCurve, canvas, parts):
    for e in curve.edges:
        a = curve.vertices[e.ends[0]]
        b = curve.vertices[e.ends[1]]
        (x1, y1), (x2, y2) = canvas.to_svg(a), canvas.to_svg(b)
        parts.append(
            f"<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" "
            f"stroke=\"{CURVE_COLOR}\" stroke-width=\"2.5\"/>"
        )
        if e.weight >= 2:
            mx = (Fraction(a[0]) + Fraction(b[0])) / 2
            my = (Fraction(a[1]) + Fraction(b[1])) / 2
            tx, ty = canvas.to_svg((mx, my))
            parts.append(
                f"<text x=\"{tx}\" y=\"{ty}\" dx=\"6\" dy=\"-6\" {FONT} "
                f"fill=\"{CURVE_COLOR}\">{e.weight}</text>"
            )
    for r in curve.rays:
        start = curve.vertices[r.vertex]
        end = canvas.clip_ray(start, r.direction)
        (x1, y1), (x2, y2) = canvas.to_svg(start), canvas.to_svg(end)
        parts.append(
            f"<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" "
            f"stroke=\"{CURVE_COLOR}\" stroke-width=\"2.5\"/>"
        )
        if r.weight >= 2:
            mx = (Fraction(start[0]) + Fraction(end[0])) / 2
            my = (Fraction(start[1]) + Fraction(end[1])) / 2
            tx, ty = canvas.to_svg((mx, my))
            parts.append(
                f"<text x=\"{tx}\" y=\"{ty}\" dx=\"6\" dy=\"-6\" {FONT} "
                f"fill=\"{CURVE_COLOR}\">{r.weight}</text>"
            )
    for v in curve.vertices:
        x, y = canvas.to_svg(v)
        parts.append(
            f"<circle cx=\"{x}\" cy=\"{y}\" r=\"3.5\" fill=\"{CURVE_COLOR}\"/>"
        )
    ox, oy = canvas.to_svg((0, 0))
    parts.append(
        f"<circle cx=\"{ox}\" cy=\"{oy}\" r=\"{POINT_RADIUS}\" fill=\"{ORIGIN_COLOR}\"/>"
    )


def _curve_bbox(curve: TropicalCurve):
    xs = [Fraction(v[0]) for v in curve.vertices] + [Fraction(0)]
    ys = [Fraction(v[1]) for v in curve.vertices] + [Fraction(0)]
    for r in curve.rays:
        v = curve.vertices[r.vertex]
        xs.append(Fraction(v[0]) + r.direction[0])
        ys.append(Fraction(v[1]) + r.direction[1])
    return min(xs), max(xs), min(ys), max(ys)


def render_svg(obj, padding=Fraction(1, 5)) -> str:
    """Standalone SVG document for a MarkedSubdivision or a TropicalCurve.

    The output is byte-identical for identical input.  padding widens the
    viewport relative to the data bounding box (default 20%); rays are
    truncated at that viewport.
    """
    padding = Fraction(padding)
    parts = []
    if isinstance(obj, MarkedSubdivision):
        xs = [p[0] for p in obj.config.points]
        ys = [p[1] for p in obj.config.points]
        canvas = _Canvas(
            Fraction(min(xs)), Fraction(max(xs)), Fraction(min(ys)), Fraction(max(ys)), padding
        )
        parts.append(_header(canvas))
        _subdivision_body(obj, canvas, parts)
    elif isinstance(obj, TropicalCurve):
        canvas = _Canvas(*_curve_bbox(obj), padding)
        parts.append(_header(canvas))
        _curve_body(obj, canvas, parts)
    else:
        raise TypeError("render_svg expects a MarkedSubdivision or TropicalCurve")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_pair(ms: MarkedSubdivision, curve: TropicalCurve, padding=Fraction(1, 5)) -> str:
    """Subdivision and dual curve side by side in one document."""
    left = render_svg(ms, padding)
    right = render_svg(curve, padding)

    def body(doc):
        inner = doc.split(">", 1)[1]
        return inner.rsplit("</svg>", 1)[0]

    def dims(doc):
        head = doc.split(">", 1)[0]
        w = float(head.split("width=\"")[1].split("\"")[0])
        h = float(head.split("height=\"")[1].split("\"")[0])
        return w, h

    lw, lh = dims(left)
    rw, rh = dims(right)
    gap = 40.0
    width, height = lw + rw + gap, max(lh, rh)
    return (
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
        f"width=\"{_fmt(width)}\" height=\"{_fmt(height)}\" "
        f"viewBox=\"0 0 {_fmt(width)} {_fmt(height)}\">\n"
        f"<g>{body(left)}</g>\n"
        f"<g transform=\"translate({_fmt(lw + gap)},0)\">{body(right)}</g>\n"
        "</svg>\n"
    )
