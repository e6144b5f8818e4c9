"""Minimal static SVG emitter for zero scatters and attractor geometry.

Hand-rolled rather than matplotlib so the output structure is predictable:
one <circle> for the unit circle, one <path> per curve, one <use> marker
per zero.  Coordinates are mapped from the complex plane into a square
viewBox with the real axis rightward and imaginary axis upward.
"""

from __future__ import annotations


class SvgCanvas:
    def __init__(self, size: int = 640, box: float = 1.25):
        self.size = size
        self.box = box
        self.elements: list[str] = []

    def _xy(self, z: complex):
        half = self.size / 2
        return (half + z.real / self.box * half, half - z.imag / self.box * half)

    def circle(self, center: complex, radius: float, stroke="#888", width=1.0, dashed=False):
        cx, cy = self._xy(center)
        r = radius / self.box * self.size / 2
        dash = ' stroke-dasharray="4 3"' if dashed else ""
        self.elements.append(
            f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{r:.2f}" fill="none" '
            f'stroke="{stroke}" stroke-width="{width}"{dash}/>'
        )

    def path(self, points, stroke="#d62728", width=1.4):
        if len(points) < 2:
            return
        coords = [self._xy(z) for z in points]
        d = f"M {coords[0][0]:.2f} {coords[0][1]:.2f} " + " ".join(
            f"L {x:.2f} {y:.2f}" for x, y in coords[1:]
        )
        self.elements.append(
            f'<path d="{d}" fill="none" stroke="{stroke}" stroke-width="{width}"/>'
        )

    def dots(self, points, radius=1.6, fill="#1f77b4"):
        for z in points:
            x, y = self._xy(z)
            self.elements.append(
                f'<use href="#dot" x="{x:.2f}" y="{y:.2f}" fill="{fill}"/>'
            )
        self._dot_radius = radius

    def marker(self, z: complex, label: str = "", fill="#000"):
        x, y = self._xy(z)
        self.elements.append(
            f'<rect x="{x - 3:.2f}" y="{y - 3:.2f}" width="6" height="6" fill="{fill}"/>'
        )
        if label:
            self.elements.append(
                f'<text x="{x + 5:.2f}" y="{y - 5:.2f}" font-size="12">{label}</text>'
            )

    def text(self, z: complex, s: str, size=12):
        x, y = self._xy(z)
        self.elements.append(f'<text x="{x:.2f}" y="{y:.2f}" font-size="{size}">{s}</text>')

    def render(self) -> str:
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.size}" '
            f'height="{self.size}" viewBox="0 0 {self.size} {self.size}">\n'
        )
        if hasattr(self, "_dot_radius"):
            head += f'<defs><circle id="dot" r="{self._dot_radius}"/></defs>\n'
        head += '<rect width="100%" height="100%" fill="white"/>\n'
        return head + "\n".join(self.elements) + "\n</svg>\n"

    def write(self, path):
        with open(path, "w", newline="\n") as fh:
            fh.write(self.render())


def zero_scatter_svg(path, zeros, unit_circle=True, extra_curves=(), markers=()):
    cv = SvgCanvas()
    if unit_circle:
        cv.circle(0j, 1.0, stroke="#999", dashed=True)
    for pts in extra_curves:
        cv.path(pts)
    cv.dots(zeros)
    for z, label in markers:
        cv.marker(z, label)
    cv.write(path)


def attractor_svg(path, curves, triple_point=None):
    """Exactly one unit circle and one path per curve (structure is tested)."""
    cv = SvgCanvas()
    cv.circle(0j, 1.0, stroke="#555")
    colors = ["#d62728", "#2ca02c", "#9467bd"]
    for pts, color in zip(curves, colors):
        cv.path(pts, stroke=color)
    if triple_point is not None:
        cv.marker(triple_point, "T")
    cv.write(path)


def density_svg(path, arclengths, densities, size=640, clip_quantile=0.98):
    """Density as a function of arclength, one polyline per curve."""
    import math

    cv_lines = []
    finite = [d for ds in densities for d in ds if math.isfinite(d)]
    finite.sort()
    ymax = finite[min(len(finite) - 1, int(clip_quantile * len(finite)))] * 1.05
    xmax = max(max(s) for s in arclengths if len(s))
    pad = 40
    w = h = size
    colors = ["#d62728", "#2ca02c", "#9467bd"]
    for (ss, ds), color in zip(zip(arclengths, densities), colors):
        pts = []
        for s, d in zip(ss, ds):
            if not math.isfinite(d) or d > ymax:
                continue
            x = pad + s / xmax * (w - 2 * pad)
            y = h - pad - d / ymax * (h - 2 * pad)
            pts.append(f"{x:.1f},{y:.1f}")
        cv_lines.append(
            f'<polyline points="{" ".join(pts)}" fill="none" stroke="{color}" stroke-width="1.4"/>'
        )
    body = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">\n'
        f'<rect width="100%" height="100%" fill="white"/>\n'
        f'<line x1="{pad}" y1="{h - pad}" x2="{w - pad}" y2="{h - pad}" stroke="#000"/>\n'
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{h - pad}" stroke="#000"/>\n'
        + "\n".join(cv_lines)
        + "\n</svg>\n"
    )
    with open(path, "w", newline="\n") as fh:
        fh.write(body)
