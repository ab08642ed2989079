"""CSV error profiles and self-contained SVG error plots."""

import math

import numpy as np

from .errors import ValidationError
from .supmetric import chi_on_points

__all__ = ["error_profile", "write_csv", "write_svg"]

CSV_HEADER = "# grid-major order: radial index outer loop, angular index inner loop"


def error_profile(f, approximant, points) -> list[tuple[float, float, float]]:
    """Rows (z_re, z_im, chi_error) over the given points, grid-major."""
    points = np.asarray(points, complex)
    chis = chi_on_points(f, approximant, points)
    return [(float(z.real), float(z.imag), float(c)) for z, c in zip(points, chis)]


def write_csv(path, rows):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(CSV_HEADER + "\n")
        fh.write("z_re,z_im,chi_error\n")
        for re, im, err in rows:
            fh.write(f"{re!r},{im!r},{err!r}\n")


def read_csv(path) -> list[tuple[float, float, float]]:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or line.startswith("z_re"):
                continue
            a, b, c = line.split(",")
            rows.append((float(a), float(b), float(c)))
    if not rows:
        raise ValidationError(f"no data rows in {path}")
    return rows


def write_svg(path, rows, size: int = 480):
    """Point heat map of the chordal error, opacity proportional to error.

    Renders one marker per sample; for polar grids this reads as a polar
    heat map.  No external renderer involved.
    """
    xs = [r[0] for r in rows]
    ys = [r[1] for r in rows]
    errs = [r[2] for r in rows]
    emax = max(errs) or 1.0
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or 1.0
    pad = 0.05 * span
    scale = (size - 20) / (span + 2 * pad)

    def sx(x):
        return 10 + (x - x0 + pad) * scale

    def sy(y):
        return size - 10 - (y - y0 + pad) * scale

    n_side = max(8, int(math.sqrt(len(rows))))
    radius = max(1.5, (size - 20) / n_side * 0.75)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<text x="12" y="18" font-size="12">chordal error (max {emax:.3e})</text>',
    ]
    for (x, y, e) in rows:
        op = e / emax
        parts.append(
            f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="{radius:.2f}" '
            f'fill="rgb(178,24,43)" fill-opacity="{op:.4f}"/>'
        )
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")
