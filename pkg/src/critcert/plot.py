"""Static SVG picture of the real tangency curve of a bivariate polynomial.

The curve V(gamma) is traced by marching squares over exact sign tests of
gamma at the vertices of a rational grid; segment endpoints are placed at
edge midpoints, so no floating-point value ever decides a sign.
"""

from __future__ import annotations

from fractions import Fraction

from .oracle import _Lattice
from .ring import Poly
from .tangency import gamma_generators

__all__ = ["tangency_svg", "sign_grid", "marching_segments"]

# marching-squares case table: which cell edges (0 bottom, 1 right, 2 top, 3 left) to join
_CASES = {
    0: (), 15: (),
    1: ((3, 0),), 14: ((3, 0),),
    2: ((0, 1),), 13: ((0, 1),),
    3: ((3, 1),), 12: ((3, 1),),
    4: ((1, 2),), 11: ((1, 2),),
    6: ((0, 2),), 9: ((0, 2),),
    7: ((3, 2),), 8: ((3, 2),),
    5: ((3, 0), (1, 2)), 10: ((0, 1), (3, 2)),
}


def sign_grid(g: Poly, half: Fraction, cells: int) -> list[list[bool]]:
    """positive[i][j] for gamma at (x_i, y_j) = (-half + i*h, -half + j*h), h = 2*half/cells."""
    h = 2 * half / cells
    off = cells // 2
    lat = _Lattice(g, h)
    # cells is even, so the viewport corner -half is exactly -off*h
    return [[lat.numerator((i - off, j - off)) >= 0 for j in range(cells + 1)] for i in range(cells + 1)]


def marching_segments(pos: list[list[bool]]) -> list[tuple[tuple[float, float], tuple[float, float]]]:
    """Segments in grid units; each endpoint is the midpoint of a cell edge."""
    cells = len(pos) - 1
    segs = []
    mids = {0: (0.5, 0.0), 1: (1.0, 0.5), 2: (0.5, 1.0), 3: (0.0, 0.5)}
    for i in range(cells):
        for j in range(cells):
            code = (
                (1 if pos[i][j] else 0)
                | (2 if pos[i + 1][j] else 0)
                | (4 if pos[i + 1][j + 1] else 0)
                | (8 if pos[i][j + 1] else 0)
            )
            for a, b in _CASES[code]:
                pa, pb = mids[a], mids[b]
                segs.append(((i + pa[0], j + pa[1]), (i + pb[0], j + pb[1])))
    return segs


def tangency_svg(f: Poly, R, viewport=None, size: int = 512) -> str:
    """SVG with one path for V(gamma) and one circle of radius R.

    The default viewport is [-1.2R, 1.2R]^2."""
    if f.nvars != 2:
        raise ValueError("plotting is supported for two variables only")
    R = Fraction(R)
    half = Fraction(viewport) if viewport is not None else Fraction(6, 5) * R
    if half <= 0:
        raise ValueError("viewport half-width must be positive")
    cells = size if size % 2 == 0 else size + 1
    (g,) = gamma_generators(f)
    if g.is_zero():
        segs = []
    else:
        segs = marching_segments(sign_grid(g, half, cells))
    scale = size / cells

    def px(p):
        # SVG y grows downwards
        return p[0] * scale, size - p[1] * scale

    parts = []
    for a, b in segs:
        (x0, y0), (x1, y1) = px(a), px(b)
        parts.append(f"M{x0:.2f} {y0:.2f}L{x1:.2f} {y1:.2f}")
    rad = float(R / (2 * half)) * size
    c = size / 2
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f"<title>tangency curve of {f}; viewport [-{float(half):.6g}, {float(half):.6g}]^2</title>",
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
        f'<path d="{"".join(parts)}" fill="none" stroke="#1f4e9c" stroke-width="1.5"/>',
        f'<circle cx="{c:.2f}" cy="{c:.2f}" r="{rad:.2f}" fill="none" stroke="#c0392b" stroke-width="1.5" stroke-dasharray="6 4"/>',
        "</svg>",
    ]
    return "\n".join(lines) + "\n"
