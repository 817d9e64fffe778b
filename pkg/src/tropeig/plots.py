"""Plot artifacts: CSV samples of the piecewise-linear graph and small SVGs.

CSV is the canonical artifact (exact kink rows plus float samples); SVG
rendering is a convenience for quick looks and stays dependency-free.
"""

from __future__ import annotations

import io
from fractions import Fraction
from typing import Optional

from .tropical import NewtonPolygon, SplittingReport, TropicalPoly, tropical_roots


def _omega_max(p: TropicalPoly) -> Fraction:
    report = tropical_roots(p)
    kinks = [r.omega for r in report.roots]
    top = max(kinks) if kinks else Fraction(1)
    return top + 1


def tropical_csv(p: TropicalPoly, samples: int = 200,
                 omega_max: Optional[Fraction] = None) -> str:
    """CSV with float samples of min_i(alpha_i + k_i w) and exact kink rows."""
    hi = Fraction(omega_max) if omega_max is not None else _omega_max(p)
    out = io.StringIO()
    out.write("kind,omega,value,exact_omega,multiplicity\n")
    for j in range(samples + 1):
        w = hi * j / samples
        out.write(f"sample,{float(w)},{float(p(w))},,\n")
    for root in tropical_roots(p).roots:
        out.write(f"kink,{float(root.omega)},{float(p(root.omega))},"
                  f"{root.omega},{root.multiplicity}\n")
    return out.getvalue()


def _svg_header(width, height):
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}">'
            f'<rect width="{width}" height="{height}" fill="white"/>')


def tropical_svg(p: TropicalPoly, size: int = 360) -> str:
    """Piecewise-linear graph of the tropical polynomial with kinks marked."""
    hi = _omega_max(p)
    ws = [hi * j / 200 for j in range(201)]
    vs = [p(w) for w in ws]
    vlo, vhi = min(vs), max(vs)
    span = (vhi - vlo) or Fraction(1)
    pad = 30

    def x(w):
        return pad + float(w / hi) * (size - 2 * pad)

    def y(v):
        return size - pad - float((v - vlo) / span) * (size - 2 * pad)

    pts = " ".join(f"{x(w):.2f},{y(v):.2f}" for w, v in zip(ws, vs))
    parts = [_svg_header(size, size),
             f'<polyline points="{pts}" fill="none" stroke="black" stroke-width="1.5"/>']
    for root in tropical_roots(p).roots:
        parts.append(f'<circle cx="{x(root.omega):.2f}" cy="{y(p(root.omega)):.2f}" '
                     f'r="4" fill="red"/>')
        parts.append(f'<text x="{x(root.omega) + 6:.2f}" y="{y(p(root.omega)) - 6:.2f}" '
                     f'font-size="11">{root.omega} (x{root.multiplicity})</text>')
    parts.append("</svg>")
    return "".join(parts)


def polygon_svg(np_: NewtonPolygon, size: int = 360) -> str:
    """Coefficient valuations with the lower convex hull highlighted."""
    finite = [(i, a) for i, a in
              ((i, Fraction(o.value)) for i, o in np_.points if o.is_finite)]
    xmax = np_.n
    ymax = max((a for _, a in finite), default=Fraction(1)) or Fraction(1)
    pad = 30

    def x(i):
        return pad + float(Fraction(i, xmax)) * (size - 2 * pad)

    def y(a):
        return size - pad - float(a / ymax) * (size - 2 * pad)

    parts = [_svg_header(size, size)]
    hull_pts = " ".join(f"{x(i):.2f},{y(a):.2f}" for i, a in np_.hull)
    parts.append(f'<polyline points="{hull_pts}" fill="none" stroke="steelblue" '
                 f'stroke-width="2"/>')
    hull_set = set(np_.hull)
    for i, a in finite:
        color = "red" if (i, a) in hull_set else "black"
        parts.append(f'<circle cx="{x(i):.2f}" cy="{y(a):.2f}" r="4" fill="{color}"/>')
        parts.append(f'<text x="{x(i) + 6:.2f}" y="{y(a) - 6:.2f}" '
                     f'font-size="11">({i}, {a})</text>')
    parts.append("</svg>")
    return "".join(parts)
