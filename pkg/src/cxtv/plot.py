"""SVG rendering of certificates in the projected plane (output only, floats allowed)."""
from __future__ import annotations

from typing import Sequence

from . import geometry as G

COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")
SIZE = 480
PAD = 30


class _Canvas:
    def __init__(self, pts: Sequence[Sequence[float]]):
        xs = [p[0] for p in pts] or [0.0]
        ys = [p[1] for p in pts] or [0.0]
        self.x0, self.x1 = min(xs), max(xs)
        self.y0, self.y1 = min(ys), max(ys)
        span = max(self.x1 - self.x0, self.y1 - self.y0, 1e-12)
        self.s = (SIZE - 2 * PAD) / span
        self.items: list[str] = []

    def xy(self, p):
        return PAD + (p[0] - self.x0) * self.s, SIZE - PAD - (p[1] - self.y0) * self.s

    def dot(self, p, color, r=3):
        x, y = self.xy(p)
        self.items.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r}" fill="{color}"/>')

    def cross(self, p, color="#000"):
        x, y = self.xy(p)
        self.items.append(f'<path d="M{x - 6:.2f},{y:.2f}H{x + 6:.2f}M{x:.2f},{y - 6:.2f}V{y + 6:.2f}" '
                          f'stroke="{color}" stroke-width="2"/>')

    def line(self, a, c, color, dash=True):
        """The line a.y = c, clipped to the view box."""
        ax, ay = a
        span = max(self.x1 - self.x0, self.y1 - self.y0, 1e-12)
        if abs(ax) < 1e-15 and abs(ay) < 1e-15:
            return
        cx, cy = (self.x0 + self.x1) / 2, (self.y0 + self.y1) / 2
        nn = ax * ax + ay * ay
        t = (c - ax * cx - ay * cy) / nn
        px, py = cx + t * ax, cy + t * ay
        dx, dy = -ay / nn ** 0.5 * span, ax / nn ** 0.5 * span
        (x1, y1), (x2, y2) = self.xy((px - dx, py - dy)), self.xy((px + dx, py + dy))
        extra = ' stroke-dasharray="4 3"' if dash else ""
        self.items.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                          f'stroke="{color}" stroke-width="1"{extra}/>')

    def polygon(self, pts, color):
        if len(pts) == 1:
            return self.dot(pts[0], color, 5)
        hull = _hull(pts)
        d = " ".join("%.2f,%.2f" % self.xy(p) for p in hull)
        self.items.append(f'<polygon points="{d}" fill="{color}" fill-opacity="0.15" stroke="{color}"/>')

    def svg(self, title: str) -> str:
        body = "\n".join(self.items)
        return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
                f'viewBox="0 0 {SIZE} {SIZE}">\n<title>{title}</title>\n'
                f'<rect width="100%" height="100%" fill="white"/>\n{body}\n</svg>\n')


def _hull(pts):
    pts = sorted(set(map(tuple, pts)))
    if len(pts) <= 2:
        return pts

    def half(seq):
        h = []
        for p in seq:
            while len(h) >= 2 and ((h[-1][0] - h[-2][0]) * (p[1] - h[-2][1]) - (h[-1][1] - h[-2][1]) * (p[0] - h[-2][0])) <= 0:
                h.pop()
            h.append(p)
        return h

    lo, hi = half(pts), half(reversed(pts))
    return lo[:-1] + hi[:-1]


def _plane(V):
    """Two real rows whose kernel contains the direction of V (the first two complement rows)."""
    R = G.complement_rows(V.direction, V.ambient)
    return R[:2] if len(R) >= 2 else R + [G.zeros(V.ambient)]


def _f(v):
    return tuple(float(x) for x in v)


def plot_transversal(cert, measures) -> str:
    V = cert.flat
    R = _plane(V)
    proj = [[_f(G.matvec(R, p)) for p in m.points] for m in measures]
    qpt = _f(G.matvec(R, V.base))
    cv = _Canvas([p for P in proj for p in P] + [qpt])
    for i, P in enumerate(proj):
        for p in P:
            cv.dot(p, COLORS[i % len(COLORS)])
    for i, dv in enumerate(cert.depths):
        a = G.coords_in_span(R, dv.witness_normal)
        if a is not None and any(a):
            cv.line(_f(a), float(dv.witness_offset), COLORS[i % len(COLORS)])
    cv.cross(qpt)
    return cv.svg(f"{V.kind} flat, k={V.k}")


def plot_tverberg(cert, inst) -> str:
    V = cert.flat
    R = _plane(V)
    qpt = _f(G.matvec(R, V.base))
    allp = []
    for i, P in enumerate(inst.sets):
        allp += [_f(G.matvec(R, p)) for p in P]
    cv = _Canvas(allp + [qpt])
    for i, (P, parts) in enumerate(zip(inst.sets, cert.partitions)):
        col = COLORS[i % len(COLORS)]
        for part in parts:
            cv.polygon([_f(G.matvec(R, P[j])) for j in part], col)
        for p in P:
            cv.dot(_f(G.matvec(R, p)), col)
    cv.cross(qpt)
    return cv.svg("Tverberg partition")
