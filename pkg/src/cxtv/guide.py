"""Floating-point guidance for the searches.

Nothing computed here is trusted: it only ranks candidate charts and proposes
points that the exact layer then re-checks. The score of a chart is the
Chebyshev margin of the joint depth regions, which is positive iff the
regions share an interior point.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations

import numpy as np
from scipy.optimize import linprog

TOL = 1e-9


@lru_cache(maxsize=None)
def _subsets(n: int, r: int) -> np.ndarray:
    return np.array(list(combinations(range(n), r)), dtype=np.intp).reshape(-1, r)


def _normals(D: np.ndarray) -> np.ndarray:
    """Cofactor normals of N stacks of (r-1) vectors in R^r."""
    N, rm1, r = D.shape
    if r == 1:
        return np.ones((N, 1))
    out = np.empty((N, r))
    for i in range(r):
        minor = np.delete(D, i, axis=2)
        out[:, i] = (-1) ** i * np.linalg.det(minor) if rm1 > 1 else (-1) ** i * minor[:, 0, 0]
    return out


def region_halfspaces(Y: np.ndarray, w: np.ndarray, t: float):
    """Float analogue of the exact region description: rows a, offsets b with a.y >= b."""
    n, r = Y.shape
    if n < r:
        return np.zeros((0, r)), np.zeros(0)
    idx = _subsets(n, r)
    base = Y[idx[:, 0]]
    if r == 1:
        nrm = np.ones((len(idx), 1))
    else:
        D = Y[idx[:, 1:]] - base[:, None, :]
        nrm = _normals(D)
    norms = np.linalg.norm(nrm, axis=1)
    scale = max(1.0, float(np.abs(Y).max()))
    ok = norms > 1e-12 * scale ** (r - 1)
    nrm = nrm[ok] / norms[ok, None]
    c = np.einsum("ij,ij->i", nrm, base[ok])
    vals = Y @ nrm.T - c[None, :]
    tol = 1e-11 * scale
    wge = w @ (vals >= -tol)
    wle = w @ (vals <= tol)
    thr = 1.0 - t + 1e-12
    A = np.vstack([nrm[wge > thr], -nrm[wle > thr]])
    b = np.concatenate([c[wge > thr], -c[wle > thr]])
    return A, b


def joint_margin(blocks, M: int, box: float = 1e4):
    """max s s.t. a.y - s >= b for every block row; returns (s, y) or (-inf, None).

    blocks: list of (A, b) where A has <= M columns (acting on leading coords).
    """
    rows, rhs = [], []
    for A, b in blocks:
        if A.shape[0] == 0:
            continue
        pad = np.zeros((A.shape[0], M + 1))
        pad[:, : A.shape[1]] = -A
        pad[:, M] = 1.0
        rows.append(pad)
        rhs.append(-b)
    if not rows:
        return float("inf"), np.zeros(M)
    A_ub = np.vstack(rows)
    b_ub = np.concatenate(rhs)
    c = np.zeros(M + 1)
    c[M] = -1.0
    bounds = [(-box, box)] * M + [(None, box)]
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, bounds=bounds, method="highs")
    if res.status != 0:
        return float("-inf"), None
    return float(res.x[M]), res.x[:M]


def project(points: np.ndarray, rows: np.ndarray) -> np.ndarray:
    return points @ rows.T
