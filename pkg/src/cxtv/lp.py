"""Exact rational simplex (Bland's rule) with Farkas certificates.

Constraints are  A_ub x <= b_ub,  A_eq x = b_eq, with each variable either
nonnegative or free. Phase I minimizes the sum of artificials; its optimum is
zero iff the system is feasible, and otherwise the final simplex multipliers
give a certificate that can be replayed without trusting the solver.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InstanceError

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class ExactLP:
    n: int
    A_ub: list = field(default_factory=list)
    b_ub: list = field(default_factory=list)
    A_eq: list = field(default_factory=list)
    b_eq: list = field(default_factory=list)
    nonneg: list | None = None  # per variable; default all free
    objective: list | None = None  # minimize c.x (optional)

    def __post_init__(self):
        if self.nonneg is None:
            self.nonneg = [False] * self.n
        if len(self.nonneg) != self.n:
            raise InstanceError("nonneg mask has wrong length")
        for rows, rhs, tag in ((self.A_ub, self.b_ub, "ub"), (self.A_eq, self.b_eq, "eq")):
            if len(rows) != len(rhs):
                raise InstanceError(f"{tag}: {len(rows)} rows but {len(rhs)} right-hand sides")
            for i, r in enumerate(rows):
                if len(r) != self.n:
                    raise InstanceError(f"{tag} row {i} has length {len(r)}, expected {self.n}")

    def add_ub(self, row, rhs):
        self.A_ub.append([Fraction(x) for x in row])
        self.b_ub.append(Fraction(rhs))

    def add_eq(self, row, rhs):
        self.A_eq.append([Fraction(x) for x in row])
        self.b_eq.append(Fraction(rhs))

    def check_point(self, x: Sequence) -> bool:
        for i, v in enumerate(x):
            if self.nonneg[i] and v < 0:
                return False
        for r, b in zip(self.A_ub, self.b_ub):
            if sum((a * v for a, v in zip(r, x) if a), ZERO) > b:
                return False
        for r, b in zip(self.A_eq, self.b_eq):
            if sum((a * v for a, v in zip(r, x) if a), ZERO) != b:
                return False
        return True

    def check_farkas(self, lam_ub: Sequence, lam_eq: Sequence) -> bool:
        """Replay an infeasibility certificate.

        Valid iff lam_ub >= 0, the combination lam^T A vanishes on free
        variables and is >= 0 on nonnegative ones, and lam^T b < 0.
        """
        if len(lam_ub) != len(self.A_ub) or len(lam_eq) != len(self.A_eq):
            return False
        if any(l < 0 for l in lam_ub):
            return False
        comb = [ZERO] * self.n
        rhs = ZERO
        for l, r, b in zip(list(lam_ub) + list(lam_eq), self.A_ub + self.A_eq, self.b_ub + self.b_eq):
            if l:
                rhs += l * b
                for j, a in enumerate(r):
                    if a:
                        comb[j] += l * a
        for j in range(self.n):
            if self.nonneg[j]:
                if comb[j] < 0:
                    return False
            elif comb[j] != 0:
                return False
        return rhs < 0


@dataclass
class LPResult:
    feasible: bool
    point: tuple | None = None
    farkas_ub: tuple | None = None
    farkas_eq: tuple | None = None
    margin: Fraction = ZERO  # phase I optimum (0 iff feasible)
    objective: Fraction | None = None
    unbounded: bool = False
    pivots: int = 0
    basic: tuple = ()  # original variables that are basic at termination

    def __bool__(self):
        return self.feasible


def _pivot(T, r, c):
    row = T[r]
    pv = row[c]
    if pv != 1:
        inv = 1 / pv
        row = [x * inv if x else x for x in row]
        T[r] = row
    nz = [(j, x) for j, x in enumerate(row) if x]
    for i in range(len(T)):
        if i == r:
            continue
        f = T[i][c]
        if f:
            Ti = T[i]
            for j, x in nz:
                Ti[j] -= f * x


def _simplex(T, basis, cost_row, allowed, max_pivots=10**7):
    """Bland's rule on tableau T (rows = constraints, last column = rhs).

    cost_row is the reduced-cost row (same width as T rows, last entry = -obj).
    Returns ("optimal"|"unbounded", pivots).
    """
    m = len(T)
    width = len(cost_row) - 1
    pivots = 0
    while True:
        enter = None
        for j in range(width):
            if allowed[j] and cost_row[j] < 0:
                enter = j
                break
        if enter is None:
            return "optimal", pivots
        best = None
        leave = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return "unbounded", pivots
        _pivot(T, leave, enter)
        f = cost_row[enter]
        if f:
            for j, x in enumerate(T[leave]):
                if x:
                    cost_row[j] -= f * x
        basis[leave] = enter
        pivots += 1
        if pivots > max_pivots:  # pragma: no cover
            raise RuntimeError("pivot limit exceeded")


def lp_feasible(lp: ExactLP) -> LPResult:
    """Exact feasibility (and optional minimization) of an ExactLP."""
    n = lp.n
    # column layout: for each variable either one column (nonneg) or two (x+ - x-)
    colmap = []
    ncols = 0
    for j in range(n):
        if lp.nonneg[j]:
            colmap.append((ncols, None))
            ncols += 1
        else:
            colmap.append((ncols, ncols + 1))
            ncols += 2
    n_ub = len(lp.A_ub)
    nslack = n_ub
    rows = []
    signs = []
    for i, (r, b) in enumerate(zip(lp.A_ub, lp.b_ub)):
        rows.append((r, b, i))
    for i, (r, b) in enumerate(zip(lp.A_eq, lp.b_eq)):
        rows.append((r, b, None))
    m = len(rows)
    width = ncols + nslack + m  # structural + slacks + artificials
    T = []
    for ridx, (r, b, slack) in enumerate(rows):
        line = [ZERO] * (width + 1)
        for j, a in enumerate(r):
            a = Fraction(a)
            if a:
                p, q = colmap[j]
                line[p] = a
                if q is not None:
                    line[q] = -a
        if slack is not None:
            line[ncols + slack] = ONE
        b = Fraction(b)
        line[-1] = b
        s = ONE
        if b < 0:
            line = [-x for x in line]
            s = -ONE
        line[ncols + nslack + ridx] = ONE
        T.append(line)
        signs.append(s)
    basis = [ncols + nslack + i for i in range(m)]
    art0 = ncols + nslack
    # phase I reduced costs: c_art = 1
    cost = [ZERO] * (width + 1)
    for j in range(art0, width):
        cost[j] = ONE
    for i in range(m):
        for j, x in enumerate(T[i]):
            if x:
                cost[j] -= x
    allowed = [True] * width
    _, piv = _simplex(T, basis, cost, allowed)
    phase1 = -cost[-1]
    if phase1 > 0:
        # multipliers y_i = c_art_i - d_art_i = 1 - d_art_i on sign-normalized rows
        y = [ONE - cost[art0 + i] for i in range(m)]
        mu = [-y[i] * signs[i] for i in range(m)]
        return LPResult(False, None, tuple(mu[:n_ub]), tuple(mu[n_ub:]), phase1, pivots=piv)
    # drive artificials out of the basis
    for i in range(m):
        if basis[i] >= art0:
            c = next((j for j in range(art0) if T[i][j] != 0), None)
            if c is not None:
                _pivot(T, i, c)
                f = cost[c]
                if f:
                    for j, x in enumerate(T[i]):
                        if x:
                            cost[j] -= f * x
                basis[i] = c
                piv += 1
    keep = [i for i in range(m) if basis[i] < art0]
    T = [T[i] for i in keep]
    basis = [basis[i] for i in keep]
    allowed = [j < art0 for j in range(width)]
    obj_val = None
    unbounded = False
    if lp.objective is not None:
        c = [ZERO] * (width + 1)
        for j, a in enumerate(lp.objective):
            a = Fraction(a)
            if a:
                p, q = colmap[j]
                c[p] = a
                if q is not None:
                    c[q] = -a
        for i, bj in enumerate(basis):
            f = c[bj]
            if f:
                for j, x in enumerate(T[i]):
                    if x:
                        c[j] -= f * x
        status, p2 = _simplex(T, basis, c, allowed)
        piv += p2
        unbounded = status == "unbounded"
        if not unbounded:
            obj_val = -c[-1]
    vals = [ZERO] * width
    for i, bj in enumerate(basis):
        vals[bj] = T[i][-1]
    x = []
    for j in range(n):
        p, q = colmap[j]
        x.append(vals[p] - (vals[q] if q is not None else ZERO))
    inb = set(basis)
    basic = tuple(j for j in range(n) if colmap[j][0] in inb or (colmap[j][1] is not None and colmap[j][1] in inb))
    return LPResult(True, tuple(x), margin=ZERO, objective=obj_val, unbounded=unbounded,
                    pivots=piv, basic=basic)


@dataclass
class HalfspaceResult:
    feasible: bool
    point: tuple | None = None
    farkas: tuple | None = None  # lam >= 0 with lam^T A = 0 and lam^T b > 0
    slack: Fraction | None = None  # min over y of max_h (b_h - a_h.y)

    def __bool__(self):
        return self.feasible


def check_halfspace_farkas(halfspaces: Sequence, lam: Sequence, n: int) -> bool:
    if len(lam) != len(halfspaces) or any(l < 0 for l in lam):
        return False
    comb = [ZERO] * n
    rhs = ZERO
    for l, (a, b) in zip(lam, halfspaces):
        if l:
            rhs += l * b
            for j, x in enumerate(a):
                comb[j] += l * x
    return all(c == 0 for c in comb) and rhs > 0


def halfspace_feasible(halfspaces: Sequence, n: int) -> HalfspaceResult:
    """Exact feasibility of {y in Q^n : <a_h, y> >= b_h for all h}.

    Solved through the dual  max b.lam  s.t.  A^T lam = 0, sum lam = 1,
    lam >= 0, whose tableau has only n + 1 rows. A positive optimum is an
    infeasibility certificate; otherwise the primal point comes from the
    constraints that are basic in the optimal dual solution, and is checked.
    """
    hs = [(tuple(Fraction(x) for x in a), Fraction(b)) for a, b in halfspaces]
    if not hs:
        return HalfspaceResult(True, (ZERO,) * n, slack=None)
    H = len(hs)
    lp = ExactLP(H, nonneg=[True] * H, objective=[-b for _, b in hs])
    for j in range(n):
        lp.add_eq([a[j] for a, _ in hs], 0)
    lp.add_eq([1] * H, 1)
    res = lp_feasible(lp)
    if not res.feasible:
        # no lam exists: the dual certificate nu has a_h.nu > 0 for every h,
        # so a large multiple of nu is inside every halfspace
        nu = res.farkas_eq[:n]
        dots = [sum((x * v for x, v in zip(a, nu)), ZERO) for a, _ in hs]
        t = max([ZERO] + [b / dv for (_, b), dv in zip(hs, dots)])
        y = tuple(t * v for v in nu)
        assert all(sum((x * v for x, v in zip(a, y)), ZERO) >= b for a, b in hs)
        return HalfspaceResult(True, y, slack=None)
    lam = res.point
    best = -res.objective
    if best > 0:
        return HalfspaceResult(False, farkas=lam, slack=best)
    # tight rows: a_h.y + s = b_h for basic h
    rows = [list(hs[h][0]) + [ONE] for h in res.basic]
    rhs = [hs[h][1] for h in res.basic]
    from .geometry import solve
    sol = solve(rows, rhs) if rows else (ZERO,) * (n + 1)
    if sol is None:  # pragma: no cover
        raise RuntimeError("dual basis gave an inconsistent system")
    y = tuple(sol[:n])
    if all(sum((x * v for x, v in zip(a, y)), ZERO) >= b for a, b in hs):
        return HalfspaceResult(True, y, slack=best)
    raise RuntimeError("recovered primal point fails verification")  # pragma: no cover
