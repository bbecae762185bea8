"""Exact rational linear algebra on R^{2d} with the standard complex structure.

Vectors are tuples of Fractions. Subspaces are kept as unnormalized rational
bases; nothing here ever takes a square root.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import DependentSetError, InstanceError

Vec = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def F(x) -> Fraction:
    """Coerce ints, Fractions and "num/den" strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact scalars")
    return Fraction(x)


def vec(xs: Iterable) -> Vec:
    return tuple(F(x) for x in xs)


def zeros(n: int) -> Vec:
    return (ZERO,) * n


def unit(n: int, i: int) -> Vec:
    return tuple(ONE if j == i else ZERO for j in range(n))


def dot(u: Sequence, v: Sequence) -> Fraction:
    s = ZERO
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s


def add(u: Sequence, v: Sequence) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Sequence) -> Vec:
    return tuple(c * a for a in u)


def lincomb(coeffs: Sequence, vectors: Sequence[Sequence], n: int | None = None) -> Vec:
    if n is None:
        n = len(vectors[0])
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for j, x in enumerate(v):
                if x:
                    out[j] += c * x
    return tuple(out)


def matvec(rows: Sequence[Sequence], v: Sequence) -> Vec:
    return tuple(dot(r, v) for r in rows)


def transpose(rows: Sequence[Sequence]) -> list[Vec]:
    return [tuple(col) for col in zip(*rows)]


def is_zero(v: Sequence) -> bool:
    return all(x == 0 for x in v)


# ---- elimination -------------------------------------------------------


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[F(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                ri = m[i]
                rr = m[r]
                m[i] = [a - f * b for a, b in zip(ri, rr)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], n: int) -> list[Vec]:
    """Basis of {x in Q^n : rows . x = 0}."""
    if not rows:
        return [unit(n, i) for i in range(n)]
    R, piv = rref(rows, n)
    free = [j for j in range(n) if j not in piv]
    basis = []
    for f in free:
        x = [ZERO] * n
        x[f] = ONE
        for i, p in enumerate(piv):
            x[p] = -R[i][f]
        basis.append(tuple(x))
    return basis


def solve(A: Sequence[Sequence], b: Sequence) -> Vec | None:
    """One solution of A x = b (free variables set to 0), or None."""
    n = len(A[0]) if A else 0
    aug = [list(r) + [F(bi)] for r, bi in zip(A, b)]
    R, piv = rref(aug, n + 1)
    if n in piv:
        return None
    x = [ZERO] * n
    for i, p in enumerate(piv):
        x[p] = R[i][n]
    return tuple(x)


def coords_in_span(basis: Sequence[Sequence], v: Sequence) -> Vec | None:
    """Coefficients c with sum c_i basis_i = v, or None if v is outside the span."""
    if not basis:
        return () if is_zero(v) else None
    return solve(transpose(basis), v)


def in_span(basis: Sequence[Sequence], v: Sequence) -> bool:
    return coords_in_span(basis, v) is not None


def first_dependent(vectors: Sequence[Sequence]) -> int | None:
    """Index of the first vector lying in the span of its predecessors."""
    for i in range(len(vectors)):
        if rank(vectors[: i + 1]) < i + 1:
            return i
    return None


def det(M: Sequence[Sequence]) -> Fraction:
    n = len(M)
    if n == 0:
        return ONE
    R = [[F(x) for x in r] for r in M]
    s = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if R[i][c] != 0), None)
        if p is None:
            return ZERO
        if p != c:
            R[c], R[p] = R[p], R[c]
            s = -s
        s *= R[c][c]
        for i in range(c + 1, n):
            if R[i][c]:
                f = R[i][c] / R[c][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[c])]
    return s


def det_int(M: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            p = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if p is None:
                return 0
            A[k], A[p] = A[p], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i = A[i]
            row_k = A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def cross_int(vs: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Generalized cross product of r-1 integer vectors in Z^r (cofactor normal)."""
    r = len(vs) + 1
    out = []
    for i in range(r):
        minor = [[v[j] for j in range(r) if j != i] for v in vs]
        d = det_int(minor)
        out.append(d if i % 2 == 0 else -d)
    return tuple(out)


def primitive(v: Sequence) -> tuple[int, ...]:
    """Positive multiple of a rational vector with coprime integer entries."""
    den = 1
    for x in v:
        x = F(x)
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(F(x) * den) for x in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g > 1:
        ints = [a // g for a in ints]
    return tuple(ints)


def common_denominator(vectors: Iterable[Sequence]) -> int:
    den = 1
    for v in vectors:
        for x in v:
            q = F(x).denominator
            den = den * q // gcd(den, q)
    return den


# ---- complex structure -------------------------------------------------


def apply_j(v: Sequence) -> Vec:
    """J(e_{2j}) = e_{2j+1}, J(e_{2j+1}) = -e_{2j}."""
    if len(v) % 2:
        raise InstanceError("complex structure needs even dimension")
    out = []
    for j in range(0, len(v), 2):
        out.append(-v[j + 1])
        out.append(v[j])
    return tuple(out)


@dataclass(frozen=True)
class ComplexStructure:
    d: int

    def apply(self, v: Sequence) -> Vec:
        if len(v) != 2 * self.d:
            raise InstanceError(f"vector of length {len(v)} in R^{2 * self.d}")
        return apply_j(v)

    def matrix(self) -> list[Vec]:
        n = 2 * self.d
        cols = [self.apply(unit(n, i)) for i in range(n)]
        return transpose(cols)


def is_j_invariant(basis: Sequence[Sequence]) -> bool:
    """True iff J maps span(basis) into itself."""
    if not basis:
        return True
    return all(in_span(basis, apply_j(b)) for b in basis)


def complex_dot(z: Sequence, w: Sequence) -> tuple[Fraction, Fraction]:
    """Real coordinates of the hermitian product <z, w> (conjugate-linear in w)."""
    return dot(z, w), dot(z, apply_j(w))


# ---- flats --------------------------------------------------------------

KINDS = ("complex", "complex-plus-line")


@dataclass(frozen=True)
class ComplexFlat:
    """Affine flat base + span(direction) with a recorded complex type.

    kind "complex" with k: direction is J-invariant of real dim 2k.
    kind "complex-plus-line" with k: J-invariant part of dim 2(k-1) plus one
    extra real line orthogonal to it, total real dim 2k-1.
    """

    base: Vec
    direction: tuple
    kind: str = "complex"
    k: int = 0

    @property
    def ambient(self) -> int:
        return len(self.base)

    @property
    def d(self) -> int:
        return len(self.base) // 2

    def kind_violation(self) -> str | None:
        """None if the recorded kind matches the direction space, else a reason."""
        n = len(self.base)
        if n % 2:
            return "odd ambient dimension"
        for b in self.direction:
            if len(b) != n:
                return "direction vector has wrong length"
        i = first_dependent(self.direction)
        if i is not None:
            return f"direction basis dependent at index {i}"
        dim = len(self.direction)
        if self.kind == "complex":
            if dim != 2 * self.k:
                return f"real dimension {dim} != 2k = {2 * self.k}"
            if not is_j_invariant(self.direction):
                return "direction span is not J-invariant"
            return None
        if self.kind == "complex-plus-line":
            if self.k < 1 or dim != 2 * self.k - 1:
                return f"real dimension {dim} != 2k-1 = {2 * self.k - 1}"
            inv = maximal_j_invariant(self.direction)
            if len(inv) != 2 * (self.k - 1):
                return f"J-invariant part has dimension {len(inv)}, expected {2 * (self.k - 1)}"
            return None
        return f"unknown kind {self.kind!r}"

    def contains_point(self, x: Sequence) -> bool:
        return in_span(list(self.direction), sub(x, self.base))


def maximal_j_invariant(basis: Sequence[Sequence]) -> list[Vec]:
    """Basis of span(B) ∩ J span(B), the largest J-invariant subspace."""
    if not basis:
        return []
    n = len(basis[0])
    jb = [apply_j(b) for b in basis]
    # x = sum a_i b_i = sum c_i J b_i ; solve for (a, c)
    rows = transpose([tuple(b) for b in basis] + [scale(-1, v) for v in jb])
    sols = nullspace(rows, 2 * len(basis)) if rows else []
    vecs = [lincomb(s[: len(basis)], basis, n) for s in sols]
    R, _ = rref(vecs, n) if vecs else ([], [])
    return [tuple(r) for r in R]


def make_complex_flat(base: Sequence, complex_spanning_vectors: Sequence[Sequence]) -> ComplexFlat:
    base = vec(base)
    n = len(base)
    if n % 2:
        raise InstanceError("ambient dimension must be even")
    direction: list[Vec] = []
    for i, v in enumerate(complex_spanning_vectors):
        v = vec(v)
        if len(v) != n:
            raise InstanceError(f"spanning vector {i} has length {len(v)}, expected {n}")
        cand = direction + [v, apply_j(v)]
        if rank(cand) < len(cand):
            raise DependentSetError(i, f"spanning vector {i} is complex-dependent on its predecessors")
        direction = cand
    return ComplexFlat(base, tuple(direction), "complex", len(direction) // 2)


def orthogonal_project(flat_direction: Sequence[Sequence], x: Sequence) -> Vec:
    """Projection of x onto the orthogonal complement of span(flat_direction)."""
    x = vec(x)
    B = [vec(b) for b in flat_direction]
    if not B:
        return x
    G = [[dot(a, b) for b in B] for a in B]
    rhs = [dot(b, x) for b in B]
    c = solve(G, rhs)
    if c is None:  # pragma: no cover - Gram matrix of independent set is invertible
        raise DependentSetError(first_dependent(B) or 0)
    return sub(x, lincomb(c, B, len(x)))


def complement_rows(direction: Sequence[Sequence], n: int) -> list[Vec]:
    """Rational rows spanning the orthogonal complement of span(direction)."""
    return nullspace([tuple(b) for b in direction], n) if direction else [unit(n, i) for i in range(n)]


def flat_from_equations(rows: Sequence[Sequence], rhs: Sequence, kind: str, k: int) -> ComplexFlat:
    """The flat {x : rows . x = rhs} (rows independent)."""
    rows = [vec(r) for r in rows]
    n = len(rows[0])
    G = [[dot(a, b) for b in rows] for a in rows]
    c = solve(G, rhs)
    if c is None:
        raise DependentSetError(first_dependent(rows) or 0)
    base = lincomb(c, rows, n)
    direction = nullspace(rows, n)
    return ComplexFlat(base, tuple(direction), kind, k)


# ---- measures -----------------------------------------------------------


@dataclass(frozen=True)
class MassCloud:
    points: tuple
    weights: tuple = field(default=())

    def __post_init__(self):
        pts = tuple(vec(p) for p in self.points)
        if not pts:
            raise InstanceError("empty point list")
        n = len(pts[0])
        for i, p in enumerate(pts):
            if len(p) != n:
                raise InstanceError(f"point {i} has dimension {len(p)}, expected {n}")
        w = self.weights
        if not w:
            w = (Fraction(1, len(pts)),) * len(pts)
        w = tuple(F(x) for x in w)
        if len(w) != len(pts):
            raise InstanceError("weights and points differ in length")
        for i, x in enumerate(w):
            if x <= 0:
                raise InstanceError(f"weight {i} is not positive")
        if sum(w) != 1:
            raise InstanceError(f"weights sum to {sum(w)}, not 1")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)

    @classmethod
    def uniform(cls, points) -> "MassCloud":
        return cls(tuple(points))

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def __len__(self):
        return len(self.points)

    def map(self, rows: Sequence[Sequence]) -> "MassCloud":
        """Image under the linear map x -> rows . x (weights unchanged)."""
        return MassCloud(tuple(matvec(rows, p) for p in self.points), self.weights)

    def weight_of(self, normal: Sequence, offset) -> Fraction:
        """Weight of the closed halfspace {x : <x, normal> >= offset}."""
        return sum((w for p, w in zip(self.points, self.weights) if dot(p, normal) >= offset), ZERO)
