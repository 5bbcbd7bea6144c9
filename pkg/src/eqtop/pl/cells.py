"""Convex polytopes with exact vertex bookkeeping, and adaptive subdivision.

A cell is ``{x : a . x <= b}`` for its constraint list, stored together with
its vertices and, per vertex, the set of constraints tight there.  Cutting a
cell by a hyperplane that strictly separates some of its vertices produces
two full-dimensional cells; their new vertices are the crossing points on
the edges whose endpoints lie on opposite sides.  Two vertices span an edge
exactly when the constraints tight at both have rank ``d - 1``.

``refine`` walks a box, cutting cells until every requested expression is a
single affine function on each cell.  The hyperplanes used are the
difference hyperplanes of the ``Min``/``Max`` nodes, so the final cells
refine the arrangement those hyperplanes cut out of the box.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .expr import Affine, Box, Compose, Const, Expr, Max, Min, Mul, Scale, Sum, Var

ZERO = Fraction(0)


class NotPiecewiseLinear(TypeError):
    pass


def dot(a, x) -> Fraction:
    return sum((p * q for p, q in zip(a, x)), ZERO)


def value(aff, x) -> Fraction:
    """Affine function ``(c_0..c_{d-1}, offset)`` at ``x``."""
    return dot(aff, x) + aff[-1]


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    m = [list(r) for r in rows]
    if not m:
        return 0
    r = 0
    ncols = len(m[0])
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(r + 1, len(m)):
            if m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


@dataclass
class Cell:
    dim: int
    constraints: list          # (normal, bound) with normal . x <= bound
    vertices: list             # (point, frozenset of tight constraint indices)

    @classmethod
    def from_box(cls, intervals) -> "Cell":
        d = len(intervals)
        cons = []
        for i, (lo, hi) in enumerate(intervals):
            e = [ZERO] * d
            e[i] = Fraction(1)
            cons.append((tuple(e), hi))
            cons.append((tuple(-v for v in e), -lo))
        verts = []
        for mask in range(2 ** d):
            pt, tight = [], set()
            for i, (lo, hi) in enumerate(intervals):
                if mask >> (d - 1 - i) & 1:
                    pt.append(hi)
                    tight.add(2 * i)
                else:
                    pt.append(lo)
                    tight.add(2 * i + 1)
            verts.append((tuple(pt), frozenset(tight)))
        return cls(d, cons, verts)

    def centroid(self) -> tuple:
        n = len(self.vertices)
        return tuple(sum((v[0][i] for v in self.vertices), ZERO) / n for i in range(self.dim))

    def _adjacent(self, t1, t2) -> bool:
        common = t1 & t2
        if len(common) < self.dim - 1:
            return False
        return rank([self.constraints[i][0] for i in common]) == self.dim - 1

    def split(self, aff) -> tuple:
        """Cells where ``aff <= 0`` and ``aff >= 0``; ``aff`` must change sign on the vertices."""
        normal, off = tuple(aff[:-1]), aff[-1]
        s = [value(aff, p) for p, _ in self.vertices]
        k = len(self.constraints)
        lower_cons = self.constraints + [(normal, -off)]
        upper_cons = self.constraints + [(tuple(-c for c in normal), off)]
        lower, upper, new = [], [], []
        for (p, t), sv in zip(self.vertices, s):
            if sv < 0:
                lower.append((p, t))
            elif sv > 0:
                upper.append((p, t))
            else:
                lower.append((p, t | {k}))
                upper.append((p, t | {k}))
        for i, (p, t) in enumerate(self.vertices):
            if s[i] >= 0:
                continue
            for j, (q, u) in enumerate(self.vertices):
                if s[j] <= 0 or not self._adjacent(t, u):
                    continue
                lam = s[i] / (s[i] - s[j])
                pt = tuple(a + lam * (b - a) for a, b in zip(p, q))
                new.append((pt, (t & u) | {k}))
        return (Cell(self.dim, lower_cons, lower + new),
                Cell(self.dim, upper_cons, upper + new))


# -- symbolic evaluation on a cell -----------------------------------------

class _Cut(Exception):
    def __init__(self, aff):
        self.aff = aff


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _scale(c, a):
    return tuple(c * x for x in a)


def affine_on(expr: Expr, env: list, cell: Cell):
    """The affine function ``expr`` equals on ``cell``, or raise ``_Cut`` with a
    hyperplane that must be cut first.  ``env[i]`` is the affine function for ``Var(i)``.
    """
    e = expr
    if isinstance(e, Var):
        return env[e.index]
    if isinstance(e, Const):
        return (ZERO,) * cell.dim + (e.value,)
    if isinstance(e, Affine):
        out = (ZERO,) * cell.dim + (e.offset,)
        for i, c in enumerate(e.coeffs):
            if c:
                out = _add(out, _scale(c, env[i]))
        return out
    if isinstance(e, Scale):
        return _scale(e.factor, affine_on(e.arg, env, cell))
    if isinstance(e, Compose):
        inner = [affine_on(i, env, cell) for i in e.inners]
        return affine_on(e.outer, inner, cell)
    if isinstance(e, Mul):
        raise NotPiecewiseLinear("Mul is not piecewise linear")
    a = affine_on(e.left, env, cell)
    b = affine_on(e.right, env, cell)
    if isinstance(e, Sum):
        return _add(a, b)
    if a == b:
        return a
    diff = _add(a, _scale(Fraction(-1), b))
    signs = {(v > 0) - (v < 0) for v in (value(diff, p) for p, _ in cell.vertices)}
    if 1 in signs and -1 in signs:
        raise _Cut(diff)
    a_ge_b = -1 not in signs
    if isinstance(e, Min):
        return b if a_ge_b else a
    if isinstance(e, Max):
        return a if a_ge_b else b
    raise TypeError(f"not an expression: {e!r}")


@dataclass
class Reduced:
    """A box with its degenerate coordinates frozen.

    Cells live in the coordinates whose interval has positive length.
    """
    box: Box
    free: tuple

    @classmethod
    def of(cls, box: Box) -> "Reduced":
        return cls(box, tuple(i for i, (lo, hi) in enumerate(box.intervals) if lo < hi))

    @property
    def dim(self) -> int:
        return len(self.free)

    def env(self) -> list:
        d = self.dim
        out = []
        for i, (lo, hi) in enumerate(self.box.intervals):
            v = [ZERO] * (d + 1)
            if i in self.free:
                v[self.free.index(i)] = Fraction(1)
            else:
                v[d] = lo
            out.append(tuple(v))
        return out

    def lift(self, point) -> tuple:
        full = [lo for lo, _ in self.box.intervals]
        for k, i in enumerate(self.free):
            full[i] = point[k]
        return tuple(full)

    def cell(self) -> Cell:
        return Cell.from_box([self.box.intervals[i] for i in self.free])


def refine(exprs: Sequence[Expr], box: Box) -> Iterator[tuple]:
    """Yield ``(cell, affines)`` for cells covering the box on which each expression is affine.

    Cells are produced depth first, the ``<= 0`` side of every cut first, so
    the order is deterministic.  Coordinates are those of ``Reduced.of(box)``.
    """
    red = Reduced.of(box)
    env = red.env()
    stack = [red.cell()]
    while stack:
        cell = stack.pop()
        try:
            affs = [affine_on(e, env, cell) for e in exprs]
        except _Cut as cut:
            lower, upper = cell.split(cut.aff)
            stack.append(upper)
            stack.append(lower)
            continue
        yield cell, affs
