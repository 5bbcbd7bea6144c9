"""Exact identity checking of PL operations on boxes."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from ..terms import Equation, Theory, Var as TermVar
from .cells import NotPiecewiseLinear, Reduced, refine, value
from .expr import ArityError, Box, Compose, Expr, Var, arity, evaluate, fmt, fmt_point, is_pl


@dataclass(frozen=True)
class Equal:
    cells: int = 0

    def __bool__(self):
        return True

    def __str__(self):
        return f"Equal ({self.cells} cells)"


@dataclass(frozen=True)
class NotEqual:
    witness: tuple
    lhs_value: Fraction
    rhs_value: Fraction

    def __bool__(self):
        return False

    def __str__(self):
        return (f"NotEqual at {fmt_point(self.witness)}: "
                f"{fmt(self.lhs_value)} vs {fmt(self.rhs_value)}")


def _check_pair(e1, e2, box):
    for e in (e1, e2):
        if not is_pl(e):
            raise NotPiecewiseLinear("certification needs expressions without Mul")
        if arity(e) > box.dim:
            raise ArityError(f"expression uses {arity(e)} variables, box has {box.dim}")


def _witness(cell, diff):
    """A point of the cell where the affine ``diff`` is nonzero, preferring interior points.

    ``diff`` is nonzero as a function and the cell is full dimensional, so it
    cannot vanish at every vertex.  If it vanishes at the centroid, the
    midpoint of the centroid and a vertex where it does not vanish is still
    interior and has ``diff`` equal to half the vertex value.
    """
    c = cell.centroid()
    if value(diff, c) != 0:
        return c
    for p, _ in cell.vertices:
        if value(diff, p) != 0:
            return tuple((a + b) / 2 for a, b in zip(c, p))
    raise AssertionError("affine difference vanishes on a full-dimensional cell")


def pl_equal(e1: Expr, e2: Expr, box: Box):
    """Decide exactly whether two PL expressions agree on the box.

    The box is cut until both sides are affine on every cell; on each cell
    the two affine functions are compared coefficientwise.  Agreement on
    every full-dimensional cell gives agreement on the whole box because
    the expressions are continuous and the cells cover it.
    """
    _check_pair(e1, e2, box)
    red = Reduced.of(box)
    count = 0
    for cell, (a1, a2) in refine([e1, e2], box):
        count += 1
        if a1 == a2:
            continue
        diff = tuple(x - y for x, y in zip(a1, a2))
        point = red.lift(_witness(cell, diff))
        v1, v2 = evaluate(e1, point), evaluate(e2, point)
        if v1 == v2:
            raise AssertionError(f"witness {fmt_point(point)} does not separate the sides")
        return NotEqual(point, v1, v2)
    return Equal(count)


def pl_bounds(expr: Expr, box: Box) -> tuple:
    """Exact minimum and maximum of a PL expression over the box."""
    _check_pair(expr, expr, box)
    lo = hi = None
    for cell, (a,) in refine([expr], box):
        for p, _ in cell.vertices:
            v = value(a, p)
            lo = v if lo is None or v < lo else lo
            hi = v if hi is None or v > hi else hi
    return lo, hi


def pl_range(witness: Mapping, signature, box: Box) -> dict:
    """For each symbol, whether its operation maps ``box^arity`` into ``box``.

    ``box`` is one-dimensional.  Returns ``{name: (ok, (min, max))}``.
    """
    lo, hi = box.intervals[0]
    out = {}
    for name, n in signature:
        mn, mx = pl_bounds(witness[name], box.power(n))
        out[name] = (lo <= mn and mx <= hi, (mn, mx))
    return out


# -- theories ---------------------------------------------------------------

class WitnessError(ValueError):
    pass


def check_witness(theory: Theory, witness: Mapping):
    for name, n in theory.signature:
        if name not in witness:
            raise WitnessError(f"no operation given for {name}")
        if arity(witness[name]) > n:
            raise WitnessError(f"operation for {name} uses {arity(witness[name])} "
                               f"variables but {name} has arity {n}")


def term_to_expr(term, witness: Mapping) -> Expr:
    """Expression for a term, with term variable ``x_j`` as ``Var(j - 1)``."""
    if isinstance(term, TermVar):
        return Var(term.index - 1)
    args = tuple(term_to_expr(a, witness) for a in term.args)
    return Compose(witness[term.symbol], args)


@dataclass(frozen=True)
class EquationResult:
    equation: Equation
    verdict: object

    def __bool__(self):
        return bool(self.verdict)


def equation_box(box: Box, eq: Equation) -> Box:
    return box.power(eq.nvars) if box.dim == 1 else Box(box.intervals[:eq.nvars])


def check_pl_model(theory: Theory, witness: Mapping, box: Box) -> list:
    """``pl_equal`` on both sides of each equation over the box power of its variable count."""
    check_witness(theory, witness)
    out = []
    for eq in theory.equations:
        lhs, rhs = term_to_expr(eq.lhs, witness), term_to_expr(eq.rhs, witness)
        out.append(EquationResult(eq, pl_equal(lhs, rhs, equation_box(box, eq))))
    return out
