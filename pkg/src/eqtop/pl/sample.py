"""Exact falsification by evaluation at rational sample points.

Used for operation sets containing products, where no certification is
attempted.  A refutation is exact; passing all samples proves nothing.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from ..terms import Theory
from .certify import check_witness, equation_box, term_to_expr
from .expr import Box, compile_expr, fmt, fmt_point


@dataclass(frozen=True)
class SamplingPlan:
    """Grid of all rationals with denominator at most ``grid_denominator`` in each
    coordinate (only for equations with at most ``grid_max_vars`` variables),
    followed by ``random_points`` seeded random rationals with denominators at
    most ``random_denominator``.
    """
    grid_denominator: int = 6
    grid_max_vars: int = 3
    random_points: int = 2000
    random_denominator: int = 10 ** 4
    seed: int = 0


@dataclass(frozen=True)
class NoCounterexampleFound:
    count: int
    seed: int

    def __bool__(self):
        return True

    def __str__(self):
        return f"NoCounterexampleFound({self.count} points, seed {self.seed})"


@dataclass(frozen=True)
class SampleRefuted:
    equation: object
    point: tuple
    lhs_value: Fraction
    rhs_value: Fraction

    def __bool__(self):
        return False

    def __str__(self):
        return (f"Refuted {self.equation} at {fmt_point(self.point)}: "
                f"{fmt(self.lhs_value)} vs {fmt(self.rhs_value)}")


def grid(lo: Fraction, hi: Fraction, denominator: int) -> list:
    """All rationals in ``[lo, hi]`` whose reduced denominator is at most ``denominator``."""
    pts = set()
    for q in range(1, denominator + 1):
        for p in range(math.ceil(lo * q), math.floor(hi * q) + 1):
            pts.add(Fraction(p, q))
    return sorted(pts)


def random_rational(rng: random.Random, lo: Fraction, hi: Fraction, max_den: int) -> Fraction:
    q = rng.randint(1, max_den)
    a, b = math.ceil(lo * q), math.floor(hi * q)
    if a > b:
        return lo
    return Fraction(rng.randint(a, b), q)


def sample_points(box: Box, plan: SamplingPlan, stream: int = 0):
    """The plan's points in a box, grid first; ``stream`` selects an independent random stream."""
    n = box.dim
    if n == 0:
        yield ()
        return
    if n <= plan.grid_max_vars:
        axes = [grid(lo, hi, plan.grid_denominator) for lo, hi in box.intervals]
        yield from itertools.product(*axes)
    rng = random.Random(plan.seed * 1_000_003 + stream)
    for _ in range(plan.random_points):
        yield tuple(random_rational(rng, lo, hi, plan.random_denominator)
                    for lo, hi in box.intervals)


def sample_check(theory: Theory, witness: Mapping, box: Box, plan: SamplingPlan = None):
    """Evaluate both sides of every equation exactly at the plan's points.

    Returns ``SampleRefuted`` for the first equation and point where they differ,
    otherwise ``NoCounterexampleFound`` with the number of points evaluated.
    """
    plan = plan or SamplingPlan()
    check_witness(theory, witness)
    count = 0
    for k, eq in enumerate(theory.equations):
        lhs = compile_expr(term_to_expr(eq.lhs, witness))
        rhs = compile_expr(term_to_expr(eq.rhs, witness))
        for pt in sample_points(equation_box(box, eq), plan, k):
            count += 1
            a, b = lhs(pt), rhs(pt)
            if a != b:
                return SampleRefuted(eq, pt, a, b)
    return NoCounterexampleFound(count, plan.seed)
