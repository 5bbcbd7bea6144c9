"""Exact piecewise-linear expressions over rationals.

Variables are 0-based here: ``Var(0)`` is the first argument of an operation.
``Mul`` is allowed in expressions but makes them non-PL; such expressions can
be evaluated and sampled but not certified.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

Rational = Fraction


def rational(x) -> Fraction:
    """Fraction from an int, Fraction or a ``"p/q"`` / ``"p"`` string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


def fmt(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def fmt_point(point) -> str:
    return "(" + ", ".join(fmt(v) for v in point) + ")"


class Expr:
    __slots__ = ()

    def __add__(self, other):
        return Sum(self, lift(other))

    def __radd__(self, other):
        return Sum(lift(other), self)

    def __sub__(self, other):
        return Sum(self, Scale(Fraction(-1), lift(other)))

    def __rsub__(self, other):
        return Sum(lift(other), Scale(Fraction(-1), self))

    def __neg__(self):
        return Scale(Fraction(-1), self)

    def __mul__(self, other):
        if isinstance(other, Expr):
            return Mul(self, other)
        return Scale(rational(other), self)

    def __rmul__(self, other):
        return Scale(rational(other), self)

    def __truediv__(self, other):
        return Scale(1 / rational(other), self)


@dataclass(frozen=True)
class Var(Expr):
    index: int


@dataclass(frozen=True)
class Const(Expr):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", rational(self.value))


@dataclass(frozen=True)
class Affine(Expr):
    coeffs: tuple
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(rational(c) for c in self.coeffs))
        object.__setattr__(self, "offset", rational(self.offset))


@dataclass(frozen=True)
class Min(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Max(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sum(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Scale(Expr):
    factor: Fraction
    arg: Expr

    def __post_init__(self):
        object.__setattr__(self, "factor", rational(self.factor))


@dataclass(frozen=True)
class Compose(Expr):
    """``outer`` evaluated at the values of ``inners`` (``Var(i)`` of outer is ``inners[i]``)."""
    outer: Expr
    inners: tuple

    def __post_init__(self):
        object.__setattr__(self, "inners", tuple(self.inners))


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


PLExpr = Union[Var, Const, Affine, Min, Max, Sum, Scale, Compose]


def lift(x) -> Expr:
    return x if isinstance(x, Expr) else Const(rational(x))


def min_(*args) -> Expr:
    out = lift(args[0])
    for a in args[1:]:
        out = Min(out, lift(a))
    return out


def max_(*args) -> Expr:
    out = lift(args[0])
    for a in args[1:]:
        out = Max(out, lift(a))
    return out


def compose(outer: Expr, *inners: Expr) -> Expr:
    return Compose(outer, tuple(inners))


def x(i: int) -> Var:
    return Var(i)


# -- structure -------------------------------------------------------------

def arity(expr: Expr) -> int:
    """One more than the largest variable index used (0 if none)."""
    if isinstance(expr, Var):
        return expr.index + 1
    if isinstance(expr, Const):
        return 0
    if isinstance(expr, Affine):
        return len(expr.coeffs)
    if isinstance(expr, Scale):
        return arity(expr.arg)
    if isinstance(expr, Compose):
        return max([arity(e) for e in expr.inners] + [0])
    return max(arity(expr.left), arity(expr.right))


def is_pl(expr: Expr) -> bool:
    if isinstance(expr, Mul):
        return False
    if isinstance(expr, (Var, Const, Affine)):
        return True
    if isinstance(expr, Scale):
        return is_pl(expr.arg)
    if isinstance(expr, Compose):
        return is_pl(expr.outer) and all(is_pl(e) for e in expr.inners)
    return is_pl(expr.left) and is_pl(expr.right)


class ArityError(ValueError):
    pass


def _check_compose(expr: Compose):
    if arity(expr.outer) > len(expr.inners):
        raise ArityError(f"outer expression uses {arity(expr.outer)} variables, "
                         f"{len(expr.inners)} supplied")


# -- evaluation ------------------------------------------------------------

def evaluate(expr: Expr, point: Sequence) -> Fraction:
    """Exact value at a rational point."""
    point = tuple(rational(v) for v in point)
    if arity(expr) > len(point):
        raise ArityError(f"expression needs {arity(expr)} coordinates, got {len(point)}")
    return _eval(expr, point)


def _eval(e, p):
    if isinstance(e, Var):
        return p[e.index]
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Affine):
        return sum((c * v for c, v in zip(e.coeffs, p)), e.offset)
    if isinstance(e, Min):
        return min(_eval(e.left, p), _eval(e.right, p))
    if isinstance(e, Max):
        return max(_eval(e.left, p), _eval(e.right, p))
    if isinstance(e, Sum):
        return _eval(e.left, p) + _eval(e.right, p)
    if isinstance(e, Scale):
        return e.factor * _eval(e.arg, p)
    if isinstance(e, Mul):
        return _eval(e.left, p) * _eval(e.right, p)
    if isinstance(e, Compose):
        _check_compose(e)
        return _eval(e.outer, tuple(_eval(i, p) for i in e.inners))
    raise TypeError(f"not an expression: {e!r}")


def compile_expr(expr: Expr):
    """A closure computing the expression; faster than ``evaluate`` for many points."""
    if isinstance(expr, Var):
        i = expr.index
        return lambda p: p[i]
    if isinstance(expr, Const):
        v = expr.value
        return lambda p: v
    if isinstance(expr, Affine):
        cs, off = expr.coeffs, expr.offset
        return lambda p: sum((c * v for c, v in zip(cs, p)), off)
    if isinstance(expr, Scale):
        f, a = expr.factor, compile_expr(expr.arg)
        return lambda p: f * a(p)
    if isinstance(expr, Compose):
        _check_compose(expr)
        outer = compile_expr(expr.outer)
        inners = [compile_expr(i) for i in expr.inners]
        return lambda p: outer([g(p) for g in inners])
    a, b = compile_expr(expr.left), compile_expr(expr.right)
    if isinstance(expr, Min):
        return lambda p: min(a(p), b(p))
    if isinstance(expr, Max):
        return lambda p: max(a(p), b(p))
    if isinstance(expr, Sum):
        return lambda p: a(p) + b(p)
    if isinstance(expr, Mul):
        return lambda p: a(p) * b(p)
    raise TypeError(f"not an expression: {expr!r}")


# -- boxes -----------------------------------------------------------------

@dataclass(frozen=True)
class Box:
    """Product of closed intervals ``[lo, hi]``."""
    intervals: tuple

    def __post_init__(self):
        ivs = tuple((rational(lo), rational(hi)) for lo, hi in self.intervals)
        for lo, hi in ivs:
            if lo > hi:
                raise ValueError(f"empty interval [{fmt(lo)}, {fmt(hi)}]")
        object.__setattr__(self, "intervals", ivs)

    @classmethod
    def interval(cls, lo=0, hi=1) -> "Box":
        return cls(((lo, hi),))

    @property
    def dim(self) -> int:
        return len(self.intervals)

    def power(self, n: int) -> "Box":
        """The ``n``-fold product of a one-dimensional box."""
        if self.dim != 1:
            raise ValueError("power is defined for one-dimensional boxes")
        return Box(self.intervals * n)

    def contains(self, point) -> bool:
        return len(point) == self.dim and all(
            lo <= rational(v) <= hi for v, (lo, hi) in zip(point, self.intervals))

    def to_json(self):
        return [[fmt(lo), fmt(hi)] for lo, hi in self.intervals]

    @classmethod
    def from_json(cls, data) -> "Box":
        return cls(tuple((lo, hi) for lo, hi in data))


UNIT = Box.interval(0, 1)
SYMMETRIC = Box.interval(-1, 1)


# -- JSON ------------------------------------------------------------------

def to_json(expr: Expr) -> dict:
    if isinstance(expr, Var):
        return {"kind": "var", "index": expr.index}
    if isinstance(expr, Const):
        return {"kind": "const", "value": fmt(expr.value)}
    if isinstance(expr, Affine):
        return {"kind": "affine", "coeffs": [fmt(c) for c in expr.coeffs],
                "offset": fmt(expr.offset)}
    if isinstance(expr, Scale):
        return {"kind": "scale", "factor": fmt(expr.factor), "arg": to_json(expr.arg)}
    if isinstance(expr, Compose):
        return {"kind": "compose", "outer": to_json(expr.outer),
                "inners": [to_json(i) for i in expr.inners]}
    kind = {Min: "min", Max: "max", Sum: "sum", Mul: "mul"}[type(expr)]
    return {"kind": kind, "args": [to_json(expr.left), to_json(expr.right)]}


_BINARY = {"min": Min, "max": Max, "sum": Sum, "mul": Mul}


def from_json(data) -> Expr:
    kind = data["kind"]
    if kind == "var":
        return Var(int(data["index"]))
    if kind == "const":
        return Const(rational(data["value"]))
    if kind == "affine":
        return Affine(tuple(rational(c) for c in data["coeffs"]),
                      rational(data.get("offset", "0")))
    if kind == "scale":
        return Scale(rational(data["factor"]), from_json(data["arg"]))
    if kind == "compose":
        return Compose(from_json(data["outer"]), tuple(from_json(i) for i in data["inners"]))
    if kind in _BINARY:
        args = [from_json(a) for a in data["args"]]
        if len(args) < 2:
            raise ValueError(f"{kind} needs at least two arguments")
        out = args[0]
        for a in args[1:]:
            out = _BINARY[kind](out, a)
        return out
    raise ValueError(f"unknown expression kind {kind!r}")


def witness_to_json(witness: dict, box: Box) -> dict:
    return {"box": box.to_json(), "ops": {n: to_json(e) for n, e in witness.items()}}


def witness_from_json(data) -> tuple:
    """``(ops, box)`` from a witness file object."""
    return ({n: from_json(e) for n, e in data["ops"].items()}, Box.from_json(data["box"]))
