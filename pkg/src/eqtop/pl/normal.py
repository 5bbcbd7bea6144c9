"""Max-of-mins normal form of PL expressions.

An affine function of ``d`` variables is a tuple ``(c_0, ..., c_{d-1}, offset)``.
A normal form is a tuple of min-terms, each a sorted tuple of affine
functions, and denotes ``max over terms of (min over the term's pieces)``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product as cartesian

from .expr import Affine, Compose, Const, Expr, Max, Min, Mul, Scale, Sum, Var, arity


def _simplify(terms) -> tuple:
    """Drop duplicate pieces and min-terms that contain another min-term."""
    sets = {frozenset(t) for t in terms}
    keep = [s for s in sets if not any(o < s for o in sets)]
    return tuple(sorted(tuple(sorted(s)) for s in keep))


def _const(value, d):
    return ((tuple([Fraction(0)] * d) + (Fraction(value),),),)


def _unit(i, d):
    v = [Fraction(0)] * (d + 1)
    v[i] = Fraction(1)
    return ((tuple(v),),)


def nf_max(a, b):
    return _simplify(a + b)


def nf_min(a, b):
    return _simplify(tuple(s + t for s in a for t in b))


def nf_add(a, b):
    return _simplify(tuple(tuple(tuple(x + y for x, y in zip(p, q)) for p in s for q in t)
                           for s in a for t in b))


def nf_scale(c, a):
    c = Fraction(c)
    if c >= 0:
        return _simplify(tuple(tuple(tuple(c * x for x in p) for p in s) for s in a))
    # -max_i min_j l_ij = min_i max_j (-l_ij) = max over choice functions of min_i (-l_i,f(i))
    neg = [[tuple(c * x for x in p) for p in s] for s in a]
    return _simplify(tuple(tuple(choice) for choice in cartesian(*neg)))


def normal_form(expr: Expr, dim: int = None, env=None) -> tuple:
    """Max-of-mins normal form over ``dim`` variables (default: the expression's arity)."""
    if dim is None:
        dim = arity(expr)
    return _nf(expr, dim, env)


def _nf(e, d, env):
    if isinstance(e, Var):
        return env[e.index] if env is not None else _unit(e.index, d)
    if isinstance(e, Const):
        return _const(e.value, d)
    if isinstance(e, Affine):
        out = _const(e.offset, d)
        for i, c in enumerate(e.coeffs):
            if c:
                out = nf_add(out, nf_scale(c, _nf(Var(i), d, env)))
        return out
    if isinstance(e, Scale):
        return nf_scale(e.factor, _nf(e.arg, d, env))
    if isinstance(e, Compose):
        inner = [_nf(i, d, env) for i in e.inners]
        return _nf(e.outer, d, inner)
    if isinstance(e, Mul):
        raise TypeError("products of variables have no max-of-mins form")
    a, b = _nf(e.left, d, env), _nf(e.right, d, env)
    if isinstance(e, Min):
        return nf_min(a, b)
    if isinstance(e, Max):
        return nf_max(a, b)
    if isinstance(e, Sum):
        return nf_add(a, b)
    raise TypeError(f"not an expression: {e!r}")


def evaluate_normal_form(nf, point) -> Fraction:
    point = [Fraction(v) for v in point]

    def val(p):
        return sum((c * v for c, v in zip(p, point)), p[-1])

    return max(min(val(p) for p in s) for s in nf)


def from_normal_form(nf) -> Expr:
    """Back to an expression tree of ``Max``/``Min`` over ``Affine`` leaves."""
    out = None
    for s in nf:
        term = None
        for p in s:
            leaf = Affine(p[:-1], p[-1])
            term = leaf if term is None else Min(term, leaf)
        out = term if out is None else Max(out, term)
    return out
