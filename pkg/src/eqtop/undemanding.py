"""Deciding whether a theory is satisfiable by projections and constants.

A theory is undemanding when it has a model on a set with more than one
element whose operations are all projections or constants.  Such a model
exists iff some choice ``K`` of "projection onto argument j" or "constant"
per symbol makes both sides of every equation reduce to the same atom,
where an atom is a variable or the constant.

One constant ``C`` is enough even when several symbols are constant.  In
any projection/constant model a side reducing to ``x_j`` denotes the ``j``-th
projection and a side reducing to a constant denotes a constant function; on
a set of two or more elements a projection never equals a constant or a
different projection.  So if some model satisfies an equation, both sides
reduce to the same variable or both to constants, and the model with all
constants identified satisfies it as well.  The same argument covers
the coordinatewise version below, where one shared ``C`` is used for every
coordinate.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, Union

from .algebra import FiniteAlgebra, Operation, constant, projection, tuples, _index
from .terms import App, Signature, Term, Theory, Var


@dataclass(frozen=True)
class Proj:
    index: int

    def __str__(self):
        return f"proj{self.index}"


@dataclass(frozen=True)
class Const:
    def __str__(self):
        return "const"


class _CAtom:
    """The single constant atom."""
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "C"

    __str__ = __repr__


C = _CAtom()

KAtom = Union[Var, _CAtom]


@dataclass(frozen=True)
class Pick:
    """Coordinate ``coord`` of argument ``arg`` (both 1-based)."""
    arg: int
    coord: int

    def __str__(self):
        return f"pick({self.arg},{self.coord})"


class UncoveredSymbol(KeyError):
    pass


# -- verdicts --------------------------------------------------------------

@dataclass(frozen=True)
class Undemanding:
    witness: dict

    def __bool__(self):
        return True

    def __str__(self):
        return "Undemanding: " + format_assignment(self.witness)


@dataclass(frozen=True)
class KUndemanding:
    witness: dict
    k: int

    def __bool__(self):
        return True

    def __str__(self):
        return f"{self.k}-undemanding: " + format_assignment(self.witness)


@dataclass(frozen=True)
class Demanding:
    k: int = 1

    def __bool__(self):
        return False

    def __str__(self):
        return "Demanding" if self.k == 1 else f"Demanding (k={self.k})"


def format_assignment(assign: Mapping) -> str:
    parts = []
    for name, entry in assign.items():
        if isinstance(entry, tuple):
            parts.append(f"{name} -> ({', '.join(str(e) for e in entry)})")
        else:
            parts.append(f"{name} -> {entry}")
    return "; ".join(parts) if parts else "(empty signature)"


@dataclass
class DemandStats:
    visited: int = 0


# -- one coordinate --------------------------------------------------------

def reduce_term(assign: Mapping, term: Term) -> KAtom:
    """The atom a term collapses to when each symbol is a projection or constant."""
    while isinstance(term, App):
        try:
            entry = assign[term.symbol]
        except KeyError:
            raise UncoveredSymbol(term.symbol) from None
        if isinstance(entry, Const):
            return C
        term = term.args[entry.index - 1]
    return term


def assignment_count(theory_or_signature) -> int:
    sig = _signature(theory_or_signature)
    n = 1
    for _, arity in sig:
        n *= arity + 1
    return n


def _signature(x) -> Signature:
    return x.signature if isinstance(x, Theory) else x


def _options(arity: int) -> list:
    return [Proj(j) for j in range(1, arity + 1)] + [Const()]


def enumerate_assignments(theory_or_signature) -> Iterator[dict]:
    """All projection/constant assignments; first symbol varies slowest."""
    sig = _signature(theory_or_signature)
    names = sig.names
    for choice in itertools.product(*(_options(a) for _, a in sig)):
        yield dict(zip(names, choice))


def consistent(theory: Theory, assign: Mapping) -> bool:
    for eq in theory.equations:
        if reduce_term(assign, eq.lhs) != reduce_term(assign, eq.rhs):
            return False
    return True


def is_undemanding(theory: Theory, stats: DemandStats = None):
    """``Undemanding(first consistent K)`` or ``Demanding()``."""
    for assign in enumerate_assignments(theory):
        if stats is not None:
            stats.visited += 1
        if consistent(theory, assign):
            return Undemanding(assign)
    return Demanding()


def witness_algebra(theory: Theory, assign: Mapping, size: int = 2) -> FiniteAlgebra:
    """Algebra on ``size`` elements with the projections and constant 0 of ``assign``."""
    ops = {}
    for name, arity in theory.signature:
        entry = assign[name]
        if isinstance(entry, Const):
            ops[name] = constant(size, arity, 0)
        else:
            ops[name] = projection(size, arity, entry.index)
    return FiniteAlgebra(size, ops)


def projection_constant_tables(size: int, arity: int) -> list:
    """Every projection and every constant operation of the given arity."""
    return ([projection(size, arity, j) for j in range(1, arity + 1)]
            + [constant(size, arity, v) for v in range(size)])


# -- k coordinates ---------------------------------------------------------

def _coord_options(arity: int, k: int) -> list:
    return [Pick(a, c) for a in range(1, arity + 1) for c in range(1, k + 1)] + [Const()]


def coord_assignment_count(theory_or_signature, k: int) -> int:
    n = 1
    for _, arity in _signature(theory_or_signature):
        n *= (arity * k + 1) ** k
    return n


def enumerate_coord_assignments(theory_or_signature, k: int) -> Iterator[dict]:
    """Symbols in signature order, coordinates in order, options arg-major then Const."""
    sig = _signature(theory_or_signature)
    names = sig.names
    per_symbol = [list(itertools.product(_coord_options(a, k), repeat=k)) for _, a in sig]
    for choice in itertools.product(*per_symbol):
        yield dict(zip(names, choice))


def reduce_coords(assign: Mapping, term: Term, k: int) -> tuple:
    """A ``k``-tuple whose entries are ``(variable, coordinate)`` pairs or ``C``."""
    if isinstance(term, Var):
        return tuple((term.index, c) for c in range(1, k + 1))
    try:
        entries = assign[term.symbol]
    except KeyError:
        raise UncoveredSymbol(term.symbol) from None
    cache = {}
    out = []
    for e in entries:
        if isinstance(e, Const):
            out.append(C)
            continue
        if e.arg not in cache:
            cache[e.arg] = reduce_coords(assign, term.args[e.arg - 1], k)
        out.append(cache[e.arg][e.coord - 1])
    return tuple(out)


def coords_consistent(theory: Theory, assign: Mapping, k: int) -> bool:
    for eq in theory.equations:
        if reduce_coords(assign, eq.lhs, k) != reduce_coords(assign, eq.rhs, k):
            return False
    return True


def is_k_undemanding(theory: Theory, k: int, stats: DemandStats = None):
    """``KUndemanding(first consistent assignment, k)`` or ``Demanding(k)``.

    Each symbol's value at coordinate ``i`` is some coordinate of some argument,
    or the shared constant.  For ``k = 1`` this is exactly ``is_undemanding``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    for assign in enumerate_coord_assignments(theory, k):
        if stats is not None:
            stats.visited += 1
        if coords_consistent(theory, assign, k):
            return KUndemanding(assign, k)
    return Demanding(k)


def lift_assignment(assign: Mapping, k: int) -> dict:
    """A one-coordinate assignment applied in every coordinate."""
    out = {}
    for name, e in assign.items():
        if isinstance(e, Const):
            out[name] = tuple(Const() for _ in range(k))
        else:
            out[name] = tuple(Pick(e.index, c) for c in range(1, k + 1))
    return out


def block_assignment(assign: Mapping, k: int, m: int) -> dict:
    """A ``k``-coordinate assignment viewed on ``k*m`` coordinates.

    Coordinate ``(b, i)`` of the ``k*m`` picture is coordinate ``i`` of block
    ``b``; each block behaves like the original assignment.
    """
    out = {}
    for name, entries in assign.items():
        row = []
        for b in range(m):
            for e in entries:
                row.append(e if isinstance(e, Const) else Pick(e.arg, b * k + e.coord))
        out[name] = tuple(row)
    return out


def coord_witness_algebra(theory: Theory, assign: Mapping, k: int, base: int = 2) -> FiniteAlgebra:
    """Algebra on ``base**k`` tuples (first coordinate most significant)."""
    elems = list(tuples(base, k))
    size = len(elems)
    ops = {}
    for name, arity in theory.signature:
        entries = assign[name]
        table = []
        for args in itertools.product(elems, repeat=arity):
            out = [0 if isinstance(e, Const) else args[e.arg - 1][e.coord - 1] for e in entries]
            table.append(_index(out, base))
        ops[name] = Operation(arity, table)
    return FiniteAlgebra(size, ops)
