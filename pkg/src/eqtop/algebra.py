"""Finite algebras, satisfaction, and the model-level constructions.

The universe of an algebra of size ``n`` is ``range(n)``.  Operation tables
are flat and row-major (last argument varies fastest).  Products pair
``(i, j)`` as ``i * |B| + j``; powers encode ``(b1, ..., bk)`` the same way
with ``b1`` most significant.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Mapping, Sequence

from . import kernels
from .terms import Equation, Signature, Theory, Var, disjoint_renaming, fresh_name


class SignatureError(ValueError):
    pass


class PreconditionError(ValueError):
    """A construction was handed an algebra that does not model its theory."""

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


@dataclass(frozen=True)
class Operation:
    arity: int
    table: tuple

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))


class FiniteAlgebra:
    """A finite universe ``{0..size-1}`` with total operation tables.

    Instances are treated as immutable; ``ops`` is copied on construction.
    """

    __slots__ = ("size", "_ops")

    def __init__(self, size: int, ops: Mapping = None):
        if size < 1:
            raise ValueError("algebra size must be at least 1")
        self.size = int(size)
        built = {}
        for name, op in (ops or {}).items():
            if not isinstance(op, Operation):
                arity, table = op
                op = Operation(arity, table)
            if len(op.table) != self.size ** op.arity:
                raise ValueError(f"table for {name!r} has length {len(op.table)}, "
                                 f"expected {self.size ** op.arity}")
            if any(not 0 <= v < self.size for v in op.table):
                raise ValueError(f"table for {name!r} has entries outside the universe")
            built[name] = op
        self._ops = built

    @property
    def ops(self) -> dict:
        return dict(self._ops)

    @property
    def signature(self) -> Signature:
        return Signature(tuple((n, op.arity) for n, op in self._ops.items()))

    def table(self, name: str) -> tuple:
        return self._ops[name].table

    def arity(self, name: str) -> int:
        return self._ops[name].arity

    def __call__(self, name: str, *args: int) -> int:
        op = self._ops[name]
        if len(args) != op.arity:
            raise TypeError(f"{name} takes {op.arity} argument(s)")
        return op.table[_index(args, self.size)]

    def __eq__(self, other):
        return (isinstance(other, FiniteAlgebra) and self.size == other.size
                and self._ops == other._ops)

    def __hash__(self):
        return hash((self.size, tuple(sorted(self._ops.items()))))

    def __repr__(self):
        return f"FiniteAlgebra(size={self.size}, ops={sorted(self._ops)})"

    def restrict(self, names) -> "FiniteAlgebra":
        return FiniteAlgebra(self.size, {n: self._ops[n] for n in names})

    def rename(self, mapping: Mapping[str, str]) -> "FiniteAlgebra":
        return FiniteAlgebra(self.size, {mapping.get(n, n): op for n, op in self._ops.items()})

    def expand(self, extra: Mapping) -> "FiniteAlgebra":
        ops = dict(self._ops)
        for name, op in extra.items():
            if name in ops:
                raise SignatureError(f"symbol {name!r} already present")
            ops[name] = op
        return FiniteAlgebra(self.size, ops)

    # -- JSON ------------------------------------------------------------
    def to_json(self) -> dict:
        return {"size": self.size,
                "ops": {n: {"arity": op.arity, "table": list(op.table)}
                        for n, op in self._ops.items()}}

    @classmethod
    def from_json(cls, data) -> "FiniteAlgebra":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["size"], {n: (d["arity"], d["table"]) for n, d in data["ops"].items()})


def _index(args: Sequence[int], size: int) -> int:
    k = 0
    for a in args:
        k = k * size + a
    return k


def tuples(size: int, n: int):
    """All n-tuples over ``range(size)`` in row-major order."""
    return itertools.product(range(size), repeat=n)


def projection(size: int, arity: int, j: int) -> Operation:
    """Table of ``(x1..xn) -> xj`` (1-based ``j``)."""
    return Operation(arity, tuple(t[j - 1] for t in tuples(size, arity)))


def constant(size: int, arity: int, value: int) -> Operation:
    return Operation(arity, (value,) * size ** arity)


def from_function(size: int, arity: int, fn) -> Operation:
    return Operation(arity, tuple(fn(*t) for t in tuples(size, arity)))


def singleton(signature: Signature) -> FiniteAlgebra:
    return FiniteAlgebra(1, {n: Operation(a, (0,)) for n, a in signature})


# -- evaluation ------------------------------------------------------------

def evaluate_term(algebra: FiniteAlgebra, term, assignment: Sequence[int]) -> int:
    """Value of ``term`` with ``Var(i)`` bound to ``assignment[i-1]``."""
    if isinstance(term, Var):
        if term.index > len(assignment):
            raise IndexError(f"assignment too short for variable x{term.index}")
        return assignment[term.index - 1]
    try:
        op = algebra._ops[term.symbol]
    except KeyError:
        raise SignatureError(f"algebra has no operation {term.symbol!r}") from None
    if op.arity != len(term.args):
        raise SignatureError(f"{term.symbol!r} has arity {op.arity}")
    k = 0
    for a in term.args:
        k = k * algebra.size + evaluate_term(algebra, a, assignment)
    return op.table[k]


def term_operation(algebra: FiniteAlgebra, term, arity: int) -> Operation:
    """The ``arity``-ary term operation of ``term`` as a table."""
    return Operation(arity, tuple(evaluate_term(algebra, term, t)
                                  for t in tuples(algebra.size, arity)))


@dataclass(frozen=True)
class Holds:
    def __bool__(self):
        return True

    def __str__(self):
        return "Holds"


@dataclass(frozen=True)
class Fails:
    equation: Equation
    assignment: tuple

    def __bool__(self):
        return False

    def __str__(self):
        return f"Fails({self.equation} at {self.assignment})"


def _compile(term, index) -> list:
    out = []

    def walk(t):
        if isinstance(t, Var):
            out.append(t.index - 1)
        else:
            for a in t.args:
                walk(a)
            out.append(-index[t.symbol] - 1)

    walk(term)
    return out


class _Compiled:
    """Signature layout plus postfix programs for a theory's equations."""

    def __init__(self, signature: Signature, equations, size: int):
        self.names = signature.names
        self.index = {n: k for k, n in enumerate(self.names)}
        self.arities = [a for _, a in signature]
        self.offsets = []
        total = 0
        for a in self.arities:
            self.offsets.append(total)
            total += size ** a
        self.ncells = total
        self.size = size
        self.equations = list(equations)
        self.lhs = [_compile(e.lhs, self.index) for e in self.equations]
        self.rhs = [_compile(e.rhs, self.index) for e in self.equations]
        self.nvars = [e.nvars for e in self.equations]

    def flat_tables(self, algebra: FiniteAlgebra) -> list:
        flat = []
        for n in self.names:
            flat.extend(algebra.table(n))
        return flat

    def unflatten(self, flat) -> FiniteAlgebra:
        ops = {}
        for n, a, off in zip(self.names, self.arities, self.offsets):
            ops[n] = Operation(a, tuple(flat[off:off + self.size ** a]))
        return FiniteAlgebra(self.size, ops)


def _check_signature(algebra: FiniteAlgebra, signature: Signature):
    for name, arity in signature:
        if name not in algebra._ops:
            raise SignatureError(f"algebra has no operation {name!r}")
        if algebra.arity(name) != arity:
            raise SignatureError(f"operation {name!r} has arity {algebra.arity(name)}, "
                                 f"theory expects {arity}")


def satisfies(algebra: FiniteAlgebra, theory: Theory, backend=None):
    """``Holds()`` or ``Fails(equation, assignment)`` for the first failure.

    Equations are tried in order and assignments in lexicographic order.
    """
    _check_signature(algebra, theory.signature)
    comp = _Compiled(theory.signature, theory.equations, algebra.size)
    k = (backend or kernels.active).first_failure(
        algebra.size, comp.flat_tables(algebra), comp.offsets, comp.arities,
        comp.lhs, comp.rhs, comp.nvars)
    if k is None:
        return Holds()
    return Fails(theory.equations[k[0]], tuple(k[1]))


# -- constructions ---------------------------------------------------------

def product(a: FiniteAlgebra, b: FiniteAlgebra) -> FiniteAlgebra:
    """Direct product; the pair ``(i, j)`` is element ``i * |B| + j``."""
    if a.signature.as_dict() != b.signature.as_dict():
        raise SignatureError("product of algebras with different signatures")
    m = b.size
    ops = {}
    for name, op in a._ops.items():
        tb = b.table(name)
        table = []
        for t in tuples(a.size * m, op.arity):
            i = _index([x // m for x in t], a.size)
            j = _index([x % m for x in t], m)
            table.append(op.table[i] * m + tb[j])
        ops[name] = Operation(op.arity, table)
    return FiniteAlgebra(a.size * m, ops)


def meet_signature(sigma: Theory, gamma: Theory):
    """Names for the meet construction.

    Returns ``(gamma_renaming, p_name)``: clashing symbols of ``gamma`` get a
    ``__k`` suffix, and so does any ``gamma`` symbol named like the
    discriminator ``p``.  If ``sigma`` itself uses ``p`` the discriminator is
    renamed instead.
    """
    p = "p"
    if p in sigma.signature:
        p = fresh_name(p, set(sigma.signature.names) | set(gamma.signature.names))
    mapping = disjoint_renaming(sigma.signature.names, gamma.signature.names, reserved=[p])
    return mapping, p


def meet_model(a: FiniteAlgebra, sigma: Theory, b: FiniteAlgebra, gamma: Theory,
               check: bool = True) -> FiniteAlgebra:
    """Model of the meet of ``sigma`` and ``gamma`` built from ``a`` and ``b``.

    ``a`` is expanded by first projections for the ``gamma`` symbols and
    ``p = pi_1``; ``b`` by first projections for the ``sigma`` symbols and
    ``p = pi_2``.  The result is their product.  Constant symbols, having no
    first argument, are expanded as the element 0.
    """
    if check:
        for alg, th, label in ((a, sigma, "first"), (b, gamma, "second")):
            v = satisfies(alg.restrict(th.signature.names), th)
            if not v:
                raise PreconditionError(f"{label} algebra does not model {th.name}: {v}", v)
    mapping, p = meet_signature(sigma, gamma)
    b = b.restrict(gamma.signature.names).rename(mapping)
    a = a.restrict(sigma.signature.names)
    gamma_sig = [(mapping.get(n, n), k) for n, k in gamma.signature]
    a_ext = a.expand({n: _trivial(a.size, k) for n, k in gamma_sig})
    a_ext = a_ext.expand({p: projection(a.size, 2, 1)})
    b_ext = b.expand({n: _trivial(b.size, k) for n, k in sigma.signature})
    b_ext = b_ext.expand({p: projection(b.size, 2, 2)})
    order = list(sigma.signature.names) + [n for n, _ in gamma_sig] + [p]
    a_ext = a_ext.restrict(order)
    b_ext = b_ext.restrict(order)
    return product(a_ext, b_ext)


def _trivial(size, arity):
    # first projection; constants have no first argument and become 0
    return projection(size, arity, 1) if arity else constant(size, 0, 0)


def power_algebra(b: FiniteAlgebra, k: int) -> FiniteAlgebra:
    """``B^k`` with the diagonal-pick ``H``, cyclic shift ``d`` and ``G_<t>``.

    ``H(t1, ..., tk)`` takes coordinate ``i`` from ``ti``; ``d`` shifts
    coordinates left by one; ``G_<t>`` applies ``t`` coordinatewise.
    """
    if k < 2:
        raise ValueError("power_algebra needs k >= 2")
    names = {"H", "d"} | {f"G_{t}" for t in b._ops}
    clash = names & set(b._ops)
    if len(names) != 2 + len(b._ops) or clash:
        raise SignatureError(f"power symbol names collide: {sorted(clash) or names}")
    n = b.size
    size = n ** k
    elems = list(tuples(n, k))

    def enc(coords):
        return _index(coords, n)

    ops = {
        "H": Operation(k, [enc([ts[i][i] for i in range(k)])
                           for ts in itertools.product(elems, repeat=k)]),
        "d": Operation(1, [enc(t[1:] + t[:1]) for t in elems]),
    }
    for name, op in b._ops.items():
        table = []
        for ts in itertools.product(elems, repeat=op.arity):
            table.append(enc([op.table[_index([t[i] for t in ts], n)] for i in range(k)]))
        ops[f"G_{name}"] = Operation(op.arity, table)
    return FiniteAlgebra(size, ops)


# -- search ----------------------------------------------------------------

@dataclass
class SearchStats:
    tried: int = 0


def _search(theory: Theory, size: int, limit: int, symmetry: bool, backend, stats, fixed):
    comp = _Compiled(theory.signature, theory.equations, size)
    argmax = []
    for a in comp.arities:
        for t in tuples(size, a):
            argmax.append(max(t) if t else -1)
    pins = [-1] * comp.ncells
    for name, value in (fixed or {}).items():
        pins[comp.offsets[comp.index[name]]] = value
    counter = [0]
    flat = (backend or kernels.active).search(
        size, comp.offsets, comp.arities, comp.lhs, comp.rhs, comp.nvars, comp.ncells,
        argmax, pins, limit, symmetry, counter)
    if stats is not None:
        stats.tried += counter[0]
    return [comp.unflatten(f) for f in flat]


def search_models(theory: Theory, size: int, symmetry: bool = False, backend=None,
                  stats: SearchStats = None):
    """First model of ``theory`` of the given size, or None.

    Cells are enumerated symbol by symbol in signature order, each table
    row-major, values ascending; the model returned is the one whose
    concatenated tables are lexicographically least.  The search backtracks as
    soon as a fully evaluable equation instance fails, which prunes only
    branches that contain no model, so the answer equals that of plain
    counter enumeration.  ``symmetry=True`` applies the least number
    heuristic; the answer is then some model (up to isomorphism the
    search is still complete) but not necessarily the least one.
    """
    if size < 1:
        raise ValueError("size must be at least 1")
    found = _search(theory, size, 1, symmetry, backend, stats, None)
    return found[0] if found else None


def search_all(theory: Theory, size: int, symmetry: bool = False, backend=None,
               stats: SearchStats = None, limit: int = 0):
    """Every model of the given size, in the order of ``search_models``."""
    if size < 1:
        raise ValueError("size must be at least 1")
    return _search(theory, size, limit, symmetry, backend, stats, None)


def search_tables(theory: Theory, size: int, candidates: Mapping):
    """First model whose table for each symbol is drawn from ``candidates[symbol]``.

    Plain generate-and-test over the product of candidate lists; used where a
    restricted class of operations is wanted (e.g. projections and constants).
    """
    names = theory.signature.names
    for choice in itertools.product(*(candidates[n] for n in names)):
        alg = FiniteAlgebra(size, dict(zip(names, choice)))
        if satisfies(alg, theory):
            return alg
    return None


def find_isomorphism(a: FiniteAlgebra, b: FiniteAlgebra):
    """A permutation ``f`` with ``f(op_a(x..)) = op_b(f(x)..)``, or None (brute force)."""
    if a.size != b.size or a.signature.as_dict() != b.signature.as_dict():
        return None
    n = a.size
    for perm in itertools.permutations(range(n)):
        ok = True
        for name, op in a._ops.items():
            tb = b.table(name)
            for t in tuples(n, op.arity):
                if perm[op.table[_index(t, n)]] != tb[_index([perm[x] for x in t], n)]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return perm
    return None
