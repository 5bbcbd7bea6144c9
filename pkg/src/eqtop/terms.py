"""Terms, equations and theories over a finite similarity type.

Variables are positional: ``Var(1)`` is the first variable of an equation.
Surface names only exist in the DSL and are canonicalized per equation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence, Union


@dataclass(frozen=True, order=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"variable index must be positive, got {self.index}")

    def __str__(self):
        return f"x{self.index}"


@dataclass(frozen=True, order=True)
class App:
    symbol: str
    args: tuple = ()

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))

    def __str__(self):
        if not self.args:
            return self.symbol
        return f"{self.symbol}({','.join(str(a) for a in self.args)})"


Term = Union[Var, App]


def app(symbol: str, *args: Term) -> App:
    return App(symbol, tuple(args))


def subterms(term: Term) -> Iterator[Term]:
    """Pre-order traversal."""
    stack = [term]
    while stack:
        t = stack.pop()
        yield t
        if isinstance(t, App):
            stack.extend(reversed(t.args))


def variables(term: Term) -> set:
    return {t.index for t in subterms(term) if isinstance(t, Var)}


def symbols(term: Term) -> set:
    return {t.symbol for t in subterms(term) if isinstance(t, App)}


def depth(term: Term) -> int:
    if isinstance(term, Var) or not term.args:
        return 0
    return 1 + max(depth(a) for a in term.args)


class MissingVariable(KeyError):
    pass


def substitute(term: Term, env: Mapping[int, Term]) -> Term:
    """Replace each ``Var(i)`` by ``env[i]``; application structure is kept."""
    if isinstance(term, Var):
        try:
            return env[term.index]
        except KeyError:
            raise MissingVariable(f"no binding for variable x{term.index}") from None
    return App(term.symbol, tuple(substitute(a, env) for a in term.args))


def rename_symbols(term: Term, mapping: Mapping[str, str]) -> Term:
    if isinstance(term, Var):
        return term
    return App(mapping.get(term.symbol, term.symbol),
               tuple(rename_symbols(a, mapping) for a in term.args))


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term

    @property
    def nvars(self) -> int:
        """Largest variable index on either side (0 for ground equations)."""
        vs = variables(self.lhs) | variables(self.rhs)
        return max(vs) if vs else 0

    def symbols(self) -> set:
        return symbols(self.lhs) | symbols(self.rhs)

    def canonical(self) -> "Equation":
        """Renumber variables in first-occurrence order, lhs before rhs."""
        order: dict = {}
        for t in list(subterms(self.lhs)) + list(subterms(self.rhs)):
            if isinstance(t, Var) and t.index not in order:
                order[t.index] = Var(len(order) + 1)
        return Equation(substitute(self.lhs, order), substitute(self.rhs, order))

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


@dataclass(frozen=True)
class Signature:
    """Ordered list of ``(name, arity)`` pairs."""
    symbols: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple((str(n), int(a)) for n, a in self.symbols))
        seen = set()
        for name, arity in self.symbols:
            if name in seen:
                raise ValueError(f"duplicate symbol {name!r}")
            if arity < 0:
                raise ValueError(f"negative arity for {name!r}")
            seen.add(name)

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __contains__(self, name):
        return any(n == name for n, _ in self.symbols)

    @property
    def names(self) -> tuple:
        return tuple(n for n, _ in self.symbols)

    def arity(self, name: str) -> int:
        for n, a in self.symbols:
            if n == name:
                return a
        raise KeyError(name)

    def as_dict(self) -> dict:
        return dict(self.symbols)

    def extend(self, more: Iterable) -> "Signature":
        return Signature(self.symbols + tuple(more))


@dataclass(frozen=True)
class Theory:
    name: str
    signature: Signature = field(default_factory=Signature)
    equations: tuple = ()

    def __post_init__(self):
        if not isinstance(self.signature, Signature):
            object.__setattr__(self, "signature", Signature(tuple(self.signature)))
        object.__setattr__(self, "equations", tuple(self.equations))

    def __str__(self):
        from .dsl import format_theory
        return format_theory(self)


@dataclass(frozen=True)
class Interpretation:
    """Maps each source symbol of arity n to a target term in ``x1..xn``."""
    source: Theory
    target: Theory
    terms: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", dict(self.terms))


# -- diagnostics -----------------------------------------------------------

@dataclass(frozen=True)
class UnknownSymbol:
    symbol: str
    equation: int


@dataclass(frozen=True)
class ArityMismatch:
    symbol: str
    expected: int
    found: int
    equation: int


@dataclass(frozen=True)
class BadVariable:
    index: int
    equation: int


def validate(theory: Theory) -> list:
    """One diagnostic per violated invariant; empty means well-formed."""
    out = []
    arities = theory.signature.as_dict()
    for k, eq in enumerate(theory.equations):
        for side in (eq.lhs, eq.rhs):
            for t in subterms(side):
                if isinstance(t, Var):
                    if t.index < 1:
                        out.append(BadVariable(t.index, k))
                    continue
                if t.symbol not in arities:
                    out.append(UnknownSymbol(t.symbol, k))
                elif arities[t.symbol] != len(t.args):
                    out.append(ArityMismatch(t.symbol, arities[t.symbol], len(t.args), k))
    return out


# -- combining theories ----------------------------------------------------

def fresh_name(name: str, taken) -> str:
    """``name__2``, ``name__3``, ... whichever is first not in ``taken``."""
    k = 2
    while f"{name}__{k}" in taken:
        k += 1
    return f"{name}__{k}"


def rename_theory(theory: Theory, mapping: Mapping[str, str], name: str = None) -> Theory:
    sig = Signature(tuple((mapping.get(n, n), a) for n, a in theory.signature))
    eqs = tuple(Equation(rename_symbols(e.lhs, mapping), rename_symbols(e.rhs, mapping))
                for e in theory.equations)
    return Theory(name or theory.name, sig, eqs)


def disjoint_renaming(sigma_names: Sequence[str], gamma_names: Sequence[str],
                      reserved: Iterable[str] = ()) -> dict:
    """Renaming for the second name list so it avoids the first (and ``reserved``)."""
    taken = set(sigma_names) | set(reserved) | set(gamma_names)
    clash = set(sigma_names) | set(reserved)
    mapping = {}
    for n in gamma_names:
        if n in clash:
            new = fresh_name(n, taken)
            taken.add(new)
            mapping[n] = new
    return mapping


def rename_disjoint(sigma: Theory, gamma: Theory, reserved: Iterable[str] = ()):
    """Rename ``gamma``'s clashing symbols with a ``__k`` suffix; ``sigma`` is untouched."""
    mapping = disjoint_renaming(sigma.signature.names, gamma.signature.names, reserved)
    if not mapping:
        return sigma, gamma
    return sigma, rename_theory(gamma, mapping)


def join_theories(sigma: Theory, gamma: Theory, name: str = None) -> Theory:
    """Least upper bound: disjoint union of signatures, concatenated equations."""
    sigma, gamma = rename_disjoint(sigma, gamma)
    return Theory(name or f"{sigma.name}_join_{gamma.name}",
                  sigma.signature.extend(gamma.signature),
                  sigma.equations + gamma.equations)
