"""Interpretations between theories and their checking on finite models."""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import (FiniteAlgebra, Operation, SignatureError, meet_signature, satisfies,
                      search_all, term_operation, tuples, _index)
from .dsl import format_theory, parse_document
from .terms import App, Interpretation, Signature, Theory, Var, rename_symbols
from .theories import lambda_theory, sqrt2_hspace_theory, squaring_theory  # noqa: F401
from . import theories


@dataclass(frozen=True)
class Refuted:
    model: FiniteAlgebra
    derived: FiniteAlgebra
    equation: object
    assignment: tuple

    def __bool__(self):
        return False

    def __str__(self):
        return (f"Refuted on a {self.model.size}-element model: {self.equation} "
                f"fails at {self.assignment}")


@dataclass(frozen=True)
class ConfirmedUpTo:
    max_size: int
    models_checked: int = 0

    def __bool__(self):
        return True

    def __str__(self):
        return f"ConfirmedUpTo({self.max_size}) over {self.models_checked} models"


def apply_interpretation(interp: Interpretation, model: FiniteAlgebra) -> FiniteAlgebra:
    """The source-theory algebra whose operations are the interpreting terms."""
    for name, arity in interp.target.signature:
        if name not in model.ops or model.arity(name) != arity:
            raise SignatureError(f"model lacks target operation {name}:{arity}")
    ops = {}
    for name, arity in interp.source.signature:
        ops[name] = term_operation(model, interp.terms[name], arity)
    return FiniteAlgebra(model.size, ops)


def check_interpretation(interp: Interpretation, max_size: int, backend=None,
                         symmetry: bool = False) -> object:
    """Check the interpretation on every target model with at most ``max_size`` elements.

    Models are enumerated by ``search_all`` size by size; the first model whose
    derived algebra violates a source equation is returned.  A positive answer
    only covers the sizes searched.
    """
    if max_size < 1:
        raise ValueError("max_size must be at least 1")
    checked = 0
    for size in range(1, max_size + 1):
        for model in search_all(interp.target, size, symmetry=symmetry, backend=backend):
            checked += 1
            derived = apply_interpretation(interp, model)
            v = satisfies(derived, interp.source, backend=backend)
            if not v:
                return Refuted(model, derived, v.equation, v.assignment)
    return ConfirmedUpTo(max_size, checked)


def identity_interpretation(theory: Theory) -> Interpretation:
    terms = {n: App(n, tuple(Var(i) for i in range(1, a + 1))) for n, a in theory.signature}
    return Interpretation(theory, theory, terms)


# -- meets -----------------------------------------------------------------

def meet_theory(sigma: Theory, gamma: Theory) -> tuple:
    """Signature of the meet (no equations) and the renaming applied to ``gamma``.

    Returns ``(theory, gamma_renaming, p_name)``.  Only the signature is
    produced; the meet is handled through its models.
    """
    mapping, p = meet_signature(sigma, gamma)
    sig = list(sigma.signature) + [(mapping.get(n, n), a) for n, a in gamma.signature]
    sig.append((p, 2))
    name = f"{sigma.name}_meet_{gamma.name}"
    return Theory(name, Signature(tuple(sig)), ()), mapping, p


def _collapse(arity: int, own: Theory, which: int):
    if arity:
        return Var(which if which <= arity else 1)
    for n, a in own.signature:
        if a == 0:
            return App(n)
    raise ValueError("a constant of the other theory needs a constant of this one")


def _meet_interpretation(sigma: Theory, gamma: Theory, left: bool) -> Interpretation:
    meet, mapping, p = meet_theory(sigma, gamma)
    own = sigma if left else gamma
    own_names = set(sigma.signature.names) if left else {mapping.get(n, n) for n in gamma.signature.names}
    inverse = {v: k for k, v in mapping.items()}
    terms = {}
    for name, arity in meet.signature:
        if name == p:
            terms[name] = Var(1 if left else 2)
        elif name in own_names:
            orig = name if left else inverse.get(name, name)
            terms[name] = App(orig, tuple(Var(i) for i in range(1, arity + 1)))
        else:
            terms[name] = _collapse(arity, own, 1)
    return Interpretation(meet, own, terms)


def meet_left_interpretation(sigma: Theory, gamma: Theory) -> Interpretation:
    """Interpretation of the meet in ``sigma``.

    Symbols of ``sigma`` go to themselves, symbols of ``gamma`` and ``p`` go to
    ``x1``.  A constant of ``gamma`` goes to the first constant of ``sigma``.
    """
    return _meet_interpretation(sigma, gamma, True)


def meet_right_interpretation(sigma: Theory, gamma: Theory) -> Interpretation:
    """Interpretation of the meet in ``gamma``; like the left one but ``p`` goes to ``x2``."""
    return _meet_interpretation(sigma, gamma, False)


def compose_in_meet(alpha: Interpretation, beta: Interpretation) -> Interpretation:
    """Interpretation of a common source theory in the meet of the two targets.

    Each source symbol ``s`` goes to ``p(alpha_s, beta_s)``, with ``beta``'s
    symbols renamed as in the meet.
    """
    if alpha.source.signature.as_dict() != beta.source.signature.as_dict():
        raise ValueError("interpretations must share a source theory")
    meet, mapping, p = meet_theory(alpha.target, beta.target)
    terms = {}
    for name, _ in alpha.source.signature:
        terms[name] = App(p, (alpha.terms[name], rename_symbols(beta.terms[name], mapping)))
    return Interpretation(alpha.source, meet, terms)


# -- the H-space on a square -------------------------------------------------

def hspace_on_square(model: FiniteAlgebra) -> FiniteAlgebra:
    """Binary ``mul`` and unit ``e`` on ``A^2`` from ``f1, f2, c1, c2``.

    ``mul((x1, x2), (y1, y2)) = (f1(x1,x2,y1,y2), f2(x1,x2,y1,y2))`` and
    ``e = (c1, c2)``; pairs are encoded as ``x1 * |A| + x2``.
    """
    n = model.size
    table = []
    for x1, x2, y1, y2 in tuples(n, 4):
        table.append(_index([model("f1", x1, x2, y1, y2), model("f2", x1, x2, y1, y2)], n))
    e = _index([model("c1"), model("c2")], n)
    return FiniteAlgebra(n * n, {"mul": Operation(2, table), "e": Operation(0, [e])})


# -- the group / Boolean algebra example -------------------------------------

_SYMDIFF = """
interpret abelian_group in boolean_algebra {
  plus(x, y) := or(and(x, not(y)), and(y, not(x)));
  minus(x, y) := or(and(x, not(y)), and(y, not(x)));
  zero := zero;
}
"""

_SYMDIFF_BROKEN = """
interpret abelian_group in boolean_algebra {
  plus(x, y) := and(x, y);
  minus(x, y) := or(and(x, not(y)), and(y, not(x)));
  zero := zero;
}
"""


def _interp_from(text: str) -> Interpretation:
    return _interp_from_pair(theories.abelian_group(), theories.boolean_algebra(), text)


def symmetric_difference_interpretation() -> Interpretation:
    """Abelian groups in Boolean algebras: ``x + y`` and ``x - y`` are both symmetric difference."""
    return _interp_from(_SYMDIFF)


def broken_symmetric_difference_interpretation() -> Interpretation:
    """Same but with ``x + y`` sent to ``x and y``; refuted by the 2-element algebra."""
    return _interp_from(_SYMDIFF_BROKEN)


def group_maltsev_interpretation() -> Interpretation:
    """Mal'tsev operation ``p(x, y, z) = x - y + z`` in abelian groups."""
    return _interp_from_pair(theories.maltsev(), theories.abelian_group(),
                             "interpret maltsev in abelian_group { p(x,y,z) := plus(minus(x,y),z); }")


def minority_maltsev_interpretation() -> Interpretation:
    """A minority operation is a Mal'tsev operation."""
    return _interp_from_pair(theories.maltsev(), theories.minority(),
                             "interpret maltsev in minority { p(x,y,z) := q(x,y,z); }")


def _interp_from_pair(source: Theory, target: Theory, text: str) -> Interpretation:
    _, interps = parse_document(format_theory(source) + format_theory(target) + text)
    return interps[0]
