import itertools

import pytest
from hypothesis import given, settings, strategies as st

from eqtop import theories
from eqtop.algebra import (FiniteAlgebra, Operation, from_function, meet_model, product,
                           satisfies, search_all, search_models)
from eqtop.interp import (ConfirmedUpTo, Refuted, apply_interpretation,
                          broken_symmetric_difference_interpretation, check_interpretation,
                          compose_in_meet, hspace_on_square, identity_interpretation,
                          meet_left_interpretation, meet_right_interpretation,
                          symmetric_difference_interpretation)
from eqtop.terms import App, Interpretation, Theory, Var, app

x1, x2, x3 = Var(1), Var(2), Var(3)


def boolean(n_atoms):
    """The Boolean algebra of subsets of an ``n_atoms``-set, subsets as bitmasks."""
    size = 2 ** n_atoms
    top = size - 1
    return FiniteAlgebra(size, {
        "and": from_function(size, 2, lambda a, b: a & b),
        "or": from_function(size, 2, lambda a, b: a | b),
        "not": from_function(size, 1, lambda a: top ^ a),
        "zero": Operation(0, [0]),
        "one": Operation(0, [top]),
    })


@pytest.mark.parametrize("atoms", [1, 2])
def test_symmetric_difference_is_xor(atoms):
    ba = boolean(atoms)
    assert satisfies(ba, theories.boolean_algebra())
    g = apply_interpretation(symmetric_difference_interpretation(), ba)
    for a, b in itertools.product(range(ba.size), repeat=2):
        assert g("plus", a, b) == a ^ b
    assert g("zero") == 0
    assert satisfies(g, theories.abelian_group())


def test_identity_interpretation_leaves_model_unchanged():
    ba = boolean(2)
    assert apply_interpretation(identity_interpretation(theories.boolean_algebra()), ba) == ba


@pytest.mark.parametrize("name", ["majority", "semilattice", "boolean_algebra", "squaring"])
def test_identity_never_refutes(name):
    th = theories.builtin()[name] if name != "squaring" else theories.squaring_theory()
    assert check_interpretation(identity_interpretation(th), 3)


def test_check_examples():
    v = check_interpretation(symmetric_difference_interpretation(), 4)
    assert isinstance(v, ConfirmedUpTo) and v.max_size == 4
    bad = check_interpretation(broken_symmetric_difference_interpretation(), 2)
    assert isinstance(bad, Refuted) and bad.model.size == 2
    assert str(bad.equation) == "plus(x1,zero) = x1"
    # commutativity still holds in the broken variant
    comm = Theory("c", theories.abelian_group().signature,
                  (theories.abelian_group().equations[1],))
    assert satisfies(bad.derived, comm)


def test_empty_source_confirmed():
    interp = Interpretation(Theory("E"), theories.semilattice(), {})
    assert isinstance(check_interpretation(interp, 3), ConfirmedUpTo)


def test_meet_interpretations():
    left = meet_left_interpretation(theories.majority(), theories.maltsev())
    assert left.terms == {"m": app("m", x1, x2, x3), "p__2": x1, "p": x1}
    right = meet_right_interpretation(theories.majority(), theories.maltsev())
    assert right.terms["p"] == x2
    assert right.terms["m"] == x1
    assert right.terms["p__2"] == app("p", x1, x2, x3)
    empty = meet_left_interpretation(Theory("E"), theories.semilattice())
    assert empty.terms == {"meet": x1, "p": x1}


def test_meet_left_projection_property():
    sigma, gamma = theories.majority(), theories.semilattice()
    a = search_models(sigma, 2)
    b = search_models(gamma, 3)
    model = meet_model(a, sigma, b, gamma)
    left = apply_interpretation(meet_left_interpretation(sigma, gamma), a)
    right = apply_interpretation(meet_right_interpretation(sigma, gamma), b)
    for name, n in model.signature:
        for args in itertools.product(range(model.size), repeat=n):
            out = model(name, *args)
            assert out // 3 == left(name, *(x // 3 for x in args))
            assert out % 3 == right(name, *(x % 3 for x in args))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 30), st.integers(0, 30))
def test_derived_commutes_with_product(i, j):
    interp = symmetric_difference_interpretation()
    models = search_all(theories.boolean_algebra(), 2) + search_all(theories.boolean_algebra(), 4)
    a, b = models[i % len(models)], models[j % len(models)]
    lhs = apply_interpretation(interp, product(a, b))
    rhs = product(apply_interpretation(interp, a), apply_interpretation(interp, b))
    assert lhs == rhs


def test_compose_in_meet_example_terms():
    from eqtop.interp import group_maltsev_interpretation, minority_maltsev_interpretation
    c = compose_in_meet(group_maltsev_interpretation(), minority_maltsev_interpretation())
    assert c.terms["p"] == App("p", (app("plus", app("minus", x1, x2), x3), app("q", x1, x2, x3)))


def test_hspace_on_square():
    th = theories.sqrt2_hspace_theory()
    checked = 0
    for size in (1, 2):
        for model in search_all(th, size, limit=50):
            h = hspace_on_square(model)
            assert satisfies(h, theories.hspace())
            checked += 1
    assert checked > 1


def test_generated_theory_shapes():
    sq = theories.squaring_theory()
    assert len(sq.equations) == 5 and len(sq.signature) == 2
    root = theories.sqrt2_hspace_theory()
    assert len(root.equations) == 4 and len(root.signature) == 4
    lam0 = theories.lambda_theory(0)
    assert len(lam0.equations) == 10 and "f" not in lam0.signature
    text = {str(e) for e in theories.lambda_theory(2).equations}
    assert {"f(a1) = one", "f(a2) = zero", "f(one) = one"} <= text
    assert "f(one) = zero" in {str(e) for e in theories.lambda_theory(1).equations}
