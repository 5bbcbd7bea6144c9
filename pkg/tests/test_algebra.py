import itertools

import pytest
from hypothesis import given, settings, strategies as st

from eqtop import kernels, theories
from eqtop.algebra import (Fails, FiniteAlgebra, Holds, Operation, PreconditionError,
                           SearchStats, evaluate_term, find_isomorphism, from_function,
                           meet_model, power_algebra, product, projection, satisfies,
                           search_all, search_models, singleton)
from eqtop.terms import Var, app

from strategies import theories as theory_st

BACKENDS = sorted(kernels.backends())
x1, x2, x3 = Var(1), Var(2), Var(3)


def z2():
    return FiniteAlgebra(2, {"plus": from_function(2, 2, lambda a, b: a ^ b),
                             "minus": from_function(2, 2, lambda a, b: a ^ b),
                             "zero": Operation(0, [0])})


def xor3():
    return FiniteAlgebra(2, {"q": from_function(2, 3, lambda a, b, c: a ^ b ^ c)})


def semilattice2():
    return FiniteAlgebra(2, {"meet": from_function(2, 2, min)})


# -- evaluation ------------------------------------------------------------------

def test_evaluate_examples():
    assert evaluate_term(z2(), app("plus", x1, x2), (1, 1)) == 0
    assert evaluate_term(z2(), x3, (0, 1, 1)) == 1
    assert evaluate_term(xor3(), app("q", x1, x1, x2), (1, 0)) == 0


@pytest.mark.parametrize("backend", BACKENDS)
def test_satisfies_examples(backend):
    b = kernels.backends()[backend]
    assert isinstance(satisfies(xor3(), theories.minority(), backend=b), Holds)
    th = theories.majority()
    pi1 = FiniteAlgebra(2, {"m": projection(2, 3, 1)})
    v = satisfies(pi1, th, backend=b)
    assert isinstance(v, Fails)
    assert v.equation == th.equations[2]
    assert v.assignment == (0, 1)


@pytest.mark.parametrize("name", sorted(theories.builtin()))
def test_singleton_satisfies_everything(name):
    th = theories.builtin()[name]
    assert satisfies(singleton(th.signature), th)


def test_json_round_trip():
    a = z2()
    assert FiniteAlgebra.from_json(a.to_json()) == a


def test_bad_tables_rejected():
    with pytest.raises(ValueError):
        FiniteAlgebra(2, {"f": Operation(2, [0, 1, 0])})
    with pytest.raises(ValueError):
        FiniteAlgebra(2, {"f": Operation(1, [0, 2])})


# -- products --------------------------------------------------------------------

def test_klein_four_group():
    k = product(z2(), z2())
    assert k.size == 4
    for a, b in itertools.product(range(4), repeat=2):
        assert k("plus", a, b) == a ^ b     # pairs encoded as 2*i + j
    assert satisfies(k, theories.abelian_group())


def test_product_with_singleton_and_sizes():
    a = z2()
    s = product(a, singleton(a.signature))
    assert find_isomorphism(a, s) is not None
    three = FiniteAlgebra(3, {"plus": from_function(3, 2, lambda u, v: (u + v) % 3),
                              "minus": from_function(3, 2, lambda u, v: (u - v) % 3),
                              "zero": Operation(0, [0])})
    assert product(a, three).size == 6
    assert satisfies(product(a, three), theories.abelian_group())


PRODUCT_THEORIES = ["semilattice", "majority", "minority", "maltsev", "associative",
                    "boolean_algebra"]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(PRODUCT_THEORIES), st.integers(0, 50), st.integers(0, 50))
def test_products_of_models_are_models(name, i, j):
    th = theories.builtin()[name]
    models = search_all(th, 2) + search_all(th, 1)
    a, b = models[i % len(models)], models[j % len(models)]
    assert satisfies(product(a, b), th)


# -- meet model ------------------------------------------------------------------

def test_meet_model_group_semilattice():
    m = meet_model(z2(), theories.abelian_group(), semilattice2(), theories.semilattice())
    assert m.size == 4
    for a, b in itertools.product(range(4), repeat=2):
        i, j = divmod(a, 2)
        k, l = divmod(b, 2)
        assert m("p", a, b) == 2 * i + l


def test_meet_model_satisfies_translated_equations():
    sigma, gamma = theories.abelian_group(), theories.semilattice()
    m = meet_model(z2(), sigma, semilattice2(), gamma)
    # first coordinates carry the group, second the semilattice
    for a, b in itertools.product(range(4), repeat=2):
        assert m("plus", a, b) // 2 == (a // 2) ^ (b // 2)
        assert m("meet", a, b) % 2 == min(a % 2, b % 2)
        assert m("plus", a, b) % 2 == a % 2
        assert m("meet", a, b) // 2 == a // 2


def test_meet_model_singletons():
    th = theories.majority()
    s = singleton(th.signature)
    assert meet_model(s, th, singleton(theories.maltsev().signature), theories.maltsev()).size == 1


def test_meet_model_precondition():
    bad = FiniteAlgebra(2, {"q": projection(2, 3, 1)})
    with pytest.raises(PreconditionError):
        meet_model(z2(), theories.abelian_group(), bad, theories.minority())


# -- power algebra ---------------------------------------------------------------

def test_power_algebra_points():
    p = power_algebra(FiniteAlgebra(2, {}), 2)
    enc = lambda a, b: 2 * a + b
    assert p("d", enc(0, 1)) == enc(1, 0)
    assert p("H", enc(0, 1), enc(1, 0)) == enc(0, 0)


def test_power_algebra_coordinatewise_ops():
    p = power_algebra(xor3(), 2)
    assert p.size == 4
    assert p("G_q", 1, 2, 3) == 1 ^ 2 ^ 3


@pytest.mark.parametrize("n", [1, 2, 3])
def test_power_algebra_k3(n):
    p = power_algebra(FiniteAlgebra(n, {}), 3)
    assert p.size == n ** 3
    for t in range(p.size):
        assert p("d", p("d", p("d", t))) == t
        assert p("H", t, t, t) == t


# -- search ----------------------------------------------------------------------

@pytest.mark.parametrize("backend", BACKENDS)
def test_squaring_search(backend):
    b = kernels.backends()[backend]
    th = theories.squaring_theory()
    assert search_models(th, 2, backend=b) is None
    m = search_models(th, 4, backend=b)
    assert m is not None and satisfies(m, th)
    assert find_isomorphism(m, power_algebra(FiniteAlgebra(2, {}), 2)) is not None
    assert search_models(th, 1, backend=b) == singleton(th.signature)


def naive_first_model(theory, size):
    """Counter enumeration over every table assignment, signature order, row-major."""
    cells = [(n, a) for n, a in theory.signature]
    lengths = [size ** a for _, a in cells]
    for flat in itertools.product(range(size), repeat=sum(lengths)):
        ops, k = {}, 0
        for (n, a), length in zip(cells, lengths):
            ops[n] = Operation(a, flat[k:k + length])
            k += length
        alg = FiniteAlgebra(size, ops)
        if satisfies(alg, theory):
            return alg
    return None


@settings(max_examples=60, deadline=None)
@given(theory_st(max_symbols=2, max_arity=2, max_equations=3), st.integers(1, 2))
def test_search_matches_naive_enumeration(th, size):
    if sum(size ** a for _, a in th.signature) > 12:
        return
    assert search_models(th, size) == naive_first_model(th, size)


@settings(max_examples=40, deadline=None)
@given(theory_st(max_symbols=2, max_arity=2, max_equations=3), st.integers(1, 3))
def test_search_sound_and_backends_agree(th, size):
    found = {name: search_all(th, size, backend=b, limit=20)
             for name, b in kernels.backends().items()}
    results = list(found.values())
    assert all(r == results[0] for r in results)
    for m in results[0]:
        assert satisfies(m, th)


@pytest.mark.parametrize("name", ["semilattice", "boolean_algebra", "majority"])
def test_symmetry_reduction_keeps_isomorphism_classes(name):
    th = theories.builtin()[name]
    full = search_all(th, 3)
    reduced = search_all(th, 3, symmetry=True)
    assert all(satisfies(m, th) for m in reduced)
    for m in full:
        assert any(find_isomorphism(m, r) is not None for r in reduced)


def test_search_stats_counts_tries():
    stats = SearchStats()
    search_models(theories.squaring_theory(), 3, stats=stats)
    assert stats.tried > 0
