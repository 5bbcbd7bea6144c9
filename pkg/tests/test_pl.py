import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from eqtop import theories
from eqtop.pl.catalog import (STANDARD_RUNS, catalog, chebyshev, interval_ring_ops, median3,
                              minority3, names, run_entry, two_thirds3, zigzag)
from eqtop.pl.certify import Equal, NotEqual, check_pl_model, pl_bounds, pl_equal, pl_range
from eqtop.pl.expr import (SYMMETRIC, UNIT, Affine, Box, Compose, Const, Max, Min, Mul, Scale,
                           Sum, Var, evaluate, from_json, max_, min_, to_json,
                           witness_from_json, witness_to_json)
from eqtop.pl.normal import evaluate_normal_form, from_normal_form, normal_form
from eqtop.pl.sample import NoCounterexampleFound, SampleRefuted, SamplingPlan, grid, sample_check

X, Y, Z = Var(0), Var(1), Var(2)
CUBE = UNIT.power(3)


def pl_exprs(nvars=3, max_leaves=8):
    coeff = st.fractions(min_value=-2, max_value=2, max_denominator=4)
    leaves = st.builds(Var, st.integers(0, nvars - 1)) | st.builds(Const, coeff)

    def extend(children):
        return (st.builds(Min, children, children) | st.builds(Max, children, children)
                | st.builds(Sum, children, children) | st.builds(Scale, coeff, children))

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def random_points(box, n, seed):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        pt = []
        for lo, hi in box.intervals:
            q = rng.randint(1, 10 ** 4)
            pt.append(F(rng.randint(math.ceil(lo * q), math.floor(hi * q)), q))
        out.append(tuple(pt))
    return out


# -- evaluation ------------------------------------------------------------------

def test_evaluation_examples():
    assert evaluate(min_(X, Y), (F(1, 3), F(1, 2))) == F(1, 3)
    assert evaluate(two_thirds3(), (0, 1, 0)) == 0
    assert evaluate(interval_ring_ops()["plus"], (F(3, 4), F(1, 2))) == 1
    assert evaluate(Affine((1, -2), F(1, 2)), (1, 1)) == F(-1, 2)


def test_meet_distribution_spot_value():
    th = theories.interval_ring_theory()
    ops = interval_ring_ops()
    from eqtop.pl.certify import term_to_expr
    eq = th.equations[-1]
    pt = (F(-1, 2), F(1, 2), F(-1, 3))
    assert evaluate(term_to_expr(eq.lhs, ops), pt) == F(1, 6)
    assert evaluate(term_to_expr(eq.rhs, ops), pt) == F(1, 6)


def test_chebyshev_values():
    assert chebyshev(3, F(1, 2)) == -1
    assert chebyshev(2, 0) == -1
    for n in range(9):
        assert chebyshev(n, 1) == 1


def test_chebyshev_bounded_on_grid():
    for n in range(9):
        for x in grid(F(-1), F(1), 16):
            assert abs(chebyshev(n, x)) <= 1
            assert chebyshev(n, x) == _chebyshev_closed_form(n, x)


def _chebyshev_closed_form(n, x):
    # sum over k of C(n, 2k) x^(n-2k) (x^2 - 1)^k
    return sum(math.comb(n, 2 * k) * x ** (n - 2 * k) * (x * x - 1) ** k
               for k in range(n // 2 + 1))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_alternation_shape(n):
    # the zigzag alternates like the f(a_i) axioms
    f = zigzag(n)
    th = theories.lambda_theory(n)
    expected = {str(e.lhs): str(e.rhs) for e in th.equations if str(e.lhs).startswith("f(")}
    for i in range(1, n + 1):
        value = evaluate(f, (F(i, n + 1),))
        assert value == (1 if expected[f"f(a{i})"] == "one" else 0)
    assert evaluate(f, (1,)) == (1 if expected["f(one)"] == "one" else 0)
    # T_{n+1} alternates in sign at rational points near its extrema, read from 1 down to -1
    signs = []
    for k in range(n + 2):
        x = F(math.cos(k * math.pi / (n + 1))).limit_denominator(10 ** 6)
        x = max(min(x, F(1)), F(-1))
        signs.append(chebyshev(n + 1, x) > 0)
    assert all(signs[k] != signs[k + 1] for k in range(n + 1))


# -- certification ---------------------------------------------------------------

def test_certify_examples():
    assert isinstance(pl_equal(min_(X, Y), X + Y - max_(X, Y), UNIT.power(2)), Equal)
    q = minority3()
    assert isinstance(pl_equal(Compose(q, (X, X, Y)), Y, UNIT.power(2)), Equal)
    v = pl_equal(q, median3(), CUBE)
    assert isinstance(v, NotEqual)
    assert evaluate(q, v.witness) != evaluate(median3(), v.witness)
    assert evaluate(q, (0, 0, 1)) == 1 and evaluate(median3(), (0, 0, 1)) == 0


@pytest.mark.parametrize("name", ["dlat01", "minority_q"])
def test_catalog_certifies(name):
    e = catalog(name)
    assert all(isinstance(r.verdict, Equal) for r in check_pl_model(e.theory, e.witness, e.box))


def test_mutated_minority_refuted():
    e = catalog("minority_q")
    bad = dict(e.witness, q=minority3(median_coeff=2))
    results = check_pl_model(e.theory, bad, e.box)
    assert any(isinstance(r.verdict, NotEqual) for r in results)


def test_lambda3_and_interval_ring():
    e = catalog("lambda_n", 3)
    assert all(check_pl_model(e.theory, e.witness, e.box))
    r = catalog("interval_ring")
    assert isinstance(sample_check(r.theory, r.witness, r.box), NoCounterexampleFound)


def test_mul_rejected_by_certifier():
    from eqtop.pl.cells import NotPiecewiseLinear
    with pytest.raises(NotPiecewiseLinear):
        pl_equal(Mul(X, Y), Mul(Y, X), UNIT.power(2))


def test_degenerate_box():
    box = Box(((0, 1), (F(1, 2), F(1, 2))))
    assert pl_equal(min_(X, Y), min_(X, Const(F(1, 2))), box)
    v = pl_equal(max_(X, Y), X, box)
    assert not v and box.contains(v.witness)


def test_bounds_and_range():
    assert pl_bounds(minority3(), CUBE) == (0, 1)
    e = catalog("majority_m")
    ok, (lo, hi) = pl_range(e.witness, e.theory.signature, e.box)["m"]
    assert ok and (lo, hi) == (0, 1)
    assert not pl_range({"f": X * 2}, [("f", 1)], UNIT)["f"][0]


@settings(max_examples=120, deadline=None)
@given(pl_exprs(), pl_exprs(), st.integers(0, 10 ** 6))
def test_pl_equal_consistent_with_evaluation(e1, e2, seed):
    v = pl_equal(e1, e2, CUBE)
    if v:
        for pt in random_points(CUBE, 1000, seed):
            assert evaluate(e1, pt) == evaluate(e2, pt)
    else:
        assert CUBE.contains(v.witness)
        assert evaluate(e1, v.witness) != evaluate(e2, v.witness)


@settings(max_examples=60, deadline=None)
@given(pl_exprs(), pl_exprs())
def test_pl_equal_reflexive_and_symmetric(e1, e2):
    assert pl_equal(e1, e1, CUBE)
    assert bool(pl_equal(e1, e2, CUBE)) == bool(pl_equal(e2, e1, CUBE))


def test_equal_is_transitive_on_a_chain():
    chain = [min_(X, Y), X + Y - max_(X, Y), -max_(-X, -Y), Compose(min_(Y, X), (X, Y))]
    box = UNIT.power(2)
    for a, b in zip(chain, chain[1:]):
        assert pl_equal(a, b, box)
    assert pl_equal(chain[0], chain[-1], box)


@settings(max_examples=150, deadline=None)
@given(pl_exprs(), st.integers(0, 10 ** 6))
def test_normal_form_preserves_values(e, seed):
    nf = normal_form(e, 3)
    back = from_normal_form(nf)
    for pt in random_points(SYMMETRIC.power(3), 50, seed) + [(0, 0, 0), (1, -1, 1)]:
        assert evaluate_normal_form(nf, pt) == evaluate(e, pt)
        assert evaluate(back, pt) == evaluate(e, pt)


@settings(max_examples=150, deadline=None)
@given(pl_exprs())
def test_json_round_trip(e):
    assert from_json(to_json(e)) == e


@pytest.mark.parametrize("name", ["majority_m", "interval_ring", "oneone_notonto_bilinear"])
def test_witness_json_round_trip(name):
    e = catalog(name)
    ops, box = witness_from_json(witness_to_json(e.witness, e.box))
    assert ops == e.witness and box == e.box


# -- sampling ---------------------------------------------------------------------

def test_grid():
    assert grid(F(0), F(1), 2) == [0, F(1, 2), 1]
    assert len(grid(F(-1), F(1), 6)) == 2 * 11 + 1 + 2


def test_sampling_is_seeded():
    e = catalog("interval_ring")
    plan = SamplingPlan(random_points=50, seed=7)
    a = sample_check(e.theory, e.mutants[0].witness, e.box, plan)
    b = sample_check(e.theory, e.mutants[0].witness, e.box, plan)
    assert isinstance(a, SampleRefuted) and a == b


def test_sampling_finds_mutant():
    e = catalog("interval_ring")
    bad = dict(e.witness, F=X / 4)
    v = sample_check(e.theory, bad, e.box)
    assert not v and v.point == (F(-1),)


# -- catalog ----------------------------------------------------------------------

def test_catalog_names_and_modes():
    assert {"dlat01", "interval_ring", "lambda_n", "affine3"} <= set(names())
    with pytest.raises(KeyError):
        catalog("nope")


@pytest.mark.parametrize("name, args", [r for r in STANDARD_RUNS if r[0] in
                                        ("affine_half_commutative", "oneone_notonto_bilinear")])
def test_optional_entries(name, args):
    assert run_entry(name, args).clean


@pytest.mark.parametrize("alpha", [F(1, 5), F(1, 2), F(2, 3)])
def test_affine_family(alpha):
    e = catalog("affine_alpha", alpha)
    assert all(check_pl_model(e.theory, e.witness, e.box))
