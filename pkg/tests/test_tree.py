import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from eqtop import theories
from eqtop.tree import (MetricTree, TreeError, check_on_grid, grid_points, interval,
                        median, minority_Y, retract, retract_y, rooted_meet, subtree, y_path,
                        y_tree)

Y = y_tree()
CENTER, L1, L2, L3 = (Y.vertex(v) for v in ("c", "l1", "l2", "l3"))
GRID4 = grid_points(Y, 4)
grid_st = st.sampled_from(GRID4)


def segment_tree():
    return MetricTree(["a", "b"], [("a", "b", 1)])


def branching_tree():
    # a caterpillar with unequal edge lengths
    return MetricTree(["r", "s", "t", "u", "v"],
                      [("r", "s", F(1, 2)), ("s", "t", 2), ("s", "u", 1), ("u", "v", F(3, 2))])


# -- intervals -------------------------------------------------------------------

def test_interval_examples():
    t = segment_tree()
    a, b = t.vertex("a"), t.vertex("b")
    iv = interval(t, a, b)
    assert iv.length == 1 and len(iv.segments) == 1
    assert interval(t, a, a).length == 0
    arc = interval(Y, L1, L2)
    assert arc.length == 2
    assert [s.edge for s in arc.segments] == [0, 1]
    assert Y.in_interval(CENTER, L1, L2)


def test_grid_sizes():
    assert len(GRID4) == 19
    assert len(grid_points(Y, 5)) == 31


def test_tree_validation():
    with pytest.raises(TreeError):
        MetricTree(["a", "b", "c"], [("a", "b", 1), ("b", "a", 1)])
    with pytest.raises(TreeError):
        MetricTree(["a", "b"], [("a", "b", 0)])
    with pytest.raises(TreeError):
        Y.point(0, 2)


def test_json_round_trip():
    t = branching_tree()
    assert MetricTree.from_json(t.to_json()).to_json() == t.to_json()
    p = t.point(1, F(1, 3))
    assert t.point_from_json(p.to_json()) == p


# -- median ----------------------------------------------------------------------

def test_median_examples():
    t = segment_tree()
    assert median(t, t.vertex("a"), t.vertex("b"), t.point(0, F(1, 2))) == t.point(0, F(1, 2))
    assert median(Y, L1, L2, L3) == CENTER
    assert median(Y, L1, L1, L2) == L1


def test_median_permutations_and_majority_on_grid():
    for a, b, c in itertools.product(GRID4, repeat=3):
        m = median(Y, a, b, c)
        for p in itertools.permutations((a, b, c)):
            assert median(Y, *p) == m
        assert Y.in_interval(m, a, b) and Y.in_interval(m, b, c) and Y.in_interval(m, c, a)
    maj = theories.majority()
    assert check_on_grid(maj, {"m": lambda a, b, c: median(Y, a, b, c)}, GRID4)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_median_on_branching_tree(data):
    t = branching_tree()
    pts = grid_points(t, 3)
    a, b, c = (data.draw(st.sampled_from(pts)) for _ in range(3))
    m = median(t, a, b, c)
    assert t.in_interval(m, a, b) and t.in_interval(m, b, c) and t.in_interval(m, c, a)
    assert median(t, a, a, b) == a


# -- retraction ------------------------------------------------------------------

def test_retract_examples():
    y1 = y_path(Y, 1)
    on = Y.point(1, F(1, 2))
    assert retract(Y, y1, on) == on
    assert retract(Y, y1, Y.point(0, F(1, 2))) == CENTER
    assert retract(Y, y1, L1) == CENTER


@settings(max_examples=200, deadline=None)
@given(grid_st, grid_st, st.integers(1, 3))
def test_retract_idempotent_and_lipschitz(p, q, i):
    sub = y_path(Y, i)
    rp, rq = retract(Y, sub, p), retract(Y, sub, q)
    assert retract(Y, sub, rp) == rp
    assert Y.distance(rp, rq) <= Y.distance(p, q)
    assert rp == retract_y(Y, i, p)


def test_retract_on_branching_tree():
    t = branching_tree()
    sub = subtree(t, [0, 1])
    pts = grid_points(t, 3)
    for p, q in itertools.product(pts, repeat=2):
        rp, rq = retract(t, sub, p), retract(t, sub, q)
        assert retract(t, sub, rp) == rp
        assert t.distance(rp, rq) <= t.distance(p, q)


# -- minority on Y ---------------------------------------------------------------

def test_minority_examples():
    assert minority_Y(Y, L1, L1, L2) == L2
    for a in GRID4:
        assert minority_Y(Y, a, a, a) == a
    assert minority_Y(Y, CENTER, L1, CENTER) == L1
    assert minority_Y(Y, L1, L2, L3) == CENTER


def test_minority_laws_on_grid():
    mino = theories.minority()
    assert check_on_grid(mino, {"q": lambda a, b, c: minority_Y(Y, a, b, c)}, GRID4)


def test_minority_fails_majority():
    maj = theories.majority()
    v = check_on_grid(maj, {"m": lambda a, b, c: minority_Y(Y, a, b, c)}, GRID4)
    assert not v


# -- rooted meet -----------------------------------------------------------------

def test_rooted_meet_examples():
    assert rooted_meet(Y, CENTER, L1, L2) == CENTER
    half = Y.point(0, F(1, 2))
    assert rooted_meet(Y, CENTER, half, L1) == half
    assert rooted_meet(Y, CENTER, CENTER, L3) == CENTER


@pytest.mark.parametrize("root", ["c", "l1"])
def test_rooted_meet_semilattice_on_grid(root):
    r = Y.vertex(root)
    meet = lambda a, b: rooted_meet(Y, r, a, b)
    for a, b in itertools.product(GRID4, repeat=2):
        assert meet(a, a) == a
        assert meet(a, b) == meet(b, a)
        assert meet(a, r) == r
    for a, b, c in itertools.product(GRID4[::2], repeat=3):
        assert meet(meet(a, b), c) == meet(a, meet(b, c))
