"""Finite metric trees: intervals, medians, gate retractions, and a minority on Y.

A point is ``TreePoint(edge, offset)`` with the offset measured from the
edge's first endpoint.  Points are always built through ``MetricTree.point``
so that a vertex has exactly one representation (the incident edge of
smallest index, offset 0 or the edge length), which makes ``==`` exact.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .pl.expr import fmt, rational
from .terms import Theory, Var


class TreeError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class TreePoint:
    edge: int
    offset: Fraction

    def to_json(self):
        return {"edge": self.edge, "offset": fmt(self.offset)}


@dataclass(frozen=True)
class Segment:
    """Traversal of one edge from offset ``start`` to offset ``end``."""
    edge: int
    start: Fraction
    end: Fraction

    @property
    def length(self) -> Fraction:
        return abs(self.end - self.start)


@dataclass(frozen=True)
class Interval:
    start: TreePoint
    end: TreePoint
    segments: tuple
    length: Fraction


class MetricTree:
    def __init__(self, vertices: Sequence[str], edges: Sequence):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise TreeError("duplicate vertex names")
        self.edges = tuple((str(u), str(v), rational(length)) for u, v, length in edges)
        index = {v: i for i, v in enumerate(self.vertices)}
        for u, v, length in self.edges:
            if u not in index or v not in index:
                raise TreeError(f"edge {u}-{v} uses an unknown vertex")
            if u == v:
                raise TreeError(f"loop at {u}")
            if length <= 0:
                raise TreeError(f"edge {u}-{v} has non-positive length")
        if len(self.edges) != len(self.vertices) - 1:
            raise TreeError("a tree has exactly one edge fewer than vertices")
        self.adj = {v: [] for v in self.vertices}
        for e, (u, v, length) in enumerate(self.edges):
            self.adj[u].append((v, e, length))
            self.adj[v].append((u, e, length))
        self._dist = {}
        self._next = {}
        for s in self.vertices:
            dist, nxt = {s: Fraction(0)}, {s: None}
            queue = deque([s])
            while queue:
                a = queue.popleft()
                for b, e, length in self.adj[a]:
                    if b not in dist:
                        dist[b] = dist[a] + length
                        nxt[b] = (a, e)  # predecessor on the path from s
                        queue.append(b)
            if len(dist) != len(self.vertices):
                raise TreeError("tree is not connected")
            self._dist[s], self._next[s] = dist, nxt

    # -- points ------------------------------------------------------------

    def length(self, e: int) -> Fraction:
        return self.edges[e][2]

    def vertex(self, name: str) -> TreePoint:
        for e, (u, v, length) in enumerate(self.edges):
            if u == name:
                return TreePoint(e, Fraction(0))
            if v == name:
                return TreePoint(e, length)
        if name in self.adj and len(self.vertices) == 1:
            raise TreeError("a one-vertex tree has no edges to address points on")
        raise TreeError(f"unknown vertex {name!r}")

    def point(self, edge: int, offset) -> TreePoint:
        offset = rational(offset)
        if not 0 <= edge < len(self.edges):
            raise TreeError(f"no edge {edge}")
        u, v, length = self.edges[edge]
        if not 0 <= offset <= length:
            raise TreeError(f"offset {fmt(offset)} outside edge {edge}")
        if offset == 0:
            return self.vertex(u)
        if offset == length:
            return self.vertex(v)
        return TreePoint(edge, offset)

    def vertex_of(self, p: TreePoint):
        """Vertex name if the point is a vertex, else None."""
        u, v, length = self.edges[p.edge]
        if p.offset == 0:
            return u
        if p.offset == length:
            return v
        return None

    def _exits(self, p: TreePoint):
        """``(vertex, distance from p)`` for both endpoints of the point's edge."""
        u, v, length = self.edges[p.edge]
        return ((u, p.offset), (v, length - p.offset))

    # -- metric ------------------------------------------------------------

    def vertex_distance(self, a: str, b: str) -> Fraction:
        return self._dist[a][b]

    def distance(self, p: TreePoint, q: TreePoint) -> Fraction:
        if p.edge == q.edge:
            return abs(p.offset - q.offset)
        return min(dp + self._dist[a][b] + dq
                   for a, dp in self._exits(p) for b, dq in self._exits(q))

    def vertex_path(self, a: str, b: str) -> list:
        """Edges ``(edge, from_vertex, to_vertex)`` along the path from ``a`` to ``b``."""
        out = []
        cur = b
        nxt = self._next[a]
        while cur != a:
            prev, e = nxt[cur]
            out.append((e, prev, cur))
            cur = prev
        out.reverse()
        return out

    def _offset_at(self, e: int, vertex: str) -> Fraction:
        u, v, length = self.edges[e]
        return Fraction(0) if vertex == u else length

    def interval(self, a: TreePoint, b: TreePoint) -> Interval:
        """The arc from ``a`` to ``b`` as edge segments in travel order."""
        if a == b:
            return Interval(a, b, (), Fraction(0))
        if a.edge == b.edge:
            return Interval(a, b, (Segment(a.edge, a.offset, b.offset),),
                            abs(a.offset - b.offset))
        best = None
        for x, dx in self._exits(a):
            for y, dy in self._exits(b):
                total = dx + self._dist[x][y] + dy
                if best is None or total < best[0]:
                    best = (total, x, y)
        total, x, y = best
        segs = []
        if a.offset != self._offset_at(a.edge, x):
            segs.append(Segment(a.edge, a.offset, self._offset_at(a.edge, x)))
        for e, s, t in self.vertex_path(x, y):
            segs.append(Segment(e, self._offset_at(e, s), self._offset_at(e, t)))
        if b.offset != self._offset_at(b.edge, y):
            segs.append(Segment(b.edge, self._offset_at(b.edge, y), b.offset))
        return Interval(a, b, tuple(segs), total)

    def along(self, a: TreePoint, b: TreePoint, s) -> TreePoint:
        """The point of ``[a, b]`` at distance ``s`` from ``a``."""
        s = rational(s)
        iv = self.interval(a, b)
        if not 0 <= s <= iv.length:
            raise TreeError("distance outside the interval")
        for seg in iv.segments:
            if s <= seg.length:
                step = s if seg.end >= seg.start else -s
                return self.point(seg.edge, seg.start + step)
            s -= seg.length
        return b

    def in_interval(self, p: TreePoint, a: TreePoint, b: TreePoint) -> bool:
        return self.distance(a, p) + self.distance(p, b) == self.distance(a, b)

    # -- files ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices),
                "edges": [[u, v, fmt(length)] for u, v, length in self.edges]}

    @classmethod
    def from_json(cls, data) -> "MetricTree":
        return cls(data["vertices"], [tuple(e) for e in data["edges"]])

    def point_from_json(self, data) -> TreePoint:
        return self.point(int(data["edge"]), data["offset"])


# -- operations -----------------------------------------------------------

def interval(tree: MetricTree, a: TreePoint, b: TreePoint) -> Interval:
    return tree.interval(a, b)


def median(tree: MetricTree, a: TreePoint, b: TreePoint, c: TreePoint) -> TreePoint:
    """The one point lying on all three of ``[a,b]``, ``[b,c]``, ``[c,a]``.

    It sits on ``[a, b]`` at distance ``(d(a,b) + d(a,c) - d(b,c)) / 2`` from ``a``.
    """
    dab, dac, dbc = tree.distance(a, b), tree.distance(a, c), tree.distance(b, c)
    return tree.along(a, b, (dab + dac - dbc) / 2)


def rooted_meet(tree: MetricTree, root: TreePoint, a: TreePoint, b: TreePoint) -> TreePoint:
    """Where the arcs from ``root`` to ``a`` and to ``b`` part ways."""
    return median(tree, root, a, b)


def _embed(tree: MetricTree, subtree: MetricTree) -> dict:
    """Map from subtree edge index to tree edge index, checking it is a subcomplex."""
    lookup = {}
    for e, (u, v, length) in enumerate(tree.edges):
        lookup[frozenset((u, v))] = (e, length)
    out = {}
    for e, (u, v, length) in enumerate(subtree.edges):
        hit = lookup.get(frozenset((u, v)))
        if hit is None or hit[1] != length:
            raise TreeError(f"subtree edge {u}-{v} is not an edge of the tree")
        out[e] = hit[0]
    return out


def retract(tree: MetricTree, subtree: MetricTree, p: TreePoint) -> TreePoint:
    """Nearest point of the subtree (the gate of ``p``), in the tree's coordinates."""
    _embed(tree, subtree)
    sub_edges = {frozenset(e[:2]) for e in subtree.edges}
    u, v, _ = tree.edges[p.edge]
    if frozenset((u, v)) in sub_edges:
        return p
    vname = tree.vertex_of(p)
    if vname is not None and vname in subtree.vertices:
        return p
    best = min(subtree.vertices, key=lambda w: tree.distance(p, tree.vertex(w)))
    return tree.vertex(best)


def subtree(tree: MetricTree, edge_ids: Sequence[int]) -> MetricTree:
    """The subcomplex made of the given edges (must be connected)."""
    edges = [tree.edges[e] for e in edge_ids]
    verts = []
    for u, v, _ in edges:
        for w in (u, v):
            if w not in verts:
                verts.append(w)
    return MetricTree(verts, edges)


# -- the Y space -----------------------------------------------------------

def y_tree() -> MetricTree:
    """Three unit arms at a center ``c``; arm ``i`` is edge ``i - 1`` from ``c`` to ``l<i>``."""
    return MetricTree(["c", "l1", "l2", "l3"],
                      [("c", "l1", 1), ("c", "l2", 1), ("c", "l3", 1)])


def _y_pair(i: int) -> tuple:
    """Arms of the path ``Y_i`` (lower label first)."""
    return tuple(j for j in (1, 2, 3) if j != i)


def y_coordinate(y: MetricTree, i: int, p: TreePoint) -> Fraction:
    """Arc-length coordinate in ``[0, 2]`` of a point of ``Y_i``.

    The free end of the lower-labeled arm is 0, the center is 1 and the free
    end of the other arm is 2.
    """
    lo, hi = _y_pair(i)
    if y.vertex_of(p) == "c":
        return Fraction(1)
    arm = p.edge + 1
    if arm == lo:
        return 1 - p.offset
    if arm == hi:
        return 1 + p.offset
    raise TreeError(f"point is not on Y_{i}")


def y_point(y: MetricTree, i: int, s: Fraction) -> TreePoint:
    lo, hi = _y_pair(i)
    if s <= 1:
        return y.point(lo - 1, 1 - s)
    return y.point(hi - 1, s - 1)


def real_minority(u: Fraction, v: Fraction, w: Fraction) -> Fraction:
    """``min - median + max``; equals ``u - v + w`` when ``u <= v <= w``."""
    a, b, c = sorted((u, v, w))
    return a - b + c


def minority_Y(y: MetricTree, a: TreePoint, b: TreePoint, c: TreePoint) -> TreePoint:
    """Median of the three path minorities, each computed after retracting onto ``Y_i``."""
    parts = []
    for i in (1, 2, 3):
        coords = [y_coordinate(y, i, retract_y(y, i, p)) for p in (a, b, c)]
        parts.append(y_point(y, i, real_minority(*coords)))
    return median(y, *parts)


def y_path(y: MetricTree, i: int) -> MetricTree:
    """``Y_i`` as a subtree: the two arms other than arm ``i``."""
    return subtree(y, [j - 1 for j in _y_pair(i)])


def retract_y(y: MetricTree, i: int, p: TreePoint) -> TreePoint:
    """Gate map of Y onto ``Y_i``: points on arm ``i`` go to the center.

    Same result as ``retract(y, y_path(y, i), p)`` without rebuilding the subtree.
    """
    if p.edge == i - 1 and y.vertex_of(p) != "c":
        return y.vertex("c")
    return p


# -- grids and identity checks -------------------------------------------------

def grid_points(tree: MetricTree, denominator: int) -> list:
    """Points at offsets ``length * k / q`` for ``q <= denominator``, without repeats."""
    pts = set()
    for e, (_, _, length) in enumerate(tree.edges):
        for q in range(1, denominator + 1):
            for k in range(q + 1):
                pts.add(tree.point(e, length * Fraction(k, q)))
    return sorted(pts)


def evaluate_tree_term(ops: Mapping[str, Callable], term, assignment: Sequence[TreePoint]):
    if isinstance(term, Var):
        return assignment[term.index - 1]
    return ops[term.symbol](*(evaluate_tree_term(ops, a, assignment) for a in term.args))


@dataclass(frozen=True)
class TreeHolds:
    checked: int

    def __bool__(self):
        return True

    def __str__(self):
        return f"Holds on {self.checked} assignments"


@dataclass(frozen=True)
class TreeFails:
    equation: object
    assignment: tuple
    lhs: TreePoint
    rhs: TreePoint

    def __bool__(self):
        return False

    def __str__(self):
        pts = ", ".join(f"({p.edge}, {fmt(p.offset)})" for p in self.assignment)
        return f"Fails {self.equation} at [{pts}]"


def check_on_grid(theory: Theory, ops: Mapping[str, Callable], points: Sequence[TreePoint]):
    """Check every equation at every assignment of grid points, in lexicographic order."""
    checked = 0
    for eq in theory.equations:
        for asg in itertools.product(points, repeat=eq.nvars):
            checked += 1
            lhs = evaluate_tree_term(ops, eq.lhs, asg)
            rhs = evaluate_tree_term(ops, eq.rhs, asg)
            if lhs != rhs:
                return TreeFails(eq, asg, lhs, rhs)
    return TreeHolds(checked)


def tree_ops(tree: MetricTree, name: str, root: TreePoint = None) -> tuple:
    """``(arity, function)`` for a named tree operation."""
    if name == "median":
        return 3, lambda a, b, c: median(tree, a, b, c)
    if name == "minority":
        return 3, lambda a, b, c: minority_Y(tree, a, b, c)
    if name == "rooted_meet":
        r = root if root is not None else tree.vertex(tree.vertices[0])
        return 2, lambda a, b: rooted_meet(tree, r, a, b)
    raise TreeError(f"unknown tree operation {name!r}")


def is_y_tree(tree: MetricTree) -> bool:
    return tree.to_json() == y_tree().to_json()


def op_theory_ops(theory: Theory, tree: MetricTree, op: str) -> dict:
    """Bind the single symbol of ``theory`` to a named tree operation."""
    if len(theory.signature) != 1:
        raise TreeError("tree checks need a theory with exactly one operation symbol")
    (name, n), = theory.signature.symbols
    k, fn = tree_ops(tree, op)
    if n != k:
        raise TreeError(f"{op} has arity {k} but {name} has arity {n}")
    if op == "minority" and not is_y_tree(tree):
        raise TreeError("the minority operation is defined on the standard Y tree only")
    return {name: fn}


__all__ = ["MetricTree", "TreePoint", "Segment", "Interval", "interval", "median", "retract",
           "rooted_meet", "minority_Y", "y_tree", "grid_points", "check_on_grid"]
