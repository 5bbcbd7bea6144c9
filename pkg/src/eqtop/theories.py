"""Named theories and generated theory families."""
from __future__ import annotations

from functools import lru_cache

from .dsl import parse_theory
from .terms import App, Equation, Signature, Theory, Var


def _t(text):
    return lru_cache(maxsize=None)(lambda: parse_theory(text))


majority = _t("""
theory majority { op m:3; eq m(x,x,y) = x; eq m(x,y,x) = x; eq m(y,x,x) = x; }
""")

minority = _t("""
theory minority { op q:3; eq q(x,x,y) = y; eq q(x,y,x) = y; eq q(y,x,x) = y; }
""")

maltsev = _t("""
theory maltsev { op p:3; eq p(x,x,y) = y; eq p(y,x,x) = y; }
""")

two_thirds = _t("""
theory two_thirds { op t:3; eq t(x,x,y) = y; eq t(y,x,x) = y; eq t(x,y,x) = x; }
""")

associative = _t("""
theory associative { op f:2; eq f(f(x,y),z) = f(x,f(y,z)); }
""")

idempotent_entropic = _t("""
theory idempotent_entropic {
  op F:2;
  eq F(x,x) = x;
  eq F(F(x,y),F(u,v)) = F(F(x,u),F(y,v));
}
""")

evans = _t("""
theory evans { op star:2; eq star(star(x,y),star(y,z)) = y; }
""")

fixed_point_exclusion = _t("""
theory fixed_point_exclusion { op F:3; op phi:1; eq F(x,x,y) = y; eq F(phi(x),x,y) = x; }
""")

one_one_not_onto = _t("""
theory one_one_not_onto {
  op F:3; op psi:1; op theta:1; op phi:1; op zero:0; op one:0;
  eq F(x,y,zero) = x;
  eq F(x,y,one) = y;
  eq psi(theta(x)) = x;
  eq phi(theta(x)) = zero;
  eq phi(one) = one;
}
""")

mult01 = _t("""
theory mult01 { op mul:2; op zero:0; op one:0; eq mul(x,zero) = zero; eq mul(x,one) = x; }
""")

# Abelian groups with binary subtraction, as in the symmetric-difference example.
abelian_group = _t("""
theory abelian_group {
  op plus:2; op minus:2; op zero:0;
  eq plus(plus(x,y),z) = plus(x,plus(y,z));
  eq plus(x,y) = plus(y,x);
  eq plus(x,zero) = x;
  eq plus(minus(x,y),y) = x;
}
""")

# Abelian groups with unary inverse.
abelian_group_inv = _t("""
theory abelian_group_inv {
  op plus:2; op neg:1; op zero:0;
  eq plus(plus(x,y),z) = plus(x,plus(y,z));
  eq plus(x,y) = plus(y,x);
  eq plus(x,zero) = x;
  eq plus(x,neg(x)) = zero;
}
""")

boolean_algebra = _t("""
theory boolean_algebra {
  op and:2; op or:2; op not:1; op zero:0; op one:0;
  eq and(x,y) = and(y,x);
  eq or(x,y) = or(y,x);
  eq and(and(x,y),z) = and(x,and(y,z));
  eq or(or(x,y),z) = or(x,or(y,z));
  eq and(x,or(x,y)) = x;
  eq or(x,and(x,y)) = x;
  eq and(x,or(y,z)) = or(and(x,y),and(x,z));
  eq or(x,zero) = x;
  eq and(x,one) = x;
  eq and(x,not(x)) = zero;
  eq or(x,not(x)) = one;
}
""")

semilattice = _t("""
theory semilattice {
  op meet:2;
  eq meet(x,x) = x; eq meet(x,y) = meet(y,x); eq meet(meet(x,y),z) = meet(x,meet(y,z));
}
""")

hspace = _t("""
theory hspace { op mul:2; op e:0; eq mul(x,e) = x; eq mul(e,x) = x; }
""")


def squaring_theory() -> Theory:
    """Models are exactly the squares ``B^2`` with ``H``, ``d`` as coordinate picks."""
    return _squaring()


_squaring = _t("""
theory squaring {
  op H:2; op d:1;
  eq H(x,x) = x;
  eq H(x,H(y,z)) = H(x,z);
  eq H(x,z) = H(H(x,y),z);
  eq d(d(x)) = x;
  eq d(H(x,y)) = H(d(y),d(x));
}
""")


def sqrt2_hspace_theory() -> Theory:
    return _sqrt2()


_sqrt2 = _t("""
theory sqrt2_hspace {
  op f1:4; op f2:4; op c1:0; op c2:0;
  eq f1(x1,x2,c1,c2) = x1;
  eq f2(x1,x2,c1,c2) = x2;
  eq f1(c1,c2,x1,x2) = x1;
  eq f2(c1,c2,x1,x2) = x2;
}
""")


def _meet(a, b):
    return App("meet", (a, b))


def _join(a, b):
    return App("join", (a, b))


def lambda_theory(n: int) -> Theory:
    """Bounded distributive lattices, plus for ``n >= 1`` a unary ``f`` and a chain.

    The lattice part is a fixed ten-equation basis: both commutative and
    both associative laws, the two absorption laws, meet over join
    distributivity, ``x v 0 = x``, ``x ^ 1 = x`` and ``x ^ 0 = 0``
    (``x v 1 = 1`` follows from the others by absorption).
    For ``n >= 1`` add constants ``a1 <= ... <= an`` and
    ``f(0) = 0``, ``f(a_i) = 1`` for odd ``i``, ``0`` for even ``i``, and
    ``f(1) = 1`` if ``n`` is even, ``0`` otherwise.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    x, y, z = Var(1), Var(2), Var(3)
    zero, one = App("zero"), App("one")
    eqs = [
        Equation(_meet(x, y), _meet(y, x)),
        Equation(_join(x, y), _join(y, x)),
        Equation(_meet(_meet(x, y), z), _meet(x, _meet(y, z))),
        Equation(_join(_join(x, y), z), _join(x, _join(y, z))),
        Equation(_meet(x, _join(x, y)), x),
        Equation(_join(x, _meet(x, y)), x),
        Equation(_meet(x, _join(y, z)), _join(_meet(x, y), _meet(x, z))),
        Equation(_join(x, zero), x),
        Equation(_meet(x, one), x),
        Equation(_meet(x, zero), zero),
    ]
    sig = [("meet", 2), ("join", 2), ("zero", 0), ("one", 0)]
    if n == 0:
        return Theory("lambda_0", Signature(tuple(sig)), tuple(eqs))
    sig.append(("f", 1))
    consts = [App(f"a{i}") for i in range(1, n + 1)]
    sig.extend((f"a{i}", 0) for i in range(1, n + 1))
    for lo, hi in zip(consts, consts[1:]):
        eqs.append(Equation(_meet(lo, hi), lo))

    def f(t):
        return App("f", (t,))

    eqs.append(Equation(f(zero), zero))
    for i, a in enumerate(consts, start=1):
        eqs.append(Equation(f(a), one if i % 2 else zero))
    eqs.append(Equation(f(one), one if n % 2 == 0 else zero))
    return Theory(f"lambda_{n}", Signature(tuple(sig)), tuple(eqs))


def interval_ring_theory() -> Theory:
    """Equations of multiplication, truncated addition and shrinking on [-1, 1].

    Includes the duals of the multiplicative meet-distribution law and of the
    shrink/meet law.
    """
    return _interval_ring()


_interval_ring = _t("""
theory interval_ring {
  op mul:2; op plus:2; op F:1; op meet:2; op join:2; op zero:0; op one:0;
  eq plus(x,y) = plus(y,x);
  eq plus(plus(F(x),F(y)),F(z)) = plus(F(x),plus(F(y),F(z)));
  eq plus(plus(F(x),F(x)),F(x)) = x;
  eq mul(x,plus(F(y),F(z))) = plus(mul(x,F(y)),mul(x,F(z)));
  eq mul(mul(x,x),meet(y,z)) = meet(mul(mul(x,x),y),mul(mul(x,x),z));
  eq mul(mul(x,x),join(y,z)) = join(mul(mul(x,x),y),mul(mul(x,x),z));
  eq plus(plus(mul(x,x),mul(y,y)),mul(z,z)) = plus(mul(x,x),plus(mul(y,y),mul(z,z)));
  eq F(meet(x,y)) = meet(F(x),F(y));
  eq F(join(x,y)) = join(F(x),F(y));
  eq join(mul(x,x),zero) = mul(x,x);
  eq mul(meet(x,zero),meet(y,z)) = join(mul(meet(x,zero),y),mul(meet(x,zero),z));
}
""")


def builtin() -> dict:
    """Named theories by their DSL name."""
    out = {}
    for fn in (majority, minority, maltsev, two_thirds, associative, idempotent_entropic, evans,
               fixed_point_exclusion, one_one_not_onto, mult01, abelian_group, abelian_group_inv,
               boolean_algebra, semilattice, hspace, squaring_theory, sqrt2_hspace_theory,
               interval_ring_theory):
        th = fn()
        out[th.name] = th
    return out
