"""Concrete operations on intervals paired with the theories they satisfy.

Each entry carries its theory, the operations as expressions, the base
interval, the checking mode (``certify`` for exact PL certification,
``sample`` for operation sets with products) and single-coefficient mutants
that must be refuted.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..dsl import parse_theory
from ..terms import Theory
from ..theories import (idempotent_entropic, interval_ring_theory, lambda_theory, maltsev,
                        majority, minority, mult01, one_one_not_onto, two_thirds)
from .expr import SYMMETRIC, UNIT, Box, Compose, Const, Expr, Mul, Var, max_, min_

X, Y, Z = Var(0), Var(1), Var(2)
F = Fraction


@dataclass(frozen=True)
class Mutant:
    description: str
    witness: dict


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    theory: Theory
    witness: dict
    box: Box
    mode: str
    description: str
    mutants: tuple = field(default_factory=tuple)


def chebyshev(n: int, x) -> Fraction:
    """``T_n(x)`` by the three-term recurrence, exactly."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    x = Fraction(x)
    a, b = Fraction(1), x
    if n == 0:
        return a
    for _ in range(n - 1):
        a, b = b, 2 * x * b - a
    return b


# -- building blocks ---------------------------------------------------------

def median3(zscale=1) -> Expr:
    """``(x ^ y) v (x ^ z) v (y ^ z)``; ``zscale`` rescales the last ``z`` (for mutants)."""
    return max_(min_(X, Y), min_(X, Z), min_(Y, Z * zscale if zscale != 1 else Z))


def minority3(median_coeff=1) -> Expr:
    """``min - m + max``, the symmetric extension of ``u - v + w`` for ``u <= v <= w``."""
    return min_(X, Y, Z) - median3() * median_coeff + max_(X, Y, Z)


def two_thirds3(w_coeff=1) -> Expr:
    return X - median3() + Z * w_coeff


def derived_majority(t: Expr) -> Expr:
    """``t(x, t(x, y, z), z)``."""
    return Compose(t, (X, Compose(t, (X, Y, Z)), Z))


def lattice_ops(one=1, zero=0) -> dict:
    return {"meet": min_(X, Y), "join": max_(X, Y), "zero": Const(zero), "one": Const(one)}


def affine2(alpha, beta_coeff=None) -> Expr:
    """``alpha x + (1 - alpha) y``; ``beta_coeff`` overrides the second coefficient."""
    alpha = F(alpha)
    return X * alpha + Y * (1 - alpha if beta_coeff is None else F(beta_coeff))


def zigzag(n: int, points=None) -> Expr:
    """PL ``f`` on [0,1] with ``f(0) = 0`` alternating 1, 0, 1, ... at the breakpoints.

    Breakpoints default to ``i / (n + 1)``; the function is linear between
    consecutive breakpoints and on ``[a_n, 1]`` so ``f(1)`` is the next value.
    Written as a sum of hinges ``c * max(x - a, 0)``.
    """
    pts = [F(0)] + (list(points) if points else [F(i, n + 1) for i in range(1, n + 1)]) + [F(1)]
    vals = [F((i % 2)) for i in range(n + 2)]
    slopes = [(vals[i + 1] - vals[i]) / (pts[i + 1] - pts[i]) for i in range(n + 1)]
    f = X * slopes[0]
    for i in range(1, n + 1):
        f = f + max_(X - pts[i], 0) * (slopes[i] - slopes[i - 1])
    return f


def interval_ring_ops(shrink=F(1, 3), lower=-1, mul=None) -> dict:
    boxplus = max_(min_(X + Y, 1), lower)
    return {"mul": mul if mul is not None else Mul(X, Y), "plus": boxplus, "F": X * shrink,
            "meet": min_(X, Y), "join": max_(X, Y), "zero": Const(0), "one": Const(1)}


def oneone_ops(theta=F(1, 2), bilinear=False) -> dict:
    c = Var(2)
    if bilinear:
        Fop = Mul(Const(1) - c, X) + Mul(c, Y)
    else:
        Fop = min_(max_(X, c * 2), max_(Y, 2 - c * 2))
    return {"F": Fop, "psi": min_(X * 2, 1), "theta": X * theta, "phi": max_(X * 2 - 1, 0),
            "zero": Const(0), "one": Const(1)}


# -- theories only used here ---------------------------------------------------

def affine3_theory() -> Theory:
    return parse_theory("""
    theory affine3 {
      op Fa:2; op Fb:2; op L:3;
      eq Fa(x,x) = x;
      eq Fb(x,x) = x;
      eq Fa(Fa(x,y),Fa(u,v)) = Fa(Fa(x,u),Fa(y,v));
      eq Fb(Fb(x,y),Fb(u,v)) = Fb(Fb(x,u),Fb(y,v));
      eq Fa(Fb(x,y),Fb(u,v)) = Fb(Fa(x,u),Fa(y,v));
      eq Fa(Fb(x,y),z) = L(x,y,z);
    }""")


def affine_commutative_theory() -> Theory:
    return parse_theory("""
    theory affine_commutative {
      op F:2;
      eq F(x,x) = x;
      eq F(F(x,y),F(u,v)) = F(F(x,u),F(y,v));
      eq F(x,y) = F(y,x);
    }""")


def dlat_theory() -> Theory:
    return lambda_theory(0)


# -- entries ---------------------------------------------------------------------

def _dlat01():
    return CatalogEntry(
        "dlat01", dlat_theory(), lattice_ops(), UNIT, "certify",
        "min, max, 0, 1 on [0,1] form a bounded distributive lattice",
        (Mutant("one = 9/10", lattice_ops(one=F(9, 10))),))


def _majority_m():
    return CatalogEntry(
        "majority_m", majority(), {"m": median3()}, UNIT, "certify",
        "median of three reals via lattice operations",
        (Mutant("last z scaled by 1/2", {"m": median3(zscale=F(1, 2))}),))


def _minority_q():
    return CatalogEntry(
        "minority_q", minority(), {"q": minority3()}, UNIT, "certify",
        "q = min - median + max",
        (Mutant("median coefficient 2", {"q": minority3(2)}),))


def _maltsev_p():
    return CatalogEntry(
        "maltsev_p", maltsev(), {"p": minority3()}, UNIT, "certify",
        "the minority operation is a Mal'tsev operation",
        (Mutant("median coefficient 2", {"p": minority3(2)}),))


def _two_thirds_t():
    return CatalogEntry(
        "two_thirds_t", two_thirds(), {"t": two_thirds3()}, UNIT, "certify",
        "t = u - median + w",
        (Mutant("w coefficient 2", {"t": two_thirds3(2)}),))


def _derived_majority():
    return CatalogEntry(
        "derived_majority_from_t", majority(), {"m": derived_majority(two_thirds3())}, UNIT,
        "certify", "t(x, t(x,y,z), z) is a majority operation",
        (Mutant("w coefficient 2 in t", {"m": derived_majority(two_thirds3(2))}),))


def _mult01():
    ops = {"mul": min_(X, Y), "zero": Const(0), "one": Const(1)}
    bad = dict(ops, zero=Const(F(1, 10)))
    return CatalogEntry(
        "mult01", mult01(), ops, UNIT, "certify",
        "meet with 0 as zero and 1 as one-sided unit",
        (Mutant("zero = 1/10", bad),))


def _oneone_notonto():
    return CatalogEntry(
        "oneone_notonto", one_one_not_onto(), oneone_ops(), UNIT, "certify",
        "PL case-split F with theta = x/2, psi = 2x ^ 1, phi = (2x - 1) v 0",
        (Mutant("theta = x/3", oneone_ops(theta=F(1, 3))),))


def _oneone_bilinear():
    return CatalogEntry(
        "oneone_notonto_bilinear", one_one_not_onto(), oneone_ops(bilinear=True), UNIT,
        "sample", "bilinear F(a,b,c) = (1-c)a + cb",
        (Mutant("theta = x/3", oneone_ops(theta=F(1, 3), bilinear=True)),))


def _affine_alpha(alpha=F(1, 3)):
    alpha = F(alpha)
    if not 0 <= alpha <= 1:
        raise ValueError("alpha must lie in [0, 1]")
    return CatalogEntry(
        "affine_alpha", idempotent_entropic(), {"F": affine2(alpha)}, UNIT, "certify",
        f"F(a,b) = {alpha} a + {1 - alpha} b",
        (Mutant("second coefficient 1/2", {"F": affine2(alpha, F(1, 2))}),))


def _affine_half_commutative():
    return CatalogEntry(
        "affine_half_commutative", affine_commutative_theory(), {"F": affine2(F(1, 2))}, UNIT,
        "certify", "F(a,b) = (a + b)/2 is also commutative",
        (Mutant("alpha = 1/3", {"F": affine2(F(1, 3))}),))


def _affine3(mu=F(1, 6), nu=F(1, 3), lam=F(1, 2)):
    mu, nu, lam = F(mu), F(nu), F(lam)
    if min(mu, nu, lam) <= 0 or mu + nu + lam != 1:
        raise ValueError("mu, nu, lambda must be positive and sum to 1")
    alpha, beta = mu + nu, mu / (mu + nu)

    def ops(lam_coeff):
        return {"Fa": affine2(alpha), "Fb": affine2(beta),
                "L": X * mu + Y * nu + Z * lam_coeff}

    return CatalogEntry(
        "affine3", affine3_theory(), ops(lam), UNIT, "certify",
        f"F_alpha(F_beta(x,y),z) = {mu}x + {nu}y + {lam}z with alpha = {alpha}, beta = {beta}",
        (Mutant("lambda halved", ops(lam / 2)),))


def _lambda_n(n=1):
    n = int(n)
    if n < 1:
        raise ValueError("n must be at least 1")

    def ops(points):
        out = lattice_ops()
        out["f"] = zigzag(n, points)
        for i, a in enumerate(points, start=1):
            out[f"a{i}"] = Const(a)
        return out

    pts = [F(i, n + 1) for i in range(1, n + 1)]
    shifted = [pts[0] + F(1, 2 * (n + 1))] + pts[1:]
    bad = ops(pts)
    bad["a1"] = Const(shifted[0])
    return CatalogEntry(
        "lambda_n", lambda_theory(n), ops(pts), UNIT, "certify",
        f"zigzag f with breakpoints i/{n + 1}",
        (Mutant("a1 moved halfway to the next breakpoint", bad),))


def _interval_ring():
    return CatalogEntry(
        "interval_ring", interval_ring_theory(), interval_ring_ops(), SYMMETRIC, "sample",
        "product, truncated sum, x/3, min, max, 0, 1 on [-1,1]",
        (Mutant("F = x/4", interval_ring_ops(shrink=F(1, 4))),
         Mutant("truncated sum cut at 0 instead of -1", interval_ring_ops(lower=0)),
         Mutant("product replaced by min", interval_ring_ops(mul=min_(X, Y)))))


BUILDERS = {
    "dlat01": _dlat01,
    "majority_m": _majority_m,
    "minority_q": _minority_q,
    "maltsev_p": _maltsev_p,
    "two_thirds_t": _two_thirds_t,
    "derived_majority_from_t": _derived_majority,
    "mult01": _mult01,
    "oneone_notonto": _oneone_notonto,
    "oneone_notonto_bilinear": _oneone_bilinear,
    "affine_alpha": _affine_alpha,
    "affine_half_commutative": _affine_half_commutative,
    "affine3": _affine3,
    "lambda_n": _lambda_n,
    "interval_ring": _interval_ring,
}


class UnknownEntry(KeyError):
    pass


def catalog(name: str, *args, **params) -> CatalogEntry:
    try:
        builder = BUILDERS[name]
    except KeyError:
        raise UnknownEntry(name) from None
    return builder(*args, **params)


def names() -> list:
    return list(BUILDERS)


# Every run of ``run_all``: (name, positional parameters).
STANDARD_RUNS = (
    [("dlat01", ()), ("majority_m", ()), ("minority_q", ()), ("maltsev_p", ()),
     ("two_thirds_t", ()), ("derived_majority_from_t", ()), ("mult01", ()),
     ("oneone_notonto", ()), ("affine_alpha", (F(1, 3),)),
     ("affine3", (F(1, 6), F(1, 3), F(1, 2)))]
    + [("lambda_n", (n,)) for n in range(1, 6)]
    + [("affine_half_commutative", ()), ("oneone_notonto_bilinear", ()),
       ("interval_ring", ())]
)


def run_label(name: str, args: tuple) -> str:
    if not args:
        return name
    return f"{name}({', '.join(str(a) for a in args)})"


# -- running entries -------------------------------------------------------------

@dataclass(frozen=True)
class EntryResult:
    label: str
    mode: str
    ok: bool
    detail: str
    failures: tuple          # (equation, verdict) pairs that did not hold
    mutants: tuple           # (description, refuted, verdict text)

    @property
    def clean(self) -> bool:
        return self.ok and all(refuted for _, refuted, _ in self.mutants)


def _run_witness(entry: CatalogEntry, witness: dict, plan):
    from .certify import check_pl_model
    from .sample import sample_check
    if entry.mode == "certify":
        results = check_pl_model(entry.theory, witness, entry.box)
        bad = tuple((r.equation, r.verdict) for r in results if not r)
        cells = sum(r.verdict.cells for r in results if r)
        detail = f"{len(results)} equations equal on {cells} cells" if not bad else str(bad[0][1])
        return not bad, detail, bad
    verdict = sample_check(entry.theory, witness, entry.box, plan)
    bad = () if verdict else ((verdict.equation, verdict),)
    return bool(verdict), str(verdict), bad


def run_entry(name: str, args: tuple = (), plan=None, mutants: bool = True) -> EntryResult:
    """Check an entry and, optionally, that each of its mutants is refuted."""
    entry = catalog(name, *args)
    ok, detail, bad = _run_witness(entry, entry.witness, plan)
    muts = []
    if mutants:
        for m in entry.mutants:
            m_ok, m_detail, _ = _run_witness(entry, m.witness, plan)
            muts.append((m.description, not m_ok, m_detail))
    return EntryResult(run_label(name, args), entry.mode, ok, detail, bad, tuple(muts))
