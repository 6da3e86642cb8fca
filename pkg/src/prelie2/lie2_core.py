"""2-term L-infinity structures, homomorphisms, representations, semidirect
products, and the functor from 2-term pre-Lie structures.

The mixed bracket is stored once in (degree 0, degree 1) order; the opposite
order is the negative.  Representations are stored as operators acting
directly on V-coordinates and validated by expressing them as a homomorphism
into the computed End(V).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product as iter_product

from .graded_spaces import EndAlgebra, TwoTermComplex, end_algebra
from .prelie_base import LieAlgebra
from .prelie2_core import PreLie2Algebra, PreLie2Hom, validate as validate_prelie2
from .report import InvalidStructureError, ValidationReport, Violation, make_report
from .scalar_tensor import (
    MultiMap,
    Space,
    basis_vector,
    ml_apply,
    vec_add,
    vec_is_zero,
    vec_neg,
    vec_sub,
)


@dataclass(frozen=True)
class Lie2Algebra:
    g0: Space
    g1: Space
    dk: MultiMap  # g1 -> g0
    l2_00: MultiMap  # g0 x g0 -> g0, skew
    l2_01: MultiMap  # g0 x g1 -> g1; l2(m, x) = -l2(x, m)
    l3: MultiMap  # g0 x g0 x g0 -> g1, totally skew


@dataclass(frozen=True)
class Lie2Hom:
    f0: MultiMap
    f1: MultiMap
    f2: MultiMap  # g0 x g0 -> g1', skew


@dataclass(frozen=True)
class Lie2Rep:
    """Operators of a 2-algebra on a 2-term complex, in V-coordinates."""

    complex: TwoTermComplex
    rho0_0: MultiMap  # g0 x V0 -> V0
    rho0_1: MultiMap  # g0 x V1 -> V1
    rho1: MultiMap  # g1 x V0 -> V1
    rho2: MultiMap  # g0 x g0 x V0 -> V1, skew in the g0 slots


def is_strict_lie2(g: Lie2Algebra) -> bool:
    return g.l3.is_zero()


def is_strict_rep(rep: Lie2Rep) -> bool:
    return rep.rho2.is_zero()


def zero_lie2(g0: Space, g1: Space) -> Lie2Algebra:
    return Lie2Algebra(
        g0,
        g1,
        MultiMap.zero((g1,), g0),
        MultiMap.zero((g0, g0), g0),
        MultiMap.zero((g0, g1), g1),
        MultiMap.zero((g0, g0, g0), g1),
    )


class _Ev:
    def __init__(self, g: Lie2Algebra):
        self.g = g
        self.b0 = [basis_vector(g.g0, i) for i in range(g.g0.dim)]
        self.b1 = [basis_vector(g.g1, p) for p in range(g.g1.dim)]

    def d(self, m):
        return ml_apply(self.g.dk, [m])

    def l2(self, x, y):
        return ml_apply(self.g.l2_00, [x, y])

    def l2m(self, x, m):
        return ml_apply(self.g.l2_01, [x, m])

    def l3(self, x, y, z):
        return ml_apply(self.g.l3, [x, y, z])


def validate(g: Lie2Algebra) -> ValidationReport:
    """Skewness plus conditions (i)-(iv), including the Jacobiator identity."""
    ev = _Ev(g)
    out: list[Violation] = []
    n0, n1 = g.g0.dim, g.g1.dim
    for i, j in iter_product(range(n0), repeat=2):
        defect = vec_add(g.l2_00.image_of_basis(i, j), g.l2_00.image_of_basis(j, i))
        if not vec_is_zero(defect):
            out.append(Violation("skew-l2", (i, j), defect))
    for (a, b) in ((0, 1), (1, 2)):
        for idx in iter_product(range(n0), repeat=3):
            swapped = list(idx)
            swapped[a], swapped[b] = swapped[b], swapped[a]
            defect = vec_add(
                g.l3.image_of_basis(*idx), g.l3.image_of_basis(*tuple(swapped))
            )
            if not vec_is_zero(defect):
                out.append(Violation("skew-l3", idx, defect))
    for i, p in iter_product(range(n0), range(n1)):
        x, m = ev.b0[i], ev.b1[p]
        defect = vec_sub(ev.d(ev.l2m(x, m)), ev.l2(x, ev.d(m)))
        if not vec_is_zero(defect):
            out.append(Violation("i", (i, p), defect))
    for p, q in iter_product(range(n1), repeat=2):
        m, n = ev.b1[p], ev.b1[q]
        defect = vec_sub(ev.l2m(ev.d(m), n), vec_neg(ev.l2m(ev.d(n), m)))
        if not vec_is_zero(defect):
            out.append(Violation("i", (n0 + p, q), defect))
    for i, j, k in iter_product(range(n0), repeat=3):
        x, y, z = ev.b0[i], ev.b0[j], ev.b0[k]
        cyc = vec_add(
            ev.l2(x, ev.l2(y, z)),
            vec_add(ev.l2(y, ev.l2(z, x)), ev.l2(z, ev.l2(x, y))),
        )
        defect = vec_sub(ev.d(ev.l3(x, y, z)), cyc)
        if not vec_is_zero(defect):
            out.append(Violation("ii", (i, j, k), defect))
    for i, j, p in iter_product(range(n0), range(n0), range(n1)):
        x, y, m = ev.b0[i], ev.b0[j], ev.b1[p]
        # l2(y, l2(m, x)) = l2(y, -l2(x, m)); l2(m, l2(x, y)) = -l2(l2(x,y), m)
        rhs = vec_add(
            ev.l2m(x, ev.l2m(y, m)),
            vec_add(
                ev.l2m(y, vec_neg(ev.l2m(x, m))),
                vec_neg(ev.l2m(ev.l2(x, y), m)),
            ),
        )
        defect = vec_sub(ev.l3(x, y, ev.d(m)), rhs)
        if not vec_is_zero(defect):
            out.append(Violation("iii", (i, j, p), defect))
    for idx in iter_product(range(n0), repeat=4):
        xs = [ev.b0[t] for t in idx]
        total = None
        for i in range(4):
            rest = [xs[t] for t in range(4) if t != i]
            term = ev.l2m(xs[i], ev.l3(*rest))
            if i % 2 == 1:
                term = vec_neg(term)
            total = term if total is None else vec_add(total, term)
        for i, j in combinations(range(4), 2):
            rest = [xs[t] for t in range(4) if t not in (i, j)]
            term = ev.l3(ev.l2(xs[i], xs[j]), *rest)
            if (i + j) % 2 == 0:
                term = vec_neg(term)
            total = vec_add(total, term)
        if not vec_is_zero(total):
            out.append(Violation("iv", idx, total))
    return make_report(out)


def validate_hom(f: Lie2Hom, g: Lie2Algebra, h: Lie2Algebra) -> ValidationReport:
    eva, evb = _Ev(g), _Ev(h)
    out: list[Violation] = []
    n0, n1 = g.g0.dim, g.g1.dim

    def f0(x):
        return ml_apply(f.f0, [x])

    def f1(m):
        return ml_apply(f.f1, [m])

    def f2(x, y):
        return ml_apply(f.f2, [x, y])

    for i, j in iter_product(range(n0), repeat=2):
        defect = vec_add(f.f2.image_of_basis(i, j), f.f2.image_of_basis(j, i))
        if not vec_is_zero(defect):
            out.append(Violation("skew-f2", (i, j), defect))
    for p in range(n1):
        m = eva.b1[p]
        defect = vec_sub(f0(eva.d(m)), evb.d(f1(m)))
        if not vec_is_zero(defect):
            out.append(Violation("i", (p,), defect))
    for i, j in iter_product(range(n0), repeat=2):
        x, y = eva.b0[i], eva.b0[j]
        defect = vec_sub(
            vec_sub(f0(eva.l2(x, y)), evb.l2(f0(x), f0(y))), evb.d(f2(x, y))
        )
        if not vec_is_zero(defect):
            out.append(Violation("ii", (i, j), defect))
    for i, p in iter_product(range(n0), range(n1)):
        x, m = eva.b0[i], eva.b1[p]
        defect = vec_sub(
            vec_sub(f1(eva.l2m(x, m)), evb.l2m(f0(x), f1(m))), f2(x, eva.d(m))
        )
        if not vec_is_zero(defect):
            out.append(Violation("iii", (i, p), defect))
    for i, j, k in iter_product(range(n0), repeat=3):
        x, y, z = eva.b0[i], eva.b0[j], eva.b0[k]
        lhs = vec_add(
            vec_add(f2(eva.l2(x, y), z), f2(eva.l2(y, z), x)),
            vec_add(f2(eva.l2(z, x), y), f1(eva.l3(x, y, z))),
        )
        rhs = vec_add(
            vec_add(evb.l2m(f0(x), f2(y, z)), evb.l2m(f0(y), f2(z, x))),
            vec_add(evb.l2m(f0(z), f2(x, y)), evb.l3(f0(x), f0(y), f0(z))),
        )
        defect = vec_sub(lhs, rhs)
        if not vec_is_zero(defect):
            out.append(Violation("iv", (i, j, k), defect))
    return make_report(out)


def rep_as_end_hom(g: Lie2Algebra, rep: Lie2Rep) -> tuple[Lie2Hom, EndAlgebra, ValidationReport]:
    """Express (rho0, rho1, rho2) in End(V) coordinates.

    Operators that fail the chain-commuting condition are reported; the
    returned hom uses zero coordinates for those so validation can proceed.
    """
    end = end_algebra(rep.complex)
    v = rep.complex
    bad: list[Violation] = []
    coords0 = []
    for i in range(g.g0.dim):
        a0 = MultiMap.build(
            (v.v0,), v.v0, lambda u, i=i: rep.rho0_0.image_of_basis(i, u)
        )
        a1 = MultiMap.build(
            (v.v1,), v.v1, lambda m, i=i: rep.rho0_1.image_of_basis(i, m)
        )
        coords = end.end0_coordinates(a0, a1)
        if coords is None:
            bad.append(Violation("rep-chain", (i,), (next(iter(a0.coeffs), None) or 0,)))
            coords = tuple([0] * len(end.end0_pairs))
        coords0.append(coords)
    g0e = end.lie2.g0
    f0 = MultiMap.build((g.g0,), g0e, lambda i: coords0[i])
    f1 = MultiMap.build(
        (g.g1,),
        end.lie2.g1,
        lambda p: end.end1_coordinates(
            MultiMap.build((v.v0,), v.v1, lambda u, p=p: rep.rho1.image_of_basis(p, u))
        ),
    )
    f2 = MultiMap.build(
        (g.g0, g.g0),
        end.lie2.g1,
        lambda i, j: end.end1_coordinates(
            MultiMap.build(
                (v.v0,), v.v1, lambda u, i=i, j=j: rep.rho2.image_of_basis(i, j, u)
            )
        ),
    )
    return Lie2Hom(f0, f1, f2), end, make_report(bad)


def validate_rep(g: Lie2Algebra, rep: Lie2Rep) -> ValidationReport:
    """A representation is a homomorphism into End(V); check it as one."""
    hom, end, chain_report = rep_as_end_hom(g, rep)
    hom_report = validate_hom(hom, g, end.lie2)
    relabeled = [
        Violation("rep-" + v.condition, v.where, v.defect, v.derived)
        for v in hom_report.violations
    ]
    return chain_report.merged(make_report(relabeled))


# -- the functor from 2-term pre-Lie structures ------------------------------


def from_prelie2(a: PreLie2Algebra) -> tuple[Lie2Algebra, Lie2Rep]:
    """Antisymmetrized bracket, cyclic homotopy, and the left-multiplication
    representation on the structure's own complex."""
    rep = validate_prelie2(a)
    if not rep.ok:
        raise InvalidStructureError("from_prelie2 needs a valid structure", rep)
    g0, g1 = a.a0, a.a1
    l2_00 = MultiMap.build(
        (g0, g0),
        g0,
        lambda i, j: vec_sub(a.mul00.image_of_basis(i, j), a.mul00.image_of_basis(j, i)),
    )
    l2_01 = MultiMap.build(
        (g0, g1),
        g1,
        lambda i, p: vec_sub(a.mul01.image_of_basis(i, p), a.mul10.image_of_basis(p, i)),
    )
    l3 = MultiMap.build(
        (g0, g0, g0),
        g1,
        lambda i, j, k: vec_add(
            a.l3.image_of_basis(i, j, k),
            vec_add(a.l3.image_of_basis(j, k, i), a.l3.image_of_basis(k, i, j)),
        ),
    )
    lie2 = Lie2Algebra(g0, g1, a.dm, l2_00, l2_01, l3)
    complex_ = TwoTermComplex(a.a0, a.a1, a.dm)
    rep_ = Lie2Rep(
        complex_,
        a.mul00,
        a.mul01,
        a.mul10,
        MultiMap.build(
            (g0, g0, g0), g1, lambda i, j, k: vec_neg(a.l3.image_of_basis(i, j, k))
        ),
    )
    return lie2, rep_


def hom_from_prelie2hom(
    f: PreLie2Hom, a: PreLie2Algebra, b: PreLie2Algebra
) -> Lie2Hom:
    """F2 antisymmetrized: the 2-component of the bracket-level homomorphism."""
    f2 = MultiMap.build(
        f.f2.inputs,
        f.f2.output,
        lambda i, j: vec_sub(f.f2.image_of_basis(i, j), f.f2.image_of_basis(j, i)),
    )
    return Lie2Hom(f.f0, f.f1, f2)


# -- semidirect products ------------------------------------------------------


def _require_strict(g: Lie2Algebra, rep: Lie2Rep | None = None):
    if not is_strict_lie2(g):
        raise InvalidStructureError(
            "operation needs a strict 2-algebra",
            make_report([Violation("strict", (), (next(c for c in g.l3.coeffs if c),))]),
        )
    if rep is not None and not is_strict_rep(rep):
        raise InvalidStructureError(
            "operation needs a strict representation",
            make_report([Violation("strict-rep", (), (next(c for c in rep.rho2.coeffs if c),))]),
        )


def semidirect_strict(g: Lie2Algebra, rep: Lie2Rep) -> Lie2Algebra:
    """G ⋉ V for a strict algebra acting strictly on a 2-term complex."""
    _require_strict(g, rep)
    v = rep.complex
    n0, m0 = g.g0.dim, v.v0.dim
    n1, m1 = g.g1.dim, v.v1.dim
    s0 = Space(n0 + m0, f"{g.g0.label}+{v.v0.label}")
    s1 = Space(n1 + m1, f"{g.g1.label}+{v.v1.label}")

    def split0(i):  # index in s0 -> (g0 part?, index)
        return ("g", i) if i < n0 else ("v", i - n0)

    def split1(p):
        return ("g", p) if p < n1 else ("v", p - n1)

    def pad(gvec, vvec):
        return tuple(gvec) + tuple(vvec)

    def z(n):
        return (Fraction(0),) * n

    def dk_img(p):
        kind, t = split1(p)
        if kind == "g":
            return pad(g.dk.image_of_basis(t), z(m0))
        return pad(z(n0), v.dm.image_of_basis(t))

    def l2_00_img(i, j):
        ki, ti = split0(i)
        kj, tj = split0(j)
        gpart, vpart = z(n0), z(m0)
        if ki == "g" and kj == "g":
            gpart = g.l2_00.image_of_basis(ti, tj)
        elif ki == "g" and kj == "v":
            vpart = rep.rho0_0.image_of_basis(ti, tj)
        elif ki == "v" and kj == "g":
            vpart = vec_neg(rep.rho0_0.image_of_basis(tj, ti))
        return pad(gpart, vpart)

    def l2_01_img(i, p):
        ki, ti = split0(i)
        kp, tp = split1(p)
        gpart, vpart = z(n1), z(m1)
        if ki == "g" and kp == "g":
            gpart = g.l2_01.image_of_basis(ti, tp)
        elif ki == "g" and kp == "v":
            vpart = rep.rho0_1.image_of_basis(ti, tp)
        elif ki == "v" and kp == "g":
            vpart = vec_neg(rep.rho1.image_of_basis(tp, ti))
        return pad(gpart, vpart)

    return Lie2Algebra(
        s0,
        s1,
        MultiMap.build((s1,), s0, dk_img),
        MultiMap.build((s0, s0), s0, l2_00_img),
        MultiMap.build((s0, s1), s1, l2_01_img),
        MultiMap.zero((s0, s0, s0), s1),
    )


def semidirect_lie_algebra(g: Lie2Algebra) -> LieAlgebra:
    """Flatten a strict 2-algebra: [x+m, y+n] = l2(x,y) + l2(x,n) + l2(m,y)."""
    _require_strict(g)
    n0, n1 = g.g0.dim, g.g1.dim
    total = Space(n0 + n1, f"{g.g0.label}(+){g.g1.label}")

    def z(n):
        return (Fraction(0),) * n

    def bracket(i, j):
        gi = ("0", i) if i < n0 else ("1", i - n0)
        gj = ("0", j) if j < n0 else ("1", j - n0)
        if gi[0] == "0" and gj[0] == "0":
            return tuple(g.l2_00.image_of_basis(gi[1], gj[1])) + z(n1)
        if gi[0] == "0" and gj[0] == "1":
            return z(n0) + tuple(g.l2_01.image_of_basis(gi[1], gj[1]))
        if gi[0] == "1" and gj[0] == "0":
            return z(n0) + tuple(vec_neg(g.l2_01.image_of_basis(gj[1], gi[1])))
        return z(n0) + z(n1)

    return LieAlgebra(total, MultiMap.build((total, total), total, bracket))
