"""Ordinary pre-Lie algebras: representations, cohomology, invariant forms.

The coboundary operator follows the displayed four-sum formula verbatim; the
`d∘d = 0` property tests are the arbiter for its sign conventions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product as iter_product

from .report import InvalidStructureError, ValidationReport, Violation, make_report
from .scalar_tensor import (
    MultiMap,
    Space,
    Vector,
    basis_vector,
    kernel_of_rows,
    ml_apply,
    vec_add,
    vec_is_zero,
    vec_neg,
    vec_sub,
    zero_vector,
)

SCALAR_LINE = Space(1, "k")


@dataclass(frozen=True)
class PreLieAlgebra:
    """A based algebra whose associator is symmetric in the first two slots."""

    space: Space
    mul: MultiMap  # space x space -> space

    def product(self, x: Vector, y: Vector) -> Vector:
        return ml_apply(self.mul, [x, y])


@dataclass(frozen=True)
class LieAlgebra:
    space: Space
    bracket: MultiMap  # space x space -> space

    def brk(self, x: Vector, y: Vector) -> Vector:
        return ml_apply(self.bracket, [x, y])


@dataclass(frozen=True)
class PreLieRep:
    """A representation (rho, mu) of a pre-Lie algebra on V."""

    space: Space
    rho: MultiMap  # A x V -> V
    mu: MultiMap  # A x V -> V


@dataclass(frozen=True)
class LieRep:
    space: Space
    rho: MultiMap  # g x V -> V


@dataclass(frozen=True)
class Cochain:
    """n-linear map A x ... x A -> V, skew in the first n-1 slots."""

    n: int
    map: MultiMap

    def __post_init__(self):
        if self.map.arity != self.n:
            raise ValueError(f"arity mismatch: declared {self.n}, map has {self.map.arity}")


@dataclass(frozen=True)
class InvariantForm:
    """Skew bilinear form compatible with the product (values in a line)."""

    omega: MultiMap  # A x A -> 1-dim space

    def value(self, x: Vector, y: Vector) -> Fraction:
        return ml_apply(self.omega, [x, y])[0]


# -- validators --------------------------------------------------------------


def validate_prelie(a: PreLieAlgebra) -> ValidationReport:
    """Check associator symmetry (x,y,z) = (y,x,z) on every basis triple."""
    n = a.space.dim
    bas = [basis_vector(a.space, i) for i in range(n)]
    out: list[Violation] = []
    for i, j, k in iter_product(range(n), repeat=3):
        lhs = vec_sub(
            a.product(ml_apply(a.mul, [bas[i], bas[j]]), bas[k]),
            a.product(bas[i], ml_apply(a.mul, [bas[j], bas[k]])),
        )
        rhs = vec_sub(
            a.product(ml_apply(a.mul, [bas[j], bas[i]]), bas[k]),
            a.product(bas[j], ml_apply(a.mul, [bas[i], bas[k]])),
        )
        defect = vec_sub(lhs, rhs)
        if not vec_is_zero(defect):
            out.append(Violation("assoc-sym", (i, j, k), defect))
    return make_report(out)


def validate_lie(g: LieAlgebra) -> ValidationReport:
    n = g.space.dim
    bas = [basis_vector(g.space, i) for i in range(n)]
    out: list[Violation] = []
    for i, j in iter_product(range(n), repeat=2):
        defect = vec_add(g.brk(bas[i], bas[j]), g.brk(bas[j], bas[i]))
        if not vec_is_zero(defect):
            out.append(Violation("antisym", (i, j), defect))
    for i, j, k in iter_product(range(n), repeat=3):
        defect = vec_add(
            g.brk(g.brk(bas[i], bas[j]), bas[k]),
            vec_add(
                g.brk(g.brk(bas[j], bas[k]), bas[i]),
                g.brk(g.brk(bas[k], bas[i]), bas[j]),
            ),
        )
        if not vec_is_zero(defect):
            out.append(Violation("jacobi", (i, j, k), defect))
    return make_report(out)


def validate_prelie_rep(a: PreLieAlgebra, rep: PreLieRep) -> ValidationReport:
    """rho must represent the sub-adjacent bracket; (rho, mu) must satisfy
    rho(x)mu(y) - mu(y)rho(x) = mu(x.y) - mu(y)mu(x)."""
    na, nv = a.space.dim, rep.space.dim
    ab = [basis_vector(a.space, i) for i in range(na)]
    vb = [basis_vector(rep.space, i) for i in range(nv)]
    out: list[Violation] = []

    def rho(x, v):
        return ml_apply(rep.rho, [x, v])

    def mu(x, v):
        return ml_apply(rep.mu, [x, v])

    for i, j, u in iter_product(range(na), range(na), range(nv)):
        x, y, v = ab[i], ab[j], vb[u]
        bracket = vec_sub(ml_apply(a.mul, [x, y]), ml_apply(a.mul, [y, x]))
        d1 = vec_sub(
            rho(bracket, v), vec_sub(rho(x, rho(y, v)), rho(y, rho(x, v)))
        )
        if not vec_is_zero(d1):
            out.append(Violation("rep-lie", (i, j, u), d1))
        lhs = vec_sub(rho(x, mu(y, v)), mu(y, rho(x, v)))
        rhs = vec_sub(mu(ml_apply(a.mul, [x, y]), v), mu(y, mu(x, v)))
        d2 = vec_sub(lhs, rhs)
        if not vec_is_zero(d2):
            out.append(Violation("rep-mul", (i, j, u), d2))
    return make_report(out)


def validate_cochain(w: Cochain) -> ValidationReport:
    """Skewness in the first n-1 slots (pairwise swaps suffice)."""
    out: list[Violation] = []
    m = w.map
    dims = [sp.dim for sp in m.inputs]
    for a, b in combinations(range(max(w.n - 1, 0)), 2):
        for idx in iter_product(*(range(d) for d in dims)):
            swapped = list(idx)
            swapped[a], swapped[b] = swapped[b], swapped[a]
            defect = vec_add(m.image_of_basis(*idx), m.image_of_basis(*swapped))
            if not vec_is_zero(defect):
                out.append(Violation(f"skew-{a}{b}", idx, defect))
    # adjacent-swap diagonal: a repeated entry in the skew block must map to 0
    if w.n >= 3:
        for idx in iter_product(*(range(d) for d in dims)):
            if len(set(idx[: w.n - 1])) < w.n - 1:
                img = m.image_of_basis(*idx)
                if not vec_is_zero(img):
                    # covered by the pairwise checks unless two slots repeat;
                    # report distinctly for clarity
                    if any(
                        idx[a] == idx[b] for a, b in combinations(range(w.n - 1), 2)
                    ):
                        out.append(Violation("skew-diag", idx, img))
    return make_report(out)


def validate_invariant_form(a: PreLieAlgebra, form: InvariantForm) -> ValidationReport:
    n = a.space.dim
    bas = [basis_vector(a.space, i) for i in range(n)]
    out: list[Violation] = []
    om = form.omega
    for i, j in iter_product(range(n), repeat=2):
        s = ml_apply(om, [bas[i], bas[j]])[0] + ml_apply(om, [bas[j], bas[i]])[0]
        if s != 0:
            out.append(Violation("form-skew", (i, j), (s,)))
    for i, j, k in iter_product(range(n), repeat=3):
        u, v, w = bas[i], bas[j], bas[k]
        commutator = vec_sub(ml_apply(a.mul, [u, v]), ml_apply(a.mul, [v, u]))
        s = ml_apply(om, [commutator, w])[0] + ml_apply(om, [v, ml_apply(a.mul, [u, w])])[0]
        if s != 0:
            out.append(Violation("form-invariance", (i, j, k), (s,)))
    return make_report(out)


# -- constructions -----------------------------------------------------------


def sub_adjacent(a: PreLieAlgebra) -> LieAlgebra:
    """Commutator Lie algebra of a valid pre-Lie algebra."""
    rep = validate_prelie(a)
    if not rep.ok:
        raise InvalidStructureError("sub_adjacent needs a valid pre-Lie algebra", rep)
    bracket = MultiMap.build(
        (a.space, a.space),
        a.space,
        lambda i, j: vec_sub(a.mul.image_of_basis(i, j), a.mul.image_of_basis(j, i)),
    )
    return LieAlgebra(a.space, bracket)


def left_multiplication(a: PreLieAlgebra, x: Vector) -> MultiMap:
    return MultiMap.build(
        (a.space,), a.space, lambda j: ml_apply(a.mul, [x, basis_vector(a.space, j)])
    )


def right_multiplication(a: PreLieAlgebra, x: Vector) -> MultiMap:
    return MultiMap.build(
        (a.space,), a.space, lambda j: ml_apply(a.mul, [basis_vector(a.space, j), x])
    )


def standard_reps(a: PreLieAlgebra) -> dict[str, PreLieRep]:
    """The regular representation (A; L, R) and its dual (A*; L*-R*, -R*)."""
    rep = validate_prelie(a)
    if not rep.ok:
        raise InvalidStructureError("standard_reps needs a valid pre-Lie algebra", rep)
    n = a.space.dim
    left_rho = a.mul
    left_mu = MultiMap.build(
        (a.space, a.space), a.space, lambda i, j: a.mul.image_of_basis(j, i)
    )
    dual_space = Space(n, a.space.label + "*")

    def dual_images(star_of):
        # matrix of the negative transpose of star_of(x), per basis x
        def img(i, p):
            x = basis_vector(a.space, i)
            op = star_of(a, x)
            return tuple(-op.entry(q, p) for q in range(n))

        return img

    ad_star = MultiMap.build(
        (a.space, dual_space),
        dual_space,
        lambda i, p: vec_sub(
            dual_images(left_multiplication)(i, p), dual_images(right_multiplication)(i, p)
        ),
    )
    neg_r_star = MultiMap.build(
        (a.space, dual_space),
        dual_space,
        lambda i, p: vec_neg(dual_images(right_multiplication)(i, p)),
    )
    return {
        "left": PreLieRep(a.space, left_rho, left_mu),
        "dual": PreLieRep(dual_space, ad_star, neg_r_star),
    }


def zero_rep(a: PreLieAlgebra, v: Space) -> PreLieRep:
    return PreLieRep(
        v, MultiMap.zero((a.space, v), v), MultiMap.zero((a.space, v), v)
    )


def coboundary(w: Cochain, a: PreLieAlgebra, rep: PreLieRep) -> Cochain:
    """The four-sum coboundary d: C^n -> C^(n+1)."""
    n = w.n
    if tuple(w.map.inputs) != (a.space,) * n or w.map.output != rep.space:
        raise InvalidStructureError(
            "cochain signature does not match (A, rep)", make_report([])
        )
    a_space = a.space

    def d_image(*idx: int) -> Vector:
        xs = [basis_vector(a_space, i) for i in idx]  # x_1 ... x_{n+1}
        total = zero_vector(rep.space)
        for i in range(1, n + 1):
            sign = 1 if (i + 1) % 2 == 0 else -1
            rest = xs[: i - 1] + xs[i : n + 1]  # drop x_i, keep x_{n+1} last
            term = ml_apply(rep.rho, [xs[i - 1], ml_apply(w.map, rest)])
            total = vec_add(total, term if sign > 0 else vec_neg(term))
            head = xs[: i - 1] + xs[i:n]  # x_1..x_n without x_i
            term = ml_apply(rep.mu, [xs[n], ml_apply(w.map, head + [xs[i - 1]])])
            total = vec_add(total, term if sign > 0 else vec_neg(term))
            prod = ml_apply(a.mul, [xs[i - 1], xs[n]])
            term = ml_apply(w.map, head + [prod])
            total = vec_add(total, vec_neg(term) if sign > 0 else term)
        for i, j in combinations(range(1, n + 1), 2):
            sign = 1 if (i + j) % 2 == 0 else -1
            bracket = vec_sub(
                ml_apply(a.mul, [xs[i - 1], xs[j - 1]]),
                ml_apply(a.mul, [xs[j - 1], xs[i - 1]]),
            )
            rest = [xs[k] for k in range(n + 1) if k not in (i - 1, j - 1)]
            term = ml_apply(w.map, [bracket] + rest)
            total = vec_add(total, term if sign > 0 else vec_neg(term))
        return total

    new_map = MultiMap.build((a_space,) * (n + 1), rep.space, d_image)
    return Cochain(n + 1, new_map)


def cocycle_from_form(a: PreLieAlgebra, form: InvariantForm) -> Cochain:
    """The 3-cochain phi(u,v,w) = omega(u.v - v.u, w); closed when omega is
    invariant (values in the scalar line with the trivial action)."""
    inv = validate_invariant_form(a, form)
    if not inv.ok:
        raise InvalidStructureError("form is not skew-invariant", inv)

    def phi(i, j, k):
        u, v, w = (basis_vector(a.space, t) for t in (i, j, k))
        commutator = vec_sub(ml_apply(a.mul, [u, v]), ml_apply(a.mul, [v, u]))
        return ml_apply(form.omega, [commutator, w])

    cochain = Cochain(3, MultiMap.build((a.space,) * 3, form.omega.output, phi))
    d = coboundary(cochain, a, zero_rep(a, form.omega.output))
    if not d.map.is_zero():
        raise InvalidStructureError(
            "induced 3-cochain is not closed",
            make_report([Violation("cocycle", (), (Fraction(1),))]),
        )
    return cochain


def invariant_forms(a: PreLieAlgebra) -> list[InvariantForm]:
    """Exact solve of the invariance system over the skew bilinear forms."""
    n = a.space.dim
    pairs = list(combinations(range(n), 2))  # omega(e_i, e_j) for i < j
    if not pairs:
        return []

    def omega_of(coords) -> MultiMap:
        grid = [[Fraction(0)] * n for _ in range(n)]
        for c, (i, j) in zip(coords, pairs):
            grid[i][j] = c
            grid[j][i] = -c
        return MultiMap.build(
            (a.space, a.space), SCALAR_LINE, lambda i, j: (grid[i][j],)
        )

    rows = []
    bas = [basis_vector(a.space, i) for i in range(n)]
    for i, j, k in iter_product(range(n), repeat=3):
        row = []
        for p in range(len(pairs)):
            coords = [Fraction(0)] * len(pairs)
            coords[p] = Fraction(1)
            om = omega_of(coords)
            commutator = vec_sub(
                ml_apply(a.mul, [bas[i], bas[j]]), ml_apply(a.mul, [bas[j], bas[i]])
            )
            val = (
                ml_apply(om, [commutator, bas[k]])[0]
                + ml_apply(om, [bas[j], ml_apply(a.mul, [bas[i], bas[k]])])[0]
            )
            row.append(val)
        rows.append(row)
    basis = kernel_of_rows(rows, len(pairs))
    return [InvariantForm(omega_of(coords)) for coords in basis]


def skeletal_from_form(a: PreLieAlgebra, form: InvariantForm):
    """Skeletal 2-term structure on A ⊕ k with homotopy the induced 3-cocycle."""
    from .prelie2_core import build_skeletal

    phi = cocycle_from_form(a, form)
    return build_skeletal(a, zero_rep(a, form.omega.output), phi)
