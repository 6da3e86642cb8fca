"""Reference structures used across the test suite and the shipped corpus.

FIX-A is the 2-dimensional algebra whose first generator acts as a left
identity; FIX-B is the strict 2-term structure of its span{e2} ideal; the
omega family lives on the mirror algebra (right identity), the only
2-dimensional member carrying a nonzero skew invariant form.  The form, and
every other derived constant here, is produced by the library's own exact
solvers, not typed in by hand.
"""

from __future__ import annotations

from fractions import Fraction

from .crossed_modules import PreLieCrossedModule, ideal_crossed_module, to_strict_prelie2
from .lie2_core import from_prelie2
from .o_operators import OOperator, OOperatorContext
from .prelie_base import (
    Cochain,
    InvariantForm,
    PreLieAlgebra,
    invariant_forms,
    skeletal_from_form,
    standard_reps,
)
from .prelie2_core import PreLie2Algebra, build_skeletal
from .scalar_tensor import MultiMap, Space, parse_rational


def _tensor(inputs, output, nested) -> MultiMap:
    def flatten(node):
        if isinstance(node, (list, tuple)):
            for item in node:
                yield from flatten(item)
        else:
            yield Fraction(node) if not isinstance(node, str) else parse_rational(node)

    return MultiMap(tuple(inputs), output, tuple(flatten(nested)))


A_SPACE = Space(2, "a")


def fix_a() -> PreLieAlgebra:
    """dim 2: e1·e1 = e1, e1·e2 = e2, all other products zero."""
    mul = _tensor(
        (A_SPACE, A_SPACE),
        A_SPACE,
        [[[1, 0], [0, 1]], [[0, 0], [0, 0]]],
    )
    return PreLieAlgebra(A_SPACE, mul)


def fix_a_bad() -> PreLieAlgebra:
    """FIX-A with e2·e1 = e1 added; fails associator symmetry."""
    mul = _tensor(
        (A_SPACE, A_SPACE),
        A_SPACE,
        [[[1, 0], [0, 1]], [[1, 0], [0, 0]]],
    )
    return PreLieAlgebra(A_SPACE, mul)


def fix_b() -> PreLie2Algebra:
    """Strict structure of the ideal span{e2} inside FIX-A."""
    return to_strict_prelie2(fix_b_crossed_module())


def fix_b_crossed_module() -> PreLieCrossedModule:
    return ideal_crossed_module(fix_a(), (1,))


def omega_algebra() -> PreLieAlgebra:
    """dim 2 mirror of FIX-A: e1·e1 = e1, e2·e1 = e2 (right identity e1)."""
    mul = _tensor(
        (A_SPACE, A_SPACE),
        A_SPACE,
        [[[1, 0], [0, 0]], [[0, 1], [0, 0]]],
    )
    return PreLieAlgebra(A_SPACE, mul)


def omega_form() -> InvariantForm:
    """The skew invariant form on the mirror algebra, from the exact solve."""
    forms = invariant_forms(omega_algebra())
    if len(forms) != 1:
        raise RuntimeError(f"expected a 1-dimensional solution space, got {len(forms)}")
    return forms[0]


def fix_omega() -> PreLie2Algebra:
    """Skeletal structure on (mirror algebra) ⊕ k with the induced 3-cocycle."""
    return skeletal_from_form(omega_algebra(), omega_form())


def fix_c() -> PreLie2Algebra:
    """Skeletal: FIX-A acting on itself by left/right multiplication."""
    a = fix_a()
    rep = standard_reps(a)["left"]
    zero3 = Cochain(3, MultiMap.zero((a.space,) * 3, rep.space))
    return build_skeletal(a, rep, zero3)


def fix_d() -> PreLie2Algebra:
    """Skeletal: FIX-A acting on its dual."""
    a = fix_a()
    rep = standard_reps(a)["dual"]
    zero3 = Cochain(3, MultiMap.zero((a.space,) * 3, rep.space))
    return build_skeletal(a, rep, zero3)


def fix_e() -> PreLie2Algebra:
    """Strict structure of the ideal span{e2} inside the mirror algebra."""
    return to_strict_prelie2(ideal_crossed_module(omega_algebra(), (1,)))


def prelie2_fixtures() -> dict[str, PreLie2Algebra]:
    return {
        "FIX-B": fix_b(),
        "FIX-OMEGA": fix_omega(),
        "FIX-C": fix_c(),
        "FIX-D": fix_d(),
        "FIX-E": fix_e(),
    }


def lift_prelie(a: PreLieAlgebra) -> PreLie2Algebra:
    """A pre-Lie algebra as a 2-term structure with vanishing degree-1 part."""
    a1 = Space(0, a.space.label + "1")
    return PreLie2Algebra(
        a.space,
        a1,
        MultiMap.zero((a1,), a.space),
        a.mul,
        MultiMap.zero((a.space, a1), a1),
        MultiMap.zero((a1, a.space), a1),
        MultiMap.zero((a.space, a.space, a.space), a1),
    )


# -- O-operator fixtures -------------------------------------------------------


def fix_b_context() -> OOperatorContext:
    g, rep = from_prelie2(fix_b())
    return OOperatorContext(g, rep)


def o_identity(ctx: OOperatorContext) -> OOperator:
    v, g = ctx.complex, ctx.algebra
    return OOperator(
        ctx,
        MultiMap(
            (v.v0,), g.g0, MultiMap.identity(v.v0).coeffs
        ),
        MultiMap((v.v1,), g.g1, MultiMap.identity(v.v1).coeffs),
        MultiMap.zero((v.v0, v.v0), g.g1),
    )


def o_nontrivial() -> OOperator:
    """Frozen from the exhaustive coefficient search on the FIX-B context:
    T0 = [[1,1],[0,0]] (so T0 e1 = e1 + e2, T0 e2 = 0), T1 = 0, T2 = 0."""
    ctx = fix_b_context()
    v, g = ctx.complex, ctx.algebra
    t0 = _tensor((v.v0,), g.g0, [[1, 1], [0, 0]])
    t1 = MultiMap.zero((v.v1,), g.g1)
    t2 = MultiMap.zero((v.v0, v.v0), g.g1)
    return OOperator(ctx, t0, t1, t2)


def o_negative_scaled() -> OOperator:
    """T0 = 2·id against T1 = id: breaks the chain-map clause."""
    ctx = fix_b_context()
    v, g = ctx.complex, ctx.algebra
    t0 = MultiMap.identity(v.v0).scaled(Fraction(2))
    return OOperator(
        ctx,
        MultiMap((v.v0,), g.g0, t0.coeffs),
        MultiMap((v.v1,), g.g1, MultiMap.identity(v.v1).coeffs),
        MultiMap.zero((v.v0, v.v0), g.g1),
    )


def o_negative_lower() -> OOperator:
    """A lower-triangular T0 with T1 = id; also chain-incompatible."""
    ctx = fix_b_context()
    v, g = ctx.complex, ctx.algebra
    t0 = _tensor((v.v0,), g.g0, [[1, 0], [1, 1]])
    return OOperator(
        ctx,
        t0,
        MultiMap((v.v1,), g.g1, MultiMap.identity(v.v1).coeffs),
        MultiMap.zero((v.v0, v.v0), g.g1),
    )
