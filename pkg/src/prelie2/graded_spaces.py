"""2-term complexes, chain maps, and the strict endomorphism 2-algebra.

The degree-0 endomorphisms of a complex V1 -> V0 are the chain-commuting
pairs (A0, A1); a concrete basis is computed by solving the commuting
condition exactly, so downstream tensors over End are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product

from .scalar_tensor import (
    MultiMap,
    Space,
    Vector,
    kernel_of_rows,
    ml_compose_linear,
    solve_in_span,
)


@dataclass(frozen=True)
class TwoTermComplex:
    v0: Space
    v1: Space
    dm: MultiMap  # v1 -> v0

    def __post_init__(self):
        if self.dm.inputs != (self.v1,) or self.dm.output != self.v0:
            raise ValueError("differential must map V1 to V0")


@dataclass(frozen=True)
class ChainMap:
    f0: MultiMap  # v0 -> v0'
    f1: MultiMap  # v1 -> v1'


def zero_complex(v0: Space, v1: Space) -> TwoTermComplex:
    return TwoTermComplex(v0, v1, MultiMap.zero((v1,), v0))


def is_chain_map(f: ChainMap, src: TwoTermComplex, dst: TwoTermComplex) -> bool:
    return ml_compose_linear(f.f0, src.dm) == ml_compose_linear(dst.dm, f.f1)


@dataclass(frozen=True)
class EndAlgebra:
    """End(V) with its computed degree-0 basis and embedding data."""

    complex: TwoTermComplex
    lie2: "object"  # Lie2Algebra; typed loosely to avoid an import cycle
    end0_pairs: tuple[tuple[MultiMap, MultiMap], ...]

    def end0_coordinates(self, a0: MultiMap, a1: MultiMap) -> Vector | None:
        """Express a chain-commuting pair in the End0 basis, or None."""
        target = _flatten_pair(self.complex, a0, a1)
        vectors = [_flatten_pair(self.complex, p0, p1) for p0, p1 in self.end0_pairs]
        return solve_in_span(vectors, target)

    def end1_coordinates(self, phi: MultiMap) -> Vector:
        """Hom(V0, V1) in the standard basis, row-major over (V0, V1)."""
        n0, n1 = self.complex.v0.dim, self.complex.v1.dim
        return tuple(phi.entry(i, j) for i in range(n0) for j in range(n1))


def _flatten_pair(v: TwoTermComplex, a0: MultiMap, a1: MultiMap) -> Vector:
    return tuple(a0.coeffs) + tuple(a1.coeffs)


def end_algebra(v: TwoTermComplex) -> EndAlgebra:
    """The strict 2-algebra of endomorphisms of a 2-term complex.

    Degree 0 is the chain-commuting pairs with basis from an exact kernel
    computation, degree 1 is Hom(V0, V1), the differential is
    phi -> (dm∘phi, phi∘dm) and the bracket the graded commutator.
    """
    from fractions import Fraction

    from .lie2_core import Lie2Algebra

    n0, n1 = v.v0.dim, v.v1.dim
    nvars = n0 * n0 + n1 * n1
    # rows: (A0 ∘ dm)(f_p) = (dm ∘ A1)(f_p), component e_q
    rows = []
    for p, q in iter_product(range(n1), range(n0)):
        row = [Fraction(0)] * nvars
        for i in range(n0):
            row[i * n0 + q] += v.dm.entry(p, i)  # A0[i][q] * dm[p][i]
        for r in range(n1):
            row[n0 * n0 + p * n1 + r] -= v.dm.entry(r, q)  # A1[p][r] * dm[r][q]
        rows.append(row)
    if rows:
        kernel = kernel_of_rows(rows, nvars)
    else:
        kernel = [
            tuple(Fraction(1) if t == s else Fraction(0) for t in range(nvars))
            for s in range(nvars)
        ]

    def unflatten(vec: Vector) -> tuple[MultiMap, MultiMap]:
        a0 = MultiMap((v.v0,), v.v0, tuple(vec[: n0 * n0]))
        a1 = MultiMap((v.v1,), v.v1, tuple(vec[n0 * n0 :]))
        return a0, a1

    pairs = tuple(unflatten(vec) for vec in kernel)
    g0 = Space(len(pairs), f"End0({v.v1.label}->{v.v0.label})")
    g1 = Space(n0 * n1, f"End1({v.v0.label}->{v.v1.label})")

    def end1_map(t: int) -> MultiMap:
        coords = tuple(
            Fraction(1) if s == t else Fraction(0) for s in range(n0 * n1)
        )
        return MultiMap.build(
            (v.v0,), v.v1, lambda i: tuple(coords[i * n1 + j] for j in range(n1))
        )

    end1_maps = [end1_map(t) for t in range(n0 * n1)]
    flat_pairs = [_flatten_pair(v, p0, p1) for p0, p1 in pairs]

    def coords_of_pair(a0: MultiMap, a1: MultiMap) -> Vector:
        coords = solve_in_span(flat_pairs, _flatten_pair(v, a0, a1))
        if coords is None:
            raise ValueError("element does not lie in End0")
        return coords

    def dk_img(t: int) -> Vector:
        phi = end1_maps[t]
        return coords_of_pair(ml_compose_linear(v.dm, phi), ml_compose_linear(phi, v.dm))

    dk = MultiMap.build((g1,), g0, dk_img)

    def comm(f: MultiMap, g: MultiMap) -> MultiMap:
        return ml_compose_linear(f, g) - ml_compose_linear(g, f)

    def l2_00_img(s: int, t: int) -> Vector:
        (a0, a1), (b0, b1) = pairs[s], pairs[t]
        return coords_of_pair(comm(a0, b0), comm(a1, b1))

    l2_00 = MultiMap.build((g0, g0), g0, l2_00_img) if pairs else MultiMap.zero((g0, g0), g0)

    def l2_01_img(s: int, t: int) -> Vector:
        a0, a1 = pairs[s]
        phi = end1_maps[t]
        bracket = ml_compose_linear(a1, phi) - ml_compose_linear(phi, a0)
        return tuple(bracket.entry(i, j) for i in range(n0) for j in range(n1))

    l2_01 = MultiMap.build((g0, g1), g1, l2_01_img)
    l3 = MultiMap.zero((g0, g0, g0), g1)
    lie2 = Lie2Algebra(g0, g1, dk, l2_00, l2_01, l3)
    return EndAlgebra(v, lie2, pairs)
