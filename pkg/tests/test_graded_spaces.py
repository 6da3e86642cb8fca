from fractions import Fraction

from prelie2.fixtures import fix_b
from prelie2.graded_spaces import ChainMap, TwoTermComplex, end_algebra, is_chain_map, zero_complex
from prelie2.lie2_core import validate as validate_lie2
from prelie2.scalar_tensor import MultiMap, Space, ml_skew_in


def line_complex(dim0, dim1, dm_entries=None):
    v0, v1 = Space(dim0, "v0"), Space(dim1, "v1")
    if dm_entries is None:
        dm = MultiMap.zero((v1,), v0)
    else:
        dm = MultiMap((v1,), v0, tuple(Fraction(c) for c in dm_entries))
    return TwoTermComplex(v0, v1, dm)


def test_end_of_line_with_no_degree_one():
    e = end_algebra(line_complex(1, 0))
    assert e.lie2.g0.dim == 1
    assert e.lie2.g1.dim == 0
    assert e.lie2.l2_00.is_zero()


def test_end_of_zero_differential():
    e = end_algebra(line_complex(1, 1))
    assert e.lie2.g0.dim == 2  # gl(1) ⊕ gl(1)
    assert e.lie2.g1.dim == 1
    assert e.lie2.dk.is_zero()


def test_end_of_identity_differential():
    e = end_algebra(line_complex(1, 1, [1]))
    assert e.lie2.g0.dim == 1
    (pair,) = e.end0_pairs
    assert pair[0].coeffs == pair[1].coeffs  # A0 = A1 on the line
    # delta(phi) = (dm∘phi, phi∘dm) = (phi, phi), i.e. phi times the basis pair
    assert e.lie2.dk.coeffs == (Fraction(1),)


def test_end_validates_on_fixture_complexes():
    b = fix_b()
    for v in (
        TwoTermComplex(b.a0, b.a1, b.dm),
        line_complex(2, 1, [0, 1]),
        line_complex(3, 2, [1, 0, 0, 0, 1, 0]),
        zero_complex(Space(2, "v0"), Space(2, "v1")),
    ):
        e = end_algebra(v)
        assert validate_lie2(e.lie2).ok
        assert ml_skew_in(e.lie2.l2_00, 0, 1) or e.lie2.g0.dim < 2


def test_end_bracket_antisymmetry_and_jacobi_on_basis():
    e = end_algebra(line_complex(2, 1, [0, 1]))
    report = validate_lie2(e.lie2)
    assert report.ok


def test_chain_map_identity():
    v = line_complex(2, 1, [0, 1])
    f = ChainMap(MultiMap.identity(v.v0), MultiMap.identity(v.v1))
    assert is_chain_map(f, v, v)


def test_chain_map_zero_target():
    v = zero_complex(Space(2, "v0"), Space(1, "v1"))
    w = zero_complex(Space(2, "w0"), Space(1, "w1"))
    f = ChainMap(
        MultiMap((v.v0,), w.v0, tuple(Fraction(c) for c in (1, 2, 3, 4))),
        MultiMap.zero((v.v1,), w.v1),
    )
    assert is_chain_map(f, v, w)


def test_inclusion_commutes_with_itself():
    b = fix_b()
    v = TwoTermComplex(b.a0, b.a1, b.dm)
    f = ChainMap(MultiMap.identity(v.v0), MultiMap.identity(v.v1))
    assert is_chain_map(f, v, v)


def test_non_chain_map_detected():
    v = line_complex(1, 1, [1])
    f = ChainMap(
        MultiMap.identity(v.v0),
        MultiMap((v.v1,), v.v1, (Fraction(2),)),
    )
    assert not is_chain_map(f, v, v)
