from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prelie2.fixtures import fix_a
from prelie2.scalar_tensor import (
    DimensionMismatch,
    MultiMap,
    RationalFormatError,
    Space,
    basis_vector,
    format_rational,
    invert_linear,
    ml_apply,
    ml_compose_linear,
    ml_skew_in,
    nullspace,
    parse_rational,
    solve_in_span,
    vec_add,
    vec_scale,
)

rationals = st.fractions(
    min_value=-20, max_value=20, max_denominator=12
)


def test_parse_and_format_round_trip():
    for text in ("3", "-7", "5/3", "-10/4", "0"):
        q = parse_rational(text)
        assert q.denominator > 0
        assert parse_rational(format_rational(q)) == q


def test_parse_rejects_garbage():
    for text in ("1/0", "a/b", "1.5", "", "1/2/3", "--3"):
        with pytest.raises(RationalFormatError):
            parse_rational(text)


@given(num=st.integers(-400, 400), den=st.integers(1, 60))
def test_rational_canonical_form_is_unique(num, den):
    from math import gcd

    q = Fraction(num, den)
    assert q.denominator > 0
    assert gcd(abs(q.numerator), q.denominator) == 1
    # equality of values is equality of the canonical fields
    q2 = Fraction(2 * num, 2 * den)
    assert (q2.numerator, q2.denominator) == (q.numerator, q.denominator)


def test_zero_map_applied_is_zero():
    s = Space(3, "s")
    m = MultiMap.zero((s, s), s)
    args = [(Fraction(1), Fraction(2), Fraction(-5))] * 2
    assert ml_apply(m, args) == (Fraction(0),) * 3


def test_identity_applies_as_identity():
    s = Space(2, "s")
    m = MultiMap.identity(s)
    v = (Fraction(3), Fraction(-5))
    assert ml_apply(m, [v]) == v


def test_fix_a_product_lookup():
    a = fix_a()
    e1 = basis_vector(a.space, 0)
    e2 = basis_vector(a.space, 1)
    # direct table lookup cross-checked by brute-force basis expansion
    assert ml_apply(a.mul, [e1, e2]) == e2
    brute = tuple(
        sum(
            (e1[i] * e2[j] * a.mul.entry(i, j, k) for i in range(2) for j in range(2)),
            Fraction(0),
        )
        for k in range(2)
    )
    assert brute == e2


def test_apply_rejects_wrong_slot():
    s = Space(2, "s")
    m = MultiMap.zero((s, s), s)
    with pytest.raises(DimensionMismatch) as exc:
        ml_apply(m, [(Fraction(1), Fraction(0)), (Fraction(1),)])
    assert exc.value.slot == 1


@settings(max_examples=40)
@given(
    coeffs=st.lists(rationals, min_size=8, max_size=8),
    x=st.lists(rationals, min_size=2, max_size=2),
    y=st.lists(rationals, min_size=2, max_size=2),
    a=rationals,
    b=rationals,
)
def test_ml_apply_is_linear_in_each_slot(coeffs, x, y, a, b):
    s = Space(2, "s")
    m = MultiMap((s, s), s, tuple(coeffs))
    w = (Fraction(2), Fraction(-3))
    combo = vec_add(vec_scale(a, tuple(x)), vec_scale(b, tuple(y)))
    lhs = ml_apply(m, [combo, w])
    rhs = vec_add(
        vec_scale(a, ml_apply(m, [tuple(x), w])),
        vec_scale(b, ml_apply(m, [tuple(y), w])),
    )
    assert lhs == rhs
    lhs = ml_apply(m, [w, combo])
    rhs = vec_add(
        vec_scale(a, ml_apply(m, [w, tuple(x)])),
        vec_scale(b, ml_apply(m, [w, tuple(y)])),
    )
    assert lhs == rhs


def test_compose_identity_and_zero():
    s = Space(2, "s")
    g = MultiMap(
        (s,), s, tuple(Fraction(k) for k in (1, 2, 3, 4))
    )
    assert ml_compose_linear(MultiMap.identity(s), g) == g
    assert ml_compose_linear(MultiMap.zero((s,), s), g).is_zero()


def test_compose_matches_schoolbook_product(rng):
    s = Space(2, "s")

    def rand_map():
        return MultiMap(
            (s,),
            s,
            tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)),
        )

    for _ in range(10):
        f, g = rand_map(), rand_map()
        fg = ml_compose_linear(f, g)
        for i in range(2):
            for k in range(2):
                # schoolbook sum over the middle index
                expected = sum(
                    (g.entry(i, j) * f.entry(j, k) for j in range(2)), Fraction(0)
                )
                assert fg.entry(i, k) == expected
            # and the same composite via two applications
            via_apply = ml_apply(f, [ml_apply(g, [basis_vector(s, i)])])
            assert fg.image_of_basis(i) == via_apply


def test_skew_detection():
    s = Space(2, "s")
    skew = MultiMap(
        (s, s), s, tuple(Fraction(c) for c in (0, 0, 0, 1, 0, -1, 0, 0))
    )
    assert ml_skew_in(skew, 0, 1)
    sym = MultiMap(
        (s, s), s, tuple(Fraction(c) for c in (1, 0, 0, 1, 0, 1, 0, 0))
    )
    assert not ml_skew_in(sym, 0, 1)
    with pytest.raises(ValueError):
        ml_skew_in(skew, 0, 2)


def test_skew_of_commutator_bracket():
    from prelie2.lie2_core import from_prelie2
    from prelie2.fixtures import fix_b

    g, _ = from_prelie2(fix_b())
    assert ml_skew_in(g.l2_00, 0, 1)


def test_nullspace_identity_and_zero():
    s = Space(3, "s")
    assert nullspace(MultiMap.identity(s)) == []
    basis = nullspace(MultiMap.zero((s,), s))
    assert len(basis) == 3
    assert basis == [basis_vector(s, i) for i in range(3)]


def test_nullspace_hand_example():
    # map sending x to (x1 + x2, 0): kernel spanned by (1, -1) up to scale
    s = Space(2, "s")
    f = MultiMap(
        (s,), s, (Fraction(1), Fraction(0), Fraction(1), Fraction(0))
    )
    basis = nullspace(f)
    assert len(basis) == 1
    (v,) = basis
    assert v[0] * Fraction(-1) == v[1] and v != (Fraction(0),) * 2
    assert ml_apply(f, [v]) == (Fraction(0),) * 2


def test_nullspace_vectors_annihilate_and_count(rng):
    s = Space(4, "s")
    for _ in range(8):
        f = MultiMap(
            (s,),
            s,
            tuple(
                Fraction(rng.randint(-2, 2)) for _ in range(16)
            ),
        )
        basis = nullspace(f)
        for v in basis:
            assert ml_apply(f, [v]) == (Fraction(0),) * 4
        rank = 4 - len(basis)
        image = [f.image_of_basis(i) for i in range(4)]
        # rank from an independent pivot count on the image vectors
        from prelie2.scalar_tensor import kernel_of_rows

        indep = 4 - len(kernel_of_rows([list(row) for row in zip(*image)], 4))
        assert rank == indep


def test_solve_and_invert():
    s = Space(2, "s")
    f = MultiMap((s,), s, (Fraction(2), Fraction(1), Fraction(0), Fraction(1)))
    inv = invert_linear(f)
    assert inv is not None
    assert ml_compose_linear(inv, f) == MultiMap.identity(s)
    singular = MultiMap((s,), s, (Fraction(1), Fraction(1), Fraction(1), Fraction(1)))
    assert invert_linear(singular) is None
    coords = solve_in_span([(Fraction(1), Fraction(1))], (Fraction(3), Fraction(3)))
    assert coords == (Fraction(3),)
    assert solve_in_span([(Fraction(1), Fraction(1))], (Fraction(1), Fraction(0))) is None
