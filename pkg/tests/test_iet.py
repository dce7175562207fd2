from fractions import Fraction

import pytest

from ayfamily.iet import (
    IntervalExchange,
    build_f_g,
    build_h_g,
    conjugate,
    first_return,
    half_rotation,
    iet_compose,
    iet_equal,
    iet_inverse,
    rotation,
)
from ayfamily.numfield import field


def test_rotation_orbit():
    T = rotation(Fraction(1), Fraction(1, 3))
    xs = T.orbit(Fraction(0), 3)
    assert xs == [Fraction(0), Fraction(1, 3), Fraction(2, 3), Fraction(0)]
    assert T.is_bijection()


def test_canonical_merge():
    # equal shifts on adjacent pieces collapse to one piece
    T = IntervalExchange(Fraction(1), [(Fraction(0), Fraction(0)), (Fraction(1, 2), Fraction(0))])
    assert T.piece_count() == 1
    U = rotation(Fraction(1), Fraction(1, 4))
    assert iet_equal(T, iet_compose(U, iet_inverse(U)))


def test_inverse_and_compose():
    T = rotation(Fraction(1), Fraction(2, 7))
    assert iet_equal(iet_compose(T, iet_inverse(T)), IntervalExchange(Fraction(1), [(Fraction(0), Fraction(0))]))
    x = Fraction(3, 11)
    assert iet_inverse(T)(T(x)) == x


def test_first_return_quarter_rotation():
    # return of x -> x + 1/4 to [0, 1/2) is the quarter rotation of the half interval
    T = rotation(Fraction(1), Fraction(1, 4))
    R = first_return(T, Fraction(1, 2))
    expected = IntervalExchange(
        Fraction(1, 2),
        [(Fraction(0), Fraction(1, 4)), (Fraction(1, 4), Fraction(-1, 4))],
    )
    assert iet_equal(R, expected)


def test_f3_frozen_table():
    f = build_f_g(3)
    assert f.piece_count() == 7
    lefts = [v.coeff_strings() for v in f.lefts]
    shifts = [v.coeff_strings() for v in f.shifts]
    assert lefts == [
        ["0", "0", "0"],
        ["1/2", "-1/2", "0"],
        ["0", "1/2", "0"],
        ["0", "1", "0"],
        ["0", "1", "1/2"],
        ["0", "1", "1"],
        ["1/2", "1/2", "1/2"],
    ]
    assert shifts == [
        ["1/2", "1/2", "0"],
        ["-1/2", "1/2", "0"],
        ["1/2", "-1/2", "0"],
        ["-1/2", "0", "1/2"],
        ["-1/2", "0", "-1/2"],
        ["0", "-1/2", "-1/2"],
        ["-1", "1/2", "1/2"],
    ]


def test_f_g_structure():
    for g in range(2, 7):
        fld = field(g)
        a = fld.alpha()
        f = build_f_g(g)
        assert f.piece_count() == 2 * g + 1
        assert f.is_bijection()
        # left endpoint maps to the midpoint of the right half
        assert f(fld.zero()) == (1 + a) / 2
        # block left endpoints move by a^i/2 - 1/2
        x = fld.zero()
        for i in range(1, g):
            x = x + a ** i
            assert f(x) == x + a ** (i + 1) / 2 - Fraction(1, 2)


def test_f1_requires_flag():
    with pytest.raises(ValueError):
        build_f_g(1)
    r = build_f_g(1, allow_degenerate=True)
    assert iet_equal(r, half_rotation(Fraction(1)))


def test_involution_g3():
    f = build_f_g(3)
    r = half_rotation(f.length)
    assert iet_equal(iet_compose(r, iet_compose(f, r)), iet_inverse(f))


def test_self_similarity_g3():
    g = 3
    f = build_f_g(g)
    h = build_h_g(g)
    a = field(g).alpha()
    assert iet_equal(first_return(f, a), conjugate(f, h))


def test_json_round_trip():
    f = build_f_g(4)
    again = IntervalExchange.from_json(f.to_json())
    assert iet_equal(f, again)
