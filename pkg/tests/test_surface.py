from fractions import Fraction

import pytest

from ayfamily.iet import IntervalExchange, iet_equal
from ayfamily.surface import (
    Pt,
    SurfaceComplex,
    first_return_iet,
    saddle_connections_up_to,
    trace,
)


def square_torus() -> SurfaceComplex:
    o, e1, e2, c = Pt(Fraction(0), Fraction(0)), Pt(Fraction(1), Fraction(0)), Pt(Fraction(0), Fraction(1)), Pt(Fraction(1), Fraction(1))
    triangles = [(o, e1, c), (o, c, e2)]
    gluings = {
        (0, 2): (1, 0),  # shared diagonal
        (0, 0): (1, 1),  # bottom to top
        (0, 1): (1, 2),  # right to left
    }
    gluings.update({v: k for k, v in gluings.items()})
    return SurfaceComplex(triangles, gluings)


def test_torus_structure():
    S = square_torus()
    assert S.validate().ok
    comp = S.euler_genus()
    assert (comp.chi, comp.genus) == (0, 1)
    assert len(S.vertex_classes) == 1
    assert S.cone_windings() == {0: 1}
    assert S.area() == 1


def test_validate_catches_clockwise_triangle():
    o, e1, e2 = Pt(Fraction(0), Fraction(0)), Pt(Fraction(1), Fraction(0)), Pt(Fraction(0), Fraction(1))
    S = SurfaceComplex([(o, e2, e1)], {(0, i): (0, i) for i in range(3)})
    report = S.validate()
    assert not report.ok
    assert any("clockwise" in p for p in report.problems)


def test_validate_catches_shift_mismatch():
    # bottom glued to the right edge: same length but not a translation
    o, e1, e2, c = Pt(Fraction(0), Fraction(0)), Pt(Fraction(1), Fraction(0)), Pt(Fraction(0), Fraction(1)), Pt(Fraction(1), Fraction(1))
    gluings = {
        (0, 2): (1, 0),
        (0, 0): (0, 1),
        (1, 1): (1, 2),
    }
    gluings.update({v: k for k, v in gluings.items()})
    S = SurfaceComplex([(o, e1, c), (o, c, e2)], gluings)
    assert not S.validate().ok


def test_trace_vertical_on_torus():
    S = square_torus()
    section = [(0, 0)]
    res = trace(S, 0, Pt(Fraction(1, 3), Fraction(0)), Pt(Fraction(0), Fraction(1)), budget=100, section=section)
    assert res.kind == "returns_to_section"
    assert res.param_length == 1
    assert res.end_point == Pt(Fraction(1, 3), Fraction(0))


def test_trace_diagonal_and_budget():
    S = square_torus()
    section = [(0, 0)]
    res = trace(S, 0, Pt(Fraction(1, 3), Fraction(0)), Pt(Fraction(1), Fraction(1)), budget=100, section=section)
    assert res.kind == "returns_to_section"
    assert res.param_length == 1
    short = trace(S, 0, Pt(Fraction(1, 3), Fraction(0)), Pt(Fraction(1), Fraction(2)), budget=1)
    assert short.kind == "exceeds_budget"


def test_first_return_identity_on_torus():
    S = square_torus()
    ret = first_return_iet(S, [(0, 0)])
    assert iet_equal(ret, IntervalExchange(Fraction(1), [(Fraction(0), Fraction(0))]))


def test_saddle_connections_on_torus():
    # no singularities: connections join the marked point to itself
    S = square_torus()
    conns = saddle_connections_up_to(S, 1)
    vectors = sorted((c.vector.x, c.vector.y) for c in conns)
    assert vectors == [(-1, 0), (0, -1), (0, 1), (1, 0)]


def test_saddle_cutoff_modes():
    S = square_torus()
    with pytest.raises(ValueError):
        saddle_connections_up_to(S)
    with pytest.raises(ValueError):
        saddle_connections_up_to(S, 1, norm2_max=Fraction(1))
    by_norm = saddle_connections_up_to(S, norm2_max=Fraction(2))
    assert sorted((c.vector.x, c.vector.y) for c in by_norm if c.via == "edge").count((1, 1)) == 1
