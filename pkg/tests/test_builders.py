from fractions import Fraction

import pytest

from ayfamily.builders import (
    bottom_section,
    build_f_hat,
    build_limit_truncation,
    build_staircase,
    build_triangulation,
    f2_reducibility_witness,
    limit_vertex,
    psi_derivative,
    rho_derivative,
    slit_lengths,
    staircase_spec,
    triangle_vertices,
    truncation_end_report,
    truncation_modified_slots,
    verify_psi,
    verify_rho,
    vertex_convergence_check,
)
from ayfamily.iet import build_f_g, half_rotation, iet_equal
from ayfamily.numfield import field
from ayfamily.surface import Pt, first_return_iet


def test_staircase_spec_frozen_g3():
    spec = staircase_spec(3)
    assert spec.area.coeff_strings() == ["-1", "4", "-1"]
    assert [s.coeff_strings() for s in spec.slit_heights] == [
        ["1/2", "0", "1/2"],
        ["1/2", "0", "-1/2"],
        ["-1/2", "1", "1/2"],
    ]
    assert [s.coeff_strings() for s in spec.slit_xs] == [
        ["0", "1/2", "1/2"],
        ["-1/2", "1", "1/2"],
        ["1/2", "1/2", "0"],
    ]
    assert [s.coeff_strings() for s in spec.step_tops] == [
        ["1", "0", "0"],
        ["0", "1", "1"],
        ["0", "1", "0"],
    ]


def test_slit_lengths_uniform_law():
    for g in (2, 3, 5):
        fld = field(g)
        a = fld.alpha()
        sig = slit_lengths(g)
        assert len(sig) == g
        for i, s in enumerate(sig, start=1):
            assert s == a ** (i + 1) / (1 - a)
        # the last height is (2a-1)/(1-a), the slit closing identity
        assert sig[-1] == (2 * a - 1) / (1 - a)


def test_staircase_g3():
    S = build_staircase(3)
    assert S.validate().ok
    comp = S.euler_genus()
    assert (comp.chi, comp.genus) == (-4, 3)
    windings = sorted(S.cone_windings().values())
    assert windings.count(3) == 2 and set(windings) == {1, 3}
    assert S.area() == staircase_spec(3).area
    section = bottom_section(S)
    assert len(section) == 12
    assert iet_equal(first_return_iet(S, section), build_f_g(3))


def test_staircase_g1_torus():
    S = build_staircase(1)
    comp = S.euler_genus()
    assert comp.genus == 1
    assert S.area() == 1
    assert iet_equal(first_return_iet(S, bottom_section(S)), half_rotation(Fraction(1)))


def test_staircase_g2_splits():
    S = build_staircase(2)
    comps = S.components()
    assert [c.genus for c in comps] == [1, 1]
    assert sorted(len(c.triangles) for c in comps) == [12, 12]
    assert iet_equal(first_return_iet(S, bottom_section(S)), build_f_g(2))


def test_f2_reducibility_witness():
    report = f2_reducibility_witness()
    assert report.ok, report.checks
    names = [name for name, _ in report.checks]
    assert "arc-invariant" in names and "arc-restriction-is-rotation" in names


def test_triangulation_vertices_frozen_g3():
    P, Q = triangle_vertices(3)
    assert (P[0].x.coeff_strings(), P[0].y.coeff_strings()) == (["0", "1/2", "1/2"], ["1/2", "0", "1/2"])
    assert (Q[0].x.coeff_strings(), Q[0].y.coeff_strings()) == (["-1/2", "1/2", "1/2"], ["0", "1", "0"])
    assert (P[1].x.coeff_strings(), P[1].y.coeff_strings()) == (["-1/2", "1/2", "0"], ["1/2", "1", "-1/2"])
    assert (Q[3].x.coeff_strings(), Q[3].y.coeff_strings()) == (["1/2", "1/2", "1/2"], ["0", "1", "0"])
    # Q_g sits at height alpha exactly
    a = field(3).alpha()
    assert Q[3].y == a


def test_triangulation_g3():
    S = build_triangulation(3)
    assert len(S.triangles) == 12
    assert S.validate().ok
    comp = S.euler_genus()
    assert (comp.chi, comp.genus) == (-4, 3)
    assert sorted(S.cone_windings().values()) == [3, 3]
    assert S.area() == staircase_spec(3).area
    # first seam: T_1 edge 2 meets T'_g edge 2
    assert S.gluings[(0, 2)] == (8, 2)


def test_triangulation_matches_staircase_area():
    for g in (4, 5):
        assert build_triangulation(g).area() == staircase_spec(g).area


def test_verify_maps():
    psi = verify_psi(3)
    assert psi.ok, psi.checks
    rho = verify_rho(3)
    assert rho.ok, rho.checks
    (d00, d01), (d10, d11) = psi_derivative(3)
    a = field(3).alpha()
    assert d00 == 1 / a and d11 == a and d01 == d10 == 0
    (r00, _), (_, r11) = rho_derivative(3)
    assert (r00, r11) == (1, -1)


def test_f_hat_frozen_n2():
    fh = build_f_hat(2)
    assert fh.piece_count() == 6
    assert [Fraction(v) for v in fh.lefts] == [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(5, 8), Fraction(3, 4), Fraction(7, 8)]
    assert [Fraction(v) for v in fh.shifts] == [Fraction(3, 4), Fraction(1, 4), Fraction(-3, 8), Fraction(-5, 8), Fraction(-3, 8), Fraction(-5, 8)]


def test_limit_truncation_small():
    for N in (1, 2, 3):
        S = build_limit_truncation(N)
        assert S.validate().ok
        comp = S.euler_genus()
        assert comp.genus == 2 * N + 1
        assert S.area() == 1
        assert len(S.triangles) == len(set(t for t, _ in S.gluings))
        assert iet_equal(first_return_iet(S, bottom_section(S)), build_f_hat(N))
        big = [w for w in S.cone_windings().values() if w != 1]
        assert big == [2 * N + 1, 2 * N + 1]


def test_truncation_modified_slots_localized():
    S = build_limit_truncation(2)
    marked = truncation_modified_slots(S, 2)
    assert len(marked) == 8
    # marks are closed under the gluing involution
    assert all(S.gluings[s] in marked for s in marked)


def test_truncation_end_report():
    for N in (1, 2, 4, 6):
        rep = truncation_end_report(N)
        assert rep["within_bound"], rep
        assert rep["radius_bound"] == Fraction(2, 2 ** N)
        assert rep["end_components"] == 1


def test_limit_vertex_table():
    assert limit_vertex("P0") == Pt(Fraction(1, 2), Fraction(1, 2))
    assert limit_vertex("Q0") == Pt(Fraction(0), Fraction(1, 2))
    assert limit_vertex("P1") == Pt(Fraction(0), Fraction(3, 4))
    assert limit_vertex("P2") == Pt(Fraction(1, 2), Fraction(1))
    assert limit_vertex("P3") == Pt(Fraction(3, 4), Fraction(1))
    assert limit_vertex("Q1") == Pt(Fraction(1, 4), Fraction(1))
    assert limit_vertex("Q2") == Pt(Fraction(5, 8), Fraction(1))


def test_vertex_convergence_small():
    rep = vertex_convergence_check(7)
    assert rep.ok
    assert rep.max_monotone
    assert all(row.ok for row in rep.rows)
    assert {row.g for row in rep.rows} == {4, 5, 6, 7}


def test_staircase_rejects_genus_zero():
    with pytest.raises(ValueError):
        build_staircase(0)
    with pytest.raises(ValueError):
        build_triangulation(2)
