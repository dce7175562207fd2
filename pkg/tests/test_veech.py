from fractions import Fraction

import pytest

from ayfamily.numfield import field
from ayfamily.veech import (
    IntMat2,
    Mat2,
    conjugate_via_lattices,
    conjugation_entries,
    det_one_matrices,
    in_intersection,
    is_congruence_5,
    m1,
    m2,
    sqrt5,
    sublattice_index5,
    trace_classify,
    verify_criterion_equivalence,
    verify_group_closure,
)


def test_sqrt5_squares_to_five():
    assert sqrt5() * sqrt5() == 5
    assert sqrt5().sign() == 1


def test_trace_classification():
    assert trace_classify(Mat2.identity()) == "finite_order"
    assert trace_classify(Mat2.identity().scale(Fraction(-1))) == "finite_order"
    rot90 = Mat2(Fraction(0), Fraction(-1), Fraction(1), Fraction(0))
    assert trace_classify(rot90) == "finite_order"
    shear = Mat2(Fraction(1), Fraction(1), Fraction(0), Fraction(1))
    assert trace_classify(shear) == "parabolic_cylinder"
    stretch = Mat2.diagonal(Fraction(2), Fraction(1, 2))
    assert trace_classify(stretch) == "pseudo_anosov"
    assert stretch.trace() == Fraction(5, 2)
    a = field(3).alpha()
    assert trace_classify(Mat2.diagonal(1 / a, a)) == "pseudo_anosov"
    with pytest.raises(ValueError):
        trace_classify(Mat2.diagonal(Fraction(2), Fraction(1)))


def test_conjugation_entries_frozen():
    assert conjugation_entries(IntMat2(1, 0, 0, 1)) == Mat2.identity()
    c = conjugation_entries(IntMat2(1, 1, 0, 1))
    assert c.entries() == (Fraction(7, 5), Fraction(4, 5), Fraction(-1, 5), Fraction(3, 5))
    c5 = conjugation_entries(IntMat2(1, 5, 0, 1))
    assert all(e.denominator == 1 for e in c5.entries())
    with pytest.raises(ValueError):
        conjugation_entries(IntMat2(2, 0, 0, 1))


def test_conjugation_matches_direct_oracle():
    for m in (IntMat2(1, 0, 0, 1), IntMat2(1, 5, 0, 1), IntMat2(2, 1, 1, 1), IntMat2(0, -1, 1, 7)):
        assert conjugation_entries(m) == conjugate_via_lattices(m)


def test_in_intersection_examples():
    assert in_intersection(IntMat2(1, 0, 0, 1))
    assert in_intersection(IntMat2(1, 5, 0, 1))
    assert in_intersection(IntMat2(1, 0, 5, 1))
    assert not in_intersection(IntMat2(1, 1, 0, 1))


def test_lattice_generators():
    a = field(2).alpha()
    assert m1().det() == 1 + a * a
    assert m2().det() == 1 + a * a
    assert m1().inverse() * m1() == Mat2.identity()


def test_sublattice_index5():
    report = sublattice_index5()
    assert report["ok"], report["checks"]
    assert report["index"] == 5
    assert report["index_matrix"] == ((2, -1), (1, 2))


def test_det_one_enumeration():
    found = list(det_one_matrices(2))
    assert all(m.det() == 1 for m in found)
    assert IntMat2(1, 0, 0, 1) in found
    assert IntMat2(0, -1, 1, 0) in found
    assert len(found) == len(set(found))


def test_criterion_equivalence_small_sweep():
    report = verify_criterion_equivalence(4)
    assert report.ok and report.counterexample is None
    assert report.checked > 100


def test_group_closure_sampled():
    report = verify_group_closure(sample_pairs=300, seed=11, bound=6)
    assert report.ok


def test_congruence_5_members_pass():
    members = [m for m in det_one_matrices(10) if is_congruence_5(m)]
    assert IntMat2(1, 5, 0, 1) in members
    assert IntMat2(1, 0, 5, 1) in members
    assert members and all(in_intersection(m) for m in members)
