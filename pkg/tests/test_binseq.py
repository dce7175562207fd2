from fractions import Fraction
from random import Random

import pytest

from ayfamily.binseq import (
    HALF,
    ONE_THIRD,
    TWO_THIRDS,
    ZERO,
    BinSeq,
    F_inf,
    F_inf_inv,
    NoPreimageError,
    classify_orbit,
    f_inf,
    f_inf_inv,
    ind,
    orbit_table_row,
    random_binseq,
    tm,
    verify_conjugacies,
)


def test_fraction_round_trips():
    for q in (Fraction(0), Fraction(1, 4), Fraction(3, 4), Fraction(1, 3), Fraction(5, 6), Fraction(7, 12)):
        a = BinSeq.from_fraction(q)
        assert a.to_fraction() == q
    assert BinSeq.from_fraction(Fraction(3, 4)).to_text() == "11(0)"
    assert BinSeq.from_text("0(10)").to_fraction() == Fraction(1, 3)
    # "0(10)" and "(01)" are the same sequence; canonical forms agree
    assert BinSeq.from_text("0(10)") == BinSeq.from_text("(01)")


def test_f_inf_frozen_values():
    pairs = {
        "(0)": "11(0)",      # f(0) = 3/4
        "1(0)": "001(0)",    # f(1/2) = 1/8
        "01(0)": "1(0)",     # f(1/4) = 1/2
        "11(0)": "0101(0)",  # f(3/4) = 5/16
        "001(0)": "111(0)",  # f(1/8) = 7/8
        "(01)": "10(01)",    # f(1/3) = 7/12
        "(10)": "000(01)",   # f(2/3) = 1/24
    }
    for src, dst in pairs.items():
        assert f_inf(BinSeq.from_text(src)) == BinSeq.from_text(dst)


def test_f_inf_inverse():
    for q in (Fraction(0), Fraction(1, 2), Fraction(5, 8), Fraction(1, 3), Fraction(11, 24)):
        a = BinSeq.from_fraction(q)
        assert f_inf_inv(f_inf(a)) == a
        assert f_inf(f_inf_inv(a)) == a
    rng = Random(99)
    for _ in range(20):
        a = random_binseq(rng)
        assert f_inf_inv(f_inf(a)) == a


def test_F_inf_conventions():
    assert F_inf(BinSeq.from_text("1(0)")) == ZERO       # F(1/2) = 0
    assert F_inf(ZERO) == ONE_THIRD                      # the F(0) convention
    for bad in (ONE_THIRD, TWO_THIRDS):
        with pytest.raises(NoPreimageError):
            F_inf_inv(bad)
    # away from the two gaps the inverse works
    for q in (Fraction(0), Fraction(1, 2), Fraction(3, 8), Fraction(5, 6)):
        a = BinSeq.from_fraction(q)
        assert F_inf(F_inf_inv(a)) == a


def test_classify_frozen_rows():
    rows = {
        "1(0)": ("half", 0),
        "01(0)": ("half", -1),
        "11(0)": ("zero", 1),
        "001(0)": ("half", 1),
        "111(0)": ("half", 2),
        "0001(0)": ("half", -3),
    }
    for text, (base, n) in rows.items():
        c = classify_orbit(BinSeq.from_text(text))
        assert (c.base, c.n) == (base, n), text


def test_classify_matches_iteration():
    # small brute-force table: 64 steps each way from both base points
    table = {}
    for base, start in (("zero", ZERO), ("half", HALF)):
        cur = start
        table.setdefault(cur, (base, 0))
        for n in range(1, 65):
            cur = f_inf(cur)
            table.setdefault(cur, (base, n))
        cur = start
        for n in range(1, 65):
            cur = f_inf_inv(cur)
            table.setdefault(cur, (base, -n))
    hits = 0
    for a, (base, n) in table.items():
        c = classify_orbit(a)
        assert (c.base, c.n) == (base, n)
        hits += 1
    assert hits == len(table) and hits >= 4 * 64


def test_orbit_table_row_signs():
    for text, tm_val, ind_val in (("1(0)", 1, 0), ("01(0)", 1, 1), ("11(0)", 0, 1), ("001(0)", 1, 2)):
        a = BinSeq.from_text(text)
        assert tm(a) == tm_val
        assert ind(a) == ind_val
        row = orbit_table_row(a)
        full = classify_orbit(a)
        assert row.base == full.base
        assert (row.n == 0) == (full.n == 0)
        assert row.n * full.n >= 0


def test_conjugacy_identities_sample():
    out = verify_conjugacies(500, seed=7)
    assert out["ok"] and out["counterexample"] is None
    assert out["checked"] == 2000
