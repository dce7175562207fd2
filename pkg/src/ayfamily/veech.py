"""Derivative matrices and the genus-2 Veech-group computation.

Affine self-maps of a translation surface have globally defined
derivatives; the absolute trace sorts them into elliptic, parabolic and
pseudo-Anosov types.  For the genus-2 Arnoux-Yoccoz surface the group of
derivatives can be pinned down by hand: two lattices in Q(sqrt 5)^2 are
compared through the change-of-basis matrices M1 and M2, and membership
of an integer matrix in both stabilisers reduces to a single congruence
mod 5.  Everything here is exact; sqrt 5 is represented inside the g=2
field as 2*alpha + 1 (alpha^2 + alpha = 1 gives (2a+1)^2 = 5).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

from .numfield import Field, NFElem, field

FINITE_ORDER = "finite_order"
PARABOLIC_CYLINDER = "parabolic_cylinder"
PSEUDO_ANOSOV = "pseudo_anosov"

Scalar = NFElem | Fraction | int


@dataclass(frozen=True)
class Mat2:
    """Exact 2x2 matrix [[a, b], [c, d]] over Q or a number field."""

    a: Scalar
    b: Scalar
    c: Scalar
    d: Scalar

    @staticmethod
    def identity() -> "Mat2":
        return Mat2(Fraction(1), Fraction(0), Fraction(0), Fraction(1))

    @staticmethod
    def diagonal(x: Scalar, y: Scalar) -> "Mat2":
        return Mat2(x, x * 0, x * 0, y)

    def entries(self) -> tuple[Scalar, Scalar, Scalar, Scalar]:
        return (self.a, self.b, self.c, self.d)

    def det(self) -> Scalar:
        return self.a * self.d - self.b * self.c

    def trace(self) -> Scalar:
        return self.a + self.d

    def transpose(self) -> "Mat2":
        return Mat2(self.a, self.c, self.b, self.d)

    def __mul__(self, other: "Mat2") -> "Mat2":
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def scale(self, s: Scalar) -> "Mat2":
        return Mat2(s * self.a, s * self.b, s * self.c, s * self.d)

    def inverse(self) -> "Mat2":
        d = self.det()
        if d == 0:
            raise ZeroDivisionError("matrix is singular")
        return Mat2(self.d / d, -self.b / d, -self.c / d, self.a / d)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat2):
            return NotImplemented
        return all(x == y for x, y in zip(self.entries(), other.entries()))

    def __hash__(self) -> int:
        return hash(self.entries())


class IntMat2(NamedTuple):
    """Integer matrix [[X, Y], [Z, W]] in the quadruple convention."""

    X: int
    Y: int
    Z: int
    W: int

    def det(self) -> int:
        return self.X * self.W - self.Y * self.Z

    def to_mat2(self) -> Mat2:
        return Mat2(*(Fraction(v) for v in self))


def field2() -> Field:
    """The g=2 coefficient field Q(alpha), alpha^2 + alpha = 1."""
    return field(2)


def sqrt5() -> NFElem:
    """sqrt 5 as an element of the g=2 field: 2*alpha + 1."""
    fld = field2()
    return 2 * fld.alpha() + 1


def m1() -> Mat2:
    """Change of basis for the first lattice: [[1, -a], [a, 1]]."""
    fld = field2()
    a = fld.alpha()
    return Mat2(fld.one(), -a, a, fld.one())


def m2() -> Mat2:
    """Change of basis for the second lattice: [[a, -1], [1, a]]."""
    fld = field2()
    a = fld.alpha()
    return Mat2(a, -fld.one(), fld.one(), a)


def _sign(x: Scalar) -> int:
    if isinstance(x, NFElem):
        return x.sign()
    return (x > 0) - (x < 0)


def trace_classify(M: Mat2) -> str:
    """Dynamical type of an affine map from its derivative.

    |trace| below 2 means finite order, exactly 2 a decomposition into
    parallel cylinders, above 2 a pseudo-Anosov map.  Requires
    |det| = 1 so the trichotomy is meaningful.  +-identity also have
    |trace| = 2 but are their own inverses up to sign, hence finite
    order rather than parabolic.
    """
    d = M.det()
    if d != 1 and d != -1:
        raise ValueError("trace classification needs |det| = 1")
    if M == Mat2.identity() or M == Mat2.identity().scale(Fraction(-1)):
        return FINITE_ORDER
    t = M.trace()
    s = _sign(t * t - 4)
    if s < 0:
        return FINITE_ORDER
    if s == 0:
        return PARABOLIC_CYLINDER
    return PSEUDO_ANOSOV


def _require_det_one(m: IntMat2) -> None:
    if m.det() != 1:
        raise ValueError(f"determinant must be 1, got {m.det()}")


def conjugation_entries(m: IntMat2) -> Mat2:
    """M2^-1 M1 * m * M1^-1 M2, reduced to a rational formula.

    The conjugation moves the stabiliser of the first lattice onto the
    stabiliser of the second; the sqrt-5 parts cancel and the result has
    the closed form below with every entry a rational with denominator
    dividing 5.
    """
    _require_det_one(m)
    X, Y, Z, W = m
    return Mat2(
        Fraction(4 * X + 2 * (Y + Z) + W, 5),
        Fraction(4 * Y + 2 * (W - X) - Z, 5),
        Fraction(4 * Z + 2 * (W - X) - Y, 5),
        Fraction(4 * W - 2 * (Y + Z) + X, 5),
    )


def conjugate_via_lattices(m: IntMat2) -> Mat2:
    """The same conjugation done directly in Q(sqrt 5) (oracle form)."""
    _require_det_one(m)
    return m2().inverse() * m1() * m.to_mat2() * m1().inverse() * m2()


def in_intersection(m: IntMat2) -> bool:
    """Membership of a det-1 integer matrix in both lattice stabilisers.

    Equivalent to conjugation_entries(m) being integral, which the
    closed form turns into the single congruence
    X + 3Y + 3Z + 4W = 0 (mod 5).
    """
    _require_det_one(m)
    X, Y, Z, W = m
    return (X + 3 * Y + 3 * Z + 4 * W) % 5 == 0


def is_congruence_5(m: IntMat2) -> bool:
    """True when m is congruent to the identity modulo 5."""
    X, Y, Z, W = m
    return X % 5 == 1 and Y % 5 == 0 and Z % 5 == 0 and W % 5 == 1


def sublattice_index5() -> dict:
    """The index-5 relation between the two lattices, verified exactly.

    M1^-1 (sqrt5 M2) is the integer matrix [[2, -1], [1, 2]] of
    determinant 5, and symmetrically with the roles swapped; without the
    scaling, M1^-1 M2 is (alpha / (2 - alpha)) times that matrix, and
    the scalar is exactly 1/sqrt5 because (2*alpha + 1)*alpha = 2 - alpha.
    """
    fld = field2()
    a = fld.alpha()
    s5 = sqrt5()
    base = Mat2(
        fld.rational(2), -fld.one(), fld.one(), fld.rational(2)
    )
    first = m1().inverse() * m2().scale(s5)
    second = m2().inverse() * m1().scale(s5)
    ratio = a / (fld.rational(2) - a)
    checks = {
        "m1_inv_sqrt5_m2": first == base,
        "m2_inv_sqrt5_m1": second == base.transpose(),
        "index_matrix_det_5": base.det() == 5,
        "scalar_is_inv_sqrt5": ratio * s5 == 1,
        "unscaled_multiple": m1().inverse() * m2() == base.scale(ratio),
    }
    return {
        "ok": all(checks.values()),
        "checks": checks,
        "index_matrix": ((2, -1), (1, 2)),
        "index": 5,
    }


def det_one_matrices(bound: int) -> Iterator[IntMat2]:
    """All integer matrices with entries in [-bound, bound] and det 1."""
    rng = range(-bound, bound + 1)
    for X in rng:
        for Y in rng:
            for Z in rng:
                if X == 0:
                    if Y * Z == -1:
                        for W in rng:
                            yield IntMat2(X, Y, Z, W)
                    continue
                q, r = divmod(1 + Y * Z, X)
                if r == 0 and -bound <= q <= bound:
                    yield IntMat2(X, Y, Z, q)


@dataclass(frozen=True)
class SweepReport:
    ok: bool
    checked: int
    counterexample: IntMat2 | None


def verify_criterion_equivalence(bound: int = 10) -> SweepReport:
    """Congruence criterion vs conjugation integrality over a full sweep.

    For every det-1 matrix with entries in [-bound, bound], the mod-5
    test must agree with integrality of the conjugated matrix, and the
    rational formula must agree with the direct Q(sqrt 5) conjugation.
    """
    checked = 0
    for m in det_one_matrices(bound):
        conj = conjugation_entries(m)
        integral = all(e.denominator == 1 for e in conj.entries())
        if integral != in_intersection(m):
            return SweepReport(False, checked, m)
        if conj != conjugate_via_lattices(m):
            return SweepReport(False, checked, m)
        checked += 1
    return SweepReport(True, checked, None)


def verify_group_closure(
    sample_pairs: int = 1000, seed: int = 0, bound: int = 10
) -> SweepReport:
    """Products and inverses of members stay members (sampled).

    The intersection of two group stabilisers is a group, so the mod-5
    criterion must be stable under multiplication and inversion; the
    products may leave the sweep box, which is fine — the criterion only
    needs det 1.
    """
    members = [m for m in det_one_matrices(bound) if in_intersection(m)]
    rng = random.Random(seed)
    checked = 0
    for _ in range(sample_pairs):
        u = rng.choice(members)
        v = rng.choice(members)
        prod = IntMat2(
            u.X * v.X + u.Y * v.Z,
            u.X * v.Y + u.Y * v.W,
            u.Z * v.X + u.W * v.Z,
            u.Z * v.Y + u.W * v.W,
        )
        inv = IntMat2(u.W, -u.Y, -u.Z, u.X)
        if not (in_intersection(prod) and in_intersection(inv)):
            return SweepReport(False, checked, u)
        checked += 1
    return SweepReport(True, checked, None)
