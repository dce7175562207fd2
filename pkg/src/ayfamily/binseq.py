"""Symbolic dynamics of the infinite-genus interval exchange, exactly.

Points of [0, 1) are identified with binary digit sequences a_0 a_1 a_2 ...
that do not terminate in all 1s; eventually periodic sequences (the
rational points) are stored exactly as a preperiod word plus a period word
in canonical form.  On this carrier the module implements:

* ``f_inf`` — the infinite interval exchange that swaps the two halves of
  each block [1 - 2^-n, 1 - 2^-(n+1)) and then the two halves of [0, 1);
  on digits: flip the digit after the first 0, then flip the leading digit.
* ``F_inf`` — its horizontal counterpart (partial inverse; the two
  sequences with alternating tails, 1/3 and 2/3, have no preimages).
* the generators r (flip a_0), h' (prepend 0), h'' (prepend 1) and
  h_inf (flip a_0, then prepend 0) of the relevant affine dynamics.
* Thue-Morse parity ``tm`` and the index ``ind`` on dyadic sequences, and
  ``classify_orbit``, which decides for every dyadic point which of the
  four f_inf-orbits O^+-(0), O^+-(1/2) contains it and the exact power n
  with f_inf^n(base) = point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Iterable, Literal, Union

Digit = int  # 0 or 1
Rational = Union[int, Fraction]

_TEXT_RE = re.compile(r"^([01]*)\(([01]+)\)$")


class NoPreimageError(ValueError):
    """Raised by F_inf_inv on the two points with no preimage (1/3, 2/3)."""


def _minimal_period(per: tuple[Digit, ...]) -> tuple[Digit, ...]:
    n = len(per)
    for p in range(1, n + 1):
        if n % p == 0 and per == per[:p] * (n // p):
            return per[:p]
    return per


class BinSeq:
    """A binary sequence a_0 a_1 a_2 ..., eventually periodic, canonical.

    The canonical form has minimal period and shortest possible preperiod
    (trailing preperiod digits that match the rotated period are absorbed),
    so two BinSeqs are equal as sequences iff their stored words are equal.
    Sequences terminating in all 1s are excluded: they are the improper
    binary expansions, and the digit maps never produce them.
    """

    __slots__ = ("pre", "per")

    def __init__(self, pre: Iterable[Digit], per: Iterable[Digit]) -> None:
        pre_t = tuple(int(d) for d in pre)
        per_t = tuple(int(d) for d in per)
        if not per_t:
            raise ValueError("period word must be nonempty")
        if any(d not in (0, 1) for d in pre_t + per_t):
            raise ValueError("digits must be 0 or 1")
        per_t = _minimal_period(per_t)
        if per_t == (1,):
            raise ValueError("sequences terminating in all 1s are excluded")
        pre_l = list(pre_t)
        per_l = list(per_t)
        while pre_l and pre_l[-1] == per_l[-1]:
            pre_l.pop()
            per_l.insert(0, per_l.pop())
        self.pre = tuple(pre_l)
        self.per = tuple(per_l)

    # -- sequence access ---------------------------------------------------

    def digit(self, i: int) -> Digit:
        if i < 0:
            raise IndexError("digit positions start at 0")
        if i < len(self.pre):
            return self.pre[i]
        return self.per[(i - len(self.pre)) % len(self.per)]

    def digits(self, n: int) -> list[Digit]:
        return [self.digit(i) for i in range(n)]

    def _unrolled(self, n: int) -> tuple[list[Digit], tuple[Digit, ...]]:
        """First max(n, |pre|) digits plus the period word governing the rest."""
        n = max(n, len(self.pre))
        phase = (n - len(self.pre)) % len(self.per)
        return self.digits(n), self.per[phase:] + self.per[:phase]

    def is_dyadic(self) -> bool:
        """True iff the tail is all 0s (a dyadic rational)."""
        return self.per == (0,)

    # -- value map ----------------------------------------------------------

    def to_fraction(self) -> Fraction:
        x = Fraction(0)
        for i, d in enumerate(self.pre):
            if d:
                x += Fraction(1, 2 ** (i + 1))
        p = len(self.per)
        tail = sum(d << (p - 1 - j) for j, d in enumerate(self.per))
        x += Fraction(tail, (2**p - 1) * 2 ** len(self.pre))
        return x

    @classmethod
    def from_fraction(cls, x: Rational) -> "BinSeq":
        """Binary expansion by long division; always the proper expansion."""
        x = Fraction(x)
        if not 0 <= x < 1:
            raise ValueError(f"value {x} outside [0, 1)")
        seen: dict[Fraction, int] = {}
        digits: list[Digit] = []
        while x not in seen:
            seen[x] = len(digits)
            x *= 2
            d = 1 if x >= 1 else 0
            digits.append(d)
            x -= d
        start = seen[x]
        return cls(digits[:start], digits[start:])

    # -- text form "u(v)" ----------------------------------------------------

    def to_text(self) -> str:
        pre = "".join(map(str, self.pre))
        per = "".join(map(str, self.per))
        return f"{pre}({per})"

    @classmethod
    def from_text(cls, text: str) -> "BinSeq":
        m = _TEXT_RE.match(text.strip())
        if not m:
            raise ValueError(f"cannot parse {text!r}; expected digits like '11(0)'")
        return cls(tuple(map(int, m.group(1))), tuple(map(int, m.group(2))))

    # -- plumbing -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinSeq):
            return NotImplemented
        return self.pre == other.pre and self.per == other.per

    def __hash__(self) -> int:
        return hash((self.pre, self.per))

    def __repr__(self) -> str:
        return f"BinSeq({self.to_text()!r})"


ZERO = BinSeq((), (0,))
HALF = BinSeq((1,), (0,))
ONE_THIRD = BinSeq((), (0, 1))
TWO_THIRDS = BinSeq((), (1, 0))


def _edit(a: BinSeq, n: int, flips: Iterable[int]) -> BinSeq:
    """Flip the given digit positions (all < n) after unrolling to n digits."""
    digits, per = a._unrolled(n)
    for i in flips:
        digits[i] ^= 1
    return BinSeq(digits, per)


def _first_zero(a: BinSeq) -> int:
    # a has a 0 within preperiod + one period: all-1 tails are excluded.
    for i in range(len(a.pre) + len(a.per)):
        if a.digit(i) == 0:
            return i
    raise AssertionError("sequence with all-1 tail escaped canonicalization")


def f_inf(a: BinSeq) -> BinSeq:
    """One step of the infinite interval exchange on digit sequences.

    Find the first i with a_i = 0, flip a_{i+1}, then flip a_0.  This is
    the digit form of swapping the halves of each block [1-2^-n, 1-2^-(n+1))
    and then the halves of [0,1).
    """
    i = _first_zero(a)
    return _edit(a, i + 2, [i + 1, 0])


def f_inf_inv(a: BinSeq) -> BinSeq:
    """Inverse step: flip a_0 first, then undo the block swap.

    Flipping a_0 restores the pre-rotation sequence, whose first 0 sits at
    the same position i as before the forward step; flipping a_{i+1} then
    undoes the block swap.
    """
    digits, per = a._unrolled(1)
    digits[0] ^= 1
    b = BinSeq(digits, per)
    i = _first_zero(b)
    return _edit(b, i + 2, [i + 1])


def F_inf(a: BinSeq, zero_image: BinSeq = ONE_THIRD) -> BinSeq:
    """The horizontal counterpart map.

    Find the least i > 0 with a_i != a_0 and flip positions i-1, i-3, ...
    down to the lowest nonnegative index.  The algorithm fails only on the
    zero sequence, whose image is a convention: 1/3 by default, and any
    caller may pass ``zero_image=TWO_THIRDS`` instead — downstream results
    must not depend on the choice.
    """
    if a == ZERO:
        return zero_image
    bound = len(a.pre) + 2 * len(a.per) + 1
    for i in range(1, bound):
        if a.digit(i) != a.digit(0):
            return _edit(a, i, range(i - 1, -1, -2))
    raise AssertionError("constant sequence other than 0 cannot occur")


def F_inf_inv(a: BinSeq) -> BinSeq:
    """Partial inverse of F_inf.

    Find the least i > 0 with a_i = a_{i-1} and flip positions i-1, i-3, ...
    Sequences with strictly alternating tails — 1/3 = (01) and 2/3 = (10) —
    admit no such i and have no preimage.
    """
    bound = len(a.pre) + 2 * len(a.per) + 1
    for i in range(1, bound):
        if a.digit(i) == a.digit(i - 1):
            return _edit(a, i, range(i - 1, -1, -2))
    raise NoPreimageError(f"{a.to_text()} has no preimage under the horizontal map")


# ----------------------------------------------------------------------
# generators


def gen_r(a: BinSeq) -> BinSeq:
    """The half rotation: flip the leading digit."""
    return _edit(a, 1, [0])


def gen_h_prime(a: BinSeq) -> BinSeq:
    """Contraction onto [0, 1/2): prepend a 0."""
    return BinSeq((0,) + a.pre, a.per)


def gen_h_double_prime(a: BinSeq) -> BinSeq:
    """Contraction onto [1/2, 1): prepend a 1."""
    return BinSeq((1,) + a.pre, a.per)


def gen_h_inf(a: BinSeq) -> BinSeq:
    """The renormalizing contraction: flip a_0, then prepend a 0."""
    return gen_h_prime(gen_r(a))


_GENERATORS = {
    "r": gen_r,
    "h'": gen_h_prime,
    "h''": gen_h_double_prime,
    "h_inf": gen_h_inf,
}


def apply_generator(a: BinSeq, which: str) -> BinSeq:
    """Apply one of the generators r, h', h'' or h_inf by name."""
    try:
        return _GENERATORS[which](a)
    except KeyError:
        raise ValueError(f"unknown generator {which!r}; expected one of r, h', h'', h_inf")


# ----------------------------------------------------------------------
# dyadic invariants


def _require_dyadic(a: BinSeq) -> None:
    if not a.is_dyadic():
        raise ValueError(f"{a.to_text()} is not dyadic (tail is not all 0s)")


def tm(a: BinSeq) -> int:
    """Thue-Morse parity: number of 1s mod 2.  Dyadic sequences only."""
    _require_dyadic(a)
    return sum(a.pre) % 2


def ind(a: BinSeq) -> int:
    """Index: the largest i with a_i = 1; zero for both 0 and 1/2."""
    _require_dyadic(a)
    for i in range(len(a.pre) - 1, -1, -1):
        if a.pre[i] == 1:
            return i
    return 0


thue_morse = tm
index_of = ind


@dataclass(frozen=True)
class OrbitClassification:
    """Which f_inf-orbit a dyadic point lies on: f_inf^n(base) = point."""

    base: Literal["zero", "half"]
    n: int

    @property
    def base_point(self) -> BinSeq:
        return ZERO if self.base == "zero" else HALF


def classify_orbit(a: BinSeq) -> OrbitClassification:
    """Locate a dyadic point inside the four orbits O^+-(0), O^+-(1/2).

    Works right to left through the digits: prepending a digit d to a
    point f^m(base) rewrites, by the conjugation identities
    f^2 h' = h' f^-1 and f^2 h'' = h'' f, as

        0 . f^m(zero) = f^{-2m}(zero)      1 . f^m(zero) = f^{2m}(half)
        0 . f^m(half) = f^{-2m-1}(half)    1 . f^m(half) = f^{2m+1}(zero)

    using h'(zero) = zero, h''(zero) = half, h'(half) = f^-1(half) and
    h''(half) = f(zero) to re-anchor.  The exponent roughly doubles at
    each step, so n stays exact at arbitrary precision.
    """
    _require_dyadic(a)
    base: Literal["zero", "half"] = "zero"
    n = 0
    for d in reversed(a.pre):
        n = 2 * n if d else -2 * n
        if d == 1 and base == "zero":
            base = "half"
        elif d == 1 and base == "half":
            base = "zero"
            n += 1
        elif d == 0 and base == "half":
            n -= 1
    return OrbitClassification(base, n)


def orbit_table_row(a: BinSeq) -> OrbitClassification:
    """The closed-form orbit location read off Thue-Morse parity and index.

    TM = 0, Ind even -> O^-(0);   TM = 0, Ind odd -> O^+(0);
    TM = 1, Ind even -> O^+(1/2); TM = 1, Ind odd -> O^-(1/2).
    Only the base and the sign of n are determined; the returned n is +-1
    (or 0 for the two base points themselves).
    """
    _require_dyadic(a)
    if a in (ZERO, HALF):
        return OrbitClassification("zero" if a == ZERO else "half", 0)
    parity = tm(a)
    index_even = ind(a) % 2 == 0
    if parity == 0:
        return OrbitClassification("zero", -1 if index_even else 1)
    return OrbitClassification("half", 1 if index_even else -1)


def is_discontinuity(a: BinSeq) -> bool:
    """True iff a = 1...1(0) or 1...101(0) — the vertical-edge abscissas.

    These are the points whose upward separatrix meets the singularity:
    the left endpoints of the blocks and, in the second form, the block
    midpoints.
    """
    if not a.is_dyadic():
        return False
    word = a.pre
    if all(word):
        return True
    return len(word) >= 2 and all(word[:-2]) and word[-2:] == (0, 1)


# ----------------------------------------------------------------------
# sampling and verification


def random_binseq(rng: Random) -> BinSeq:
    """A random canonical sequence: preperiod 0..12, period 1..8, fair digits."""
    while True:
        pre = [rng.randrange(2) for _ in range(rng.randrange(13))]
        per = [rng.randrange(2) for _ in range(1 + rng.randrange(8))]
        try:
            return BinSeq(pre, per)
        except ValueError:
            continue  # drew an all-1 period; try again


def verify_conjugacies(sample_count: int, seed: int = 0) -> dict:
    """Spot-check the four conjugation identities on random sequences.

    Checks, as identities of total maps on the sequence space,

        r f r = f^-1,   f^2 h' = h' f^-1,   f^2 h'' = h'' f,
        f^2 h_inf = h_inf f,

    and reports the number checked plus the first counterexample if any.
    """
    rng = Random(seed)
    identities = [
        ("r f r = f^-1", lambda a: gen_r(f_inf(gen_r(a))), f_inf_inv),
        ("f^2 h' = h' f^-1", lambda a: f_inf(f_inf(gen_h_prime(a))),
         lambda a: gen_h_prime(f_inf_inv(a))),
        ("f^2 h'' = h'' f", lambda a: f_inf(f_inf(gen_h_double_prime(a))),
         lambda a: gen_h_double_prime(f_inf(a))),
        ("f^2 h_inf = h_inf f", lambda a: f_inf(f_inf(gen_h_inf(a))),
         lambda a: gen_h_inf(f_inf(a))),
    ]
    checked = 0
    for _ in range(sample_count):
        a = random_binseq(rng)
        for name, lhs, rhs in identities:
            if lhs(a) != rhs(a):
                return {
                    "ok": False,
                    "checked": checked,
                    "counterexample": {"identity": name, "point": a.to_text()},
                }
            checked += 1
    return {"ok": True, "checked": checked, "counterexample": None}
