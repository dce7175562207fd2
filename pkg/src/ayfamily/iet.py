"""Finite interval exchange transformations with exact endpoints.

The central object is :class:`IntervalExchange`: a map of [0, L) that is a
translation on each of finitely many left-closed/right-open pieces.  All
endpoints and translations are exact values — either plain rationals or
:class:`~ayfamily.numfield.NFElem` — so composition, inversion, first-return
induction and equality are decided without any rounding.

The family member f_g (swap the two halves of each of the g blocks of
lengths alpha, alpha^2, ..., alpha^g, then swap the two halves of [0, 1))
is built by :func:`build_f_g`, and the piecewise affine renormalization
h_g by :func:`build_h_g`; together they express the self-similarity
f_g = h_g^{-1} o (first return of f_g on [0, alpha)) o h_g, which the
conjugation helpers verify exactly.
"""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .numfield import Field, NFElem, elem_from_strings, field

Value = Union[Fraction, NFElem]

#: Refinement-step cap for first-return induction.
RETURN_CAP = 10**6


class InductionCapError(RuntimeError):
    """Raised when first-return induction exceeds its refinement cap."""


def _norm(v: "Value | int") -> Value:
    return Fraction(v) if isinstance(v, int) else v


class IntervalExchange:
    """An exact interval exchange map of [0, L).

    ``pieces`` is a sequence of (left endpoint, translation) pairs; piece k
    is the interval [left_k, left_{k+1}) (the last one ends at L) and the
    map sends x to x + translation_k there.  The stored form is canonical:
    adjacent pieces with equal translations are merged, so two maps are
    equal as functions iff their stored data are equal.
    """

    __slots__ = ("length", "lefts", "shifts")

    def __init__(self, length: "Value | int", pieces: Iterable[tuple]) -> None:
        length = _norm(length)
        if length <= 0:
            raise ValueError("domain length must be positive")
        lefts: list[Value] = []
        shifts: list[Value] = []
        for left, shift in pieces:
            lefts.append(_norm(left))
            shifts.append(_norm(shift))
        if not lefts:
            raise ValueError("an interval exchange needs at least one piece")
        if lefts[0] != 0:
            raise ValueError("first piece must start at 0")
        for a, b in zip(lefts, lefts[1:]):
            if not a < b:
                raise ValueError("piece endpoints must be strictly increasing")
        if not lefts[-1] < length:
            raise ValueError("piece endpoints must lie inside [0, L)")
        # image of each piece must stay inside [0, L]
        rights = lefts[1:] + [length]
        for left, right, shift in zip(lefts, rights, shifts):
            if left + shift < 0 or right + shift > length:
                raise ValueError("piece image leaves the domain [0, L)")
        # canonical form: merge adjacent pieces with equal translations
        m_lefts: list[Value] = [lefts[0]]
        m_shifts: list[Value] = [shifts[0]]
        for left, shift in zip(lefts[1:], shifts[1:]):
            if shift == m_shifts[-1]:
                continue
            m_lefts.append(left)
            m_shifts.append(shift)
        self.length = length
        self.lefts = tuple(m_lefts)
        self.shifts = tuple(m_shifts)

    # -- basic queries ----------------------------------------------------

    def piece_count(self) -> int:
        return len(self.lefts)

    def pieces(self) -> list[tuple[Value, Value]]:
        return list(zip(self.lefts, self.shifts))

    def rights(self) -> list[Value]:
        return list(self.lefts[1:]) + [self.length]

    def piece_index(self, x: Value) -> int:
        if x < 0 or not x < self.length:
            raise ValueError(f"point {x!r} outside domain [0, {self.length!r})")
        return bisect_right(self.lefts, x) - 1

    def apply(self, x: "Value | int") -> Value:
        x = _norm(x)
        return x + self.shifts[self.piece_index(x)]

    __call__ = apply

    def is_bijection(self) -> bool:
        """True iff the image pieces tile [0, L) exactly."""
        images = sorted(
            (left + shift, right + shift)
            for (left, shift), right in zip(self.pieces(), self.rights())
        )
        if images[0][0] != 0 or images[-1][1] != self.length:
            return False
        return all(a[1] == b[0] for a, b in zip(images, images[1:]))

    def inverse(self) -> "IntervalExchange":
        if not self.is_bijection():
            raise ValueError("cannot invert: image pieces do not tile [0, L)")
        inv = sorted((left + shift, -shift) for left, shift in self.pieces())
        return IntervalExchange(self.length, inv)

    def as_affine(self) -> "PiecewiseAffine":
        one = Fraction(1)
        return PiecewiseAffine(
            [(left, one, shift) for left, shift in self.pieces()], self.length
        )

    def orbit(self, x: "Value | int", n: int) -> list[Value]:
        """[x, T(x), ..., T^n(x)]; negative n iterates the inverse."""
        step = self if n >= 0 else self.inverse()
        out = [_norm(x)]
        for _ in range(abs(n)):
            out.append(step.apply(out[-1]))
        return out

    # -- structure --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntervalExchange):
            return NotImplemented
        return (
            self.length == other.length
            and len(self.lefts) == len(other.lefts)
            and all(a == b for a, b in zip(self.lefts, other.lefts))
            and all(a == b for a, b in zip(self.shifts, other.shifts))
        )

    def __hash__(self) -> int:
        return hash((self.length, self.lefts, self.shifts))

    def __repr__(self) -> str:
        return f"IntervalExchange(L={self.length!r}, pieces={self.piece_count()})"

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        """JSON form: {g, domain_length, pieces}; values as coefficient strings.

        Plain rationals are promoted to the degenerate field Q(alpha_1) = Q
        unless some value already lives in a bigger field.
        """
        fld = _common_field([self.length, *self.lefts, *self.shifts])
        enc = lambda v: fld._coerce(v).coeff_strings()
        return {
            "g": fld.g,
            "domain_length": enc(self.length),
            "pieces": [
                {"left": enc(left), "translation": enc(shift)}
                for left, shift in self.pieces()
            ],
        }

    @staticmethod
    def from_json(data: dict) -> "IntervalExchange":
        fld = field(data["g"])
        dec = lambda items: elem_from_strings(fld, items)
        return IntervalExchange(
            dec(data["domain_length"]),
            [(dec(p["left"]), dec(p["translation"])) for p in data["pieces"]],
        )


def _common_field(values: Sequence[Value]) -> Field:
    for v in values:
        if isinstance(v, NFElem):
            return v.field
    return field(1)


class PiecewiseAffine:
    """An injective piecewise affine map with positive slopes.

    Pieces are (left, slope, offset) on [left_k, left_{k+1}) — the last
    piece ends at ``end`` — sending x to slope*x + offset.  Unlike
    :class:`IntervalExchange` the domain may start anywhere.
    """

    __slots__ = ("lefts", "slopes", "offsets", "end")

    def __init__(self, pieces: Iterable[tuple], end: "Value | int") -> None:
        pieces = [(_norm(l), _norm(s), _norm(o)) for l, s, o in pieces]
        if not pieces:
            raise ValueError("a piecewise affine map needs at least one piece")
        for (a, _, _), (b, _, _) in zip(pieces, pieces[1:]):
            if not a < b:
                raise ValueError("piece endpoints must be strictly increasing")
        for _, slope, _ in pieces:
            if not slope > 0:
                raise ValueError("slopes must be positive")
        self.end = _norm(end)
        if not pieces[-1][0] < self.end:
            raise ValueError("domain end must exceed the last breakpoint")
        self.lefts = tuple(p[0] for p in pieces)
        self.slopes = tuple(p[1] for p in pieces)
        self.offsets = tuple(p[2] for p in pieces)

    @property
    def start(self) -> Value:
        return self.lefts[0]

    def rights(self) -> list[Value]:
        return list(self.lefts[1:]) + [self.end]

    def piece_index(self, x: Value) -> int:
        if x < self.start or not x < self.end:
            raise ValueError(f"point {x!r} outside domain [{self.start!r}, {self.end!r})")
        return bisect_right(self.lefts, x) - 1

    def apply(self, x: "Value | int") -> Value:
        x = _norm(x)
        k = self.piece_index(x)
        return self.slopes[k] * x + self.offsets[k]

    __call__ = apply

    def image_pieces(self) -> list[tuple[Value, Value]]:
        """Half-open image intervals, one per piece, in piece order."""
        out = []
        for left, right, slope, offset in zip(
            self.lefts, self.rights(), self.slopes, self.offsets
        ):
            out.append((slope * left + offset, slope * right + offset))
        return out

    def inverse(self) -> "PiecewiseAffine":
        """Inverse map, defined when the image pieces tile an interval."""
        images = sorted(
            (lo, hi, slope, offset)
            for (lo, hi), slope, offset in zip(
                self.image_pieces(), self.slopes, self.offsets
            )
        )
        for (_, hi1, _, _), (lo2, _, _, _) in zip(images, images[1:]):
            if hi1 != lo2:
                raise ValueError("image pieces do not tile an interval; not invertible")
        pieces = [(lo, 1 / slope, -offset / slope) for lo, _, slope, offset in images]
        return PiecewiseAffine(pieces, images[-1][1])

    def to_iet(self) -> IntervalExchange:
        """Reinterpret as an interval exchange; every slope must equal 1."""
        if any(s != 1 for s in self.slopes):
            raise ValueError("map has a piece with slope != 1; not an interval exchange")
        if self.start != 0:
            raise ValueError("interval exchange domains start at 0")
        return IntervalExchange(self.end, list(zip(self.lefts, self.offsets)))

    def __repr__(self) -> str:
        return (
            f"PiecewiseAffine([{self.start!r}, {self.end!r}), "
            f"pieces={len(self.lefts)})"
        )


def compose_affine(outer: PiecewiseAffine, inner: PiecewiseAffine) -> PiecewiseAffine:
    """Exact composition outer(inner(x)) on the domain of ``inner``.

    Every image point of ``inner`` must land in the domain of ``outer``.
    Breakpoints are those of ``inner`` together with inner-preimages of the
    breakpoints of ``outer``.
    """
    pieces = []
    for left, right, slope, offset in zip(
        inner.lefts, inner.rights(), inner.slopes, inner.offsets
    ):
        img_lo = slope * left + offset
        img_hi = slope * right + offset
        if img_lo < outer.start or outer.end < img_hi:
            raise ValueError("inner image escapes the outer domain")
        # outer breakpoints strictly inside (img_lo, img_hi), pulled back
        cuts = [left]
        for b in outer.lefts:
            if img_lo < b < img_hi:
                cuts.append((b - offset) / slope)
        cuts.sort()
        for sub_left in cuts:
            k = outer.piece_index(slope * sub_left + offset)
            s2, o2 = outer.slopes[k], outer.offsets[k]
            pieces.append((sub_left, s2 * slope, s2 * offset + o2))
    return PiecewiseAffine(pieces, inner.end)


# ----------------------------------------------------------------------
# operations on interval exchanges


def iet_apply(T: IntervalExchange, x: "Value | int") -> Value:
    return T.apply(x)


def iet_inverse(T: IntervalExchange) -> IntervalExchange:
    return T.inverse()


def iet_compose(outer: IntervalExchange, inner: IntervalExchange) -> IntervalExchange:
    """The composition outer o inner (apply ``inner`` first)."""
    return compose_affine(outer.as_affine(), inner.as_affine()).to_iet()


def iet_equal(T1: IntervalExchange, T2: IntervalExchange) -> bool:
    """Equality as maps — structural equality of canonical forms."""
    return T1 == T2


def conjugate(T: IntervalExchange, h: PiecewiseAffine) -> IntervalExchange:
    """The conjugate h o T o h^{-1}, as an exact interval exchange.

    Raises if the conjugated map fails to be piecewise translation (the
    slopes of h must cancel along every piece) or if domains mismatch.
    """
    inner = compose_affine(T.as_affine(), h.inverse())
    return compose_affine(h, inner).to_iet()


def orbit(T: IntervalExchange, x: "Value | int", n: int) -> list[Value]:
    return T.orbit(x, n)


def first_return(T: IntervalExchange, t: "Value | int") -> IntervalExchange:
    """First-return map of T on the section [0, t), by exact piece-following.

    Subintervals of the section are pushed forward through T, splitting at
    breakpoints of T and at the section boundary, until every piece has
    come back to [0, t); each point is moved at least once.  A refinement
    cap guards against non-returning pieces.
    """
    t = _norm(t)
    if not 0 < t or T.length < t:
        raise ValueError("section must satisfy 0 < t <= L")
    if not T.is_bijection():
        raise ValueError("first return requires a bijective interval exchange")
    # queue entries: (a, b, shift) with [a, b) a subset of [0, t) whose
    # points currently sit at [a+shift, b+shift), not yet returned
    queue: list[tuple] = [(Fraction(0), t, Fraction(0))]
    done: list[tuple[Value, Value]] = []
    steps = 0
    while queue:
        steps += 1
        if steps > RETURN_CAP:
            raise InductionCapError(
                f"first-return induction exceeded {RETURN_CAP} refinement steps"
            )
        a, b, shift = queue.pop()
        # split [a+shift, b+shift) at the breakpoints of T
        cuts = [a]
        for left in T.lefts:
            if a + shift < left < b + shift:
                cuts.append(left - shift)
        cuts.sort()
        bounds = cuts + [b]
        for sub_a, sub_b in zip(bounds, bounds[1:]):
            new_shift = shift + T.shifts[T.piece_index(sub_a + shift)]
            lo = sub_a + new_shift
            hi = sub_b + new_shift
            if hi <= t:
                done.append((sub_a, new_shift))
            elif lo >= t:
                queue.append((sub_a, sub_b, new_shift))
            else:
                done.append((sub_a, new_shift))
                queue.append((t - new_shift, sub_b, new_shift))
    done.sort(key=lambda piece: piece[0])
    result = IntervalExchange(t, done)
    if not result.is_bijection():
        raise RuntimeError("first-return pieces fail to tile the section")
    return result


# ----------------------------------------------------------------------
# the family


def identity_iet(length: "Value | int" = 1) -> IntervalExchange:
    return IntervalExchange(length, [(0, 0)])


def half_rotation(length: "Value | int" = 1) -> IntervalExchange:
    """Swap the two halves of [0, L) — the map called r."""
    length = _norm(length)
    half = length / 2
    return IntervalExchange(length, [(0, half), (half, -half)])


def rotation(length: "Value | int", amount: "Value | int") -> IntervalExchange:
    """Rotation x -> x + amount (mod L) as a two-piece exchange."""
    length = _norm(length)
    amount = _norm(amount)
    if amount < 0 or not amount < length:
        raise ValueError("rotation amount must lie in [0, L)")
    if amount == 0:
        return identity_iet(length)
    return IntervalExchange(length, [(0, amount), (length - amount, amount - length)])


def block_lefts(g: int) -> list[NFElem]:
    """Left endpoints 0, alpha, alpha+alpha^2, ... of the g length blocks."""
    fld = field(g)
    lefts = [fld.zero()]
    for i in range(1, g):
        lefts.append(lefts[-1] + fld.alpha_pow(i))
    return lefts


def build_f_g(g: int, *, allow_degenerate: bool = False) -> IntervalExchange:
    """The interval exchange f_g on [0, 1).

    Step one swaps the two halves of each block [b_{i-1}, b_i) where the
    block lengths are alpha, alpha^2, ..., alpha^g (they sum to 1); step
    two swaps the two halves of [0, 1).  The canonical merged form has
    2g + 1 pieces.

    g = 1 is degenerate — the blocks reduce to [0, 1) itself and the map
    collapses to the half rotation, the rotation number 1/2 torus map —
    and is only built when ``allow_degenerate`` is set.
    """
    if g < 1:
        raise ValueError(f"genus must be >= 1, got {g}")
    if g == 1:
        if not allow_degenerate:
            raise ValueError("g=1 is degenerate; pass allow_degenerate=True")
        return half_rotation(field(1).one())
    fld = field(g)
    one = fld.one()
    lefts = block_lefts(g)
    swap_pieces = []
    for i in range(1, g + 1):
        half = fld.alpha_pow(i) / 2
        swap_pieces.append((lefts[i - 1], half))
        swap_pieces.append((lefts[i - 1] + half, -half))
    swap_within_blocks = IntervalExchange(one, swap_pieces)
    return iet_compose(half_rotation(one), swap_within_blocks)


def build_h_g(g: int) -> PiecewiseAffine:
    """The renormalizing piecewise affine map h_g from [0,1) onto [0,alpha).

    h_g has slope alpha on both pieces and offsets (alpha + alpha^{g+1})/2
    and -(alpha - alpha^{g+1})/2 on either side of the breakpoint
    (1 - alpha^g)/2; it carries f_g to the first-return map of f_g on
    [0, alpha).
    """
    if g < 2:
        raise ValueError(f"renormalization needs g >= 2, got {g}")
    fld = field(g)
    alpha = fld.alpha()
    ag = fld.alpha_pow(g)
    ag1 = fld.alpha_pow(g + 1)
    cut = (1 - ag) / 2
    pieces = [
        (fld.zero(), alpha, (alpha + ag1) / 2),
        (cut, alpha, -(alpha - ag1) / 2),
    ]
    return PiecewiseAffine(pieces, fld.one())
