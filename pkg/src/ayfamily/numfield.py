"""Exact arithmetic in the fields Q(alpha_g).

For each genus g >= 1 let alpha_g be the unique positive root of

    p_g(x) = x^g + x^(g-1) + ... + x - 1.

For g >= 2 the root is irrational and lies in (1/2, 1); for g = 1 the
polynomial is x - 1 and the field degenerates to Q with alpha = 1.

Elements of Q(alpha_g) are dense rational coefficient vectors reduced
modulo p_g.  Every geometric predicate downstream (orderings of interval
endpoints, slope comparisons, point-in-triangle tests) funnels through
the sign routine here, which evaluates the element over a rational
isolating interval for alpha_g and bisects the interval until the sign
is certain.  No floating point is used anywhere in this module.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

Rational = Union[int, Fraction]

#: Starting width of the isolating interval used for sign tests.
START_WIDTH = Fraction(1, 2**16)

#: Hard floor for cross-field comparisons: two values whose enclosures still
#: overlap at this width are reported as indistinguishable rather than equal.
_CROSS_FLOOR = Fraction(1, 2**4096)


def minpoly_coeffs(g: int) -> tuple[Fraction, ...]:
    """Coefficients, constant term first, of p_g(x) = x^g + ... + x - 1."""
    if g < 1:
        raise ValueError(f"genus must be a positive integer, got {g}")
    return (Fraction(-1),) + (Fraction(1),) * g


class RootInterval(NamedTuple):
    """Rational interval [lo, hi] containing alpha_g and no other root."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2


def _poly_at(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    """Evaluate a coefficient vector (constant term first) at a rational."""
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _eval_over(coeffs: Sequence[Fraction], iv: RootInterval) -> tuple[Fraction, Fraction]:
    """Enclose sum(c_k * alpha^k) given alpha in [iv.lo, iv.hi] with 0 <= lo.

    Powers of a nonnegative interval are monotone, so alpha^k lies in
    [lo^k, hi^k] and each term contributes an interval according to the
    sign of its coefficient.
    """
    lo_acc = Fraction(0)
    hi_acc = Fraction(0)
    p_lo = Fraction(1)
    p_hi = Fraction(1)
    for c in coeffs:
        if c > 0:
            lo_acc += c * p_lo
            hi_acc += c * p_hi
        elif c < 0:
            lo_acc += c * p_hi
            hi_acc += c * p_lo
        p_lo *= iv.lo
        p_hi *= iv.hi
    return lo_acc, hi_acc


class Field:
    """The field Q(alpha_g), one cached instance per genus.

    Instances are obtained through :func:`field`; identity of ``Field``
    objects is identity of the genus.  The field owns the minimal
    polynomial, the reduction rule alpha^g = 1 - alpha - ... - alpha^(g-1),
    and a monotonically shrinking isolating interval for the root.  The
    interval cache only ever gets narrower, and each refinement builds a
    fresh :class:`RootInterval`, so sharing a Field across threads is safe.
    """

    __slots__ = ("g", "minpoly", "_reduction", "_interval")

    def __init__(self, g: int) -> None:
        self.g = g
        self.minpoly = minpoly_coeffs(g)
        # alpha^g = 1 - (alpha + alpha^2 + ... + alpha^(g-1))
        self._reduction = (Fraction(1),) + (Fraction(-1),) * (g - 1)
        if g == 1:
            self._interval = RootInterval(Fraction(1), Fraction(1))
        else:
            # p_g(1/2) = -2^(-g) < 0 and p_g(1) = g - 1 > 0.
            self._interval = RootInterval(Fraction(1, 2), Fraction(1))

    # ------------------------------------------------------------------
    # root isolation

    def root_interval(self, width: Rational) -> RootInterval:
        """Return an isolating interval for alpha_g of width <= `width`.

        Bisection preserves p_g(lo) < 0 < p_g(hi); the midpoint is never a
        root because alpha_g is irrational for g >= 2.  The narrowest
        interval seen so far is cached on the field.
        """
        width = Fraction(width)
        if width <= 0:
            raise ValueError("interval width must be positive")
        iv = self._interval
        while iv.width > width:
            mid = iv.mid
            if _poly_at(self.minpoly, mid) < 0:
                iv = RootInterval(mid, iv.hi)
            else:
                iv = RootInterval(iv.lo, mid)
        if iv.width < self._interval.width:
            self._interval = iv
        return iv

    # ------------------------------------------------------------------
    # element constructors

    def from_coeffs(self, coeffs: Iterable[Rational]) -> "NFElem":
        """Build an element from coefficients (constant term first).

        Vectors longer than g are reduced modulo the minimal polynomial;
        shorter ones are zero-padded.
        """
        raw = [Fraction(c) for c in coeffs]
        if len(raw) > self.g:
            raw = self._reduce(raw)
        while len(raw) < self.g:
            raw.append(Fraction(0))
        return NFElem(self, tuple(raw[: self.g]))

    def rational(self, q: Rational) -> "NFElem":
        return self.from_coeffs([Fraction(q)])

    def zero(self) -> "NFElem":
        return self.rational(0)

    def one(self) -> "NFElem":
        return self.rational(1)

    def alpha(self) -> "NFElem":
        """The generator alpha_g itself (equal to 1 when g = 1)."""
        if self.g == 1:
            return self.one()
        return self.from_coeffs([0, 1])

    def alpha_pow(self, k: int) -> "NFElem":
        """alpha_g^k, reduced; accepts any integer k (negative uses 1/alpha)."""
        return self.alpha() ** k

    def _reduce(self, raw: list[Fraction]) -> list[Fraction]:
        """Fold degrees >= g down via alpha^g = 1 - alpha - ... - alpha^(g-1)."""
        g = self.g
        for d in range(len(raw) - 1, g - 1, -1):
            c = raw[d]
            if c:
                raw[d] = Fraction(0)
                for k, r in enumerate(self._reduction):
                    raw[d - g + k] += c * r
        del raw[g:]
        return raw

    def _coerce(self, value: "NFElem | Rational") -> "NFElem":
        if isinstance(value, NFElem):
            if value.field is not self:
                raise ValueError(
                    f"cannot mix elements of Q(alpha_{value.field.g}) "
                    f"and Q(alpha_{self.g}); use compare_values for that"
                )
            return value
        if isinstance(value, (int, Fraction)):
            return self.rational(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into Q(alpha_{self.g})")

    def __repr__(self) -> str:
        return f"Field(g={self.g})"


_FIELDS: dict[int, Field] = {}


def field(g: int) -> Field:
    """The cached Field instance for genus g."""
    try:
        return _FIELDS[g]
    except KeyError:
        if not isinstance(g, int):
            raise TypeError(f"genus must be an integer, got {type(g).__name__}")
        _FIELDS[g] = Field(g)
        return _FIELDS[g]


# ----------------------------------------------------------------------
# polynomial helpers for the extended Euclidean inverse


def _ptrim(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def _psub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _ptrim(out)


def _pmul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _ptrim(out)


def _pdivmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv_lead = 1 / b[-1]
    while len(a) >= len(b):
        factor = a[-1] * inv_lead
        shift = len(a) - len(b)
        q[shift] = factor
        for i, cb in enumerate(b):
            a[shift + i] -= factor * cb
        _ptrim(a)
        if not a:
            break
    return _ptrim(q), a


class NFElem:
    """An element of Q(alpha_g): an immutable vector of g rationals.

    The vector (c_0, ..., c_{g-1}) represents c_0 + c_1*alpha + ... in
    canonical reduced form, so equality of elements is equality of
    vectors.  Arithmetic operators accept ints and Fractions on either
    side.  Ordering comparisons are exact, via :meth:`sign`.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, fld: Field, coeffs: tuple[Fraction, ...]) -> None:
        self.field = fld
        self.coeffs = coeffs

    # -- ring structure -------------------------------------------------

    def __add__(self, other: "NFElem | Rational") -> "NFElem":
        try:
            o = self.field._coerce(other)
        except TypeError:
            return NotImplemented
        return NFElem(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other: "NFElem | Rational") -> "NFElem":
        try:
            o = self.field._coerce(other)
        except TypeError:
            return NotImplemented
        return NFElem(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other: "NFElem | Rational") -> "NFElem":
        return (-self) + other

    def __neg__(self) -> "NFElem":
        return NFElem(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "NFElem | Rational") -> "NFElem":
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return NFElem(self.field, tuple(a * q for a in self.coeffs))
        if not isinstance(other, NFElem):
            return NotImplemented
        o = self.field._coerce(other)
        g = self.field.g
        raw = [Fraction(0)] * (2 * g - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        raw[i + j] += a * b
        return self.field.from_coeffs(raw)

    __rmul__ = __mul__

    def inverse(self) -> "NFElem":
        """Multiplicative inverse via the extended Euclidean algorithm.

        Maintains r = t * self (mod p_g); when the remainder drops to a
        nonzero constant c, t/c is the inverse.
        """
        if self.is_zero():
            raise ZeroDivisionError(f"division by zero in Q(alpha_{self.field.g})")
        r0 = _ptrim(list(self.field.minpoly))
        r1 = _ptrim(list(self.coeffs))
        t0: list[Fraction] = []
        t1: list[Fraction] = [Fraction(1)]
        while len(r1) > 1:
            q, rem = _pdivmod(r0, r1)
            r0, r1 = r1, rem
            t0, t1 = t1, _psub(t0, _pmul(q, t1))
            if not r1:
                raise ArithmeticError(
                    "minimal polynomial shares a factor with the operand; "
                    "element is not invertible"
                )
        c = r1[0]
        return self.field.from_coeffs([t / c for t in t1])

    def __truediv__(self, other: "NFElem | Rational") -> "NFElem":
        try:
            o = self.field._coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: "NFElem | Rational") -> "NFElem":
        return self.inverse() * other

    def __pow__(self, n: int) -> "NFElem":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        """True iff all coefficients above the constant term vanish."""
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def sign(self) -> int:
        """-1, 0 or +1: the sign of the real value at alpha_g, exactly.

        Zero only for the zero vector.  Otherwise the evaluation interval
        shrinks linearly with the isolating interval, so the loop
        terminates for every nonzero element.
        """
        if self.is_zero():
            return 0
        iv = self.field.root_interval(START_WIDTH)
        while True:
            lo, hi = _eval_over(self.coeffs, iv)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            iv = self.field.root_interval(iv.width / 2)

    def enclosure(self, width: Rational) -> tuple[Fraction, Fraction]:
        """A rational interval containing the value, of width <= `width`."""
        width = Fraction(width)
        if width <= 0:
            raise ValueError("enclosure width must be positive")
        iv = self.field.root_interval(START_WIDTH)
        while True:
            lo, hi = _eval_over(self.coeffs, iv)
            if hi - lo <= width:
                return lo, hi
            iv = self.field.root_interval(iv.width / 2)

    def __abs__(self) -> "NFElem":
        return -self if self.sign() < 0 else self

    # -- comparisons -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, NFElem):
            return self.field is other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            # Agree with hash(Fraction) so rational elements mix with keys
            # built from plain rationals.
            return hash(self.coeffs[0])
        return hash((self.field.g, self.coeffs))

    def _cmp_sign(self, other: "NFElem | Rational") -> int:
        return (self - other).sign()

    def __lt__(self, other: "NFElem | Rational") -> bool:
        return self._cmp_sign(other) < 0

    def __le__(self, other: "NFElem | Rational") -> bool:
        return self._cmp_sign(other) <= 0

    def __gt__(self, other: "NFElem | Rational") -> bool:
        return self._cmp_sign(other) > 0

    def __ge__(self, other: "NFElem | Rational") -> bool:
        return self._cmp_sign(other) >= 0

    # -- conversions -----------------------------------------------------

    def __float__(self) -> float:
        lo, hi = self.enclosure(Fraction(1, 2**80))
        return float((lo + hi) / 2)

    def coeff_strings(self) -> list[str]:
        """Coefficients as exact 'p/q' strings (JSON-friendly)."""
        return [str(c) for c in self.coeffs]

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*a")
            else:
                terms.append(f"{c}*a^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"<{body} in Q(alpha_{self.field.g})>"


def elem_from_strings(fld: Field, items: Iterable[str]) -> NFElem:
    """Inverse of :meth:`NFElem.coeff_strings`."""
    return fld.from_coeffs([Fraction(s) for s in items])


# ----------------------------------------------------------------------
# module-level operations


def alpha_root(g: int, width: Rational) -> RootInterval:
    """Isolate the positive root of x^g + ... + x - 1 to the given width.

    For g = 1 the root is exactly 1 and the degenerate interval [1, 1] is
    returned regardless of the width requested.
    """
    return field(g).root_interval(width)


def check_half_bound(g: int) -> bool:
    """Decide 1/2^(g+2) < alpha_g - 1/2 < 1/2^(g+1) by exact sign tests.

    p_g is strictly increasing on (0, 1), so the double inequality is
    equivalent to p_g(1/2 + 2^-(g+2)) < 0 < p_g(1/2 + 2^-(g+1)).
    """
    if g < 2:
        raise ValueError(f"the root bound concerns g >= 2, got {g}")
    p = minpoly_coeffs(g)
    lo = Fraction(1, 2) + Fraction(1, 2 ** (g + 2))
    hi = Fraction(1, 2) + Fraction(1, 2 ** (g + 1))
    return _poly_at(p, lo) < 0 < _poly_at(p, hi)


def nf_arith(a: NFElem, b: NFElem, op: str) -> NFElem:
    """Dispatch one field operation by name: add, sub, mul or div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}; expected add/sub/mul/div")


def nf_sign(a: NFElem) -> int:
    return a.sign()


def _value_parts(v: "NFElem | Rational") -> tuple[bool, Fraction | NFElem]:
    """Classify a comparison operand: (is_exact_rational, payload)."""
    if isinstance(v, (int, Fraction)):
        return True, Fraction(v)
    if isinstance(v, NFElem):
        if v.is_rational():
            return True, v.coeffs[0]
        return False, v
    raise TypeError(f"cannot compare {type(v).__name__}")


def compare_values(a: "NFElem | Rational", b: "NFElem | Rational") -> int:
    """Compare two real algebraic values that may live in different fields.

    Returns -1, 0 or +1.  Equality is certified only when both operands
    are exactly rational; otherwise the enclosures are refined until they
    separate.  Two genuinely equal irrational values from different
    fields would never separate, so refinement is capped and a failure to
    decide raises ArithmeticError.
    """
    a_rat, a_val = _value_parts(a)
    b_rat, b_val = _value_parts(b)
    if a_rat and b_rat:
        if a_val < b_val:
            return -1
        return 1 if a_val > b_val else 0
    width = START_WIDTH

    def bounds(rat: bool, val: "Fraction | NFElem", w: Fraction) -> tuple[Fraction, Fraction]:
        if rat:
            return val, val
        return val.enclosure(w)

    while width >= _CROSS_FLOOR:
        a_lo, a_hi = bounds(a_rat, a_val, width)
        b_lo, b_hi = bounds(b_rat, b_val, width)
        if a_hi < b_lo:
            return -1
        if b_hi < a_lo:
            return 1
        width = width * width  # square: doubles the number of certain bits
    raise ArithmeticError(
        "values remain indistinguishable at width 2^-4096; "
        "they may be equal elements of different fields"
    )
