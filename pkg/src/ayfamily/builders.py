"""Builders for the Arnoux-Yoccoz family of translation surfaces.

Three presentations are constructed here, all with exact coordinates:

* ``build_staircase(g)`` — the slit-staircase suspension of the interval
  exchange f_g: a unit square with a staircase corner removed, g vertical
  slits cut up from the bottom edge, and boundary pieces glued by
  translations so that the vertical flow first-returns to the bottom edge
  as f_g.  Degenerate members: g = 1 is a torus, g = 2 splits into two
  tori.
* ``build_triangulation(g)`` — the same surface as a complex of 4g
  triangles with algebraic vertex coordinates (g >= 3).
* ``build_limit_truncation(N)`` — a genus-N compact stage of the infinite
  limit surface: the unit square with the slits collapsed onto the
  vertical segment {1/2} x [0, 1/2] and the binary interval exchange
  truncated after N blocks.

The staircase and truncation builders share a small assembler that cuts
the region into convex cells between vertical walls, fans each cell from
an interior point, and matches boundary pieces across a list of
translation rules.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .iet import (
    IntervalExchange,
    build_f_g,
    build_h_g,
    conjugate,
    first_return,
    half_rotation,
    iet_compose,
    iet_equal,
    iet_inverse,
)
from .numfield import compare_values, field
from .surface import Pt, Slot, SurfaceComplex, Triangle, _sign_of

__all__ = [
    "StaircaseSpec",
    "VerifyReport",
    "bottom_section",
    "build_f_hat",
    "build_limit_truncation",
    "build_staircase",
    "build_triangulation",
    "f2_reducibility_witness",
    "limit_vertex",
    "psi_derivative",
    "psi_inf_derivative",
    "rho_derivative",
    "rho_inf_glide",
    "slit_lengths",
    "staircase_spec",
    "triangle_vertices",
    "truncation_end_report",
    "truncation_modified_slots",
    "vertex_convergence_check",
    "verify_psi",
    "verify_rho",
]


# ---------------------------------------------------------------------------
# generic cell assembler
# ---------------------------------------------------------------------------
#
# The regions we build are unions of vertical strips [x_k, x_{k+1}] x [0, h_k]
# whose boundaries carry 1-dimensional "containers":
#
#   ("bottom",)   the whole bottom run, measured by x
#   ("top", h)    a maximal horizontal top run at height h, measured by x
#   ("wall", x)   a vertical wall at abscissa x, measured by y
#
# A gluing rule is a pair of equal-length subintervals of two containers,
# glued by the translation that matches their endpoints.  ``side`` says which
# face of a wall a piece lives on: "L" is the face of the strip on the wall's
# left (its right edge, traversed upward), "R" the face of the strip on its
# right (traversed downward).  Horizontal pieces use "B" and "T".

Rule = tuple[tuple, tuple]


def _seg(key: tuple, lo, hi, side: str) -> tuple:
    return (key, lo, hi, side)


class _CellAssembler:
    def __init__(self, strips: Sequence[tuple], rules: Sequence[Rule]) -> None:
        # strips: (x_lo, x_hi, height); heights define the top containers
        self.strips = list(strips)
        self.rules = list(rules)
        self.cuts: dict[tuple, set] = {("bottom",): set()}
        for x_lo, x_hi, h in self.strips:
            self.cuts.setdefault(("top", h), set()).update((x_lo, x_hi))
            self.cuts.setdefault(("wall", x_lo), set())
            self.cuts.setdefault(("wall", x_hi), set())
            self.cuts[("bottom",)].update((x_lo, x_hi))
        for seg_a, seg_b in self.rules:
            for key, lo, hi, _ in (seg_a, seg_b):
                self.cuts.setdefault(key, set()).update((lo, hi))

    # -- subdivision closure ------------------------------------------------

    def _propagate(self) -> None:
        for _ in range(64):
            changed = False
            for (key_a, lo_a, hi_a, _), (key_b, lo_b, hi_b, _) in self.rules:
                delta = lo_b - lo_a
                cuts_a = self.cuts[key_a]
                cuts_b = self.cuts[key_b]
                for c in [c for c in cuts_a if lo_a < c < hi_a]:
                    if c + delta not in cuts_b:
                        cuts_b.add(c + delta)
                        changed = True
                for c in [c for c in cuts_b if lo_b < c < hi_b]:
                    if c - delta not in cuts_a:
                        cuts_a.add(c - delta)
                        changed = True
            if not changed:
                return
        raise RuntimeError("boundary subdivision did not stabilise")

    # -- cells ---------------------------------------------------------------

    def _between(self, key: tuple, lo, hi) -> list:
        return sorted(c for c in self.cuts[key] if lo < c < hi)

    def assemble(self) -> SurfaceComplex:
        self._propagate()
        triangles: list[Triangle] = []
        gluings: dict[Slot, Slot] = {}
        registry: dict[tuple, Slot] = {}

        def glue(s1: Slot, s2: Slot) -> None:
            if gluings.get(s1, s2) != s2 or gluings.get(s2, s1) != s1:
                raise RuntimeError(f"conflicting gluings at {s1} / {s2}")
            gluings[s1] = s2
            gluings[s2] = s1

        for x_lo, x_hi, h in self.strips:
            poly: list[Pt] = [Pt(x_lo, 0)]
            poly += [Pt(c, 0) for c in self._between(("bottom",), x_lo, x_hi)]
            poly.append(Pt(x_hi, 0))
            poly += [Pt(x_hi, c) for c in self._between(("wall", x_hi), 0, h)]
            poly.append(Pt(x_hi, h))
            poly += [
                Pt(c, h) for c in reversed(self._between(("top", h), x_lo, x_hi))
            ]
            poly.append(Pt(x_lo, h))
            poly += [
                Pt(x_lo, c) for c in reversed(self._between(("wall", x_lo), 0, h))
            ]
            m = len(poly)
            sx = sum((p.x for p in poly[1:]), poly[0].x)
            sy = sum((p.y for p in poly[1:]), poly[0].y)
            apex = Pt(sx / m, sy / m)
            base = len(triangles)
            for j in range(m):
                a, b = poly[j], poly[(j + 1) % m]
                triangles.append((apex, a, b))
                glue((base + j, 2), (base + (j + 1) % m, 0))
                if a.y == 0 and b.y == 0:
                    entry = _seg(("bottom",), a.x, b.x, "B")
                elif a.y == h and b.y == h:
                    entry = _seg(("top", h), b.x, a.x, "T")
                elif a.x == x_hi and b.x == x_hi:
                    entry = _seg(("wall", x_hi), a.y, b.y, "L")
                elif a.x == x_lo and b.x == x_lo:
                    entry = _seg(("wall", x_lo), b.y, a.y, "R")
                else:  # pragma: no cover - assembler invariant
                    raise RuntimeError("cell edge off the strip boundary")
                if entry in registry:  # pragma: no cover
                    raise RuntimeError(f"duplicate boundary piece {entry}")
                registry[entry] = (base + j, 1)

        # rule gluings
        ruled: set[tuple] = set()
        for seg_a, seg_b in self.rules:
            (key_a, lo_a, hi_a, side_a) = seg_a
            (key_b, lo_b, hi_b, side_b) = seg_b
            delta = lo_b - lo_a
            bounds = [lo_a] + self._between(key_a, lo_a, hi_a) + [hi_a]
            for c1, c2 in zip(bounds, bounds[1:]):
                piece_a = _seg(key_a, c1, c2, side_a)
                piece_b = _seg(key_b, c1 + delta, c2 + delta, side_b)
                for piece in (piece_a, piece_b):
                    if piece not in registry:
                        raise RuntimeError(f"rule references missing piece {piece}")
                glue(registry[piece_a], registry[piece_b])
                ruled.add(piece_a)
                ruled.add(piece_b)

        # interior wall pieces: present on both faces, glued by the identity
        for entry, slot in registry.items():
            key, lo, hi, side = entry
            if key[0] != "wall" or entry in ruled:
                continue
            if side == "L":
                partner = _seg(key, lo, hi, "R")
                if partner not in registry or partner in ruled:
                    raise RuntimeError(f"unmatched wall piece {entry}")
                glue(slot, registry[partner])

        surface = SurfaceComplex(triangles, gluings)
        surface.require_valid()
        return surface


# ---------------------------------------------------------------------------
# staircase suspension
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StaircaseSpec:
    """Exact layout data for the slit staircase of genus ``g``."""

    g: int
    wall_xs: tuple
    step_tops: tuple
    slit_xs: tuple
    slit_heights: tuple
    slit_order: tuple[int, ...]  # slit indices (1-based) sorted left to right
    area: object


def slit_lengths(g: int):
    """Exact slit heights |sigma_1|, ..., |sigma_g| (g >= 2).

    Uniformly |sigma_i| = alpha^{i+1} / (1 - alpha); the last one equals
    (2*alpha - 1)/(1 - alpha) because alpha^{g+1} = 2*alpha - 1.
    """
    if g < 2:
        raise ValueError("slits exist only for g >= 2")
    a = field(g).alpha()
    one_minus = 1 - a
    return tuple(a ** (i + 1) / one_minus for i in range(1, g + 1))


def _staircase_layout(g: int):
    fld = field(g)
    a = fld.alpha()
    # X[i] = alpha + ... + alpha^i, i = 0..g (block right endpoints; X[g] = 1)
    xs = [fld.zero()]
    for i in range(1, g + 1):
        xs.append(xs[-1] + a**i)
    # y[i] = top height of step i; consecutive drops alpha^{g-i+1}
    y = {1: fld.one()}
    for i in range(2, g + 1):
        y[i] = y[i - 1] - a ** (g - i + 2)
    f = build_f_g(g)
    # slit sigma_i sits at t_i = f_g(x_{g+1-i}) where x_j is the left
    # endpoint of block j; t_g = f(0) = (1+alpha)/2
    t = {}
    for i in range(1, g + 1):
        j = g + 1 - i
        t[i] = f(xs[j - 1])
    sig = dict(enumerate(slit_lengths(g), start=1))
    return fld, a, xs, y, f, t, sig


def staircase_spec(g: int) -> StaircaseSpec:
    if g < 2:
        raise ValueError("the staircase layout needs g >= 2")
    _, _, xs, y, _, t, sig = _staircase_layout(g)
    order = sorted(range(1, g + 1), key=lambda i: _SortKey(t[i]))
    for i in range(1, g + 1):
        if not (0 < t[i] < 1):
            raise AssertionError("slit abscissa escapes the bottom edge")
    area = _staircase_area(g)
    return StaircaseSpec(
        g=g,
        wall_xs=tuple(xs),
        step_tops=tuple(y[i] for i in range(1, g + 1)),
        slit_xs=tuple(t[i] for i in range(1, g + 1)),
        slit_heights=tuple(sig[i] for i in range(1, g + 1)),
        slit_order=tuple(order),
        area=area,
    )


def _staircase_area(g: int):
    if g == 1:
        return Fraction(1)
    _, a, _, y, _, _, _ = _staircase_layout(g)
    total = a * y[1]
    for i in range(2, g + 1):
        total = total + a**i * y[i]
    return total


class _SortKey:
    __slots__ = ("v",)

    def __init__(self, v) -> None:
        self.v = v

    def __lt__(self, other: "_SortKey") -> bool:
        return self.v < other.v


def build_staircase(g: int) -> SurfaceComplex:
    """The slit-staircase suspension of f_g as a glued triangle complex.

    For g = 1 this degenerates to the unit-square torus suspending the
    half rotation; for g = 2 both slits reach the roof of their steps and
    the complex falls apart into two tori.
    """
    if g < 1:
        raise ValueError("genus parameter must be >= 1")
    if g == 1:
        f = build_f_g(1, allow_degenerate=True)
        one = Fraction(1)
        strips = [(Fraction(0), one, one)]
        rules: list[Rule] = [
            (
                _seg(("wall", one), Fraction(0), one, "L"),
                _seg(("wall", Fraction(0)), Fraction(0), one, "R"),
            )
        ]
        rules += _flow_rules(f, [(Fraction(0), one, one)])
        return _CellAssembler(strips, rules).assemble()

    fld, a, xs, y, f, t, sig = _staircase_layout(g)
    zero = fld.zero()
    one = fld.one()

    walls = [zero] + [xs[i] for i in range(1, g)] + [one] + list(t.values())
    walls.sort(key=_SortKey)
    for w1, w2 in zip(walls, walls[1:]):
        if not w1 < w2:
            raise AssertionError("staircase walls collide")

    def step_of(x) -> int:
        for i in range(1, g + 1):
            if xs[i - 1] <= x and x < xs[i]:
                return i
        raise AssertionError("abscissa outside the unit interval")

    strips = []
    blocks = []  # (x_lo, x_hi, height) per step, for the flow rules
    for w1, w2 in zip(walls, walls[1:]):
        strips.append((w1, w2, y[step_of(w1)]))
    for i in range(1, g + 1):
        blocks.append((xs[i - 1], xs[i], y[i]))

    for i in range(1, g + 1):
        h = y[step_of(t[i])]
        if _sign_of(h - sig[i]) < 0:
            raise AssertionError("slit taller than its step")

    rules = _flow_rules(f, blocks)
    # right edge -> left edge
    rules.append(
        (_seg(("wall", one), zero, a, "L"), _seg(("wall", zero), zero, a, "R"))
    )
    # upper left edge -> lower left bank of sigma_1
    rules.append(
        (
            _seg(("wall", zero), a, one, "R"),
            _seg(("wall", t[1]), zero, one - a, "L"),
        )
    )
    # upper left bank of sigma_1 -> whole right bank of sigma_g
    rules.append(
        (
            _seg(("wall", t[1]), one - a, sig[1], "L"),
            _seg(("wall", t[g]), zero, sig[g], "R"),
        )
    )
    # riser of height alpha^j -> lower right bank of sigma_{j-1}
    for j in range(2, g + 1):
        wall = xs[g + 1 - j]
        rules.append(
            (
                _seg(("wall", wall), y[g + 2 - j], y[g + 1 - j], "L"),
                _seg(("wall", t[j - 1]), zero, a**j, "R"),
            )
        )
    # upper right bank of sigma_i -> whole left bank of sigma_{i+1}
    for i in range(1, g):
        rules.append(
            (
                _seg(("wall", t[i]), a ** (i + 1), sig[i], "R"),
                _seg(("wall", t[i + 1]), zero, sig[i + 1], "L"),
            )
        )
    return _CellAssembler(strips, rules).assemble()


def _flow_rules(f: IntervalExchange, blocks: Sequence[tuple]) -> list[Rule]:
    """Rules gluing the horizontal tops down to the bottom edge by ``f``."""
    rules: list[Rule] = []
    lefts = list(f.lefts)
    rights = lefts[1:] + [f.length]
    for x_lo, x_hi, h in blocks:
        for p_lo, p_hi, shift in zip(lefts, rights, f.shifts):
            lo = p_lo if x_lo < p_lo else x_lo
            hi = p_hi if p_hi < x_hi else x_hi
            if not lo < hi:
                continue
            rules.append(
                (
                    _seg(("top", h), lo, hi, "T"),
                    _seg(("bottom",), lo + shift, hi + shift, "B"),
                )
            )
    return rules


def bottom_section(S: SurfaceComplex) -> list[Slot]:
    """Slots of all edges on the line y = 0 with the surface above them."""
    found = []
    for ti, tri in enumerate(S.triangles):
        for e in range(3):
            a, b = tri[e], tri[(e + 1) % 3]
            if a.y == 0 and b.y == 0 and _sign_of(b.x - a.x) > 0:
                found.append(((ti, e), a.x))
    found.sort(key=lambda item: _SortKey(item[1]))
    return [slot for slot, _ in found]


# ---------------------------------------------------------------------------
# triangulated presentation
# ---------------------------------------------------------------------------


def triangle_vertices(g: int):
    """Exact vertex coordinates (P_0..P_g, Q_0..Q_g) of the 4g-triangle
    presentation, genus g >= 3."""
    if g < 3:
        raise ValueError("the triangulated presentation needs g >= 3")
    fld = field(g)
    a = fld.alpha()
    d = 1 - a
    P = {
        0: Pt((1 - a**g) / 2, a**2 / d),
        1: Pt(-(a ** (g - 1) + a**g) / 2, (a - a**2 + a**3) / d),
        g: Pt(1 + (a - a**g) / 2, (3 * a - 1 - a**2) / d),
    }
    for i in range(2, g):
        P[i] = Pt((a - a**i) / d, a / d)
    Q = {0: Pt(-(a**g) / 2, a)}
    for i in range(1, g + 1):
        Q[i] = Pt(
            (2 * a - a**i - a ** (i + 1)) / (2 * d),
            (a - a ** (g - i + 2)) / d,
        )
    return P, Q


def build_triangulation(g: int) -> SurfaceComplex:
    """The 4g-triangle complex: fans T_i = P_0 Q_i Q_{i-1} and
    U_i = P_i Q_{i-1} Q_i together with their mirror images under
    y -> -y, glued by translations."""
    P, Q = triangle_vertices(g)

    def mirror(p: Pt) -> Pt:
        return Pt(p.x, -p.y)

    triangles: list[Triangle] = []
    # unprimed fans and flaps
    for i in range(1, g + 1):
        triangles.append((P[0], Q[i], Q[i - 1]))
    for i in range(1, g + 1):
        triangles.append((P[i], Q[i - 1], Q[i]))
    # mirrored copies, vertex order reversed to stay counterclockwise
    for i in range(1, g + 1):
        triangles.append((mirror(P[0]), mirror(Q[i - 1]), mirror(Q[i])))
    for i in range(1, g + 1):
        triangles.append((mirror(P[i]), mirror(Q[i]), mirror(Q[i - 1])))

    def ti(i: int) -> int:
        return i - 1

    def ui(i: int) -> int:
        return g + i - 1

    def tpi(i: int) -> int:
        return 2 * g + i - 1

    def upi(i: int) -> int:
        return 3 * g + i - 1

    pairs: list[tuple[Slot, Slot]] = []
    for i in range(1, g):
        pairs.append(((ti(i), 0), (ti(i + 1), 2)))
        pairs.append(((tpi(i), 2), (tpi(i + 1), 0)))
    for i in range(1, g + 1):
        pairs.append(((ti(i), 1), (ui(i), 1)))
        pairs.append(((tpi(i), 1), (upi(i), 1)))
    # seams between the two mirror-image halves
    pairs.append(((ti(1), 2), (tpi(g), 2)))  # P0 Q0 = P0' Qg'
    pairs.append(((ti(g), 0), (tpi(1), 0)))  # P0 Qg = P0' Q0'
    pairs.append(((ui(1), 2), (upi(g), 2)))  # P1 Q1 = Pg' Q_{g-1}'
    pairs.append(((upi(1), 0), (ui(g), 0)))  # P1' Q1' = Pg Q_{g-1}
    pairs.append(((ui(1), 0), (ui(g - 1), 2)))  # P1 Q0 = P_{g-1} Q_{g-1}
    pairs.append(((upi(1), 2), (upi(g - 1), 0)))
    pairs.append(((ui(g), 2), (ui(2), 0)))  # Pg Qg = Q1 P2
    pairs.append(((upi(g), 0), (upi(2), 2)))
    for i in range(2, g - 1):
        pairs.append(((ui(i), 2), (upi(i + 1), 2)))  # Pi Qi = Qi' P_{i+1}'
        pairs.append(((upi(i), 0), (ui(i + 1), 0)))

    gluings: dict[Slot, Slot] = {}
    for s1, s2 in pairs:
        if s1 in gluings or s2 in gluings:
            raise RuntimeError(f"duplicate gluing at {s1} / {s2}")
        gluings[s1] = s2
        gluings[s2] = s1
    surface = SurfaceComplex(triangles, gluings)
    surface.require_valid()
    return surface


# ---------------------------------------------------------------------------
# self-maps: derivative data and verification reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    checks: tuple[tuple[str, bool], ...]

    def failed(self) -> tuple[str, ...]:
        return tuple(name for name, good in self.checks if not good)


def psi_derivative(g: int):
    """Derivative matrix diag(1/alpha, alpha) of the contracting self-map."""
    a = field(g).alpha()
    zero = field(g).zero()
    return ((1 / a, zero), (zero, a))


def rho_derivative(g: int):
    """Derivative diag(1, -1) of the orientation-reversing involution."""
    fld = field(g)
    return ((fld.one(), fld.zero()), (fld.zero(), -fld.one()))


def psi_inf_derivative():
    """diag(2, 1/2): the limit surface's hyperbolic self-map."""
    return ((Fraction(2), Fraction(0)), (Fraction(0), Fraction(1, 2)))


def rho_inf_glide():
    """(matrix, translation) of the limit glide reflection along y = 0."""
    matrix = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(-1)))
    return matrix, Pt(Fraction(1, 2), Fraction(0))


def verify_psi(g: int) -> VerifyReport:
    """Exact checks behind the renormalisation self-map psi_g (g >= 2):
    the first-return of f_g to [0, alpha) is h_g-conjugate to f_g, the
    slit heights scale by alpha, and the derivative trace exceeds 2."""
    fld = field(g)
    a = fld.alpha()
    f = build_f_g(g)
    h = build_h_g(g)
    checks: list[tuple[str, bool]] = []
    induced = first_return(f, a)
    checks.append(("return-conjugacy", iet_equal(induced, conjugate(f, h))))
    sig = slit_lengths(g)
    scaled = all(sig[i + 1] == a * sig[i] for i in range(g - 1))
    checks.append(("slit-scaling", scaled))
    checks.append(("slit-closure", a * (1 + sig[-1]) == (1 - a) + sig[-1]))
    trace = a + 1 / a
    checks.append(("trace-exceeds-2", _sign_of(trace - 2) > 0))
    return VerifyReport(all(v for _, v in checks), tuple(checks))


def verify_rho(g: int) -> VerifyReport:
    """Exact checks behind the involution rho_g: r conjugates f_g to its
    inverse, and (g >= 3) the triangulated complex is symmetric under
    y -> -y with the two halves swapped."""
    f = build_f_g(g)
    r = half_rotation(f.length)
    checks: list[tuple[str, bool]] = []
    checks.append(
        (
            "r-conjugates-to-inverse",
            iet_equal(iet_compose(r, iet_compose(f, r)), iet_inverse(f)),
        )
    )
    if g >= 3:
        S = build_triangulation(g)
        mirrored = True
        for i in range(1, g + 1):
            for up, down in ((i - 1, 2 * g + i - 1), (g + i - 1, 3 * g + i - 1)):
                flipped = {Pt(p.x, -p.y) for p in S.triangles[up]}
                if flipped != set(S.triangles[down]):
                    mirrored = False
        checks.append(("mirror-symmetric", mirrored))
    m = rho_derivative(g)
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    checks.append(("orientation-reversing", det == -1))
    return VerifyReport(all(v for _, v in checks), tuple(checks))


def _restrict_to_arc(f: IntervalExchange, lo, hi):
    """The restriction of ``f`` to [lo, hi) as an exchange of [0, hi-lo),
    or None if the arc is not invariant."""
    lefts = list(f.lefts)
    rights = lefts[1:] + [f.length]
    pieces = []
    for p_lo, p_hi, shift in zip(lefts, rights, f.shifts):
        c_lo = p_lo if lo < p_lo else lo
        c_hi = p_hi if p_hi < hi else hi
        if not c_lo < c_hi:
            continue
        if c_lo + shift < lo or c_hi + shift > hi:
            return None
        pieces.append((c_lo - lo, shift))
    pieces.sort(key=lambda piece: _SortKey(piece[0]))
    restricted = IntervalExchange(hi - lo, pieces)
    return restricted if restricted.is_bijection() else None


def f2_reducibility_witness() -> VerifyReport:
    """f_2 is reducible: the arc [alpha/2, (1+alpha)/2) and its
    complementary pair of arcs are each invariant, and the restriction to
    the middle arc is the exchange of two segments of lengths alpha/2 and
    alpha^2/2 (a rotation), so f_2 splits into two circle rotations."""
    fld = field(2)
    a = fld.alpha()
    f = build_f_g(2)
    lo, hi = a / 2, (1 + a) / 2
    checks: list[tuple[str, bool]] = []

    inner = _restrict_to_arc(f, lo, hi)
    checks.append(("arc-invariant", inner is not None))
    if inner is not None:
        # on [0, 1/2): [0, alpha/2) slides up by alpha^2/2, the rest down
        model = IntervalExchange(hi - lo, [(0, (1 - a) / 2), (a / 2, -(a / 2))])
        checks.append(("arc-restriction-is-rotation", iet_equal(inner, model)))

    lefts = list(f.lefts)
    rights = lefts[1:] + [f.length]
    outside_ok = True
    for p_lo, p_hi, shift in zip(lefts, rights, f.shifts):
        for c_lo, c_hi in ((p_lo, min(p_hi, lo, key=_SortKey)), (max(p_lo, hi, key=_SortKey), p_hi)):
            if not c_lo < c_hi:
                continue
            img_lo, img_hi = c_lo + shift, c_hi + shift
            if not (img_hi <= lo or hi <= img_lo):
                outside_ok = False
    checks.append(("complement-invariant", outside_ok))
    return VerifyReport(all(v for _, v in checks), tuple(checks))


# ---------------------------------------------------------------------------
# limit surface truncations
# ---------------------------------------------------------------------------


HALF = Fraction(1, 2)


def build_f_hat(N: int) -> IntervalExchange:
    """The binary interval exchange truncated after N blocks: swap the two
    halves of each block [1-2^-n, 1-2^-{n-1}) for n < N and of the doubled
    tail [1-2^-N, 1), then swap the two halves of [0, 1)."""
    if N < 1:
        raise ValueError("truncation depth must be >= 1")
    pieces = []
    lefts = [1 - Fraction(1, 2**n) for n in range(N)] + [1 - Fraction(1, 2**N)]
    rights = lefts[1:] + [Fraction(1)]
    for lo, hi in zip(lefts, rights):
        w = (hi - lo) / 2
        pieces.append((lo, w))
        pieces.append((lo + w, -w))
    swaps = IntervalExchange(1, pieces)
    return iet_compose(half_rotation(1), swaps)


def _J(i: int) -> Fraction:
    return sum(
        (Fraction(1, 2**m) for m in range(3, i + 1, 2)), Fraction(0)
    )


def _ell_rule(i: int, lo: Fraction, hi: Fraction) -> Rule:
    """Glue the left-bank piece {1/2} x [lo, hi] using the depth-i law."""
    src = _seg(("wall", HALF), lo, hi, "L")
    if i % 2 == 0:
        delta = (1 - Fraction(1, 2**i)) / 3
        return (src, _seg(("wall", HALF), lo + delta, hi + delta, "R"))
    delta = HALF + _J(i)
    return (src, _seg(("wall", Fraction(0)), lo + delta, hi + delta, "R"))


def _riser_rule(j: int, lo: Fraction, hi: Fraction) -> Rule:
    """Glue the right-edge piece {1} x [lo, hi] using the depth-j law."""
    src = _seg(("wall", Fraction(1)), lo, hi, "L")
    if j % 2 == 1:
        delta = (1 - Fraction(1, 2 ** (j - 1))) / 3 - lo
        return (src, _seg(("wall", HALF), lo + delta, hi + delta, "R"))
    delta = HALF + _J(j - 1) - lo
    return (src, _seg(("wall", Fraction(0)), lo + delta, hi + delta, "R"))


def build_limit_truncation(N: int) -> SurfaceComplex:
    """Stage N of the limit surface: the unit square with the slit stack
    collapsed onto Sigma = {1/2} x [0, 1/2], suspending f_hat_N.

    Left-bank pieces {1/2} x [2^-i-1, 2^-i] alternate between landing on
    the right bank (shift (1-2^-i)/3, i even) and on the upper left edge
    (shift 1/2 + J_i, i odd); right-edge risers {1} x [1-2^-j, 1-2^-j-1]
    alternate the other way.  The leftover bank {1/2} x [0, 2^-N] and
    riser {1} x [1-2^-N, 1] close the two remaining gaps, swapping
    targets with the parity of N.
    """
    if N < 1:
        raise ValueError("truncation depth must be >= 1")
    zero, one = Fraction(0), Fraction(1)
    f_hat = build_f_hat(N)
    strips = [(zero, HALF, one), (HALF, one, one)]
    rules = _flow_rules(f_hat, [(zero, one, one)])
    rules.append(
        (_seg(("wall", one), zero, HALF, "L"), _seg(("wall", zero), zero, HALF, "R"))
    )
    for i in range(1, N):
        rules.append(_ell_rule(i, Fraction(1, 2 ** (i + 1)), Fraction(1, 2**i)))
        rules.append(
            _riser_rule(i, 1 - Fraction(1, 2**i), 1 - Fraction(1, 2 ** (i + 1)))
        )
    rules.append(_ell_rule(N, zero, Fraction(1, 2**N)))
    rules.append(_riser_rule(N, 1 - Fraction(1, 2**N), one))
    return _CellAssembler(strips, rules).assemble()


def truncation_modified_slots(S: SurfaceComplex, N: int) -> frozenset[Slot]:
    """Slots whose gluing at stage N differs from every deeper stage.

    Deeper stages refine exactly three rules: the top pieces over the
    doubled tail [1-2^-N, 1] (their exchange gets subdivided), the
    leftover bank piece of Sigma below 2^-N, and the leftover riser
    {1} x [1-2^-N, 1]; gluing partners are marked with them.  Interior
    edges are never marked — away from these rules the stages are
    isometric."""
    eps = Fraction(1, 2**N)
    marked: set[Slot] = set()
    for ti, tri in enumerate(S.triangles):
        left_cell = all(p.x <= HALF for p in tri)
        for e in range(3):
            a, b = tri[e], tri[(e + 1) % 3]
            on_tail_top = a.y == 1 and b.y == 1 and min(a.x, b.x) >= 1 - eps
            # only the left bank of Sigma is refined below 2^-N; the
            # facing right-bank strip is riser_1's landing in every stage
            on_bank = (
                left_cell
                and a.x == HALF
                and b.x == HALF
                and max(a.y, b.y) <= eps
            )
            on_riser = a.x == 1 and b.x == 1 and min(a.y, b.y) >= 1 - eps
            if on_tail_top or on_bank or on_riser:
                marked.add((ti, e))
    marked |= {S.gluings[s] for s in marked}
    return frozenset(marked)


def truncation_end_report(N: int) -> dict:
    """How the stage-N modifications sit inside the surface.

    All gluings that deeper stages refine must lie within Chebyshev
    distance 2^{1-N} of the accumulation loci (the right edge, the foot
    of Sigma, and the two bank accumulation points (1/2, 1/3) and
    (0, 2/3)); the complement of that neighbourhood is then a compact
    piece shared isometrically with every later stage.  The
    neighbourhood itself must be connected through the gluings — the
    single-end witness."""
    S = build_limit_truncation(N)
    modified = truncation_modified_slots(S, N)
    bound = Fraction(2, 2**N)

    # accumulation loci, each on one bank of the cut: the right-edge
    # column, the foot of Sigma seen from the left, the right-bank point
    # (1/2, 1/3) and the left-edge point (0, 2/3)
    loci = {
        "L": [Pt(HALF, Fraction(0)), Pt(Fraction(0), Fraction(2, 3))],
        "R": [Pt(HALF, Fraction(1, 3))],
    }

    def tri_side(t: int) -> str:
        return "R" if any(p.x > HALF for p in S.triangles[t]) else "L"

    def dist(p: Pt, side: str) -> Fraction:
        best = abs(1 - p.x) if side == "R" else Fraction(1)
        for q in loci[side]:
            d = max(abs(p.x - q.x), abs(p.y - q.y))
            if d < best:
                best = d
        return best

    radius = Fraction(0)
    for t, e in modified:
        side = tri_side(t)
        for p in (S.triangles[t][e], S.triangles[t][(e + 1) % 3]):
            d = dist(p, side)
            if d > radius:
                radius = d

    hood = sorted(
        t
        for t in range(len(S.triangles))
        if any(dist(p, tri_side(t)) <= bound for p in S.triangles[t])
    )
    index = {t: k for k, t in enumerate(hood)}
    parent = list(range(len(hood)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    hood_set = set(hood)
    for t in hood:
        for e in range(3):
            u, _ = S.gluings[(t, e)]
            if u in hood_set:
                ra, rb = find(index[t]), find(index[u])
                if ra != rb:
                    parent[ra] = rb
    components = len({find(k) for k in range(len(hood))})
    return {
        "N": N,
        "modified_slots": len(modified),
        "modified_triangles": len({t for t, _ in modified}),
        "radius": radius,
        "radius_bound": bound,
        "within_bound": radius <= bound,
        "neighborhood_triangles": len(hood),
        "end_components": components,
    }


_LIMIT_VERTEX_TABLE = {
    ("P", 0): (Fraction(1, 2), Fraction(1, 2)),
    ("Q", 0): (Fraction(0), Fraction(1, 2)),
    ("P", 1): (Fraction(0), Fraction(3, 4)),
}


def limit_vertex(label: str, primed: bool = False) -> Pt:
    """Limit position of a triangulation vertex, e.g. ``limit_vertex("Q2")``.

    P_i -> (1 - 2^{1-i}, 1) for i >= 2 and Q_i -> (1 - 3*2^{-i-1}, 1) for
    i >= 1; P_0, Q_0, P_1 have the fixed limits (1/2,1/2), (0,1/2), (0,3/4).
    ``primed`` mirrors the result through y -> -y.
    """
    kind, idx = label[0].upper(), int(label[1:])
    if kind not in ("P", "Q") or idx < 0:
        raise ValueError(f"unknown vertex label {label!r}")
    if (kind, idx) in _LIMIT_VERTEX_TABLE:
        x, y = _LIMIT_VERTEX_TABLE[(kind, idx)]
    elif kind == "P":
        x, y = 1 - Fraction(2, 2**idx), Fraction(1)
    else:
        x, y = 1 - Fraction(3, 2 ** (idx + 1)), Fraction(1)
    return Pt(x, -y if primed else y)


@dataclass(frozen=True)
class ConvergenceRow:
    g: int
    label: str
    deviation_sq: object
    bound_sq: Fraction
    ok: bool


@dataclass(frozen=True)
class ConvergenceReport:
    rows: tuple[ConvergenceRow, ...]
    max_monotone: bool

    @property
    def ok(self) -> bool:
        return self.max_monotone and all(r.ok for r in self.rows)


def vertex_convergence_check(g_max: int, i_max: int = 3, g_min: int = 4) -> ConvergenceReport:
    """Exact squared deviations of the genus-g triangle vertices from their
    limit positions, against the bound (8 * 2^-g)^2, together with a
    cross-field check that the worst deviation decreases with g.

    Only the labels with a fixed limit are compared: P0, Q0, P1 and
    P_i, Q_i for 2 <= i <= min(i_max, g-1) (1 <= i for Q)."""
    rows: list[ConvergenceRow] = []
    maxima = []
    for g in range(g_min, g_max + 1):
        P, Q = triangle_vertices(g)
        labels: list[tuple[str, Pt]] = [
            ("P0", P[0]),
            ("Q0", Q[0]),
            ("P1", P[1]),
        ]
        for i in range(2, min(i_max, g - 1) + 1):
            labels.append((f"P{i}", P[i]))
        for i in range(1, min(i_max, g - 1) + 1):
            labels.append((f"Q{i}", Q[i]))
        bound = Fraction(64, 4**g)
        worst = None
        for name, pt in labels:
            lim = limit_vertex(name)
            dx = pt.x - lim.x
            dy = pt.y - lim.y
            dev = dx * dx + dy * dy
            ok = _sign_of(bound - dev) >= 0
            rows.append(ConvergenceRow(g, name, dev, bound, ok))
            if worst is None or _sign_of(dev - worst) > 0:
                worst = dev
        maxima.append(worst)
    monotone = all(
        compare_values(later, earlier) < 0
        for earlier, later in zip(maxima, maxima[1:])
    )
    return ConvergenceReport(tuple(rows), monotone)
