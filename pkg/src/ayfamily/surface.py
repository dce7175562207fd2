"""Translation surfaces as triangulated complexes with exact coordinates.

A :class:`SurfaceComplex` is a finite list of planar triangles (vertices in
counterclockwise order, coordinates in Q(alpha_g)^2 or Q^2) together with a
gluing involution on directed edges.  Glued edges are translates of each
other with opposite orientation, so the quotient is a translation surface;
everything downstream — vertex classes, cone windings, Euler
characteristic, straight-line tracing, induced interval exchanges, saddle
connections — is computed combinatorially with exact sign tests and no
floating point.

Edge conventions.  Edge e of triangle t runs from vertex e to vertex
(e+1) % 3; a *slot* is the pair (t, e).  A gluing identifies slot (t, e)
with slot (t', e') traversed backwards: the start of one edge is the end
of the other, and the edge vectors are exact negatives.

Corner walk.  The corners around a surface vertex are enumerated by
corner (t, i) -> gluing[(t, (i+2) % 3)], read as a corner; orbits of this
walk are the vertex classes, and the total cone angle of a class is 2*pi
times the number of times the corner wedges sweep past a fixed reference
direction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

from .iet import InductionCapError, IntervalExchange
from .numfield import Field, NFElem, elem_from_strings, field

Coord = Union[Fraction, NFElem]
Slot = tuple[int, int]

#: Default budgets: trace events and saddle-search nodes.
TRACE_BUDGET = 10**5
SEARCH_BUDGET = 10**6
RETURN_CAP = 10**6


class Pt:
    """A planar point (or vector) with exact coordinates."""

    __slots__ = ("x", "y")

    def __init__(self, x: "Coord | int", y: "Coord | int") -> None:
        self.x = Fraction(x) if isinstance(x, int) else x
        self.y = Fraction(y) if isinstance(y, int) else y

    def __add__(self, other: "Pt") -> "Pt":
        return Pt(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Pt") -> "Pt":
        return Pt(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Pt":
        return Pt(-self.x, -self.y)

    def cross(self, other: "Pt") -> Coord:
        return self.x * other.y - self.y * other.x

    def dot(self, other: "Pt") -> Coord:
        return self.x * other.x + self.y * other.y

    def norm2(self) -> Coord:
        return self.x * self.x + self.y * self.y

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Pt):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        return hash((self.x, self.y))

    def __repr__(self) -> str:
        return f"Pt({self.x!r}, {self.y!r})"


Triangle = tuple[Pt, Pt, Pt]


def _sign_of(v: Coord) -> int:
    if isinstance(v, NFElem):
        return v.sign()
    return -1 if v < 0 else (1 if v > 0 else 0)


_sign = _sign_of


@dataclass
class ValidationReport:
    ok: bool
    problems: list[str]


@dataclass(frozen=True)
class ComponentReport:
    """Euler data of one connected component of the complex."""

    triangles: tuple[int, ...]
    vertices: int
    edges: int
    faces: int
    chi: int
    genus: int


@dataclass(frozen=True)
class TraceResult:
    kind: str  # "hits_singularity" | "returns_to_section" | "exceeds_budget"
    param_length: Coord  # s such that total displacement = s * direction
    crossings: tuple[Slot, ...]
    end_triangle: Optional[int]
    end_point: Optional[Pt]
    end_vertex_class: Optional[int]
    visited: frozenset[int]

    def displacement(self, direction: Pt) -> Pt:
        return Pt(self.param_length * direction.x, self.param_length * direction.y)


@dataclass(frozen=True)
class SaddleConnection:
    vector: Pt
    start_class: int
    end_class: int
    via: str  # "edge" | "interior"


class SurfaceComplex:
    """A translation surface built from glued planar triangles.

    ``triangles``: sequence of (Pt, Pt, Pt), counterclockwise.
    ``gluings``: dict from slot to slot, a fixed-point-free involution
    covering every slot exactly once.
    """

    def __init__(self, triangles: Sequence[Triangle], gluings: dict[Slot, Slot]) -> None:
        self.triangles: tuple[Triangle, ...] = tuple(
            (tuple(tri)) for tri in triangles  # type: ignore[misc]
        )
        self.gluings: dict[Slot, Slot] = dict(gluings)

    # -- geometry of slots -------------------------------------------------

    def edge_endpoints(self, slot: Slot) -> tuple[Pt, Pt]:
        t, e = slot
        tri = self.triangles[t]
        return tri[e], tri[(e + 1) % 3]

    def edge_vector(self, slot: Slot) -> Pt:
        a, b = self.edge_endpoints(slot)
        return b - a

    def gluing_shift(self, slot: Slot) -> Pt:
        """Translation applied to a point when it crosses ``slot`` outward."""
        t2, e2 = self.gluings[slot]
        a, _ = self.edge_endpoints(slot)
        _, b2 = self.edge_endpoints((t2, e2))
        return b2 - a

    # -- validation ---------------------------------------------------------

    def validate(self) -> ValidationReport:
        """Exact structural checks; returns a report instead of raising."""
        problems: list[str] = []
        for t, tri in enumerate(self.triangles):
            if len(tri) != 3:
                problems.append(f"triangle {t} does not have three vertices")
                continue
            area2 = (tri[1] - tri[0]).cross(tri[2] - tri[0])
            sign = _sign_of(area2)
            if sign == 0:
                problems.append(f"triangle {t} is degenerate")
            elif sign < 0:
                problems.append(f"triangle {t} is clockwise; expected counterclockwise")
        slots = {(t, e) for t in range(len(self.triangles)) for e in range(3)}
        if set(self.gluings) != slots:
            missing = sorted(slots - set(self.gluings))
            extra = sorted(set(self.gluings) - slots)
            if missing:
                problems.append(f"unglued edges: {missing[:4]}")
            if extra:
                problems.append(f"gluings reference unknown slots: {extra[:4]}")
            return ValidationReport(False, problems)
        for slot, partner in self.gluings.items():
            if partner == slot:
                problems.append(f"edge {slot} glued to itself")
            elif self.gluings.get(partner) != slot:
                problems.append(f"gluing not an involution at {slot} -> {partner}")
        for slot, partner in self.gluings.items():
            if slot < partner:
                v = self.edge_vector(slot)
                w = self.edge_vector(partner)
                if v + w != Pt(0, 0):
                    problems.append(
                        f"glued edges {slot} and {partner} are not opposite translates"
                    )
        return ValidationReport(not problems, problems)

    def require_valid(self) -> None:
        report = self.validate()
        if not report.ok:
            raise ValueError("invalid surface complex: " + "; ".join(report.problems))

    # -- vertex classes and windings -----------------------------------------

    def next_corner(self, corner: Slot) -> Slot:
        """The next corner counterclockwise around the same surface vertex."""
        t, i = corner
        return self.gluings[(t, (i + 2) % 3)]

    @cached_property
    def vertex_classes(self) -> tuple[tuple[Slot, ...], ...]:
        """Orbits of the corner walk; each orbit is one surface vertex."""
        seen: set[Slot] = set()
        classes: list[tuple[Slot, ...]] = []
        for t in range(len(self.triangles)):
            for i in range(3):
                corner = (t, i)
                if corner in seen:
                    continue
                orbit = []
                c = corner
                while c not in seen:
                    seen.add(c)
                    orbit.append(c)
                    c = self.next_corner(c)
                classes.append(tuple(orbit))
        return tuple(classes)

    @cached_property
    def corner_class(self) -> dict[Slot, int]:
        out = {}
        for idx, orbit in enumerate(self.vertex_classes):
            for corner in orbit:
                out[corner] = idx
        return out

    def corner_rays(self, corner: Slot) -> tuple[Pt, Pt]:
        """The two rays of the corner wedge, counterclockwise order."""
        t, i = corner
        tri = self.triangles[t]
        return tri[(i + 1) % 3] - tri[i], tri[(i + 2) % 3] - tri[i]

    def cone_windings(self) -> dict[int, int]:
        """Total cone angle of each vertex class, in units of 2*pi.

        Counts, for a reference direction zeta = (1, q), how many corner
        wedges of the class strictly contain zeta; each full turn of the
        link crosses zeta exactly once.  If zeta is parallel to a wedge
        boundary the count is ambiguous, so q doubles until no parallel
        occurs (there are finitely many edge directions).
        """
        out: dict[int, int] = {}
        for idx, orbit in enumerate(self.vertex_classes):
            q = Fraction(1)
            while True:
                zeta = Pt(Fraction(1), q)
                count = 0
                clean = True
                for corner in orbit:
                    u, w = self.corner_rays(corner)
                    cu = _sign(u.cross(zeta))
                    cw = _sign(zeta.cross(w))
                    if cu == 0 or cw == 0:
                        clean = False
                        break
                    if cu > 0 and cw > 0:
                        count += 1
                if clean:
                    out[idx] = count
                    break
                q *= 2
        return out

    # -- global invariants ------------------------------------------------

    def components(self) -> list[ComponentReport]:
        """Connected components with V, E, F, Euler characteristic, genus."""
        n = len(self.triangles)
        parent = list(range(n))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for (t, _), (t2, _) in self.gluings.items():
            ra, rb = find(t), find(t2)
            if ra != rb:
                parent[ra] = rb
        groups: dict[int, list[int]] = {}
        for t in range(n):
            groups.setdefault(find(t), []).append(t)
        reports = []
        for members in sorted(groups.values()):
            mset = set(members)
            faces = len(members)
            edges = 3 * faces // 2
            vertices = sum(
                1 for orbit in self.vertex_classes if orbit[0][0] in mset
            )
            chi = vertices - edges + faces
            assert chi % 2 == 0, "orientable closed surface must have even chi"
            reports.append(
                ComponentReport(
                    triangles=tuple(members),
                    vertices=vertices,
                    edges=edges,
                    faces=faces,
                    chi=chi,
                    genus=(2 - chi) // 2,
                )
            )
        return reports

    def euler_genus(self) -> ComponentReport:
        """Euler data of the (single) component; raises if disconnected."""
        comps = self.components()
        if len(comps) != 1:
            raise ValueError(f"surface has {len(comps)} components; query components()")
        return comps[0]

    def area(self) -> Coord:
        total: Coord = Fraction(0)
        for tri in self.triangles:
            total = total + (tri[1] - tri[0]).cross(tri[2] - tri[0])
        return total / 2

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        fld = self._field()
        enc = lambda v: fld._coerce(v).coeff_strings()
        pt = lambda p: [enc(p.x), enc(p.y)]
        pairs = sorted(
            [sorted([list(a), list(b)]) for a, b in self.gluings.items() if a < b]
        )
        return {
            "field": {"g": fld.g, "minpoly": [str(c) for c in fld.minpoly]},
            "triangles": [[pt(p) for p in tri] for tri in self.triangles],
            "gluings": pairs,
        }

    @staticmethod
    def from_json(data: dict) -> "SurfaceComplex":
        fld = field(data["field"]["g"])
        dec = lambda items: elem_from_strings(fld, items)
        triangles = [
            tuple(Pt(dec(p[0]), dec(p[1])) for p in tri) for tri in data["triangles"]
        ]
        gluings: dict[Slot, Slot] = {}
        for (a, b) in data["gluings"]:
            sa, sb = (a[0], a[1]), (b[0], b[1])
            gluings[sa] = sb
            gluings[sb] = sa
        return SurfaceComplex(triangles, gluings)

    def _field(self) -> Field:
        for tri in self.triangles:
            for p in tri:
                for v in (p.x, p.y):
                    if isinstance(v, NFElem):
                        return v.field
        return field(1)

    def __repr__(self) -> str:
        return f"SurfaceComplex(triangles={len(self.triangles)})"


# ----------------------------------------------------------------------
# straight-line tracing


def _point_on_edge(a: Pt, b: Pt, p: Pt) -> bool:
    ab = b - a
    ap = p - a
    if _sign(ab.cross(ap)) != 0:
        return False
    t_num = ap.dot(ab)
    t_den = ab.norm2()
    return 0 <= t_num and t_num <= t_den


def trace(
    S: SurfaceComplex,
    triangle: int,
    point: Pt,
    direction: Pt,
    budget: int = TRACE_BUDGET,
    section: Iterable[Slot] = (),
) -> TraceResult:
    """Follow the straight line from ``point`` in ``direction`` exactly.

    The trajectory crosses gluings by translation.  It ends when it

    * hits a vertex whose class has winding != 1 (``hits_singularity``) —
      vertices of winding 1 are flat marked points and are passed through,
      straight, including along edges;
    * lands on one of the ``section`` slots (``returns_to_section``);
    * exceeds ``budget`` crossing/vertex events (``exceeds_budget``).

    Starting exactly at a vertex is allowed: the trajectory departs along
    ``direction`` (a separatrix when the start is singular).
    """
    S.require_valid()
    if direction == Pt(0, 0):
        raise ValueError("direction must be nonzero")
    section_set = frozenset(section)
    windings = S.cone_windings()
    tri_idx = triangle
    pos = point
    s_total: Coord = Fraction(0)
    crossings: list[Slot] = []
    visited = {tri_idx}
    steps = 0

    def result(kind: str, end_class: Optional[int]) -> TraceResult:
        return TraceResult(
            kind=kind,
            param_length=s_total,
            crossings=tuple(crossings),
            end_triangle=tri_idx,
            end_point=pos,
            end_vertex_class=end_class,
            visited=frozenset(visited),
        )

    # If the start point coincides with a vertex, depart through the wedge.
    at_vertex = None
    tri = S.triangles[tri_idx]
    for i in range(3):
        if pos == tri[i]:
            at_vertex = S.corner_class[(tri_idx, i)]
            break
    else:
        # If on an edge with the direction pointing strictly outward, hop
        # through the gluing before stepping.
        for e in range(3):
            a, b = S.edge_endpoints((tri_idx, e))
            if _point_on_edge(a, b, pos) and _sign((b - a).cross(direction)) < 0:
                shift = S.gluing_shift((tri_idx, e))
                crossings.append((tri_idx, e))
                tri_idx = S.gluings[(tri_idx, e)][0]
                pos = pos + shift
                visited.add(tri_idx)
                break

    while True:
        steps += 1
        if steps > budget:
            return result("exceeds_budget", None)

        if at_vertex is not None:
            # depart from a vertex class along `direction`
            cls = at_vertex
            at_vertex = None
            move = _depart_vertex(S, cls, direction)
            if move is None:
                raise RuntimeError("no wedge contains the direction; invalid complex")
            kind, corner = move
            tri_idx, i = corner
            visited.add(tri_idx)
            tri = S.triangles[tri_idx]
            pos = tri[i]
            if kind == "ride":
                # follow edge (tri_idx, i) to its far endpoint
                vec = S.edge_vector((tri_idx, i))
                s_total = s_total + vec.dot(direction) / direction.norm2()
                crossings.append((tri_idx, i))
                far = (i + 1) % 3
                pos = tri[far]
                end_cls = S.corner_class[(tri_idx, far)]
                if windings[end_cls] != 1:
                    return result("hits_singularity", end_cls)
                at_vertex = end_cls
            continue

        hit = _exit_from(S.triangles[tri_idx], pos, direction)
        if hit is None:
            raise RuntimeError("trajectory failed to exit a triangle; geometry bug")
        s_exit, exit_point, vertex_index, edge_index = hit
        s_total = s_total + s_exit
        pos = exit_point
        if vertex_index is not None:
            cls = S.corner_class[(tri_idx, vertex_index)]
            if windings[cls] != 1:
                return result("hits_singularity", cls)
            at_vertex = cls
            continue
        slot = (tri_idx, edge_index)
        partner = S.gluings[slot]
        crossings.append(slot)
        pos = pos + S.gluing_shift(slot)
        tri_idx = partner[0]
        visited.add(tri_idx)
        if partner in section_set:
            return result("returns_to_section", None)


def _exit_from(tri: Triangle, p: Pt, d: Pt):
    """First exit of the ray p + s*d (s > 0) from a triangle.

    Returns (s, exit point, vertex index or None, edge index or None).
    """
    best = None  # (s, edge, u)
    for e in range(3):
        a = tri[e]
        b = tri[(e + 1) % 3]
        ba = b - a
        den = d.cross(ba)
        if _sign(den) == 0:
            continue  # parallel; collinear rays exit via another edge's endpoint
        ap = a - p
        s = ap.cross(ba) / den
        if not _sign_of(s) > 0:
            continue
        u = ap.cross(d) / den
        su = _sign_of(u)
        su1 = _sign_of(u - 1)
        if su < 0 or su1 > 0:
            continue
        if best is None or s < best[0]:
            best = (s, e, u)
    if best is None:
        return None
    s, e, u = best
    exit_point = Pt(p.x + s * d.x, p.y + s * d.y)
    if _sign_of(u) == 0:
        return s, tri[e], e, None
    if _sign_of(u - 1) == 0:
        return s, tri[(e + 1) % 3], (e + 1) % 3, None
    return s, exit_point, None, e


def _depart_vertex(S: SurfaceComplex, cls: int, d: Pt):
    """Find how the trajectory leaves a vertex class along direction d.

    Returns ("face", corner) when d lies strictly inside the corner's
    wedge, or ("ride", corner) when d points exactly along the corner's
    outgoing edge.  For a winding-1 class exactly one of these applies.
    """
    for corner in S.vertex_classes[cls]:
        u, w = S.corner_rays(corner)
        cu = _sign(u.cross(d))
        if cu == 0:
            if _sign_of(u.dot(d)) > 0:
                return "ride", corner
            continue
        if cu > 0 and _sign(d.cross(w)) > 0:
            return "face", corner
    return None


# ----------------------------------------------------------------------
# induced interval exchange on a horizontal section


def first_return_iet(S: SurfaceComplex, section: Sequence[Slot]) -> IntervalExchange:
    """The interval exchange induced on a horizontal section by upward flow.

    ``section`` lists slots whose edges must be horizontal with the
    triangle interior above (edge vector pointing in +x); together their
    x-ranges must tile an interval [x0, x0 + L).  Intervals of section
    points are pushed upward through the complex, splitting at triangle
    apexes, until they land back on a section slot; the landing positions
    assemble into the return map, with the left-endpoint-inclusive
    convention at every split.
    """
    S.require_valid()
    slots = list(section)
    spans = []
    for slot in slots:
        a, b = S.edge_endpoints(slot)
        if a.y != b.y:
            raise ValueError(f"section slot {slot} is not horizontal")
        if not _sign_of(b.x - a.x) > 0:
            raise ValueError(f"section slot {slot} must have interior above")
        spans.append((a.x, b.x, slot))
    spans.sort(key=lambda sp: _Key(sp[0]))
    x0 = spans[0][0]
    for (a1, b1, _), (a2, _, _) in zip(spans, spans[1:]):
        if b1 != a2:
            raise ValueError("section slots do not tile an interval")
    length = spans[-1][1] - x0
    section_set = frozenset(slots)

    # state: (lo, hi, slot, shift) — section coords in [0, L); the points
    # currently enter `slot`'s triangle through that edge at x = coord + shift
    queue: list[tuple] = [
        (a - x0, b - x0, slot, x0) for a, b, slot in spans
    ]
    pieces: list[tuple[Coord, Coord]] = []
    steps = 0
    while queue:
        steps += 1
        if steps > RETURN_CAP:
            raise InductionCapError(
                f"section return induction exceeded {RETURN_CAP} steps"
            )
        lo, hi, (t, e), shift = queue.pop()
        tri = S.triangles[t]
        apex = tri[(e + 2) % 3]
        apex_coord = apex.x - shift
        # split at the apex; left part exits edge e+2, right part edge e+1
        parts = []
        if _sign_of(apex_coord - lo) <= 0:
            parts.append((lo, hi, (e + 1) % 3))
        elif _sign_of(hi - apex_coord) <= 0:
            parts.append((lo, hi, (e + 2) % 3))
        else:
            parts.append((lo, apex_coord, (e + 2) % 3))
            parts.append((apex_coord, hi, (e + 1) % 3))
        for sub_lo, sub_hi, exit_e in parts:
            exit_slot = (t, exit_e)
            landing = S.gluings[exit_slot]
            new_shift = shift + S.gluing_shift(exit_slot).x
            if landing in section_set:
                pieces.append((sub_lo, new_shift - x0))
            else:
                queue.append((sub_lo, sub_hi, landing, new_shift))
    pieces.sort(key=lambda piece: _Key(piece[0]))
    result = IntervalExchange(length, pieces)
    if not result.is_bijection():
        raise RuntimeError("induced return map fails to tile the section")
    return result


class _Key:
    """Sort key wrapper: exact values are ordered but not all comparable to 0."""

    __slots__ = ("v",)

    def __init__(self, v: Coord) -> None:
        self.v = v

    def __lt__(self, other: "_Key") -> bool:
        return self.v < other.v


# ----------------------------------------------------------------------
# saddle connections


def saddle_connections_up_to(
    S: SurfaceComplex,
    lmax: "Coord | int | None" = None,
    budget: int = SEARCH_BUDGET,
    *,
    norm2_max: "Coord | None" = None,
) -> list[SaddleConnection]:
    """All directed saddle connections with |vector| <= lmax.

    A saddle connection is a straight segment between singular vertices
    (winding != 1) with no complex vertex in its interior; when the
    surface has no singular vertex every class counts (the torus case,
    where connections join the marked point to itself).  Each geometric
    connection is reported twice, once per orientation.

    The cutoff can be given as ``norm2_max``, the exact squared length,
    for bounds whose square root lies outside the coordinate field.

    Connections along triangulation edges are read off the edge list;
    connections through triangle interiors come from developing wedges
    across gluings with exact visibility and distance pruning.
    """
    S.require_valid()
    if (lmax is None) == (norm2_max is None):
        raise ValueError("give exactly one of lmax and norm2_max")
    if norm2_max is not None:
        l2 = norm2_max
    else:
        lmax = Fraction(lmax) if isinstance(lmax, int) else lmax
        l2 = lmax * lmax
    windings = S.cone_windings()
    targets = {idx for idx, w in windings.items() if w != 1}
    if not targets:
        targets = set(windings)
    found: list[SaddleConnection] = []

    # edge connections
    for t in range(len(S.triangles)):
        for e in range(3):
            c_start = S.corner_class[(t, e)]
            c_end = S.corner_class[(t, (e + 1) % 3)]
            if c_start in targets and c_end in targets:
                vec = S.edge_vector((t, e))
                if _sign_of(vec.norm2() - l2) <= 0:
                    found.append(SaddleConnection(vec, c_start, c_end, "edge"))

    # interior connections by wedge development
    nodes = 0
    for cls in sorted(targets):
        for corner in S.vertex_classes[cls]:
            t, i = corner
            tri = S.triangles[t]
            origin = tri[i]
            # develop t so the corner vertex sits at the origin
            d_a = tri[(i + 1) % 3] - origin
            d_b = tri[(i + 2) % 3] - origin
            stack = [(t, (i + 1) % 3, origin, d_a, d_b, d_a, d_b)]
            # entries: (triangle, crossing edge, offset o with developed
            #           vertex v = v_tri - o, wedge w1, wedge w2,
            #           developed crossing-edge endpoints a, b)
            while stack:
                nodes += 1
                if nodes > budget:
                    raise InductionCapError(
                        f"saddle search exceeded {budget} development steps"
                    )
                t_cur, e_cross, off, w1, w2, da, db = stack.pop()
                if not _segment_visible_within(da, db, w1, w2, l2):
                    continue
                t2, e2 = S.gluings[(t_cur, e_cross)]
                tri2 = S.triangles[t2]
                # developed placement: shared edge endpoints map end-to-start
                off2 = tri2[(e2 + 1) % 3] - da
                p = tri2[(e2 + 2) % 3] - off2
                c1 = _sign(w1.cross(p))
                c2 = _sign(p.cross(w2))
                if c1 > 0 and c2 > 0:
                    end_cls = S.corner_class[(t2, (e2 + 2) % 3)]
                    if end_cls in targets and _sign_of(p.norm2() - l2) <= 0:
                        found.append(SaddleConnection(p, cls, end_cls, "interior"))
                    stack.append((t2, (e2 + 1) % 3, off2, w1, p, da, p))
                    stack.append((t2, (e2 + 2) % 3, off2, p, w2, p, db))
                elif c1 <= 0:
                    stack.append((t2, (e2 + 2) % 3, off2, w1, w2, p, db))
                else:
                    stack.append((t2, (e2 + 1) % 3, off2, w1, w2, da, p))
    return found


def _segment_visible_within(a: Pt, b: Pt, w1: Pt, w2: Pt, l2: Coord) -> bool:
    """Is any point of segment [a, b], inside wedge (w1, w2), within sqrt(l2)?"""
    ab = b - a
    # constraint intervals for u in [0,1]: cross(w1, P(u)) >= 0, cross(P(u), w2) >= 0
    lo = Fraction(0)
    hi = Fraction(1)
    for c0, c1 in (
        (w1.cross(a), w1.cross(ab)),
        (a.cross(w2), ab.cross(w2)),
    ):
        s1 = _sign_of(c1)
        if s1 == 0:
            if _sign_of(c0) < 0:
                return False
        elif s1 > 0:
            bound = -c0 / c1
            if _Key(lo) < _Key(bound):
                lo = bound
        else:
            bound = -c0 / c1
            if _Key(bound) < _Key(hi):
                hi = bound
        if not _sign_of(hi - lo) >= 0:
            return False
    # minimize |a + u*ab|^2 over [lo, hi]
    den = ab.norm2()
    u_star = -a.dot(ab) / den
    if _sign_of(u_star - lo) < 0:
        u_star = lo
    elif _sign_of(u_star - hi) > 0:
        u_star = hi
    closest = Pt(a.x + u_star * ab.x, a.y + u_star * ab.y)
    return _sign_of(closest.norm2() - l2) <= 0
