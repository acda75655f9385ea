"""Regular marked subdivisions of a lattice polygon and their secondary-fan data.

A height vector lifts every configuration point into 3-space; projecting the
upper faces of the lifted hull back down gives the regular marked subdivision.
Since configurations are tiny we find the upper faces by exhausting support
planes through point triples, with exact rational arithmetic throughout.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import linalg
from .errors import (
    ConfigurationError,
    NotInUnionError,
    SubdivisionError,
    WrongCodimensionError,
)
from .lattice import (
    Circuit,
    affine_relation_space,
    canonical_key,
    convex_hull,
    orient,
    point_on_segment,
    polygon_area2,
    primitive,
)


def as_heights(config, u):
    heights = tuple(Fraction(x) for x in u)
    if len(heights) != config.size:
        raise ConfigurationError(
            f"height vector has length {len(heights)}, expected {config.size}"
        )
    return heights


@dataclass(frozen=True)
class MarkedCell:
    polygon: tuple  # CCW vertex cycle starting at the canonical-smallest vertex
    marked: tuple   # sorted configuration indices, contains the cell's vertices


@dataclass(frozen=True)
class SubdivisionType:
    """A subdivision with the markings forgotten."""

    cells: tuple  # tuple of vertex cycles


class MarkedSubdivision:
    """Cells with markings; cells cover the polygon and meet in common faces."""

    def __init__(self, config, cells, *, validate=True):
        self.config = config
        norm = []
        for cell in cells:
            if isinstance(cell, MarkedCell):
                poly, marked = cell.polygon, cell.marked
            else:
                poly, marked = cell
            poly = _canon_cycle([tuple(p) for p in poly])
            marked = tuple(sorted(int(i) for i in marked))
            norm.append(MarkedCell(poly, marked))
        norm.sort(key=lambda c: tuple(sorted(canonical_key(p) for p in c.polygon)))
        self.cells = tuple(norm)
        if validate:
            self._validate()

    def _validate(self):
        config = self.config
        area = 0
        seg_count = {}
        for cell in self.cells:
            poly = cell.polygon
            if len(poly) < 3 or polygon_area2(poly) <= 0:
                raise SubdivisionError("cells must be 2-dimensional CCW polygons")
            area += polygon_area2(poly)
            marked_pts = [config.points[i] for i in cell.marked]
            for v in poly:
                if v not in marked_pts:
                    raise SubdivisionError(f"cell vertex {v} is not marked")
            for p in marked_pts:
                if not _in_cycle(p, poly):
                    raise SubdivisionError(f"marked point {p} lies outside its cell")
            for a, b in _edges(poly):
                seg_count.setdefault(frozenset((a, b)), []).append(cell)
        if area != polygon_area2(self.config.polygon):
            raise SubdivisionError("cells do not cover the polygon")
        hull = self.config.polygon
        n = len(hull)
        for seg, owners in seg_count.items():
            a, b = tuple(seg)
            if len(owners) == 1:
                on_boundary = any(
                    point_on_segment(a, hull[i], hull[(i + 1) % n])
                    and point_on_segment(b, hull[i], hull[(i + 1) % n])
                    for i in range(n)
                )
                if not on_boundary:
                    raise SubdivisionError(f"interior segment {a}-{b} has only one cell")
            elif len(owners) == 2:
                left = set(_marked_on_segment(config, owners[0], a, b))
                right = set(_marked_on_segment(config, owners[1], a, b))
                if left != right:
                    raise SubdivisionError(f"markings disagree on shared face {a}-{b}")
            else:
                raise SubdivisionError(f"segment {a}-{b} belongs to {len(owners)} cells")

    def type(self) -> SubdivisionType:
        return SubdivisionType(tuple(c.polygon for c in self.cells))

    def marked_union(self):
        out = set()
        for cell in self.cells:
            out.update(cell.marked)
        return tuple(sorted(out))

    def white_points(self):
        """Configuration indices marked in no cell."""
        marked = set(self.marked_union())
        return tuple(i for i in range(self.config.size) if i not in marked)

    def __eq__(self, other):
        return (
            isinstance(other, MarkedSubdivision)
            and self.config == other.config
            and self.cells == other.cells
        )

    def __hash__(self):
        return hash((self.config, self.cells))

    def __repr__(self):
        return f"MarkedSubdivision({len(self.cells)} cells)"


def _canon_cycle(poly):
    cyc = convex_hull(poly)
    return tuple(cyc)


def _edges(poly):
    n = len(poly)
    return [(poly[i], poly[(i + 1) % n]) for i in range(n)]


def _in_cycle(p, poly):
    n = len(poly)
    return all(orient(poly[i], poly[(i + 1) % n], p) >= 0 for i in range(n))


def _marked_on_segment(config, cell, a, b):
    return [i for i in cell.marked if point_on_segment(config.points[i], a, b)]


def upper_faces(config, u):
    """Upper facets of the lifted configuration.

    Returns a list of (marked_indices, plane) pairs, one per facet, where
    plane = (a, b, c) describes z = a + b*x + c*y and marked_indices are the
    points whose lift lies on that plane.  The list is sorted the same way
    the cells of regular_subdivision are.
    """
    u = as_heights(config, u)
    pts = config.points
    s = config.size
    seen = {}
    for trip in combinations(range(s), 3):
        p, q, r = (pts[i] for i in trip)
        if orient(p, q, r) == 0:
            continue
        plane = linalg.solve(
            [[Fraction(1), Fraction(x), Fraction(y)] for x, y in (p, q, r)],
            [u[i] for i in trip],
        )
        a, b, c = plane
        ok = True
        face = []
        for i, (x, y) in enumerate(pts):
            val = a + b * x + c * y
            if u[i] > val:
                ok = False
                break
            if u[i] == val:
                face.append(i)
        if ok:
            seen[tuple(face)] = plane
    # sorted like MarkedSubdivision sorts its cells, so indices line up
    faces = sorted(
        seen.items(),
        key=lambda item: tuple(
            sorted(canonical_key(p) for p in convex_hull([pts[i] for i in item[0]]))
        ),
    )
    return faces


def regular_subdivision(config, u) -> MarkedSubdivision:
    """Marked subdivision induced by the heights u (upper, so larger wins)."""
    cells = []
    for face, _plane in upper_faces(config, u):
        poly = convex_hull([config.points[i] for i in face])
        cells.append(MarkedCell(tuple(poly), tuple(face)))
    return MarkedSubdivision(config, cells, validate=False)


@dataclass(frozen=True)
class ConeInfo:
    codimension: int
    white_points: tuple
    lt_dim: int
    lt_basis: tuple  # basis of the summed per-cell relation spaces


def cone_info(ms: MarkedSubdivision) -> ConeInfo:
    """Codimension of the secondary-fan cone of ms, with its relation space."""
    stacked = []
    for cell in ms.cells:
        stacked.extend(affine_relation_space(ms.config, cell.marked))
    basis = [list(v) for v in linalg.rref(stacked)[0]] if stacked else []
    basis = tuple(tuple(row) for row in basis)
    dim = len(basis)
    return ConeInfo(dim, ms.white_points(), dim, basis)


def lineality_basis(config):
    """The two height vectors spanning the secondary fan's lineality (mod all-ones)."""
    return config.x_vector(), config.y_vector()


def _circuit_face_cell(ms, z: Circuit):
    """Cell witnessing that the circuit is a cell or a cell face, else None."""
    config = ms.config
    zpts = [config.points[i] for i in z.indices]
    hull = convex_hull(zpts)
    for cell in ms.cells:
        if not set(z.indices) <= set(cell.marked):
            continue
        if z.kind in ("A", "B"):
            if tuple(hull) == cell.polygon:
                return cell
        else:
            ends = frozenset((hull[0], hull[-1])) if len(hull) == 2 else None
            if ends is None:
                a = min(zpts, key=canonical_key)
                b = max(zpts, key=canonical_key)
                ends = frozenset((a, b))
            for e in _edges(cell.polygon):
                if frozenset(e) == ends:
                    return cell
    return None


def decompose_weightclass_lineality(config, u, z: Circuit):
    """Split u into a weight-class representative plus lineality directions.

    Returns (u_wc, c_x, c_y, c_1) with u = u_wc + c_x*x + c_y*y + c_1*ones,
    where u_wc has the circuit heights equal and maximal and, for collinear
    circuits, the off-line maximum attained at least twice.  The rotation
    constant is the smallest admissible one in absolute value (nonnegative
    preferred), and c_1 is always 0 since weight classes absorb constant
    shifts.  Raises NotInUnionError for the excluded boundary-circuit cones.
    """
    u = as_heights(config, u)
    ms = regular_subdivision(config, u)
    if _circuit_face_cell(ms, z) is None:
        raise ConfigurationError("subdivision of u does not contain the circuit")
    pts = config.points
    zidx = list(z.indices)
    if z.kind in ("A", "B"):
        trip = None
        for cand in combinations(zidx, 3):
            if orient(pts[cand[0]], pts[cand[1]], pts[cand[2]]) != 0:
                trip = cand
                break
        a, b, c = linalg.solve(
            [[Fraction(1), Fraction(pts[i][0]), Fraction(pts[i][1])] for i in trip],
            [u[i] for i in trip],
        )
        rest = [i for i in zidx if i not in trip]
        for i in rest:
            if u[i] != a + b * pts[i][0] + c * pts[i][1]:
                raise ConfigurationError("circuit heights are not coplanar")
        u_wc = tuple(u[i] - b * pts[i][0] - c * pts[i][1] for i in range(config.size))
        return u_wc, b, c, Fraction(0)

    # Collinear circuit: equalize along the line, then rotate across it.
    p0, p1 = pts[zidx[0]], pts[zidx[1]]
    e = (p1[0] - p0[0], p1[1] - p0[1])
    ee = e[0] * e[0] + e[1] * e[1]
    t = Fraction(u[zidx[1]] - u[zidx[0]], 1) / ee
    cx, cy = t * e[0], t * e[1]
    up = [u[i] - cx * pts[i][0] - cy * pts[i][1] for i in range(config.size)]
    if any(up[i] != up[zidx[0]] for i in zidx[1:]):
        raise ConfigurationError("circuit heights are not collinear in the lift")

    n = primitive((-e[1], e[0]))
    base = n[0] * p0[0] + n[1] * p0[1]
    level = [n[0] * p[0] + n[1] * p[1] - base for p in pts]
    o0 = up[zidx[0]]
    if any(level[i] == 0 and up[i] > o0 for i in range(config.size)):
        raise ConfigurationError("circuit is not maximal on its own line")

    per_level = {}
    for i in range(config.size):
        if level[i] != 0:
            per_level.setdefault(level[i], []).append(up[i])
    if not per_level:
        raise ConfigurationError("configuration degenerates to the circuit line")
    omax = {k: max(vals) for k, vals in per_level.items()}
    multi = {k for k, vals in per_level.items() if vals.count(omax[k]) >= 2}

    def dominance_bounds():
        lo, hi = None, None
        for k, ok in omax.items():
            bound = Fraction(o0 - ok, k)
            if k > 0:
                hi = bound if hi is None else min(hi, bound)
            else:
                lo = bound if lo is None else max(lo, bound)
        return lo, hi

    def valid(tr):
        best = None
        for k, ok in omax.items():
            val = ok + tr * k
            if val > o0:
                return False
            if best is None or val > best:
                best = val
        count = 0
        for k, vals in per_level.items():
            if omax[k] + tr * k == best:
                count += sum(1 for v in vals if v == omax[k])
        return count >= 2

    candidates = {Fraction(0)}
    for k, l in combinations(sorted(omax), 2):
        candidates.add(Fraction(omax[k] - omax[l], l - k))
    lo, hi = dominance_bounds()
    for k in multi:
        # interval of rotations keeping level k on top and dominated
        klo, khi = lo, hi
        for l, ol in omax.items():
            if l == k:
                continue
            bound = Fraction(ol - omax[k], k - l)
            if k - l > 0:
                klo = bound if klo is None else max(klo, bound)
            else:
                khi = bound if khi is None else min(khi, bound)
        if klo is not None and khi is not None and klo > khi:
            continue
        pick = Fraction(0)
        if klo is not None and pick < klo:
            pick = klo
        if khi is not None and pick > khi:
            pick = khi
        candidates.add(pick)
    usable = [tr for tr in candidates if valid(tr)]
    if not usable:
        raise NotInUnionError(
            "no rotation places the height vector in an admissible weight class"
        )
    rot = min(usable, key=lambda tr: (abs(tr), tr < 0))
    # rotated heights are up + rot*level, i.e. u minus (cx, cy) dotted below
    cx -= rot * n[0]
    cy -= rot * n[1]
    u_wc = tuple(u[i] - cx * pts[i][0] - cy * pts[i][1] for i in range(config.size))
    return u_wc, cx, cy, Fraction(0)


def codim1_circuit(ms: MarkedSubdivision) -> Circuit:
    """The unique circuit of a codimension-one marked subdivision."""
    info = cone_info(ms)
    if info.codimension != 1:
        raise WrongCodimensionError(f"expected codimension 1, got {info.codimension}")
    relation = info.lt_basis[0]
    support = tuple(i for i, x in enumerate(relation) if x != 0)
    pts = [ms.config.points[i] for i in support]
    if len(support) == 3:
        kind = "C"
    else:
        kind = "B" if len(convex_hull(pts)) == 4 else "A"
    return Circuit(support, kind)


def minimal_line_distance(config, n, base) -> int:
    """Smallest positive lattice distance of a configuration point to the line."""
    dists = [
        abs(n[0] * p[0] + n[1] * p[1] - base)
        for p in config.points
        if n[0] * p[0] + n[1] * p[1] != base
    ]
    return min(dists)


def is_discriminant_cone(ms: MarkedSubdivision) -> bool:
    """Whether the codim-1 cone of ms belongs to the tropical discriminant.

    Quadrangle and interior-point circuits always qualify; a collinear circuit
    fails only when it lies on the polygon boundary and the triangle over it
    has its apex at minimal lattice distance.  For neighbouring triangulations
    this test negated on their common face decides Delta-equivalence.
    """
    z = codim1_circuit(ms)
    if z.kind in ("A", "B"):
        return True
    config = ms.config
    pts = [config.points[i] for i in z.indices]
    d = primitive((pts[1][0] - pts[0][0], pts[1][1] - pts[0][1]))
    n = primitive((-d[1], d[0]))
    base = n[0] * pts[0][0] + n[1] * pts[0][1]
    levels = [n[0] * p[0] + n[1] * p[1] - base for p in config.points]
    if any(l > 0 for l in levels) and any(l < 0 for l in levels):
        return True
    cell = _circuit_face_cell(ms, z)
    if cell is None:
        raise SubdivisionError("codim-1 subdivision does not expose its circuit")
    apex_levels = [
        abs(n[0] * v[0] + n[1] * v[1] - base)
        for v in cell.polygon
        if n[0] * v[0] + n[1] * v[1] != base
    ]
    return min(apex_levels) != minimal_line_distance(config, n, base)
