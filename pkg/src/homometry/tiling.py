"""Tilings (M, L, T): verification, thin directions, widths, condition checks.

A tiling is a triple of an ambient lattice M, a translation lattice L ⊆ M
and a finite M-convex tile T with M = L ⊕ T.  The thin-direction set

    W(T, L) = {u in L* \\ {o} : w(T, u) < 1}

drives every convexity condition here.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg, pointset, polytope
from ._kernels import box_scan
from .errors import (
    LowerDimensionalError,
    LowerDimensionalTileError,
    NotASublatticeError,
    NotATilingError,
    NotInLatticeError,
    NotLatticeConvexError,
    SingularMatrixError,
    UnsupportedDimensionError,
)
from .lattice import Lattice, index
from .linalg import Vec, mat, mat_vec, transpose, vadd, vdot, vec, vsub
from .pointset import PointSet


@dataclass(frozen=True)
class Tiling:
    ambient: Lattice  # M
    translations: Lattice  # L
    tile: PointSet  # T
    verified: bool = False

    def to_json(self):
        return {
            "M": self.ambient.to_json(),
            "L": self.translations.to_json(),
            "T": self.tile.to_json(),
        }


@dataclass(frozen=True)
class WSetResult:
    vectors: tuple[Vec, ...]
    widths: dict

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __contains__(self, u):
        return vec(u) in self.widths


def width_of(obj, u) -> Fraction:
    """w(K, u) = h(K, u) + h(K, -u) for a PointSet or Polytope."""
    u = vec(u)
    pts = obj.vertices if isinstance(obj, polytope.Polytope) else obj.points
    vals = [vdot(u, p) for p in pts]
    return max(vals) - min(vals)


def verify_tiling(ambient: Lattice, translations: Lattice, tile: PointSet) -> Tiling:
    """Checks M = L ⊕ T with an M-convex tile and returns the verified triple.

    The direct-sum condition is decided by counting: T must hit each of the
    index-many cosets of L in M exactly once.
    """
    if not (ambient.dim == translations.dim == tile.dim):
        raise ValueError("dimension mismatch between lattices and tile")
    if not translations.is_sublattice_of(ambient):
        raise NotASublatticeError("L is not a sublattice of M")
    for p in tile.points:
        if not ambient.contains(p):
            raise NotATilingError(f"tile point {p} is outside M", witness=p)
    idx = index(translations, ambient)
    if len(tile) != idx:
        raise NotATilingError(
            f"tile has {len(tile)} points but the index [M:L] is {idx}"
        )
    seen = {}
    for p in tile.points:
        r = translations.canonical_residue(p)
        if r in seen:
            raise NotATilingError(
                f"tile points {seen[r]} and {p} lie in the same coset of L",
                witness=(seen[r], p),
            )
        seen[r] = p
    gap = pointset.lattice_convexity_witness(tile, ambient)
    if gap is not None:
        raise NotLatticeConvexError(f"tile misses the M-point {gap}", witness=gap)
    return Tiling(ambient, translations, tile, verified=True)


# -- thin directions -------------------------------------------------------


def _independent_differences(points: tuple[Vec, ...]) -> list[Vec]:
    """Greedy linearly independent difference vectors from the lexmin anchor."""
    anchor = points[0]
    dirs: list[Vec] = []
    echelon: list[list[Fraction]] = []
    for p in points[1:]:
        row = list(vsub(p, anchor))
        for b in echelon:
            lead = next(i for i, e in enumerate(b) if e != 0)
            if row[lead]:
                f = row[lead] / b[lead]
                row = [x - f * y for x, y in zip(row, b)]
        if any(e != 0 for e in row):
            dirs.append(vsub(p, anchor))
            echelon.append(row)
    return dirs


def _thin_candidates(lat: Lattice, points: tuple[Vec, ...], bound: Fraction, strict: bool):
    """All u in L* that could satisfy w(K, u) < bound (or <= without strict).

    Any such u has |<u, v>| bounded by `bound` on every difference vector v,
    so its coefficients in the dual basis live in an explicit finite box.
    """
    d = lat.dim
    dirs = _independent_differences(points)
    if len(dirs) < d:
        raise LowerDimensionalError("point set is not full-dimensional")
    bstar = linalg.dual_basis(lat.basis)
    g = tuple(tuple(vdot(v, col) for v in dirs) for col in bstar)  # columns
    ginv = linalg.inverse(g)
    ranges = []
    for j in range(d):
        r = sum(abs(ginv[k][j]) for k in range(d)) * bound
        top = math.ceil(r) - 1 if strict else math.floor(r)
        ranges.append(range(-top, top + 1))
    for m in itertools.product(*ranges):
        if any(m):
            yield mat_vec(bstar, m)


def w_set(tile: PointSet, lat: Lattice) -> WSetResult:
    """The exact finite set W(T, L) with the width of every member."""
    hull = tile.hull()
    if hull.dim < lat.dim:
        raise LowerDimensionalTileError(
            "W is infinite for tiles that do not span the space"
        )
    found = {}
    for u in _thin_candidates(lat, tile.points, Fraction(1), strict=True):
        w = width_of(hull, u)
        if w < 1:
            found[u] = w
    return WSetResult(vectors=tuple(sorted(found)), widths=found)


def lattice_width(obj, lat: Lattice) -> tuple[Fraction, Vec]:
    """min of w(K, u) over u in L* \\ {o}, with a witnessing minimizer.

    Flat sets get width 0 together with an orthogonal dual vector (always
    present for rational data).
    """
    pts = obj.vertices if isinstance(obj, polytope.Polytope) else obj.points
    d = lat.dim
    dirs = _independent_differences(pts)
    bstar = linalg.dual_basis(lat.basis)
    if len(dirs) < d:
        rows = tuple(tuple(vdot(v, col) for col in bstar) for v in dirs)
        if not rows:  # single point: any dual vector works
            u = bstar[0]
            return Fraction(0), u
        kernel = linalg.nullspace(rows)
        m = linalg.primitive_integer_direction(kernel[0])
        return Fraction(0), mat_vec(bstar, m)
    w0 = min(width_of(obj, col) for col in bstar)
    best = None
    for u in _thin_candidates(lat, pts, w0, strict=False):
        w = width_of(obj, u)
        if best is None or w < best[0] or (w == best[0] and u < best[1]):
            best = (w, u)
    return best


# -- Dirichlet cells and tile enumeration -----------------------------------


def _strict_floor_rhs(rhs: Fraction) -> int:
    """Integer b so that for integral values v: v > rhs  <=>  -v <= b."""
    return -(math.floor(rhs) + 1)


def dirichlet_tile(ambient: Lattice, cell_basis, v) -> PointSet:
    """Points of M inside the half-open cell v + (0,1] b_1 + ... + (0,1] b_d."""
    cell_basis = mat(cell_basis)
    for col in cell_basis:
        if not ambient.contains(col):
            raise NotInLatticeError(f"cell basis vector {col} is outside M")
    v = vec(v)
    d = ambient.dim
    inv_cell = linalg.inverse(cell_basis)
    corners = []
    for picks in itertools.product((0, 1), repeat=d):
        corner = v
        for take, col in zip(picks, cell_basis):
            if take:
                corner = vadd(corner, col)
        corners.append(mat_vec(ambient.inverse_basis, corner))
    lo = [min(math.floor(c[i]) for c in corners) for i in range(d)]
    hi = [max(math.ceil(c[i]) for c in corners) for i in range(d)]
    # coordinates of x = B_M z in the cell basis: rows of inv_cell applied to x
    rows = []
    t = mat_vec(inv_cell, v)
    for i in range(d):
        row = tuple(
            vdot(tuple(inv_cell[k][i] for k in range(d)), col)
            for col in ambient.basis
        )
        rows.append((row, t[i]))
    le_rows, le_rhs = [], []
    for row, ti in rows:
        scale = math.lcm(ti.denominator, *[e.denominator for e in row])
        irow = tuple(int(e * scale) for e in row)
        # c_i <= 1  ->  row·z <= t_i + 1
        le_rows.append(irow)
        le_rhs.append(int((ti + 1) * scale))
        # c_i > 0   ->  -row·z <= -(floor(t_i * scale) + 1) after scaling
        le_rows.append(tuple(-e for e in irow))
        le_rhs.append(_strict_floor_rhs(ti * scale))
    pts = box_scan(lo, hi, [], [], le_rows, le_rhs, strict=False)
    return PointSet([mat_vec(ambient.basis, z) for z in pts])


def enumerate_tiles_tq(basis) -> list[PointSet]:
    """All candidate tiles T_q of the integer lattice for a sublattice basis.

    The admissible offsets q_i run over {0, ..., L-1} in steps of n_i, the
    gcd of the i-th adjugate row; tiles are the integer points of the closed
    cells sum_i [(q_i+n_i)/L, (q_i+L)/L] b_i, deduplicated.
    """
    basis = mat(basis)
    if not linalg.is_integral(basis):
        raise ValueError("tile enumeration needs an integral basis")
    d = len(basis)
    det = linalg.det(basis)
    if det == 0:
        raise SingularMatrixError("singular basis")
    if det < 0:
        raise ValueError("basis must be positively oriented (det > 0)")
    big_l = int(det)
    adj = linalg.adjugate(basis)
    rows = [tuple(int(adj[j][i]) for j in range(d)) for i in range(d)]
    ns = [math.gcd(*[abs(e) for e in row]) for row in rows]
    seen = set()
    tiles = []
    for q in itertools.product(*[range(0, big_l, n) for n in ns]):
        lo_vals = [q[i] + ns[i] for i in range(d)]
        hi_vals = [q[i] + big_l for i in range(d)]
        corners = []
        for picks in itertools.product((0, 1), repeat=d):
            c = tuple(
                Fraction(hi_vals[i] if picks[i] else lo_vals[i], big_l)
                for i in range(d)
            )
            corners.append(mat_vec(basis, c))
        lo = [min(math.floor(c[i]) for c in corners) for i in range(d)]
        hi = [max(math.ceil(c[i]) for c in corners) for i in range(d)]
        le_rows, le_rhs = [], []
        for i in range(d):
            le_rows.append(rows[i])
            le_rhs.append(hi_vals[i])
            le_rows.append(tuple(-e for e in rows[i]))
            le_rhs.append(-lo_vals[i])
        pts = box_scan(lo, hi, [], [], le_rows, le_rhs, strict=False)
        if not pts:
            continue
        key = frozenset(pts)
        if key not in seen:
            seen.add(key)
            tiles.append(PointSet(pts))
    return sorted(tiles, key=lambda t: t.points)


# -- the sufficient/necessary convexity conditions ---------------------------


def _require_verified(t: Tiling):
    if not t.verified:
        raise ValueError("tiling must come from verify_tiling")


def _facet_normals_in_dual(s_hull: polytope.Polytope, dual: Lattice):
    """Primitive outer facet normals of conv(S), as elements of L*."""
    return [dual.primitive_parallel(a) for a, _ in s_hull.facets()]


def check_condition_a(s: PointSet, t: Tiling) -> bool:
    holds, _ = condition_a_witness(s, t)
    return holds


def condition_a_witness(s: PointSet, t: Tiling):
    """(holds, witness): witness is a facet normal of width >= 1 if any."""
    _require_verified(t)
    lat = t.translations
    for p in s.points:
        if not lat.contains(p):
            raise NotInLatticeError(f"S point {p} is outside L")
    s_hull = s.hull()
    if not s_hull.is_full_dimensional():
        raise LowerDimensionalError("S must be full-dimensional")
    if not pointset.is_lattice_convex(s, lat):
        return False, None
    tile_hull = t.tile.hull()
    for u in _facet_normals_in_dual(s_hull, lat.dual()):
        if width_of(tile_hull, u) >= 1:
            return False, u
    return True, None


def check_condition_b(s: PointSet, t: Tiling) -> bool:
    holds, _ = condition_b_witness(s, t)
    return holds


def condition_b_witness(s: PointSet, t: Tiling):
    """(holds, witness): witness is an M-point of the convexity gap if any."""
    _require_verified(t)
    if not pointset.is_direct_sum(s, t.tile):
        return False, None
    gap = pointset.sum_convexity_witness(s, t.tile, t.ambient)
    return (gap is None), gap


def check_condition_c(s: PointSet, t: Tiling) -> bool:
    holds, _ = condition_c_witness(s, t)
    return holds


def condition_c_witness(s: PointSet, t: Tiling):
    _require_verified(t)
    d = t.ambient.dim
    if d > 3:
        raise UnsupportedDimensionError("condition (c) is implemented for d <= 3")
    lat = t.translations
    for p in s.points:
        if not lat.contains(p):
            raise NotInLatticeError(f"S point {p} is outside L")
    s_hull = s.hull()
    if not s_hull.is_full_dimensional():
        raise LowerDimensionalError("S must be full-dimensional")
    if not pointset.is_lattice_convex(s, lat):
        return False, None
    tile_hull = t.tile.hull()
    dual = lat.dual()
    for a, verts in s_hull.facet_vertex_sets():
        facet = polytope.hull(verts)
        if not affine_covering_test(facet, lat):
            continue
        u = dual.primitive_parallel(vec(a))
        if width_of(tile_hull, u) >= 1:
            return False, u
    return True, None


def check_abc(s: PointSet, t: Tiling):
    """All three condition checks with witnesses, for reporting."""
    a, wa = condition_a_witness(s, t)
    b, wb = condition_b_witness(s, t)
    if t.ambient.dim <= 3:
        c, wc = condition_c_witness(s, t)
    else:
        c, wc = None, None
    return {"a": (a, wa), "b": (b, wb), "c": (c, wc)}


# -- the facet covering test aff(F) ⊆ F + L ----------------------------------


def affine_covering_test(facet: polytope.Polytope, lat: Lattice) -> bool:
    """Whether the affine hull of a facet is covered by its L-translates."""
    d = lat.dim
    if d > 3:
        raise UnsupportedDimensionError("covering test is implemented for d <= 3")
    if facet.dim != d - 1:
        raise ValueError("expected a facet of dimension d-1")
    if d == 2:
        p, q = facet.vertices[0], facet.vertices[-1]
        v = vsub(q, p)
        try:
            prim = lat.primitive_parallel(v)
        except NotInLatticeError:
            return False
        k = next(i for i, e in enumerate(prim) if e != 0)
        ratio = v[k] / prim[k]
        return abs(ratio) >= 1
    return _covering_test_3d(facet, lat)


def _covering_test_3d(facet: polytope.Polytope, lat: Lattice) -> bool:
    f0 = facet.vertices[0]
    dirs = _independent_differences(facet.vertices)
    normal = linalg.nullspace(dirs)[0]
    w_row = tuple(vdot(normal, col) for col in lat.basis)
    w = linalg.primitive_integer_direction(w_row)
    kernel = linalg.integer_kernel(w)
    if len(kernel) != 2:
        return False
    c1 = mat_vec(lat.basis, kernel[0])
    c2 = mat_vec(lat.basis, kernel[1])
    # 2D coordinates on the facet plane
    row_idx = polytope._independent_rows(tuple(dirs), 2)
    sq = tuple(tuple(col[i] for i in row_idx) for col in dirs)
    coord = linalg.inverse(sq)

    def plane_coords(x):
        diff = vsub(x, f0)
        lam = mat_vec(coord, tuple(diff[i] for i in row_idx))
        if mat_vec(tuple(dirs), lam) != diff:
            raise ValueError("point is off the facet plane")
        return lam

    poly = [plane_coords(v) for v in facet.vertices]
    c1_2, c2_2 = plane_coords(vadd(f0, c1)), plane_coords(vadd(f0, c2))
    return _translates_cover_cell(poly, c1_2, c2_2)


# exact 2D polygon helpers ---------------------------------------------------


def _ccw_order(points):
    """Sort points counterclockwise around their centroid, exactly."""
    n = len(points)
    cx = sum(p[0] for p in points) / n
    cy = sum(p[1] for p in points) / n

    def angle_less(p, q):
        px, py = p[0] - cx, p[1] - cy
        qx, qy = q[0] - cx, q[1] - cy
        hp = 0 if (py > 0 or (py == 0 and px > 0)) else 1
        hq = 0 if (qy > 0 or (qy == 0 and qx > 0)) else 1
        if hp != hq:
            return hp < hq
        return px * qy - py * qx > 0

    arr = list(points)
    for i in range(1, len(arr)):
        j = i
        while j > 0 and angle_less(arr[j], arr[j - 1]):
            arr[j], arr[j - 1] = arr[j - 1], arr[j]
            j -= 1
    return arr


def _polygon_area2(poly) -> Fraction:
    """Twice the signed shoelace area (positive for ccw polygons)."""
    total = Fraction(0)
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return total


def _clip(poly, a, b, rhs):
    """Clip a convex ccw polygon to the halfplane a*x + b*y <= rhs."""
    if not poly:
        return []
    out = []
    n = len(poly)
    vals = [a * p[0] + b * p[1] - rhs for p in poly]
    for i in range(n):
        p, vp = poly[i], vals[i]
        q, vq = poly[(i + 1) % n], vals[(i + 1) % n]
        if vp <= 0:
            out.append(p)
        if (vp < 0 < vq) or (vq < 0 < vp):
            t = vp / (vp - vq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    dedup = []
    for p in out:
        if not dedup or p != dedup[-1]:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def _edge_halfplane(p1, p2):
    """(a, b, rhs) with the left side of p1->p2 given by a*x + b*y >= rhs."""
    a = -(p2[1] - p1[1])
    b = p2[0] - p1[0]
    return a, b, a * p1[0] + b * p1[1]


def _clip_to_convex(poly, convex_ccw):
    cur = poly
    n = len(convex_ccw)
    for i in range(n):
        a, b, rhs = _edge_halfplane(convex_ccw[i], convex_ccw[(i + 1) % n])
        cur = _clip(cur, -a, -b, -rhs)  # keep the inside (>= rhs)
        if not cur:
            return []
    return cur


def _convex_difference(poly, cutter):
    """Disjoint convex pieces of poly minus cutter (both convex, ccw)."""
    pieces = []
    current = poly
    n = len(cutter)
    for i in range(n):
        a, b, rhs = _edge_halfplane(cutter[i], cutter[(i + 1) % n])
        outside = _clip(current, a, b, rhs)  # beyond this edge (<= rhs)
        if len(outside) >= 3 and _polygon_area2(outside) != 0:
            pieces.append(outside)
        current = _clip(current, -a, -b, -rhs)
        if not current:
            break
    return pieces


def _translates_cover_cell(poly, c1, c2) -> bool:
    """Exact area criterion: translates of poly by Z c1 + Z c2 cover the cell.

    The uncovered set is open and lattice-periodic, so covering holds iff
    the union of the translates clipped to one closed fundamental cell has
    exactly the cell area.
    """
    det = c1[0] * c2[1] - c1[1] * c2[0]
    if det == 0:
        return False
    if det < 0:
        c1, c2 = c2, c1
        det = -det
    cell = [(Fraction(0), Fraction(0)), c1, vadd(c1, c2), c2]
    cell_area2 = _polygon_area2(cell)
    poly = _ccw_order(poly)
    if _polygon_area2(poly) == 0:
        return False
    # coordinates of poly in the (c1, c2) frame bound the needed translates
    alphas, betas = [], []
    for x, y in poly:
        alphas.append((x * c2[1] - y * c2[0]) / det)
        betas.append((-x * c1[1] + y * c1[0]) / det)
    a_range = range(math.ceil(-max(alphas)), math.floor(1 - min(alphas)) + 1)
    b_range = range(math.ceil(-max(betas)), math.floor(1 - min(betas)) + 1)
    covered2 = Fraction(0)
    pieces = []
    for a in a_range:
        for b in b_range:
            sx = a * c1[0] + b * c2[0]
            sy = a * c1[1] + b * c2[1]
            moved = [(x + sx, y + sy) for x, y in poly]
            parts = [_clip_to_convex(moved, cell)]
            parts = [p for p in parts if len(p) >= 3 and _polygon_area2(p) != 0]
            for prev in pieces:
                nxt = []
                for part in parts:
                    nxt.extend(_convex_difference(part, prev))
                parts = nxt
                if not parts:
                    break
            for part in parts:
                area2 = _polygon_area2(part)
                if area2:
                    covered2 += abs(area2)
                    pieces.append(part)
    return covered2 == cell_area2


# -- parity and finiteness helpers -------------------------------------------


def parity_check(t: Tiling) -> bool:
    """(2 L*) ∩ int(D(T)°) = {o}: no nonzero u in L* with w(T, u) < 1/2."""
    _require_verified(t)
    hull = t.tile.hull()
    if hull.dim < t.ambient.dim:
        raise LowerDimensionalTileError("parity check needs a full-dimensional tile")
    for u in _thin_candidates(
        t.translations, t.tile.points, Fraction(1, 2), strict=True
    ):
        if width_of(hull, u) < Fraction(1, 2):
            return False
    return True


def thin_cover_basis(wset: WSetResult, lat: Lattice):
    """A basis b_1..b_d of L with |<w, b_i>| <= 2 (3/2)^(d-2) (d!)^2 for all w.

    Existence is guaranteed whenever W spans; the search is bounded and
    returns None when it fails to locate one.
    """
    d = lat.dim
    kappa = Fraction(2 * 3 ** (d - 2) * math.factorial(d) ** 2, 2 ** (d - 2))

    def bound_ok(b):
        return all(abs(vdot(w, b)) <= kappa for w in wset.vectors)

    if all(bound_ok(col) for col in lat.basis):
        return lat.basis, kappa
    dirs = _independent_differences((vec([0] * d),) + tuple(wset.vectors))
    if len(dirs) < d:
        return None, kappa
    rows = tuple(tuple(vdot(w, col) for col in lat.basis) for w in dirs)
    rinv = linalg.inverse(transpose(rows))
    cands = []
    ranges = []
    for j in range(d):
        r = sum(abs(rinv[k][j]) for k in range(d)) * kappa
        ranges.append(range(-math.floor(r), math.floor(r) + 1))
    for z in itertools.product(*ranges):
        if not any(z):
            continue
        b = mat_vec(lat.basis, z)
        if bound_ok(b):
            cands.append((max(abs(vdot(w, b)) for w in wset.vectors), z))
    cands.sort()
    shortlist = [z for _, z in cands[:30]]
    for combo in itertools.combinations(shortlist, d):
        if abs(linalg.det(mat(combo))) == 1:
            return tuple(mat_vec(lat.basis, z) for z in combo), kappa
    return None, kappa
