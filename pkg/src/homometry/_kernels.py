"""Integer hot loops: lattice-point box scans and the planar tile search.

Each kernel has a jitted path (numba) and a pure fallback; results are
identical and the suite cross-checks them.  All arithmetic here is on
machine integers; callers are responsible for routing anything that could
overflow int64 through the exact rational code paths instead.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from ._jit import JIT_AVAILABLE, njit

INT64_SAFE = 2**62


def box_scan_numpy(lo, hi, eq_rows, eq_rhs, le_rows, le_rhs, strict):
    """Integer points z in the box with eq_rows@z == eq_rhs, le_rows@z <= le_rhs.

    With strict=True the inequalities are evaluated strictly.  Returns a list
    of int tuples.  Assumes the caller verified int64 safety.
    """
    d = len(lo)
    ranges = [np.arange(a, b + 1, dtype=np.int64) for a, b in zip(lo, hi)]
    if any(len(r) == 0 for r in ranges):
        return []
    grid = np.stack(np.meshgrid(*ranges, indexing="ij"), axis=-1).reshape(-1, d)
    mask = np.ones(len(grid), dtype=bool)
    if eq_rows:
        vals = grid @ np.asarray(eq_rows, dtype=np.int64).T
        mask &= (vals == np.asarray(eq_rhs, dtype=np.int64)).all(axis=1)
    if le_rows:
        vals = grid @ np.asarray(le_rows, dtype=np.int64).T
        rhs = np.asarray(le_rhs, dtype=np.int64)
        mask &= ((vals < rhs) if strict else (vals <= rhs)).all(axis=1)
    return [tuple(int(c) for c in row) for row in grid[mask]]


def box_scan_python(lo, hi, eq_rows, eq_rhs, le_rows, le_rhs, strict):
    """Pure-python twin of box_scan_numpy; exact for arbitrary integers."""
    out = []
    for z in itertools.product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        ok = True
        for row, rhs in zip(eq_rows, eq_rhs):
            if sum(r * c for r, c in zip(row, z)) != rhs:
                ok = False
                break
        if ok:
            for row, rhs in zip(le_rows, le_rhs):
                v = sum(r * c for r, c in zip(row, z))
                if (v >= rhs) if strict else (v > rhs):
                    ok = False
                    break
        if ok:
            out.append(z)
    return out


def box_scan(lo, hi, eq_rows, eq_rhs, le_rows, le_rhs, strict=False):
    """Dispatch between the vectorized and the pure scan.

    The numpy path is taken only when every intermediate value provably fits
    into int64; otherwise (or with the JIT disabled) the exact path runs.
    """
    count = 1
    for a, b in zip(lo, hi):
        if b < a:
            return []
        count *= b - a + 1
    big = max((abs(a) for a in list(lo) + list(hi)), default=0)
    bound = 0
    for row, rhs in itertools.chain(zip(eq_rows, eq_rhs), zip(le_rows, le_rhs)):
        bound = max(bound, sum(abs(r) for r in row) * big + abs(rhs))
    if bound >= INT64_SAFE or count > 8_000_000:
        return box_scan_python(lo, hi, eq_rows, eq_rhs, le_rows, le_rhs, strict)
    return box_scan_numpy(lo, hi, eq_rows, eq_rhs, le_rows, le_rhs, strict)


# ---------------------------------------------------------------------------
# Planar tile search kernel (the classify2d inner loop).
#
# For a sublattice basis b1=(l,0), b2=(s,h) of Z^2 with determinant L=l*h and
# adjugate rows a1=(h,-s), a2=(0,l), the candidate tiles are
#
#   T_q = {t in Z^2 : q_i + n_i <= <t, a_i> <= q_i + L},    q_i in n_i*Z,
#
# and a tile survives when it is two-dimensional, its width in direction
# b1*+b2* is < 1 (after clearing denominators: spread of <t, a1+a2> < L) and
# its lattice width w(T, Z^2) exceeds 1.
# ---------------------------------------------------------------------------


def _search_base_py(l, h, s, n1, n2):
    L = l * h
    stats = [0, 0, 0, 0]  # tried, dim_rejects, diag_rejects, width1_rejects
    survivors = []
    dx, dy = h, l - s  # a1 + a2
    for q1 in range(0, L, n1):
        lo1, hi1 = q1 + n1, q1 + L
        for q2 in range(0, L, n2):
            stats[0] += 1
            lo2, hi2 = q2 + n2, q2 + L
            pts = []
            y0 = -((-lo2) // l)
            y1 = hi2 // l
            for y in range(y0, y1 + 1):
                xlo = -((-(lo1 + s * y)) // h)
                xhi = (hi1 + s * y) // h
                for x in range(xlo, xhi + 1):
                    pts.append((x, y))
            if not _is_two_dimensional(pts):
                stats[1] += 1
                continue
            vals = [dx * x + dy * y for x, y in pts]
            if max(vals) - min(vals) >= L:
                stats[2] += 1
                continue
            if _has_width_at_most_one(pts):
                stats[3] += 1
                continue
            survivors.append((q1, q2))
    return stats, survivors


def _is_two_dimensional(pts):
    if len(pts) < 3:
        return False
    x0, y0 = pts[0]
    v1 = (pts[1][0] - x0, pts[1][1] - y0)
    for x, y in pts[2:]:
        if v1[0] * (y - y0) - v1[1] * (x - x0) != 0:
            return True
    return False


def _has_width_at_most_one(pts):
    # Any direction u with spread <= 1 satisfies |<u, v_i>| <= 1 for the two
    # independent differences below, which bounds the search box exactly.
    x0, y0 = pts[0]
    v1 = (pts[1][0] - x0, pts[1][1] - y0)
    v2 = None
    for x, y in pts[2:]:
        if v1[0] * (y - y0) - v1[1] * (x - x0) != 0:
            v2 = (x - x0, y - y0)
            break
    det = v1[0] * v2[1] - v1[1] * v2[0]
    u1max = (abs(v1[1]) + abs(v2[1])) // abs(det)
    u2max = (abs(v1[0]) + abs(v2[0])) // abs(det)
    for u1 in range(-u1max, u1max + 1):
        for u2 in range(-u2max, u2max + 1):
            if u1 == 0 and u2 == 0:
                continue
            vmin = vmax = u1 * pts[0][0] + u2 * pts[0][1]
            thin = True
            for x, y in pts[1:]:
                v = u1 * x + u2 * y
                if v < vmin:
                    vmin = v
                elif v > vmax:
                    vmax = v
                if vmax - vmin > 1:
                    thin = False
                    break
            if thin:
                return True
    return False


@njit(cache=True)
def _search_base_jit(l, h, s, n1, n2):  # pragma: no cover - exercised via wrapper
    L = l * h
    stats = np.zeros(4, dtype=np.int64)
    max_tiles = ((L + n1 - 1) // n1) * ((L + n2 - 1) // n2)
    survivors = np.empty((max_tiles, 2), dtype=np.int64)
    nsurv = 0
    maxpts = (l + 1) * (h + 1) + 4
    px = np.empty(maxpts, dtype=np.int64)
    py = np.empty(maxpts, dtype=np.int64)
    dx, dy = h, l - s
    for q1 in range(0, L, n1):
        lo1, hi1 = q1 + n1, q1 + L
        for q2 in range(0, L, n2):
            stats[0] += 1
            lo2, hi2 = q2 + n2, q2 + L
            n = 0
            y0 = -((-lo2) // l)
            y1 = hi2 // l
            for y in range(y0, y1 + 1):
                xlo = -((-(lo1 + s * y)) // h)
                xhi = (hi1 + s * y) // h
                for x in range(xlo, xhi + 1):
                    px[n] = x
                    py[n] = y
                    n += 1
            # two-dimensionality
            if n < 3:
                stats[1] += 1
                continue
            v1x = px[1] - px[0]
            v1y = py[1] - py[0]
            v2x = np.int64(0)
            v2y = np.int64(0)
            twodim = False
            for k in range(2, n):
                cx = px[k] - px[0]
                cy = py[k] - py[0]
                if v1x * cy - v1y * cx != 0:
                    v2x, v2y = cx, cy
                    twodim = True
                    break
            if not twodim:
                stats[1] += 1
                continue
            # diagonal width filter: spread of <t, a1+a2> < L
            vmin = dx * px[0] + dy * py[0]
            vmax = vmin
            for k in range(1, n):
                v = dx * px[k] + dy * py[k]
                if v < vmin:
                    vmin = v
                if v > vmax:
                    vmax = v
            if vmax - vmin >= L:
                stats[2] += 1
                continue
            # lattice width must exceed 1
            det = v1x * v2y - v1y * v2x
            adet = det if det > 0 else -det
            u1max = (abs(v1y) + abs(v2y)) // adet
            u2max = (abs(v1x) + abs(v2x)) // adet
            thin_found = False
            for u1 in range(-u1max, u1max + 1):
                if thin_found:
                    break
                for u2 in range(-u2max, u2max + 1):
                    if u1 == 0 and u2 == 0:
                        continue
                    wmin = u1 * px[0] + u2 * py[0]
                    wmax = wmin
                    thin = True
                    for k in range(1, n):
                        w = u1 * px[k] + u2 * py[k]
                        if w < wmin:
                            wmin = w
                        elif w > wmax:
                            wmax = w
                        if wmax - wmin > 1:
                            thin = False
                            break
                    if thin:
                        thin_found = True
                        break
            if thin_found:
                stats[3] += 1
                continue
            survivors[nsurv, 0] = q1
            survivors[nsurv, 1] = q2
            nsurv += 1
    return stats, survivors[:nsurv]


def search_base_raw(l: int, h: int, s: int):
    """Run the tile scan for one base triple; returns (stats dict, [(q1, q2)]).

    Stats record how many tile candidates were tried and why candidates were
    rejected, mirroring the three filters.
    """
    n1 = math.gcd(h, s)
    n2 = l
    if JIT_AVAILABLE:
        stats, surv = _search_base_jit(l, h, s, n1, n2)
        stats = [int(v) for v in stats]
        survivors = [(int(a), int(b)) for a, b in surv]
    else:
        stats, survivors = _search_base_py(l, h, s, n1, n2)
    return (
        {
            "q_candidates": stats[0],
            "dimension_rejects": stats[1],
            "diagonal_width_rejects": stats[2],
            "width_one_rejects": stats[3],
        },
        survivors,
    )
