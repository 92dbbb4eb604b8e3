"""The planar classification search and unimodular tile equivalence."""

import pytest

from homometry import classify2d as cl
from homometry import linalg, tiling as ti
from homometry._kernels import _search_base_py, search_base_raw
from homometry.lattice import Lattice, lattice_from_lhs
from homometry.pointset import PointSet

CROSS = PointSet([(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)])


def test_search_bases_det7():
    bases = cl.search_bases_with_det(7)
    assert bases  # determinant 7 admits searchable bases
    for l, h, s in bases:
        assert h >= 3
        assert cl.delta_width(l, h, s) == 3


def test_search_bases_outside_range_empty():
    assert cl.search_bases_with_det(6) == []


def test_search_bases_h2_never_passes():
    for det_value in range(7, 19):
        for l, h, s in cl.search_bases_with_det(det_value):
            assert h >= 3


def test_search_bases_respect_flatness_cap():
    # the triangle width of every searched base stays within the integer cap
    # floor(2 * (1 + 2/sqrt(3))) = 4 coming from the planar flatness constant
    for det_value in range(7, 19):
        for l, h, s in cl.search_bases_with_det(det_value):
            assert cl.delta_width(l, h, s) in (3, 4)


def test_kernel_paths_agree():
    import math

    for l, h, s in [(1, 7, 3), (1, 7, 5), (2, 4, 1), (1, 9, 4), (3, 4, 2)]:
        stats_py, surv_py = _search_base_py(l, h, s, math.gcd(h, s), l)
        stats_raw, surv_raw = search_base_raw(l, h, s)
        assert list(stats_raw.values()) == stats_py
        assert surv_raw == surv_py


def test_survivors_verify_as_tilings():
    res = cl.search_tiles_with_base(1, 7, 3)
    assert res["survivors"]
    for surv in res["survivors"]:
        base = lattice_from_lhs(surv["l"], surv["h"], surv["s"])
        t = ti.verify_tiling(Lattice.standard(2), base, surv["points"])
        assert t.verified
        assert surv["lattice_width"] >= 2
        assert surv["diag_width"] < 1


def test_survivors_obey_width_drop():
    # surviving tiles satisfy w(T, Z^2) <= w(Delta, Z^2) - 1
    for det_value in (7, 8):
        for l, h, s in cl.search_bases_with_det(det_value):
            res = cl.search_tiles_with_base(l, h, s)
            dw = cl.delta_width(l, h, s)
            for surv in res["survivors"]:
                assert surv["lattice_width"] <= dw - 1


def test_unimodular_equivalent_basic():
    k = PointSet([(0, 0), (1, 0), (0, 1), (2, 2)])
    rot = PointSet([(p[1], -p[0]) for p in k.points]).translate((5, 7))
    eq, witness = cl.unimodular_equivalent(k, rot)
    assert eq
    u, t = witness
    assert abs(linalg.det(u)) == 1
    image = PointSet([linalg.mat_vec(u, p) for p in k.points]).translate(t)
    assert image == rot


def test_unimodular_equivalent_cardinality_mismatch():
    k = PointSet([(0, 0), (1, 0), (0, 1)])
    bigger = PointSet([(0, 0), (1, 0), (0, 1), (5, 5)])
    eq, witness = cl.unimodular_equivalent(k, bigger)
    assert not eq and witness is None


def test_unimodular_equivalent_cross_shear():
    shear = linalg.mat([(1, 1), (0, 1)])
    image = PointSet([linalg.mat_vec(shear, p) for p in CROSS.points])
    eq, witness = cl.unimodular_equivalent(CROSS, image)
    assert eq
    u, t = witness
    mapped = PointSet([linalg.mat_vec(u, p) for p in CROSS.points]).translate(t)
    assert mapped == image


def test_unimodular_inequivalent_different_shape():
    flat7 = PointSet([(x, 0) for x in range(7)])
    with pytest.raises(ValueError):
        cl.unimodular_equivalent(flat7, CROSS)  # flat first set
    other = PointSet([(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (2, 1), (3, 0)])
    eq, _ = cl.unimodular_equivalent(CROSS, other)
    assert not eq


def test_classify_det7_slice():
    report = cl.classify(cl.SearchConfig(det_lo=7, det_hi=7))
    assert report["survivor_count"] > 0
    assert len(report["noncentrally_symmetric_classes"]) == 0
    assert len(report["centrally_symmetric_classes"]) == 1
    rep = report["centrally_symmetric_classes"][0].representative
    eq, _ = cl.unimodular_equivalent(rep, CROSS)
    assert eq


def test_classify_workers_deterministic():
    base = cl.classify(cl.SearchConfig(det_lo=7, det_hi=9, workers=1))
    multi = cl.classify(cl.SearchConfig(det_lo=7, det_hi=9, workers=2))
    assert base["cases"] == multi["cases"]
    assert base["survivor_count"] == multi["survivor_count"]
    reps1 = [c.representative for c in base["classes"]]
    reps2 = [c.representative for c in multi["classes"]]
    assert reps1 == reps2


def test_classify_report_flags():
    report = cl.classify(
        cl.SearchConfig(
            det_lo=7,
            det_hi=7,
            include_centrally_symmetric=True,
            include_width_one_case=True,
        )
    )
    assert "width_one_family" in report
    assert "centrally_symmetric_remark" in report


def test_tile_points_matches_kernel_region():
    pts = cl.tile_points(1, 7, 3, 0, 4)
    grid = [tuple(map(int, p)) for p in pts.points]
    for x, y in grid:
        assert 0 + 1 <= 7 * x - 3 * y <= 0 + 7
        assert 4 + 1 <= 1 * y <= 4 + 7
