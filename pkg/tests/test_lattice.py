"""Lattice enumeration tests: exactness, bounds, caps, worker splitting."""

import pytest

from branchcones import (
    ResourceLimitError,
    UnboundedRegionError,
    build_root_system,
    count_points,
    enumerate_points,
    point_satisfies,
    slice_cone,
    string_cone,
    triple_cone,
    w0_word,
)
from branchcones.lattice import Polytope


def test_interval_slice():
    rs = build_root_system(1)
    cone = string_cone(rs, (1,))
    poly = slice_cone(cone, {"lambda": (3,)})
    assert enumerate_points(poly) == [(0,), (1,), (2,), (3,)]
    assert count_points(poly) == 4


def test_infeasible_slice_is_empty_not_error():
    rs = build_root_system(2)
    cone = string_cone(rs, (1, 2, 1))
    poly = slice_cone(cone, {"lambda": (-1, 0)})
    assert not poly.feasible
    assert enumerate_points(poly) == []
    assert count_points(poly) == 0


def test_unbounded_slice_raises():
    rs = build_root_system(2)
    cone = string_cone(rs, (1, 2, 1))
    with pytest.raises(UnboundedRegionError):
        slice_cone(cone, {})


def test_bad_fixed_blocks_rejected():
    rs = build_root_system(2)
    cone = string_cone(rs, (1, 2, 1))
    with pytest.raises(KeyError):
        slice_cone(cone, {"nope": (1, 0)})
    with pytest.raises(ValueError):
        slice_cone(cone, {"lambda": (1,)})
    with pytest.raises(ValueError):
        slice_cone(cone, {"lambda": (1.5, 0)})


def test_zero_dimensional_slice():
    rs = build_root_system(1)
    cone = string_cone(rs, (1,))
    poly = slice_cone(cone, {"lambda": (2,), "t": (1,)})
    assert poly.num_vars == 0
    assert count_points(poly) == 1
    poly = slice_cone(cone, {"lambda": (2,), "t": (3,)})
    assert count_points(poly) == 0


def test_count_matches_enumeration_and_membership():
    rs = build_root_system(2)
    cone = triple_cone(rs, (1, 2, 1))
    for lam, beta, mu in [
        ((1, 1), (1, 1), (1, 1)),
        ((2, 0), (0, 2), (1, 1)),
        ((2, 1), (1, 2), (0, 0)),
    ]:
        poly = slice_cone(cone, {"lambda": lam, "beta": beta, "mu": mu})
        pts = enumerate_points(poly)
        assert count_points(poly) == len(pts)
        assert pts == sorted(pts)
        assert len(set(pts)) == len(pts)
        for p in pts:
            assert point_satisfies(poly, p)


def test_added_constraint_is_monotone():
    rs = build_root_system(2)
    cone = string_cone(rs, (1, 2, 1))
    poly = slice_cone(cone, {"lambda": (2, 1)})
    base = count_points(poly)
    # append t[0] <= 1, i.e. 1 - t[0] >= 0
    tighter = Polytope(
        num_vars=poly.num_vars,
        var_labels=poly.var_labels,
        ineqs=poly.ineqs + ((1, ((0, -1),)),),
        eqs=poly.eqs,
        feasible=poly.feasible,
        lower=poly.lower,
        upper=poly.upper,
    )
    assert count_points(tighter) <= base
    assert all(p[0] <= 1 for p in enumerate_points(tighter))


def test_point_cap():
    rs = build_root_system(2)
    cone = string_cone(rs, (1, 2, 1))
    poly = slice_cone(cone, {"lambda": (2, 2)})
    with pytest.raises(ResourceLimitError) as err:
        count_points(poly, cap=3)
    assert "3" in str(err.value)
    assert err.value.cap == 3


def test_point_cap_env(monkeypatch):
    rs = build_root_system(2)
    cone = string_cone(rs, (1, 2, 1))
    poly = slice_cone(cone, {"lambda": (2, 2)})
    monkeypatch.setenv("BRANCHCONES_POINT_CAP", "2")
    with pytest.raises(ResourceLimitError):
        count_points(poly)
    monkeypatch.delenv("BRANCHCONES_POINT_CAP")
    assert count_points(poly) > 2


def test_threaded_enumeration_matches_sequential():
    rs = build_root_system(3)
    cone = string_cone(rs, w0_word(rs))
    poly = slice_cone(cone, {"lambda": (1, 1, 1)})
    seq = enumerate_points(poly)
    par = enumerate_points(poly, threads=3)
    assert seq == par
    assert count_points(poly, threads=3) == len(seq)
