"""Triangle diagram and quilt tests.

Counts are validated against the character oracle through the invariant
translation: the number of fillings with boundary (a, b, c) must equal the
multiplicity of the dual of c inside the tensor product of a and b.
"""

import itertools

import pytest

from branchcones import (
    BZFilling,
    HexagonViolationError,
    boundary_weights,
    build_root_system,
    bz_template,
    count_quilts,
    dual_weight,
    enumerate_bz,
    enumerate_quilts,
    filling_to_json,
    multi_tensor_invariant_dim,
    parse_tree,
    quilt_to_json,
    tensor_multiplicity,
)


def _dominants(rank, total):
    return [
        t
        for t in itertools.product(range(total + 1), repeat=rank)
        if sum(t) <= total
    ]


def _invariant_dim(m, l1, l2, l3):
    rs = build_root_system(m - 1)
    return tensor_multiplicity(rs, l1, l2, dual_weight(rs, l3))


def test_template_counts():
    for m, verts, hexs in ((2, 3, 0), (3, 9, 1), (4, 18, 3)):
        t = bz_template(m)
        assert len(t.vertices) == verts == 3 * m * (m - 1) // 2
        assert len(t.hexagons) == hexs == (m - 1) * (m - 2) // 2
        seen = set(t.vertices)
        for hexagon in t.hexagons:
            for (a, b), (c, d) in hexagon:
                assert {a, b, c, d} <= seen
        for side in t.boundary:
            assert len(side) == m - 1
            for a, b in side:
                assert {a, b} <= seen
    with pytest.raises(ValueError):
        bz_template(1)


def test_boundary_m2_cyclic_rule():
    t = bz_template(2)
    # corners in canonical order: top, left, right
    f = BZFilling(2, (2, 3, 5))
    assert boundary_weights(t, f) == ((5,), (8,), (7,))
    assert boundary_weights(t, BZFilling(2, (0, 0, 0))) == ((0,), (0,), (0,))


def test_hexagon_violation_detected():
    t = bz_template(3)
    values = [0] * 9
    values[t.index_of((1, 1, "l"))] = 1
    with pytest.raises(HexagonViolationError):
        boundary_weights(t, BZFilling(3, tuple(values)))
    with pytest.raises(ValueError):
        boundary_weights(t, BZFilling(3, (0,) * 5))


def test_enumerate_bz_small_cases():
    t2 = bz_template(2)
    assert len(enumerate_bz(t2, (1,), (1,), (2,))) == 1
    assert len(enumerate_bz(t2, (1,), (1,), (1,))) == 0
    t3 = bz_template(3)
    assert len(enumerate_bz(t3, (1, 1), (1, 1), (1, 1))) == 2
    # orientation-sensitive cases pin the side conventions
    assert len(enumerate_bz(t3, (1, 0), (0, 1), (0, 0))) == 1
    assert len(enumerate_bz(t3, (1, 0), (1, 0), (0, 1))) == 0
    assert len(enumerate_bz(t3, (0, 1), (0, 1), (0, 1))) == 1


def test_fillings_have_requested_boundary():
    t = bz_template(3)
    for f in enumerate_bz(t, (1, 1), (2, 0), (0, 1)):
        assert boundary_weights(t, f) == ((1, 1), (2, 0), (0, 1))


def test_enumerate_bz_matches_invariant_oracle():
    for m in (2, 3, 4):
        t = bz_template(m)
        weights = _dominants(m - 1, 2)
        for l1, l2, l3 in itertools.product(weights, repeat=3):
            assert len(enumerate_bz(t, l1, l2, l3)) == _invariant_dim(m, l1, l2, l3)


def test_fillings_closed_under_addition():
    t = bz_template(3)
    fs = enumerate_bz(t, (1, 1), (1, 1), (1, 1))
    for f in fs:
        for g in fs:
            total = BZFilling(3, tuple(x + y for x, y in zip(f.values, g.values)))
            bf = boundary_weights(t, f)
            bg = boundary_weights(t, g)
            bt = boundary_weights(t, total)  # also certifies the hexagon rule
            assert bt == tuple(
                tuple(x + y for x, y in zip(a, b)) for a, b in zip(bf, bg)
            )


def test_quilt_single_vertex_reduces_to_triangle_count():
    tri = parse_tree("0-3,1-3,2-3")
    t3 = bz_template(3)
    rs = build_root_system(2)
    for lams in itertools.product(_dominants(2, 2), repeat=3):
        expected = len(enumerate_bz(t3, dual_weight(rs, lams[0]), lams[1], lams[2]))
        assert count_quilts(3, tri, lams) == expected


def test_quilt_counts_and_topology_independence():
    weights = [(2,), (1,), (1,), (2,)]
    for text in ("0-4,1-4,4-5,2-5,3-5", "0-4,2-4,4-5,1-5,3-5"):
        tree = parse_tree(text)
        assert count_quilts(2, tree, weights) == 2
    rs = build_root_system(1)
    assert multi_tensor_invariant_dim(rs, weights) == 2


def test_enumerate_quilts_consistency():
    tree = parse_tree("0-4,1-4,4-5,2-5,3-5")
    weights = [(2,), (1,), (1,), (2,)]
    quilts = enumerate_quilts(2, tree, weights)
    assert len(quilts) == count_quilts(2, tree, weights)
    t2 = bz_template(2)
    for q in quilts:
        edge_weights = dict(q.edge_weights)
        for v, filling in q.fillings:
            sides = boundary_weights(t2, filling)
            parent = tree.parent_of(v)
            c1, c2 = tree.children_of(v)
            rs = build_root_system(1)
            w_in = edge_weights[tuple(sorted((parent, v)))]
            assert sides[0] == dual_weight(rs, w_in)
            assert sides[1] == edge_weights[tuple(sorted((v, c1)))]
            assert sides[2] == edge_weights[tuple(sorted((v, c2)))]


def test_quilt_rerooting_duality():
    # moving the distinguished leaf while dualizing its weight keeps the count
    rs = build_root_system(2)
    tree = parse_tree("0-4,1-4,4-5,2-5,3-5")
    lams = [(1, 0), (1, 0), (1, 0), (0, 1)]
    count = count_quilts(3, tree, lams)
    rerooted = [dual_weight(rs, lams[1]), dual_weight(rs, lams[0])] + lams[2:]
    assert count == count_quilts(3, tree, rerooted)
    assert count == multi_tensor_invariant_dim(rs, lams)


def test_serialization():
    t = bz_template(3)
    f = enumerate_bz(t, (1, 1), (1, 1), (1, 1))[0]
    blob = filling_to_json(t, f)
    assert blob["m"] == 3 and blob["index_scheme"] == 1
    assert len(blob["values"]) == 9
    tree = parse_tree("0-3,1-3,2-3")
    q = enumerate_quilts(2, tree, [(2,), (1,), (1,)])[0]
    blob = quilt_to_json(q)
    assert blob["tree"] == ["0-3", "1-3", "2-3"]
    assert len(blob["fillings"]) == 1
    assert all(len(e["weight"]) == 1 for e in blob["edge_weights"])
