"""Trail enumeration tests.

Coefficient vectors are re-derived in the tests by direct evaluation of the
half-pairing formula on the trail's weight sequence, independently of the
library's own accumulation.
"""

from fractions import Fraction

import pytest

from branchcones import (
    RootSystem,
    build_root_system,
    d_vector,
    enumerate_itrails,
    fundamental_weight,
    irrep_dimension,
    minuscule_weight_diagram,
    w0_word,
)
from branchcones.rootsys import act_word, simple_reflection, simple_root


def test_diagram_shapes():
    rs2 = build_root_system(2)
    d1 = minuscule_weight_diagram(rs2, 1)
    assert len(d1.weights) == 3
    assert sorted(i for i, _, _ in d1.edges) == [1, 2]
    d2 = minuscule_weight_diagram(rs2, 2)
    assert len(d2.weights) == 3
    rs3 = build_root_system(3)
    d = minuscule_weight_diagram(rs3, 2)
    assert len(d.weights) == 6 == irrep_dimension(rs3, (0, 1, 0))
    with pytest.raises(ValueError):
        minuscule_weight_diagram(rs2, 3)


def test_non_type_a_rejected():
    b2 = RootSystem(2, ((2, -2), (-1, 2)))
    with pytest.raises(NotImplementedError):
        minuscule_weight_diagram(b2, 1)


def test_zero_trail():
    rs = build_root_system(2)
    diagram = minuscule_weight_diagram(rs, 1)
    omega = fundamental_weight(rs, 1)
    for word in ((1, 2, 1), (2, 1, 2), (1,), ()):
        trails = enumerate_itrails(diagram, word, omega, omega)
        assert len(trails) == 1
        assert trails[0].steps == (0,) * len(word)
        # on a constant trail every coefficient is the coroot pairing itself
        assert d_vector(rs, trails[0]) == tuple(
            Fraction(omega[i - 1]) for i in word
        )


def test_trails_a2_defining():
    rs = build_root_system(2)
    diagram = minuscule_weight_diagram(rs, 1)
    word = (1, 2, 1)
    gamma = fundamental_weight(rs, 1)
    eta = act_word(rs, word, simple_reflection(rs, 1, gamma))
    trails = enumerate_itrails(diagram, word, gamma, eta)
    assert len(trails) == 2
    ds = set()
    for trail in trails:
        # independent re-evaluation of the coefficient formula
        expected = tuple(
            Fraction(
                trail.weights[k][i - 1] + trail.weights[k + 1][i - 1], 2
            )
            for k, i in enumerate(word)
        )
        assert d_vector(rs, trail) == expected
        ds.add(expected)
    assert ds == {(Fraction(0), Fraction(1), Fraction(-1)), (Fraction(1), Fraction(0), Fraction(0))}


def test_trail_invariants():
    rs = build_root_system(3)
    word = w0_word(rs)
    for j in (1, 2, 3):
        diagram = minuscule_weight_diagram(rs, j)
        gamma = fundamental_weight(rs, j)
        eta = act_word(rs, word, simple_reflection(rs, j, gamma))
        trails = enumerate_itrails(diagram, word, gamma, eta)
        assert trails
        for trail in trails:
            assert all(c in (0, 1) for c in trail.steps)
            assert all(w in diagram.weight_set for w in trail.weights)
            # telescoping: steps account for the total weight drop
            drop = [0] * rs.rank
            for k, i in enumerate(word):
                if trail.steps[k]:
                    root = simple_root(rs, i)
                    drop = [d + r for d, r in zip(drop, root)]
            assert tuple(g - e for g, e in zip(gamma, eta)) == tuple(drop)
            for d in d_vector(rs, trail):
                assert (2 * d).denominator == 1


def test_missing_endpoint_gives_empty():
    rs = build_root_system(2)
    diagram = minuscule_weight_diagram(rs, 1)
    omega = fundamental_weight(rs, 1)
    assert enumerate_itrails(diagram, (1, 2, 1), omega, (5, 5)) == ()
    assert enumerate_itrails(diagram, (1, 2, 1), (5, 5), omega) == ()
