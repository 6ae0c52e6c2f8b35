"""Acceptance suite: every cone count is certified against the character
oracle at desk scale, one criterion per test, one summary line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the summary lines.
"""

import itertools
import random
import time
from fractions import Fraction

from branchcones import (
    ConeVariant,
    build_root_system,
    bz_template,
    count_points,
    count_quilts,
    coweight_tuple,
    coweight_value,
    degeneracy_pullback,
    dominance_leq,
    dual_weight,
    enumerate_bz,
    enumerate_points,
    face_pullback,
    irrep_dimension,
    leaf_edge_block,
    levi_branching,
    levi_cone,
    multi_tensor_invariant_dim,
    parse_tree,
    slice_cone,
    string_cone,
    tensor_decomposition,
    tensor_multiplicity,
    tree_fiber_cone,
    triple_cone,
    w0_word,
)


def _dominants(rank, total):
    return [
        t
        for t in itertools.product(range(total + 1), repeat=rank)
        if sum(t) <= total
    ]


def _words(rank):
    """At least two distinct longest words per rank (rank one has only one)."""
    rs = build_root_system(rank)
    lex = w0_word(rs)
    flipped = tuple(rank + 1 - i for i in lex)
    return [lex] if flipped == lex else [lex, flipped]


def _report(number, name, ok, elapsed, limit):
    status = "PASS" if ok else "FAIL"
    print(f"[acceptance] criterion {number} ({name}): {status} ({elapsed:.1f}s / limit {limit}s)")


def test_criterion_1_string_counts():
    start = time.monotonic()
    mismatches = []
    for rank in (1, 2, 3):
        rs = build_root_system(rank)
        for word in _words(rank):
            cone = string_cone(rs, word)
            for lam in _dominants(rank, 4):
                got = count_points(slice_cone(cone, {"lambda": lam}))
                expected = irrep_dimension(rs, lam)
                if got != expected:
                    mismatches.append((rank, word, lam, got, expected))
    elapsed = time.monotonic() - start
    _report(1, "string-count correctness", not mismatches and elapsed < 60, elapsed, 60)
    assert not mismatches, mismatches[:5]
    assert elapsed < 60


def test_criterion_2_lr_counts_and_variant_pinning():
    start = time.monotonic()
    mismatches = []
    for rank in (1, 2, 3):
        rs = build_root_system(rank)
        cone = triple_cone(rs, w0_word(rs))
        pairs = list(itertools.product(_dominants(rank, 3), repeat=2))
        zeros_needed = 20
        for lam, beta in pairs:
            decomposition = tensor_decomposition(rs, lam, beta)
            mus = dict(decomposition)
            if zeros_needed > 0:
                for mu in _dominants(rank, 4):
                    if mu not in decomposition:
                        mus[mu] = 0
                        zeros_needed -= 1
                        if zeros_needed == 0:
                            break
            for mu, expected in mus.items():
                got = count_points(
                    slice_cone(cone, {"lambda": lam, "beta": beta, "mu": mu})
                )
                if got != expected:
                    mismatches.append((rank, lam, beta, mu, got, expected))
    # the default orientation is the pinned one: every alternative must
    # disagree with the oracle somewhere on the rank-1 sweep
    rs1 = build_root_system(1)
    for variant in (
        ConeVariant(string_bound="lower"),
        ConeVariant(mu_from_sum=False),
        ConeVariant(beta_trail_sign=-1),
    ):
        alt = triple_cone(rs1, (1,), variant)
        disagreed = False
        for lam, beta in itertools.product(_dominants(1, 3), repeat=2):
            for mu in _dominants(1, 6):
                got = count_points(
                    slice_cone(alt, {"lambda": lam, "beta": beta, "mu": mu})
                )
                if got != tensor_multiplicity(rs1, lam, beta, mu):
                    disagreed = True
                    break
            if disagreed:
                break
        if not disagreed:
            mismatches.append(("variant-not-pinned", variant))
    elapsed = time.monotonic() - start
    _report(2, "LR correctness + variant pinning", not mismatches and elapsed < 120, elapsed, 120)
    assert not mismatches, mismatches[:5]
    assert elapsed < 120


def test_criterion_3_bz_agreement():
    start = time.monotonic()
    mismatches = []
    for m in (2, 3, 4):
        rank = m - 1
        rs = build_root_system(rank)
        template = bz_template(m)
        cone = triple_cone(rs, w0_word(rs)) if m <= 3 else None
        for l1, l2, l3 in itertools.product(_dominants(rank, 3), repeat=3):
            got = len(enumerate_bz(template, l1, l2, l3))
            expected = tensor_multiplicity(rs, l1, l2, dual_weight(rs, l3))
            if got != expected:
                mismatches.append((m, l1, l2, l3, got, expected))
                continue
            if cone is not None:
                # count-level form of the triangle/string correspondence,
                # with duality applied to the middle weight
                sliced = slice_cone(
                    cone,
                    {"lambda": l1, "beta": l3, "mu": dual_weight(rs, l2)},
                )
                if count_points(sliced) != got:
                    mismatches.append(("cone", m, l1, l2, l3))
    elapsed = time.monotonic() - start
    _report(3, "BZ agreement", not mismatches and elapsed < 120, elapsed, 120)
    assert not mismatches, mismatches[:5]
    assert elapsed < 120


def test_criterion_4_levi_counts():
    start = time.monotonic()
    mismatches = []
    cases = [(2, {1}), (2, {2}), (3, {1}), (3, {1, 2}), (3, {1, 3})]
    for rank, subset in cases:
        rs = build_root_system(rank)
        cone = levi_cone(rs, subset)
        eta_cols = None
        for lam in _dominants(rank, 3):
            poly = slice_cone(cone, {"lambda": lam})
            if eta_cols is None:
                eta_cols = [
                    i
                    for i, label in enumerate(poly.var_labels)
                    if label.startswith("eta[")
                ]
            histogram = {}
            for point in enumerate_points(poly):
                eta = tuple(point[i] for i in eta_cols)
                histogram[eta] = histogram.get(eta, 0) + 1
            oracle_rows = levi_branching(rs, subset, lam)
            if histogram != dict(oracle_rows):
                mismatches.append((rank, subset, lam, histogram, oracle_rows))
                continue
            total = sum(
                mult * _levi_dim(rank, subset, eta) for eta, mult in oracle_rows
            )
            if total != irrep_dimension(rs, lam):
                mismatches.append(("conservation", rank, subset, lam))
    elapsed = time.monotonic() - start
    _report(4, "Levi correctness", not mismatches and elapsed < 60, elapsed, 60)
    assert not mismatches, mismatches[:5]
    assert elapsed < 60


def _levi_dim(rank, subset, eta):
    runs, current = [], []
    for i in sorted(subset):
        if current and i == current[-1] + 1:
            current.append(i)
        else:
            if current:
                runs.append(current)
            current = [i]
    if current:
        runs.append(current)
    dim = 1
    for run in runs:
        sub = build_root_system(len(run))
        dim *= irrep_dimension(sub, tuple(eta[i - 1] for i in run))
    return dim


def test_criterion_5_tree_independence():
    start = time.monotonic()
    mismatches = []
    topologies = ["0-4,1-4,4-5,2-5,3-5", "0-4,2-4,4-5,1-5,3-5"]
    for m in (2, 3):
        rank = m - 1
        rs = build_root_system(rank)
        lex = w0_word(rs)
        flipped = tuple(rank + 1 - i for i in lex)
        string_choices = [None] if flipped == lex else [
            None,
            {4: flipped, 5: lex},
        ]
        tuples = list(itertools.product(_dominants(rank, 2), repeat=4))
        for text in topologies:
            tree = parse_tree(text)
            cones_here = [
                tree_fiber_cone(rs, tree, strings) for strings in string_choices
            ]
            for leaf_weights in tuples:
                expected = multi_tensor_invariant_dim(rs, leaf_weights)
                quilt = count_quilts(m, tree, leaf_weights)
                if quilt != expected:
                    mismatches.append(("quilt", m, text, leaf_weights, quilt, expected))
                    continue
                fixed = {
                    leaf_edge_block(tree, leaf): w
                    for leaf, w in zip(tree.leaves, leaf_weights)
                }
                for cone in cones_here:
                    got = count_points(slice_cone(cone, fixed))
                    if got != expected:
                        mismatches.append(
                            ("cone", m, text, leaf_weights, got, expected)
                        )
    elapsed = time.monotonic() - start
    _report(5, "tree independence", not mismatches and elapsed < 180, elapsed, 180)
    assert not mismatches, mismatches[:5]
    assert elapsed < 180


def test_criterion_6_semigroup_closure():
    start = time.monotonic()
    rng = random.Random(61)
    bad = 0
    pool = []
    for rank in (1, 2):
        rs = build_root_system(rank)
        cone = triple_cone(rs, w0_word(rs))
        points = []
        for lam, beta in itertools.product(_dominants(rank, 2), repeat=2):
            for mu in _dominants(rank, 4):
                poly = slice_cone(cone, {"lambda": lam, "beta": beta, "mu": mu})
                for point in enumerate_points(poly):
                    fixed = dict(poly.fixed)
                    full = []
                    it = iter(point)
                    for block in cone.blocks:
                        if block.name in fixed:
                            full.extend(fixed[block.name])
                        else:
                            full.extend(next(it) for _ in range(block.size))
                    points.append(tuple(full))
        pool.append((cone, points))
    checked = 0
    for cone, points in pool:
        for _ in range(250):
            a, b = rng.choice(points), rng.choice(points)
            total = tuple(x + y for x, y in zip(a, b))
            ok = all(
                sum(c * x for c, x in zip(row, total)) >= 0 for row in cone.ineqs
            ) and all(
                sum(c * x for c, x in zip(row, total)) == 0 for row in cone.eqs
            )
            checked += 1
            if not ok:
                bad += 1
    elapsed = time.monotonic() - start
    _report(6, "semigroup closure", bad == 0 and checked == 500 and elapsed < 10, elapsed, 10)
    assert checked == 500 and bad == 0
    assert elapsed < 10


def test_criterion_7_valuation_order_premise():
    start = time.monotonic()
    bad = 0
    for rank in (1, 2, 3):
        rs = build_root_system(rank)
        box = list(itertools.product(range(4), repeat=rank))
        for coords in ((1,) * rank, tuple(range(1, rank + 1))):
            rho = coweight_tuple([rs], [coords])
            for a, b in itertools.product(box, repeat=2):
                if a != b and dominance_leq(rs, a, b):
                    if not coweight_value(rho, [a]) < coweight_value(rho, [b]):
                        bad += 1
    elapsed = time.monotonic() - start
    _report(7, "valuation order premise", bad == 0 and elapsed < 10, elapsed, 10)
    assert bad == 0
    assert elapsed < 10


def test_criterion_8_chain_map_identities():
    start = time.monotonic()
    rng = random.Random(8)
    rs = build_root_system(2)

    def rand_coweight():
        return tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(2))

    def rand_weight():
        return tuple(Fraction(rng.randint(-12, 12), rng.randint(1, 7)) for _ in range(2))

    bad = 0
    for k in (2, 3, 4):
        for _ in range(100):
            rho = coweight_tuple(
                [rs] * (k + 1), [rand_coweight() for _ in range(k + 1)]
            )
            pos = rng.randint(1, k)
            lambdas = [rand_weight() for _ in range(k + 2)]
            if coweight_value(face_pullback(rho, pos), lambdas) != coweight_value(
                rho, lambdas[:pos] + lambdas[pos + 1 :]
            ):
                bad += 1
            pos = rng.randint(0, k - 1)
            lambdas = [rand_weight() for _ in range(k)]
            dup = lambdas[: pos + 1] + [lambdas[pos]] + lambdas[pos + 1 :]
            if coweight_value(degeneracy_pullback(rho, pos), lambdas) != coweight_value(
                rho, dup
            ):
                bad += 1
    elapsed = time.monotonic() - start
    _report(8, "face/degeneracy identities", bad == 0 and elapsed < 5, elapsed, 5)
    assert bad == 0
    assert elapsed < 5
