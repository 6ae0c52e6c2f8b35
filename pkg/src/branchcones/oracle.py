"""Character-theoretic ground truth for multiplicities and dimensions.

Everything here is computed with exact integer arithmetic from weights and
Weyl-group combinatorics alone: Freudenthal's recursion for weight
multiplicities, the Weyl product formula for dimensions, the Brauer-Klimyk
signed-orbit rule for tensor products, and character subtraction for Levi
restriction.  None of it touches the cone machinery, so cone lattice-point
counts can be validated against this module as an independent reference.

Restriction to a Levi subgroup is handled by running the same recursions with
a restricted set of active simple roots while tracking the full torus weight,
so branching multiplicities are keyed by genuine weights of the big group.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .rootsys import (
    RootSystem,
    Weight,
    alpha_coordinates,
    check_weight,
    is_dominant,
    positive_roots,
    root_to_weight,
    simple_reflection,
    weyl_vector,
)


@lru_cache(maxsize=None)
def _symmetrizers(rs: RootSystem) -> tuple[int, ...]:
    """Positive integers d_i with d_i * a_ij = d_j * a_ji (symmetrizing the
    Cartan matrix); all ones in the simply-laced case."""
    r = rs.rank
    d: list[Fraction | None] = [None] * r
    for start in range(r):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(r):
                if rs.cartan[i][j] != 0 and i != j and d[j] is None:
                    d[j] = d[i] * rs.cartan[i][j] / rs.cartan[j][i]
                    stack.append(j)
    denom_lcm = 1
    for x in d:
        assert x is not None
        denom_lcm = denom_lcm * x.denominator // _gcd(denom_lcm, x.denominator)
    ints = [int(x * denom_lcm) for x in d]
    g = 0
    for x in ints:
        g = _gcd(g, x)
    return tuple(x // g for x in ints)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _pair_root(rs: RootSystem, v, acoords) -> int:
    """Invariant bilinear form of a weight (fw coords) with a root (alpha coords)."""
    d = _symmetrizers(rs)
    return sum(acoords[i] * d[i] * v[i] for i in range(rs.rank))


def _full_active(rs: RootSystem) -> tuple[int, ...]:
    return tuple(range(1, rs.rank + 1))


def _dominate(rs: RootSystem, v, active) -> Weight:
    """The unique representative of v's orbit (under the reflections in
    ``active``) whose pairings on the active coroots are nonnegative."""
    w = tuple(v)
    while True:
        for i in active:
            if w[i - 1] < 0:
                w = simple_reflection(rs, i, w)
                break
        else:
            return w


def _dominate_signed(rs: RootSystem, v) -> tuple[Weight, int]:
    """Dominant representative with the sign of the minimal-length Weyl
    element used; sign 0 when the orbit meets a chamber wall."""
    w = tuple(v)
    sign = 1
    while True:
        moved = False
        for i in range(1, rs.rank + 1):
            c = w[i - 1]
            if c < 0:
                w = simple_reflection(rs, i, w)
                sign = -sign
                moved = True
                break
        if not moved:
            if any(c == 0 for c in w):
                return w, 0
            return w, sign


@lru_cache(maxsize=None)
def _weight_closure(rs: RootSystem, lam: Weight, active: tuple[int, ...]) -> frozenset:
    """All weights of the irreducible (active-Levi) module with highest
    weight lam, generated by walking full root strings downward."""
    seen = {lam}
    stack = [lam]
    roots = {i: tuple(rs.cartan[k][i - 1] for k in range(rs.rank)) for i in active}
    while stack:
        w = stack.pop()
        for i in active:
            m = w[i - 1]
            for k in range(1, m + 1):
                nxt = tuple(w[j] - k * roots[i][j] for j in range(rs.rank))
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
    return frozenset(seen)


def _height(rs: RootSystem, diff) -> int:
    coords = alpha_coordinates(rs, diff)
    total = 0
    for c in coords:
        assert c.denominator == 1, "weight difference not in the root lattice"
        total += int(c)
    return total


@lru_cache(maxsize=None)
def _dominant_mults(rs: RootSystem, lam: Weight, active: tuple[int, ...]):
    """Freudenthal recursion: multiplicities of the active-dominant weights of
    the (active-Levi) irreducible with highest weight lam."""
    closure = _weight_closure(rs, lam, active)
    doms = [w for w in closure if all(w[i - 1] >= 0 for i in active)]

    def sort_key(w):
        diff = tuple(x - y for x, y in zip(lam, w))
        coords = alpha_coordinates(rs, diff)
        return (sum(coords), coords)

    doms.sort(key=sort_key)
    proots = [
        a
        for a in positive_roots(rs)
        if all(a[i] == 0 for i in range(rs.rank) if (i + 1) not in active)
    ]
    rho = tuple(1 if (i + 1) in active else 0 for i in range(rs.rank))
    mult: dict[Weight, int] = {}
    for w in doms:
        if w == lam:
            mult[lam] = 1
            continue
        acc = 0
        for a in proots:
            afw = root_to_weight(rs, a)
            k = 1
            while True:
                nu = tuple(w[j] + k * afw[j] for j in range(rs.rank))
                nd = _dominate(rs, nu, active)
                if nd not in mult:
                    break
                acc += mult[nd] * _pair_root(rs, nu, a)
                k += 1
        shifted = tuple(lam[j] + w[j] + 2 * rho[j] for j in range(rs.rank))
        diff = tuple(lam[j] - w[j] for j in range(rs.rank))
        dcoords = [int(c) for c in alpha_coordinates(rs, diff)]
        denom = _pair_root(rs, shifted, dcoords)
        assert denom > 0 and (2 * acc) % denom == 0
        mult[w] = 2 * acc // denom
    return mult


def _character(rs: RootSystem, lam: Weight, active: tuple[int, ...]) -> dict:
    doms = _dominant_mults(rs, lam, active)
    return {
        w: doms[_dominate(rs, w, active)] for w in _weight_closure(rs, lam, active)
    }


# ---------------------------------------------------------------------------
# public operations


def weight_multiplicities(rs: RootSystem, lam: Weight) -> dict[Weight, int]:
    """Exact weight multiplicities of the irreducible with highest weight lam."""
    lam = check_weight(rs, lam)
    if not is_dominant(rs, lam):
        raise ValueError(f"highest weight must be dominant, got {lam}")
    return _character(rs, lam, _full_active(rs))


def irrep_dimension(rs: RootSystem, lam: Weight) -> int:
    """Weyl product formula, evaluated exactly."""
    lam = check_weight(rs, lam)
    if not is_dominant(rs, lam):
        raise ValueError(f"highest weight must be dominant, got {lam}")
    rho = weyl_vector(rs)
    shifted = tuple(lam[i] + rho[i] for i in range(rs.rank))
    dim = Fraction(1)
    for a in positive_roots(rs):
        dim *= Fraction(_pair_root(rs, shifted, a), _pair_root(rs, rho, a))
    assert dim.denominator == 1
    return int(dim)


@lru_cache(maxsize=None)
def _tensor_decompose(rs: RootSystem, a: Weight, b: Weight):
    """Brauer-Klimyk: full decomposition of V(a) (x) V(b) as a sorted tuple of
    (highest weight, multiplicity) pairs.  Orbit sum runs over the weight
    system of the smaller factor."""
    if irrep_dimension(rs, a) <= irrep_dimension(rs, b):
        small, big = a, b
    else:
        small, big = b, a
    rho = weyl_vector(rs)
    out: dict[Weight, int] = {}
    for nu, m in _character(rs, small, _full_active(rs)).items():
        x = tuple(nu[i] + big[i] + rho[i] for i in range(rs.rank))
        dom, sign = _dominate_signed(rs, x)
        if sign == 0:
            continue
        mu = tuple(dom[i] - rho[i] for i in range(rs.rank))
        out[mu] = out.get(mu, 0) + sign * m
    cleaned = {mu: c for mu, c in out.items() if c != 0}
    assert all(c > 0 for c in cleaned.values())
    return tuple(sorted(cleaned.items()))


def tensor_multiplicity(rs: RootSystem, lam: Weight, beta: Weight, mu: Weight) -> int:
    """Multiplicity of V(mu) inside V(lam) (x) V(beta)."""
    for w in (lam, beta, mu):
        check_weight(rs, w)
        if not is_dominant(rs, w):
            raise ValueError(f"all weights must be dominant, got {w}")
    return dict(_tensor_decompose(rs, tuple(lam), tuple(beta))).get(tuple(mu), 0)


def tensor_decomposition(rs: RootSystem, lam: Weight, beta: Weight) -> dict[Weight, int]:
    """Full decomposition of V(lam) (x) V(beta) as {highest weight: multiplicity}."""
    for w in (lam, beta):
        check_weight(rs, w)
        if not is_dominant(rs, w):
            raise ValueError(f"all weights must be dominant, got {w}")
    return dict(_tensor_decompose(rs, tuple(lam), tuple(beta)))


def _leq_active(rs: RootSystem, a, b, active) -> bool:
    coords = alpha_coordinates(rs, tuple(x - y for x, y in zip(b, a)))
    for i, c in enumerate(coords):
        if c.denominator != 1 or c < 0:
            return False
        if c > 0 and (i + 1) not in active:
            return False
    return True


def levi_branching(rs: RootSystem, subset, lam: Weight) -> list[tuple[Weight, int]]:
    """Decomposition of V(lam) restricted to the Levi subgroup whose simple
    roots are indexed by ``subset``.  Each entry is (highest weight of the
    Levi constituent as a full torus weight, multiplicity)."""
    lam = check_weight(rs, lam)
    if not is_dominant(rs, lam):
        raise ValueError(f"highest weight must be dominant, got {lam}")
    active = tuple(sorted(set(subset)))
    for i in active:
        if not 1 <= i <= rs.rank:
            raise ValueError(f"simple index {i} out of range 1..{rs.rank}")
    remaining = dict(weight_multiplicities(rs, lam))
    out: list[tuple[Weight, int]] = []
    while remaining:
        keys = list(remaining)
        maximal = [
            w
            for w in keys
            if not any(v != w and _leq_active(rs, w, v, active) for v in keys)
        ]
        eta = max(maximal)
        m = remaining[eta]
        assert m > 0, "character subtraction went negative"
        for w, c in _character(rs, eta, active).items():
            remaining[w] = remaining.get(w, 0) - m * c
            assert remaining[w] >= 0
            if remaining[w] == 0:
                del remaining[w]
        out.append((eta, m))
    out.sort()
    return out


def multi_tensor_invariant_dim(rs: RootSystem, lambdas) -> int:
    """dim Hom(V(lam_0), V(lam_1) (x) ... (x) V(lam_n)) by iterated
    tensor decomposition; independent of the association order."""
    lambdas = [check_weight(rs, w) for w in lambdas]
    if len(lambdas) < 2:
        raise ValueError("need a target weight and at least one tensor factor")
    for w in lambdas:
        if not is_dominant(rs, w):
            raise ValueError(f"all weights must be dominant, got {w}")
    target, rest = lambdas[0], lambdas[1:]
    acc = {rest[0]: 1}
    for nxt in rest[1:]:
        new: dict[Weight, int] = {}
        for w, m in acc.items():
            for mu, c in _tensor_decompose(rs, w, nxt):
                new[mu] = new.get(mu, 0) + m * c
        acc = new
    return acc.get(target, 0)
