"""H-descriptions of string, tensor-product, Levi, and tree fiber cones.

Every cone is stored as a list of primitive integer rows over named
coordinate blocks: inequality rows mean <row, x> >= 0 and equality rows mean
<row, x> = 0, so the origin always belongs to the cone.  Weight blocks hold
fundamental-weight coordinates; string blocks hold the nonnegative integer
parameters attached to a reduced word for the longest Weyl element.

The sources for the defining inequalities state the string bound against the
highest weight, the sign of the derived third weight, and the direction of
the trail family involving the second tensor factor in mutually inconsistent
ways.  All three choices are exposed on `ConeVariant`; the defaults are the
orientations under which slice counts agree with the character oracle (the
test suite pins them and demonstrates that each alternative fails).

Coweight tuples with their evaluation pairing and the face/degeneracy
pullbacks on chains live here too, since they share the weight conventions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .itrails import d_vector, enumerate_itrails, minuscule_weight_diagram
from .rootsys import (
    RootSystem,
    Word,
    _cartan_inverse,
    act_word,
    fundamental_weight,
    is_longest_word,
    is_type_a,
    longest_element_word,
    levi_complement_word,
    simple_reflection,
    simple_root,
    validate_reduced_word,
    w0_word,
    word_matrix,
)

# ---------------------------------------------------------------------------
# cone container


@dataclass(frozen=True)
class Block:
    name: str
    kind: str  # "weight" | "string"
    size: int


@dataclass(frozen=True)
class ConeH:
    """Rational polyhedral cone in H-description with named blocks."""

    blocks: tuple[Block, ...]
    ineqs: tuple[tuple[int, ...], ...]
    eqs: tuple[tuple[int, ...], ...]

    @property
    def dimension(self) -> int:
        return sum(b.size for b in self.blocks)

    def offset_of(self, name: str) -> int:
        off = 0
        for b in self.blocks:
            if b.name == name:
                return off
            off += b.size
        raise KeyError(f"no block named {name!r}")

    def block_named(self, name: str) -> Block:
        for b in self.blocks:
            if b.name == name:
                return b
        raise KeyError(f"no block named {name!r}")


def _normalize_row(row: dict[int, Fraction], dim: int, flip_sign_ok: bool):
    vec = [Fraction(0)] * dim
    for col, c in row.items():
        vec[col] += c
    if all(c == 0 for c in vec):
        return None
    denom = 1
    for c in vec:
        denom = denom * c.denominator // _igcd(denom, c.denominator)
    ints = [int(c * denom) for c in vec]
    g = 0
    for c in ints:
        g = _igcd(g, c)
    ints = [c // g for c in ints]
    if flip_sign_ok:
        lead = next(c for c in ints if c != 0)
        if lead < 0:
            ints = [-c for c in ints]
    return tuple(ints)


def _igcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _assemble(blocks, ineq_dicts, eq_dicts) -> ConeH:
    dim = sum(b.size for b in blocks)
    ineqs = set()
    for row in ineq_dicts:
        norm = _normalize_row(row, dim, flip_sign_ok=False)
        if norm is not None:
            ineqs.add(norm)
    eqs = set()
    for row in eq_dicts:
        norm = _normalize_row(row, dim, flip_sign_ok=True)
        if norm is not None:
            eqs.add(norm)
    return ConeH(tuple(blocks), tuple(sorted(ineqs)), tuple(sorted(eqs)))


# ---------------------------------------------------------------------------
# defining-inequality variants


@dataclass(frozen=True)
class ConeVariant:
    """Orientation switches for the ambiguously stated defining inequalities.

    string_bound: "upper" bounds each string coordinate from above by the
        highest-weight pairing (default); "lower" flips the inequality and
        transposes the Cartan indices.
    mu_from_sum: True derives the third weight as lambda + beta minus the
        root-lattice drop of the string (default); False uses the drop minus
        lambda plus beta.
    beta_trail_sign: +1 adds the beta pairing to the trail form (default);
        -1 subtracts it.
    """

    string_bound: str = "upper"
    mu_from_sum: bool = True
    beta_trail_sign: int = 1

    def __post_init__(self):
        if self.string_bound not in ("upper", "lower"):
            raise ValueError(f"unknown string_bound {self.string_bound!r}")
        if self.beta_trail_sign not in (1, -1):
            raise ValueError("beta_trail_sign must be +1 or -1")


DEFAULT_VARIANT = ConeVariant()


# ---------------------------------------------------------------------------
# trail-generated linear forms


@lru_cache(maxsize=None)
def _string_trail_vectors(rs: RootSystem, word: Word) -> tuple:
    """Coefficient vectors of the trail family from each fundamental weight
    to the longest element's image of its first reflection."""
    out = set()
    for j in range(1, rs.rank + 1):
        diagram = minuscule_weight_diagram(rs, j)
        gamma = fundamental_weight(rs, j)
        eta = act_word(rs, word, simple_reflection(rs, j, gamma))
        for trail in enumerate_itrails(diagram, word, gamma, eta):
            out.add(d_vector(rs, trail))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _beta_trail_vectors(rs: RootSystem, word: Word) -> tuple:
    """Coefficient vectors (j, d) of the trail family from the reflected
    fundamental weights to the lowest weights of their representations."""
    out = set()
    for j in range(1, rs.rank + 1):
        diagram = minuscule_weight_diagram(rs, j)
        gamma = simple_reflection(rs, j, fundamental_weight(rs, j))
        eta = act_word(rs, word, fundamental_weight(rs, j))
        for trail in enumerate_itrails(diagram, word, gamma, eta):
            out.add((j, d_vector(rs, trail)))
    return tuple(sorted(out))


def _require_type_a(rs: RootSystem) -> None:
    if not is_type_a(rs):
        raise NotImplementedError("cone construction requires a type-A root system")


def _require_longest(rs: RootSystem, word: Word) -> Word:
    word = tuple(word)
    if not is_longest_word(rs, word):
        raise ValueError(f"{word} is not a reduced word for the longest element")
    return word


def _string_bound_rows(rs, word, variant, lam_role="lam", t_role="t"):
    """Rows bounding each string coordinate against the highest weight."""
    rows = []
    n = len(word)
    for k in range(n):
        ik = word[k]
        row: dict = {}
        if variant.string_bound == "upper":
            row[(lam_role, ik - 1)] = Fraction(1)
            row[(t_role, k)] = Fraction(-1)
            for ell in range(k + 1, n):
                c = rs.cartan[word[ell] - 1][ik - 1]
                if c:
                    row[(t_role, ell)] = row.get((t_role, ell), Fraction(0)) - c
        else:
            row[(lam_role, ik - 1)] = Fraction(-1)
            row[(t_role, k)] = Fraction(1)
            for ell in range(k + 1, n):
                c = rs.cartan[ik - 1][word[ell] - 1]
                if c:
                    row[(t_role, ell)] = row.get((t_role, ell), Fraction(0)) + c
        rows.append(row)
    return rows


def _triple_constraint_dicts(rs: RootSystem, word: Word, variant: ConeVariant):
    """Abstract constraint rows over roles lam / t / beta / mu."""
    r, n = rs.rank, len(word)
    ineqs: list[dict] = []
    eqs: list[dict] = []
    for role in ("lam", "beta", "mu"):
        for j in range(r):
            ineqs.append({(role, j): Fraction(1)})
    for k in range(n):
        ineqs.append({("t", k): Fraction(1)})
    for dvec in _string_trail_vectors(rs, word):
        ineqs.append({("t", k): d for k, d in enumerate(dvec) if d})
    for j, dvec in _beta_trail_vectors(rs, word):
        row = {("t", k): d for k, d in enumerate(dvec) if d}
        row[("beta", j - 1)] = row.get(("beta", j - 1), Fraction(0)) + Fraction(
            variant.beta_trail_sign
        )
        ineqs.append(row)
    ineqs.extend(_string_bound_rows(rs, word, variant))
    alphas = [simple_root(rs, i) for i in word]
    for j in range(r):
        if variant.mu_from_sum:
            row = {
                ("mu", j): Fraction(1),
                ("lam", j): Fraction(-1),
                ("beta", j): Fraction(-1),
            }
            for k in range(n):
                if alphas[k][j]:
                    row[("t", k)] = row.get(("t", k), Fraction(0)) + alphas[k][j]
        else:
            row = {
                ("mu", j): Fraction(1),
                ("lam", j): Fraction(1),
                ("beta", j): Fraction(-1),
            }
            for k in range(n):
                if alphas[k][j]:
                    row[("t", k)] = row.get(("t", k), Fraction(0)) - alphas[k][j]
        eqs.append(row)
    return ineqs, eqs


def _materialize(rows, role_offsets):
    out = []
    for row in rows:
        flat: dict[int, Fraction] = {}
        for (role, idx), c in row.items():
            col = role_offsets[role] + idx
            flat[col] = flat.get(col, Fraction(0)) + c
        out.append(flat)
    return out


# ---------------------------------------------------------------------------
# cone builders


def string_cone(
    rs: RootSystem, word: Word, variant: ConeVariant = DEFAULT_VARIANT
) -> ConeH:
    """Cone of (highest weight, string) pairs for the given reduced word."""
    _require_type_a(rs)
    word = _require_longest(rs, word)
    r, n = rs.rank, len(word)
    blocks = [Block("lambda", "weight", r), Block("t", "string", n)]
    offsets = {"lam": 0, "t": r}
    ineqs: list[dict] = []
    for j in range(r):
        ineqs.append({("lam", j): Fraction(1)})
    for k in range(n):
        ineqs.append({("t", k): Fraction(1)})
    for dvec in _string_trail_vectors(rs, word):
        ineqs.append({("t", k): d for k, d in enumerate(dvec) if d})
    ineqs.extend(_string_bound_rows(rs, word, variant))
    return _assemble(blocks, _materialize(ineqs, offsets), [])


def triple_cone(
    rs: RootSystem, word: Word, variant: ConeVariant = DEFAULT_VARIANT
) -> ConeH:
    """Cone whose slices at (lambda, beta, mu) count tensor multiplicities."""
    _require_type_a(rs)
    word = _require_longest(rs, word)
    r, n = rs.rank, len(word)
    blocks = [
        Block("lambda", "weight", r),
        Block("t", "string", n),
        Block("beta", "weight", r),
        Block("mu", "weight", r),
    ]
    offsets = {"lam": 0, "t": r, "beta": r + n, "mu": 2 * r + n}
    ineqs, eqs = _triple_constraint_dicts(rs, word, variant)
    return _assemble(blocks, _materialize(ineqs, offsets), _materialize(eqs, offsets))


@lru_cache(maxsize=None)
def _levi_trail_vectors(rs: RootSystem, i1: Word, i2: Word) -> tuple:
    """Trail family for the Levi cone: i2-trails from the parabolic longest
    element's image of each fundamental weight to the longest element's image
    of its first reflection."""
    out = set()
    full = i1 + i2
    for j in range(1, rs.rank + 1):
        diagram = minuscule_weight_diagram(rs, j)
        gamma = act_word(rs, i1, fundamental_weight(rs, j))
        eta = act_word(rs, full, simple_reflection(rs, j, fundamental_weight(rs, j)))
        for trail in enumerate_itrails(diagram, i2, gamma, eta):
            out.add(d_vector(rs, trail))
    return tuple(sorted(out))


def levi_cone(
    rs: RootSystem,
    subset,
    i1: Word | None = None,
    i2: Word | None = None,
    variant: ConeVariant = DEFAULT_VARIANT,
) -> ConeH:
    """Cone whose slices at (lambda, eta) count Levi branching multiplicities.

    The word i1 must be reduced for the parabolic longest element of
    ``subset``, i2 for its complement in the longest element, and their
    concatenation reduced; defaults pick the lexicographically smallest
    choices.
    """
    _require_type_a(rs)
    subset = frozenset(subset)
    for i in subset:
        if not 1 <= i <= rs.rank:
            raise ValueError(f"simple index {i} out of range 1..{rs.rank}")
    if i1 is None:
        i1 = longest_element_word(rs, subset)
    if i2 is None:
        i2 = levi_complement_word(rs, subset)
    i1, i2 = tuple(i1), tuple(i2)
    if not set(i1) <= subset:
        raise ValueError("string not adapted to the Levi: head letters leave I")
    if not validate_reduced_word(rs, i1) or word_matrix(rs, i1) != word_matrix(
        rs, longest_element_word(rs, subset)
    ):
        raise ValueError("string not adapted to the Levi: head is not w0(I)")
    word = i1 + i2
    if not is_longest_word(rs, word):
        raise ValueError("string not adapted to the Levi: concatenation not reduced")
    r, n = rs.rank, len(word)
    n0 = len(i1)
    blocks = [
        Block("lambda", "weight", r),
        Block("t", "string", n),
        Block("eta", "weight", r),
    ]
    offsets = {"lam": 0, "t": r, "eta": r + n}
    ineqs: list[dict] = []
    eqs: list[dict] = []
    for j in range(r):
        ineqs.append({("lam", j): Fraction(1)})
    for k in range(n):
        ineqs.append({("t", k): Fraction(1)})
    for k in range(n0):
        eqs.append({("t", k): Fraction(1)})
    for dvec in _levi_trail_vectors(rs, i1, i2):
        ineqs.append({("t", n0 + k): d for k, d in enumerate(dvec) if d})
    for i in sorted(subset):
        ineqs.append({("eta", i - 1): Fraction(1)})
    ineqs.extend(_string_bound_rows(rs, word, variant))
    alphas = [simple_root(rs, i) for i in word]
    for j in range(r):
        row = {("eta", j): Fraction(1), ("lam", j): Fraction(-1)}
        for k in range(n0, n):
            if alphas[k][j]:
                row[("t", k)] = row.get(("t", k), Fraction(0)) + alphas[k][j]
        eqs.append(row)
    return _assemble(blocks, _materialize(ineqs, offsets), _materialize(eqs, offsets))


# ---------------------------------------------------------------------------
# oriented trees and fiber products


@dataclass(frozen=True)
class Tree:
    """Oriented tree with leaves 0..n; all edges point away from leaf 0."""

    edges: tuple[tuple[int, int], ...]
    leaves: tuple[int, ...] = field(compare=False)
    internal: tuple[int, ...] = field(compare=False)
    parent: tuple[tuple[int, int], ...] = field(compare=False)

    @property
    def n(self) -> int:
        return len(self.leaves) - 1

    def parent_of(self, v: int) -> int:
        return dict(self.parent)[v]

    def children_of(self, v: int) -> tuple[int, ...]:
        par = dict(self.parent)
        return tuple(sorted(u for u, p in par.items() if p == v))

    def is_trivalent(self) -> bool:
        degree: dict[int, int] = {}
        for u, v in self.edges:
            degree[u] = degree.get(u, 0) + 1
            degree[v] = degree.get(v, 0) + 1
        return all(degree[v] == 3 for v in self.internal)


def build_tree(edges) -> Tree:
    """Validate an edge list and orient it away from leaf 0."""
    norm = tuple(sorted((min(u, v), max(u, v)) for u, v in edges))
    if len(set(norm)) != len(norm):
        raise ValueError("duplicate edges")
    adjacency: dict[int, set[int]] = {}
    for u, v in norm:
        if u == v:
            raise ValueError("self-loop in tree")
        adjacency.setdefault(u, set()).add(v)
        adjacency.setdefault(v, set()).add(u)
    vertices = sorted(adjacency)
    if len(norm) != len(vertices) - 1:
        raise ValueError("edge count does not match a tree")
    leaves = sorted(v for v in vertices if len(adjacency[v]) == 1)
    internal = sorted(v for v in vertices if len(adjacency[v]) > 1)
    n = len(leaves) - 1
    if leaves != list(range(n + 1)):
        raise ValueError(f"leaves must be labeled 0..{n}, got {leaves}")
    if any(v <= n for v in internal):
        raise ValueError("internal vertices must be numbered above the leaves")
    # orient away from leaf 0 and check connectivity
    parent: dict[int, int] = {}
    stack = [0]
    seen = {0}
    while stack:
        u = stack.pop()
        for w in sorted(adjacency[u]):
            if w not in seen:
                seen.add(w)
                parent[w] = u
                stack.append(w)
    if seen != set(vertices):
        raise ValueError("tree is not connected")
    return Tree(norm, tuple(leaves), tuple(internal), tuple(sorted(parent.items())))


def parse_tree(text: str) -> Tree:
    """Parse an edge list like ``0-4,1-4,4-5,2-5,3-5``."""
    edges = []
    for part in text.split(","):
        a, _, b = part.strip().partition("-")
        edges.append((int(a), int(b)))
    return build_tree(edges)


def leaf_edge_block(tree: Tree, leaf: int) -> str:
    """Block name of the unique edge incident to a leaf."""
    if leaf not in tree.leaves:
        raise ValueError(f"{leaf} is not a leaf of the tree")
    edge = next(e for e in tree.edges if leaf in e)
    return _edge_block_name(edge)


def _edge_block_name(edge) -> str:
    u, v = min(edge), max(edge)
    return f"edge_{u}_{v}"


def tree_fiber_cone(
    rs: RootSystem,
    tree: Tree,
    strings=None,
    variant: ConeVariant = DEFAULT_VARIANT,
) -> ConeH:
    """Fiber product of triple cones over the tree: one weight block per edge
    and one string block per internal vertex, with each internal vertex's
    in-edge playing the derived-weight slot of its triple cone."""
    _require_type_a(rs)
    if not tree.is_trivalent():
        raise NotImplementedError("only trivalent trees are supported")
    if strings is None:
        strings = {}
    words = {v: _require_longest(rs, strings.get(v, w0_word(rs))) for v in tree.internal}
    r = rs.rank
    blocks = [Block(_edge_block_name(e), "weight", r) for e in tree.edges]
    for v in tree.internal:
        blocks.append(Block(f"t_{v}", "string", len(words[v])))
    cone = ConeH(tuple(blocks), (), ())  # offsets only
    ineqs: list[dict] = []
    eqs: list[dict] = []
    for v in tree.internal:
        children = tree.children_of(v)
        assert len(children) == 2
        role_offsets = {
            "mu": cone.offset_of(_edge_block_name((tree.parent_of(v), v))),
            "lam": cone.offset_of(_edge_block_name((v, children[0]))),
            "beta": cone.offset_of(_edge_block_name((v, children[1]))),
            "t": cone.offset_of(f"t_{v}"),
        }
        vi, ve = _triple_constraint_dicts(rs, words[v], variant)
        ineqs.extend(_materialize(vi, role_offsets))
        eqs.extend(_materialize(ve, role_offsets))
    return _assemble(blocks, ineqs, eqs)


# ---------------------------------------------------------------------------
# coweight tuples and chain maps


@dataclass(frozen=True)
class CoweightTuple:
    """Per-slot coweights in fundamental-coweight coordinates: the j-th entry
    of a slot is the value of that coweight on the j-th simple root."""

    systems: tuple[RootSystem, ...]
    coords: tuple[tuple[Fraction, ...], ...]


def coweight_tuple(systems, coords) -> CoweightTuple:
    systems = tuple(systems)
    rows = []
    if len(systems) != len(coords):
        raise ValueError("one coordinate vector per root system is required")
    for rs, vec in zip(systems, coords):
        vec = tuple(Fraction(c) for c in vec)
        if len(vec) != rs.rank:
            raise ValueError(f"coweight {vec} has wrong rank (expected {rs.rank})")
        rows.append(vec)
    return CoweightTuple(systems, tuple(rows))


def in_dual_chamber(rho: CoweightTuple) -> bool:
    """True iff every slot evaluates nonnegatively on every simple root."""
    return all(c >= 0 for vec in rho.coords for c in vec)


def is_strict_interior(rho: CoweightTuple) -> bool:
    return all(c > 0 for vec in rho.coords for c in vec)


def _pair_coweight(rs: RootSystem, coords, lam) -> Fraction:
    inv = _cartan_inverse(rs)
    total = Fraction(0)
    for i in range(rs.rank):
        if coords[i]:
            total += coords[i] * sum(
                (Fraction(inv[i][j]) * lam[j] for j in range(rs.rank)), Fraction(0)
            )
    return total


def coweight_value(rho: CoweightTuple, lambdas) -> Fraction:
    """Sum of the slotwise pairings; entries of the weights may be rational."""
    lambdas = tuple(tuple(w) for w in lambdas)
    if len(lambdas) != len(rho.systems):
        raise ValueError(
            f"expected {len(rho.systems)} weights, got {len(lambdas)}"
        )
    total = Fraction(0)
    for rs, coords, lam in zip(rho.systems, rho.coords, lambdas):
        if len(lam) != rs.rank:
            raise ValueError(f"weight {lam} has wrong rank (expected {rs.rank})")
        total += _pair_coweight(rs, coords, lam)
    return total


def face_pullback(
    rho: CoweightTuple, position: int, system: RootSystem | None = None
) -> CoweightTuple:
    """Insert a zero coweight at the given slot (the collapsed group)."""
    k = len(rho.systems) - 1
    if not 1 <= position <= k:
        raise ValueError(f"position {position} out of range 1..{k}")
    if system is None:
        system = rho.systems[position]
    zero = (Fraction(0),) * system.rank
    systems = rho.systems[:position] + (system,) + rho.systems[position:]
    coords = rho.coords[:position] + (zero,) + rho.coords[position:]
    return CoweightTuple(systems, coords)


def degeneracy_pullback(rho: CoweightTuple, position: int) -> CoweightTuple:
    """Replace the coweights at slots position and position + 1 by their sum."""
    k = len(rho.systems) - 1
    if not 0 <= position <= k - 1:
        raise ValueError(f"position {position} out of range 0..{k - 1}")
    a, b = rho.systems[position], rho.systems[position + 1]
    if a.rank != b.rank:
        raise ValueError("adjacent slots have different ranks")
    merged = tuple(
        x + y for x, y in zip(rho.coords[position], rho.coords[position + 1])
    )
    systems = rho.systems[:position] + (a,) + rho.systems[position + 2 :]
    coords = rho.coords[:position] + (merged,) + rho.coords[position + 2 :]
    return CoweightTuple(systems, coords)


# ---------------------------------------------------------------------------
# plain-text export


def cone_hrep_text(cone: ConeH) -> str:
    """H-representation: header ``<rows> <dim+1>`` then rows ``b a_1 .. a_d``
    meaning b + <a, x> >= 0; equalities appear as two opposite rows."""
    rows = [(0,) + r for r in cone.ineqs]
    for e in cone.eqs:
        rows.append((0,) + e)
        rows.append((0,) + tuple(-c for c in e))
    lines = [f"{len(rows)} {cone.dimension + 1}"]
    for row in rows:
        lines.append(" ".join(str(c) for c in row))
    return "\n".join(lines) + "\n"


def cone_blocks_sidecar(cone: ConeH) -> dict:
    """JSON-ready description of the block layout of an exported cone."""
    blocks = []
    off = 0
    for b in cone.blocks:
        blocks.append({"name": b.name, "kind": b.kind, "size": b.size, "offset": off})
        off += b.size
    return {
        "format": "branchcones-hrep-1",
        "dimension": cone.dimension,
        "num_inequalities": len(cone.ineqs),
        "num_equalities": len(cone.eqs),
        "blocks": blocks,
    }
