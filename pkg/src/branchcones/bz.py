"""Triangle diagrams and quilts for SL(m) tensor invariants.

The diagram for SL(m) is a triangular arrangement with m - 1 small upward
triangles per side.  Each upward triangle keeps its own three corner points,
so the diagram has 3 * m(m-1)/2 vertices, and every downward gap between
three upward triangles becomes a hexagon.  A filling assigns a nonnegative
integer to every vertex subject to the hexagon rule: the two vertex values
on a hexagon side sum to the same number as the two on the opposite side.
Reading off the pair sums along the three oriented sides of the big triangle
yields three dominant SL(m) weights, and the fillings with prescribed
boundary weights count the invariants in the corresponding triple tensor
product.

Quilts glue one filling per internal vertex of a trivalent oriented tree,
with matching weights along shared edges (the in-edge weight enters a
filling dualized); their count equals the dimension of the multi-tensor
invariant space attached to the leaf weights.

Indexing scheme (version 1): upward triangles are indexed (row, pos) with
row 1 at the top and pos running left to right; each contributes corners
"t" (top), "l" (bottom left), "r" (bottom right).  Side 1 is the left edge
read top to bottom, side 2 the bottom read left to right, side 3 the right
edge read bottom to top (counter-clockwise).

This module deliberately shares no code with the cone slicing machinery:
fillings are enumerated by a dedicated forcing/backtracking solver so that
the triangle counts form an independent route to the same numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cones import Tree

INDEX_SCHEME_VERSION = 1

Vertex = tuple[int, int, str]  # (row, pos, corner)
_CORNERS = ("t", "l", "r")


class HexagonViolationError(ValueError):
    """A filling breaks a hexagon pair-sum relation."""


@dataclass(frozen=True)
class BZTemplate:
    """Vertex/hexagon/boundary layout of the SL(m) triangle diagram."""

    m: int
    vertices: tuple[Vertex, ...]
    # each hexagon is three (pair, opposite pair) relations
    hexagons: tuple[tuple[tuple[tuple[Vertex, Vertex], tuple[Vertex, Vertex]], ...], ...]
    # boundary[side][j] is the vertex pair of the j-th bordering triangle
    boundary: tuple[tuple[tuple[Vertex, Vertex], ...], ...]

    def index_of(self, v: Vertex) -> int:
        return self.vertices.index(v)


@dataclass(frozen=True)
class BZFilling:
    """Nonnegative integers on the template vertices, in canonical order."""

    m: int
    values: tuple[int, ...]


@dataclass(frozen=True)
class Quilt:
    """A filling per internal tree vertex with matching edge weights."""

    m: int
    tree: Tree
    edge_weights: tuple[tuple[tuple[int, int], tuple[int, ...]], ...]
    fillings: tuple[tuple[int, BZFilling], ...]


@lru_cache(maxsize=None)
def bz_template(m: int) -> BZTemplate:
    """Canonical triangle template for SL(m)."""
    if not isinstance(m, int) or m < 2:
        raise ValueError(f"the SL(m) parameter must be an integer >= 2, got {m!r}")
    s = m - 1
    vertices = tuple(
        (i, j, c) for i in range(1, s + 1) for j in range(1, i + 1) for c in _CORNERS
    )
    hexagons = []
    for i in range(2, s + 1):
        for j in range(1, i):
            top = ((i - 1, j, "l"), (i - 1, j, "r"))
            bottom = ((i, j, "r"), (i, j + 1, "l"))
            upper_right = ((i - 1, j, "r"), (i, j + 1, "t"))
            lower_left = ((i, j, "r"), (i, j, "t"))
            lower_right = ((i, j + 1, "t"), (i, j + 1, "l"))
            upper_left = ((i, j, "t"), (i - 1, j, "l"))
            hexagons.append(
                (
                    (top, bottom),
                    (upper_right, lower_left),
                    (lower_right, upper_left),
                )
            )
    side1 = tuple(((j, 1, "t"), (j, 1, "l")) for j in range(1, s + 1))
    side2 = tuple(((s, j, "l"), (s, j, "r")) for j in range(1, s + 1))
    side3 = tuple(
        ((s + 1 - j, s + 1 - j, "r"), (s + 1 - j, s + 1 - j, "t"))
        for j in range(1, s + 1)
    )
    return BZTemplate(m, vertices, tuple(hexagons), (side1, side2, side3))


def _hexagon_ok(t: BZTemplate, values) -> bool:
    idx = {v: i for i, v in enumerate(t.vertices)}
    for hexagon in t.hexagons:
        for (a, b), (c, d) in hexagon:
            if values[idx[a]] + values[idx[b]] != values[idx[c]] + values[idx[d]]:
                return False
    return True


def boundary_weights(t: BZTemplate, f: BZFilling):
    """The three dominant weights read off the oriented sides of a filling."""
    if f.m != t.m or len(f.values) != len(t.vertices):
        raise ValueError("filling does not match the template")
    if any(v < 0 for v in f.values):
        raise ValueError("filling values must be nonnegative")
    if not _hexagon_ok(t, f.values):
        raise HexagonViolationError("opposite hexagon sides have unequal sums")
    idx = {v: i for i, v in enumerate(t.vertices)}
    out = []
    for side in t.boundary:
        out.append(tuple(f.values[idx[a]] + f.values[idx[b]] for a, b in side))
    return tuple(out)


def _solver_tables(t: BZTemplate):
    """Equation tables reused by the filling enumerator."""
    idx = {v: i for i, v in enumerate(t.vertices)}
    hex_eqs = []  # (p1, p2, q1, q2): x_p1 + x_p2 == x_q1 + x_q2
    for hexagon in t.hexagons:
        for (a, b), (c, d) in hexagon:
            hex_eqs.append((idx[a], idx[b], idx[c], idx[d]))
    boundary = [
        [(idx[a], idx[b]) for a, b in side] for side in t.boundary
    ]
    return idx, hex_eqs, boundary


def enumerate_bz(t: BZTemplate, l1, l2, l3) -> list[BZFilling]:
    """All fillings whose boundary weights are (l1, l2, l3).

    Backtracking with constraint forcing: whenever an equation has a single
    unknown vertex its value is forced, and every branch value is bounded by
    propagated upper bounds from the boundary sums.
    """
    weights = [tuple(w) for w in (l1, l2, l3)]
    s = t.m - 1
    for w in weights:
        if len(w) != s or any((not isinstance(c, int)) or c < 0 for c in w):
            raise ValueError(f"expected a dominant SL({t.m}) weight, got {w!r}")
    n = len(t.vertices)
    _, hex_eqs, boundary = _solver_tables(t)
    pair_eqs = []  # (a, b, total)
    for side, w in zip(boundary, weights):
        for (a, b), c in zip(side, w):
            pair_eqs.append((a, b, c))

    # upper bounds: boundary pairs bound their vertices, hexagon relations
    # push finite bounds inward
    INF = None
    ub: list[int | None] = [INF] * n
    for a, b, c in pair_eqs:
        ub[a] = c if ub[a] is None else min(ub[a], c)
        ub[b] = c if ub[b] is None else min(ub[b], c)
    changed = True
    while changed:
        changed = False
        for p1, p2, q1, q2 in hex_eqs:
            for x, y, u, v in ((p1, p2, q1, q2), (q1, q2, p1, p2)):
                if ub[u] is not None and ub[v] is not None:
                    cap = ub[u] + ub[v]
                    for z in (x, y):
                        if ub[z] is None or ub[z] > cap:
                            ub[z] = cap
                            changed = True
    assert all(u is not None for u in ub), "template bound propagation failed"

    touching: list[list[tuple]] = [[] for _ in range(n)]
    for a, b, c in pair_eqs:
        for z in (a, b):
            touching[z].append(("pair", a, b, c))
    for eq in hex_eqs:
        for z in eq:
            touching[z].append(("hex",) + eq)

    values: list[int | None] = [None] * n
    found: list[BZFilling] = []

    def check_and_force(z: int, trail: list[int]) -> bool:
        """Re-examine equations touching z; force single unknowns."""
        queue = [z]
        while queue:
            v = queue.pop()
            for eq in touching[v]:
                if eq[0] == "pair":
                    _, a, b, c = eq
                    va, vb = values[a], values[b]
                    if va is not None and vb is not None:
                        if va + vb != c:
                            return False
                    elif va is not None or vb is not None:
                        known = va if va is not None else vb
                        if known > c:
                            return False
                        unknown = b if va is not None else a
                        forced = c - known
                        if forced < 0 or (ub[unknown] is not None and forced > ub[unknown]):
                            return False
                        values[unknown] = forced
                        trail.append(unknown)
                        queue.append(unknown)
                else:
                    _, p1, p2, q1, q2 = eq
                    vs = [values[p1], values[p2], values[q1], values[q2]]
                    unknowns = [i for i, v0 in enumerate(vs) if v0 is None]
                    if not unknowns:
                        if vs[0] + vs[1] != vs[2] + vs[3]:
                            return False
                    elif len(unknowns) == 1:
                        pos = unknowns[0]
                        target = [p1, p2, q1, q2][pos]
                        if pos < 2:
                            forced = vs[2] + vs[3] - (vs[0] if pos == 1 else vs[1])
                        else:
                            forced = vs[0] + vs[1] - (vs[2] if pos == 3 else vs[3])
                        if forced < 0 or forced > ub[target]:
                            return False
                        values[target] = forced
                        trail.append(target)
                        queue.append(target)
        return True

    def undo(trail: list[int], mark: int) -> None:
        while len(trail) > mark:
            values[trail.pop()] = None

    def rec(pos: int, trail: list[int]) -> None:
        while pos < n and values[pos] is not None:
            pos += 1
        if pos == n:
            found.append(BZFilling(t.m, tuple(values)))
            return
        for val in range(ub[pos] + 1):
            mark = len(trail)
            values[pos] = val
            trail.append(pos)
            if check_and_force(pos, trail):
                rec(pos + 1, trail)
            undo(trail, mark)

    rec(0, [])
    found.sort(key=lambda f: f.values)
    return found


def count_bz(t: BZTemplate, l1, l2, l3) -> int:
    return len(enumerate_bz(t, l1, l2, l3))


@lru_cache(maxsize=None)
def _count_bz_cached(m: int, l1, l2, l3) -> int:
    return count_bz(bz_template(m), l1, l2, l3)


def _dual(w):
    """Dual of an SL(m) dominant weight: reverse the coordinates."""
    return tuple(reversed(w))


def _dominant_window(rank: int, total: int):
    """All dominant weights whose coordinates sum to at most ``total``."""
    if rank == 0:
        yield ()
        return
    for first in range(total + 1):
        for rest in _dominant_window(rank - 1, total - first):
            yield (first,) + rest


def _internal_edge_bounds(tree: Tree, leaf_weights):
    """Coordinate-sum bound per internal edge: the smaller of the two total
    leaf coordinate sums on either side (a dominant constituent of a tensor
    product pairs at most that high against the highest coroot)."""
    leaf_sum = {leaf: sum(w) for leaf, w in zip(tree.leaves, leaf_weights)}
    adjacency: dict[int, list[int]] = {}
    for u, v in tree.edges:
        adjacency.setdefault(u, []).append(v)
        adjacency.setdefault(v, []).append(u)
    bounds = {}
    for edge in tree.edges:
        u, v = edge
        if u in tree.leaves or v in tree.leaves:
            continue
        # leaves on the u-side of the cut
        stack, seen = [u], {u, v}
        side = 0
        while stack:
            x = stack.pop()
            if x in tree.leaves:
                side += leaf_sum[x]
            for y in adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        total = sum(leaf_sum.values())
        bounds[edge] = min(side, total - side)
    return bounds


def _vertex_boundary(tree: Tree, v: int, assignment) -> tuple:
    """Boundary triple at an internal vertex: dualized in-edge weight first,
    then the two out-edge weights in child order."""
    parent = tree.parent_of(v)
    win = assignment[tuple(sorted((parent, v)))]
    c1, c2 = tree.children_of(v)
    w1 = assignment[tuple(sorted((v, c1)))]
    w2 = assignment[tuple(sorted((v, c2)))]
    return _dual(win), w1, w2


def count_quilts(m: int, tree: Tree, leaf_weights) -> int:
    """Number of quilts on the tree with the given leaf edge weights."""
    return _quilts(m, tree, leaf_weights, collect=False)[0]


def enumerate_quilts(m: int, tree: Tree, leaf_weights) -> list[Quilt]:
    """All quilts on the tree with the given leaf edge weights."""
    return _quilts(m, tree, leaf_weights, collect=True)[1]


def _quilts(m: int, tree: Tree, leaf_weights, collect: bool):
    if not tree.is_trivalent():
        raise ValueError("quilts are defined over trivalent trees")
    leaf_weights = [tuple(w) for w in leaf_weights]
    if len(leaf_weights) != len(tree.leaves):
        raise ValueError("one weight per leaf is required")
    rank = m - 1
    for w in leaf_weights:
        if len(w) != rank or any(c < 0 for c in w):
            raise ValueError(f"expected a dominant SL({m}) weight, got {w!r}")
    template = bz_template(m)
    assignment = {}
    for leaf, w in zip(tree.leaves, leaf_weights):
        edge = next(e for e in tree.edges if leaf in e)
        assignment[edge] = w
    internal_edges = [
        e for e in tree.edges if e[0] not in tree.leaves and e[1] not in tree.leaves
    ]
    bounds = _internal_edge_bounds(tree, leaf_weights)
    total = 0
    quilts: list[Quilt] = []

    def assign(pos: int) -> None:
        nonlocal total
        if pos == len(internal_edges):
            per_vertex = []
            product = 1
            for v in tree.internal:
                tri = _vertex_boundary(tree, v, assignment)
                c = _count_bz_cached(m, *tri)
                if c == 0:
                    product = 0
                    break
                per_vertex.append((v, tri))
                product *= c
            if product == 0:
                return
            total += product
            if collect:
                options = [
                    [(v, f) for f in enumerate_bz(template, *tri)]
                    for v, tri in per_vertex
                ]
                _collect_products(options, [], quilts)
            return
        edge = internal_edges[pos]
        for w in _dominant_window(rank, bounds[edge]):
            assignment[edge] = w
            assign(pos + 1)
        del assignment[edge]

    def _collect_products(options, chosen, sink):
        if len(chosen) == len(options):
            sink.append(
                Quilt(
                    m,
                    tree,
                    tuple(sorted((e, tuple(w)) for e, w in assignment.items())),
                    tuple(chosen),
                )
            )
            return
        for v, f in options[len(chosen)]:
            _collect_products(options, chosen + [(v, f)], sink)

    assign(0)
    return total, quilts


# ---------------------------------------------------------------------------
# serialization


def filling_to_json(t: BZTemplate, f: BZFilling) -> dict:
    return {
        "m": t.m,
        "index_scheme": INDEX_SCHEME_VERSION,
        "values": list(f.values),
    }


def quilt_to_json(q: Quilt) -> dict:
    return {
        "m": q.m,
        "index_scheme": INDEX_SCHEME_VERSION,
        "tree": [f"{u}-{v}" for u, v in q.tree.edges],
        "edge_weights": [
            {"edge": f"{e[0]}-{e[1]}", "weight": list(w)} for e, w in q.edge_weights
        ],
        "fillings": [
            {"vertex": v, "values": list(f.values)} for v, f in q.fillings
        ],
    }
