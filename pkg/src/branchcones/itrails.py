"""Trails through minuscule weight diagrams and their coefficient vectors.

A trail for a word (i_1, ..., i_L) from gamma to eta inside a weight diagram
is a weight sequence (gamma_0 = gamma, ..., gamma_L = eta) whose k-th step
subtracts c_k copies of the simple root alpha_{i_k}.  In a minuscule diagram
every raising operator squares to zero, so c_k is 0 or 1 and a unit step is
admissible exactly when the corresponding labeled edge exists.  All type-A
fundamental representations are minuscule, which is the regime the cone
builders use; no claim is made for non-minuscule modules.

The coefficient attached to position k is half the coroot pairing of
gamma_{k-1} + gamma_k against alpha_{i_k}; these generate the linear forms
that cut out the string and tensor cones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .rootsys import (
    RootSystem,
    Weight,
    Word,
    fundamental_weight,
    is_type_a,
    simple_root,
)
from .oracle import irrep_dimension


@dataclass(frozen=True)
class WeightDiagram:
    """Weights of a minuscule fundamental representation together with the
    simple-root-labeled edges (w, w - alpha_i)."""

    rs: RootSystem
    j: int
    weights: tuple[Weight, ...]
    edges: tuple[tuple[int, Weight, Weight], ...]

    @property
    def weight_set(self) -> frozenset:
        return frozenset(self.weights)

    def has_edge(self, i: int, source: Weight) -> bool:
        target = tuple(
            source[k] - simple_root(self.rs, i)[k] for k in range(self.rs.rank)
        )
        return source[i - 1] == 1 and target in self.weight_set


@dataclass(frozen=True)
class ITrail:
    """A trail: the word, the weight sequence, and the 0/1 step multiplicities."""

    word: Word
    weights: tuple[Weight, ...]
    steps: tuple[int, ...]


@lru_cache(maxsize=None)
def minuscule_weight_diagram(rs: RootSystem, j: int) -> WeightDiagram:
    """Weight diagram of the j-th fundamental representation (type A only)."""
    if not is_type_a(rs):
        raise NotImplementedError(
            "weight diagrams are only constructed for type-A root systems"
        )
    if not 1 <= j <= rs.rank:
        raise ValueError(f"fundamental index {j} out of range 1..{rs.rank}")
    roots = {i: simple_root(rs, i) for i in range(1, rs.rank + 1)}
    start = fundamental_weight(rs, j)
    seen = {start}
    stack = [start]
    while stack:
        w = stack.pop()
        for i in range(1, rs.rank + 1):
            if w[i - 1] == 1:
                nxt = tuple(w[k] - roots[i][k] for k in range(rs.rank))
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
    weights = tuple(sorted(seen))
    dim = irrep_dimension(rs, start)
    assert len(weights) == dim, "minuscule orbit does not fill the representation"
    edges = []
    wset = frozenset(weights)
    for w in weights:
        for i in range(1, rs.rank + 1):
            if w[i - 1] == 1:
                nxt = tuple(w[k] - roots[i][k] for k in range(rs.rank))
                if nxt in wset:
                    edges.append((i, w, nxt))
    return WeightDiagram(rs, j, weights, tuple(sorted(edges)))


def enumerate_itrails(
    diagram: WeightDiagram, word: Word, gamma: Weight, eta: Weight
) -> tuple[ITrail, ...]:
    """All trails of the word from gamma to eta inside the diagram."""
    gamma, eta = tuple(gamma), tuple(eta)
    wset = diagram.weight_set
    if gamma not in wset or eta not in wset:
        return ()
    word = tuple(word)
    rs = diagram.rs
    roots = {i: simple_root(rs, i) for i in set(word)}
    found: dict[tuple, ITrail] = {}

    def dfs(pos: int, current: Weight, path: list, steps: list) -> None:
        if pos == len(word):
            if current == eta:
                key = tuple(path)
                found[key] = ITrail(word, tuple(path), tuple(steps))
            return
        i = word[pos]
        # skip this letter
        path.append(current)
        steps.append(0)
        dfs(pos + 1, current, path, steps)
        path.pop()
        steps.pop()
        # take the labeled edge when it exists
        if current[i - 1] == 1:
            nxt = tuple(current[k] - roots[i][k] for k in range(rs.rank))
            if nxt in wset:
                path.append(nxt)
                steps.append(1)
                dfs(pos + 1, nxt, path, steps)
                path.pop()
                steps.pop()

    dfs(0, gamma, [gamma], [])
    trails = sorted(found.values(), key=lambda t: t.steps)
    return tuple(trails)


def d_vector(rs: RootSystem, trail: ITrail) -> tuple[Fraction, ...]:
    """Half-pairings of consecutive weight sums against the word's coroots."""
    out = []
    for k, i in enumerate(trail.word, start=1):
        a = trail.weights[k - 1][i - 1]
        b = trail.weights[k][i - 1]
        out.append(Fraction(a + b, 2))
    return tuple(out)
