"""Exact lattice-point enumeration in bounded slices of rational cones.

A slice substitutes integer vectors for some blocks of a cone and keeps the
rest as free variables.  Boundedness of the remaining region is certified at
construction time by interval propagation: sweeps of Fourier-Motzkin style
single-row eliminations that tighten per-variable lower/upper bounds until
every variable carries finite bounds (or the region is shown empty).  Bounds
are rounded inward to integers as they are derived, which is sound because
only integer points are ever counted; all arithmetic is exact integer
arithmetic, so counts carry no tolerance.

Enumeration fixes the variable with the currently narrowest range,
re-propagates, and recurses.  An optional cap guards against accidentally
huge slices; it can be set per call or through the
``BRANCHCONES_POINT_CAP`` environment variable.
"""

from __future__ import annotations

import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .cones import ConeH

DEFAULT_POINT_CAP = 10**7
_ENV_CAP = "BRANCHCONES_POINT_CAP"


class UnboundedRegionError(RuntimeError):
    """The sliced region admits an unbounded direction."""


class ResourceLimitError(RuntimeError):
    """Enumeration exceeded the configured point cap."""

    def __init__(self, cap: int):
        super().__init__(f"lattice point enumeration exceeded the cap of {cap} points")
        self.cap = cap


def _effective_cap(cap: int | None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get(_ENV_CAP)
    if env:
        return int(env)
    return DEFAULT_POINT_CAP


# rows are (constant, ((var_index, coeff), ...)) with integer entries
Row = tuple[int, tuple[tuple[int, int], ...]]


@dataclass(frozen=True)
class Polytope:
    """Bounded region arising as a cone slice (integer data throughout)."""

    num_vars: int
    var_labels: tuple[str, ...]
    ineqs: tuple[Row, ...]
    eqs: tuple[Row, ...]
    feasible: bool
    lower: tuple[int, ...]
    upper: tuple[int, ...]
    source: ConeH | None = None
    fixed: tuple[tuple[str, tuple[int, ...]], ...] = ()


def _ceil_div(a: int, b: int) -> int:
    # b > 0
    return -((-a) // b)


def _propagate(rows, lo, hi, max_sweeps) -> bool:
    """Tighten integer bounds in place; False once proven infeasible.

    ``rows`` hold constraints b + <a, x> >= 0; ``lo``/``hi`` entries are
    ints or None (unbounded).
    """
    for _ in range(max_sweeps):
        changed = False
        for b, terms in rows:
            total = b
            missing = 0
            missing_idx = -1
            for idx, c in terms:
                bound = hi[idx] if c > 0 else lo[idx]
                if bound is None:
                    missing += 1
                    missing_idx = idx
                    if missing > 1:
                        break
                else:
                    total += c * bound
            if missing > 1:
                continue
            if missing == 0 and total < 0:
                return False
            for idx, c in terms:
                if missing == 1:
                    if idx != missing_idx:
                        continue
                    others = total
                else:
                    bound = hi[idx] if c > 0 else lo[idx]
                    others = total - c * bound
                # c * x >= -others
                if c > 0:
                    cand = _ceil_div(-others, c)
                    if lo[idx] is None or cand > lo[idx]:
                        lo[idx] = cand
                        changed = True
                else:
                    cand = (-others) // c
                    if hi[idx] is None or cand < hi[idx]:
                        hi[idx] = cand
                        changed = True
        if not changed:
            break
    for i in range(len(lo)):
        if lo[i] is not None and hi[i] is not None and lo[i] > hi[i]:
            return False
    return True


def _expanded_rows(ineqs, eqs):
    rows = list(ineqs)
    for b, terms in eqs:
        rows.append((b, terms))
        rows.append((-b, tuple((i, -c) for i, c in terms)))
    return rows


def slice_cone(cone: ConeH, fixed) -> Polytope:
    """Substitute integer vectors for the named blocks and certify the rest.

    Returns an empty polytope on infeasible substitutions; raises
    `UnboundedRegionError` when a free direction survives.
    """
    fixed_items = []
    values: dict[str, tuple[int, ...]] = {}
    for name, vec in dict(fixed).items():
        block = cone.block_named(name)
        vec = tuple(vec)
        if len(vec) != block.size or not all(isinstance(c, int) for c in vec):
            raise ValueError(
                f"block {name!r} expects an integer vector of length {block.size}"
            )
        values[name] = vec
        fixed_items.append((name, vec))
    fixed_items.sort()

    fixed_cols: dict[int, int] = {}
    for name, vec in values.items():
        off = cone.offset_of(name)
        for k, v in enumerate(vec):
            fixed_cols[off + k] = v
    free_cols = [c for c in range(cone.dimension) if c not in fixed_cols]
    col_index = {c: i for i, c in enumerate(free_cols)}
    labels = []
    off = 0
    for b in cone.blocks:
        for k in range(b.size):
            if (off + k) in col_index:
                labels.append(f"{b.name}[{k}]")
        off += b.size

    def reduce_row(row):
        const = 0
        terms = []
        for col, c in enumerate(row):
            if c == 0:
                continue
            if col in fixed_cols:
                const += c * fixed_cols[col]
            else:
                terms.append((col_index[col], c))
        return const, tuple(terms)

    ineqs, eqs = [], []
    feasible = True
    for row in cone.ineqs:
        b, terms = reduce_row(row)
        if not terms:
            if b < 0:
                feasible = False
        else:
            ineqs.append((b, terms))
    for row in cone.eqs:
        b, terms = reduce_row(row)
        if not terms:
            if b != 0:
                feasible = False
        else:
            eqs.append((b, terms))

    n = len(free_cols)
    lo: list = [None] * n
    hi: list = [None] * n
    if feasible and n:
        rows = _expanded_rows(ineqs, eqs)
        feasible = _propagate(rows, lo, hi, max_sweeps=3 * n + 8)
    if feasible and any(b is None for b in lo + hi):
        missing = [labels[i] for i in range(n) if lo[i] is None or hi[i] is None]
        raise UnboundedRegionError(f"slice is unbounded in {', '.join(missing)}")
    if not feasible:
        lo = [0] * n
        hi = [-1] * n
    return Polytope(
        num_vars=n,
        var_labels=tuple(labels),
        ineqs=tuple(ineqs),
        eqs=tuple(eqs),
        feasible=feasible,
        lower=tuple(lo),
        upper=tuple(hi),
        source=cone,
        fixed=tuple(fixed_items),
    )


class _Budget:
    """Shared counter enforcing the enumeration cap across worker threads."""

    def __init__(self, cap: int):
        self.cap = cap
        self.used = 0
        self._lock = threading.Lock()

    def spend(self, amount: int = 1) -> None:
        with self._lock:
            self.used += amount
            if self.used > self.cap:
                raise ResourceLimitError(self.cap)


def _row_value(b, terms, vals):
    total = b
    for idx, c in terms:
        total += c * vals[idx]
    return total


def _search(rows, ineqs, eqs, lo, hi, vals, free, budget, emit):
    """Depth-first enumeration with re-propagation at every level."""
    if not _propagate(rows, lo, hi, max_sweeps=len(free) + 4):
        return
    best = None
    for i in free:
        width = hi[i] - lo[i]
        if best is None or width < best[0]:
            best = (width, i)
    if best is None:
        for b, terms in ineqs:
            if _row_value(b, terms, vals) < 0:
                return
        for b, terms in eqs:
            if _row_value(b, terms, vals) != 0:
                return
        if budget is not None:
            budget.spend()
        emit(tuple(vals))
        return
    _, var = best
    lo_i, hi_i = lo[var], hi[var]
    rest = [i for i in free if i != var]
    for value in range(lo_i, hi_i + 1):
        vals[var] = value
        nlo, nhi = list(lo), list(hi)
        nlo[var] = value
        nhi[var] = value
        _search(rows, ineqs, eqs, nlo, nhi, vals, rest, budget, emit)
    vals[var] = None


def enumerate_points(
    p: Polytope, cap: int | None = None, threads: int = 1
) -> list[tuple[int, ...]]:
    """All integer points of the polytope, lexicographically sorted."""
    out: list[tuple[int, ...]] = []
    _run(p, cap, threads, out.append)
    out.sort()
    return out


def count_points(p: Polytope, cap: int | None = None, threads: int = 1) -> int:
    """Number of integer points, without materializing the list."""
    counter = [0]

    def emit(_):
        counter[0] += 1

    _run(p, cap, threads, emit)
    return counter[0]


def _run(p: Polytope, cap, threads, emit) -> None:
    if not p.feasible:
        return
    budget = _Budget(_effective_cap(cap))
    if p.num_vars == 0:
        budget.spend()
        emit(())
        return
    rows = _expanded_rows(p.ineqs, p.eqs)
    free = list(range(p.num_vars))
    lo = list(p.lower)
    hi = list(p.upper)
    vals: list = [None] * p.num_vars
    if threads <= 1:
        _search(rows, p.ineqs, p.eqs, lo, hi, vals, free, budget, emit)
        return
    # split the outermost branching variable's range across workers
    if not _propagate(rows, lo, hi, max_sweeps=p.num_vars + 4):
        return
    var = min(free, key=lambda i: (hi[i] - lo[i], i))
    values = list(range(lo[var], hi[var] + 1))
    if not values:
        return
    chunk = max(1, (len(values) + threads - 1) // threads)
    groups = [values[i : i + chunk] for i in range(0, len(values), chunk)]
    results: list[list] = [[] for _ in groups]
    rest = [i for i in free if i != var]

    def work(gi: int) -> None:
        for value in groups[gi]:
            nlo, nhi = list(lo), list(hi)
            nlo[var] = value
            nhi[var] = value
            nvals: list = [None] * p.num_vars
            nvals[var] = value
            _search(
                rows, p.ineqs, p.eqs, nlo, nhi, nvals, rest, budget, results[gi].append
            )

    with ThreadPoolExecutor(max_workers=len(groups)) as pool:
        futures = [pool.submit(work, gi) for gi in range(len(groups))]
        for f in futures:
            f.result()
    for group in results:
        for point in group:
            emit(point)


def point_satisfies(p: Polytope, point) -> bool:
    """Exact membership re-check of an enumerated point."""
    vals = list(point)
    return all(_row_value(b, t, vals) >= 0 for b, t in p.ineqs) and all(
        _row_value(b, t, vals) == 0 for b, t in p.eqs
    )
