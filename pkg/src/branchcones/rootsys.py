"""Root systems, weights, and Weyl-group words.

Conventions used throughout the package:

* A weight is a tuple of integers in fundamental-weight coordinates, so the
  pairing against the i-th simple coroot is simply ``w[i - 1]``.
* ``cartan[i][j]`` is the pairing of the (j+1)-th simple root against the
  (i+1)-th simple coroot.  In fundamental-weight coordinates the simple
  roots are therefore the columns of the Cartan matrix.
* A word is a tuple of indices in ``1..rank`` denoting a product of simple
  reflections read left to right; it acts on a weight by applying the
  rightmost letter first.

Only type A is constructed natively (`build_root_system`).  Dominance and
pairing operations accept any integer Cartan matrix of finite type; the cone
builders elsewhere in the package insist on type A because they need the
minuscule weight diagrams of the fundamental representations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Weight = tuple[int, ...]
Word = tuple[int, ...]


@dataclass(frozen=True)
class RootSystem:
    """Cartan data for a finite root system."""

    rank: int
    cartan: tuple[tuple[int, ...], ...]

    @property
    def n_positive_roots(self) -> int:
        return len(positive_roots(self))


def build_root_system(rank: int) -> RootSystem:
    """Type-A root system of the given rank (A_rank, i.e. SL(rank+1))."""
    if not isinstance(rank, int) or rank < 1:
        raise ValueError(f"rank must be a positive integer, got {rank!r}")
    cartan = tuple(
        tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(rank))
        for i in range(rank)
    )
    return RootSystem(rank, cartan)


def is_type_a(rs: RootSystem) -> bool:
    return rs.rank >= 1 and rs.cartan == build_root_system(rs.rank).cartan


# ---------------------------------------------------------------------------
# weights


def zero_weight(rs: RootSystem) -> Weight:
    return (0,) * rs.rank


def fundamental_weight(rs: RootSystem, j: int) -> Weight:
    if not 1 <= j <= rs.rank:
        raise ValueError(f"fundamental-weight index {j} out of range 1..{rs.rank}")
    return tuple(1 if k == j - 1 else 0 for k in range(rs.rank))


def weyl_vector(rs: RootSystem) -> Weight:
    """Half-sum of positive roots; all fundamental coordinates equal 1."""
    return (1,) * rs.rank


def check_weight(rs: RootSystem, w: Weight) -> Weight:
    if len(w) != rs.rank or not all(isinstance(c, int) for c in w):
        raise ValueError(f"expected an integer weight of rank {rs.rank}, got {w!r}")
    return tuple(w)


def is_dominant(rs: RootSystem, w: Weight) -> bool:
    return all(c >= 0 for c in w)


def simple_root(rs: RootSystem, i: int) -> Weight:
    """The i-th simple root in fundamental-weight coordinates."""
    if not 1 <= i <= rs.rank:
        raise ValueError(f"simple-root index {i} out of range 1..{rs.rank}")
    return tuple(rs.cartan[k][i - 1] for k in range(rs.rank))


def coroot_pairing(rs: RootSystem, alpha_index: int, w: Weight) -> int:
    """Pairing of the weight against the alpha_index-th simple coroot."""
    if not 1 <= alpha_index <= rs.rank:
        raise ValueError(f"coroot index {alpha_index} out of range 1..{rs.rank}")
    if len(w) != rs.rank:
        raise ValueError(f"weight {w!r} has wrong rank (expected {rs.rank})")
    return w[alpha_index - 1]


def simple_reflection(rs: RootSystem, index: int, w) -> tuple:
    """s_i(w) = w - <w, alpha_i^v> alpha_i (entries may be rational)."""
    alpha = simple_root(rs, index)
    c = w[index - 1]
    return tuple(w[k] - c * alpha[k] for k in range(rs.rank))


def act_word(rs: RootSystem, word: Word, w) -> tuple:
    """Apply the Weyl-group element of the word to a weight."""
    v = tuple(w)
    for i in reversed(word):
        v = simple_reflection(rs, i, v)
    return v


def dual_weight(rs: RootSystem, w: Weight) -> Weight:
    """Highest weight of the dual representation: -w0(w)."""
    image = act_word(rs, longest_element_word(rs, frozenset(range(1, rs.rank + 1))), w)
    return tuple(-c for c in image)


# ---------------------------------------------------------------------------
# positive roots (simple-root coordinates)


@lru_cache(maxsize=None)
def positive_roots(rs: RootSystem) -> tuple[tuple[int, ...], ...]:
    """All positive roots in simple-root coordinates, sorted by height."""
    r = rs.rank
    simple = [tuple(1 if k == i else 0 for k in range(r)) for i in range(r)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(r):
                if beta == simple[i]:
                    continue
                pairing = sum(beta[j] * rs.cartan[i][j] for j in range(r))
                # depth of the alpha_i-string below beta
                p = 0
                while True:
                    lower = tuple(
                        beta[k] - (p + 1) * (1 if k == i else 0) for k in range(r)
                    )
                    if lower in roots:
                        p += 1
                    else:
                        break
                if p - pairing >= 1:
                    cand = tuple(beta[k] + (1 if k == i else 0) for k in range(r))
                    if cand not in roots:
                        roots.add(cand)
                        nxt.append(cand)
        layer = nxt
    return tuple(sorted(roots, key=lambda v: (sum(v), v)))


def root_to_weight(rs: RootSystem, acoords) -> tuple:
    """Convert simple-root coordinates to fundamental-weight coordinates."""
    return tuple(
        sum(acoords[i] * rs.cartan[k][i] for i in range(rs.rank))
        for k in range(rs.rank)
    )


# ---------------------------------------------------------------------------
# dominance order


@lru_cache(maxsize=None)
def _cartan_inverse(rs: RootSystem) -> tuple[tuple[Fraction, ...], ...]:
    r = rs.rank
    aug = [
        [Fraction(rs.cartan[i][j]) for j in range(r)]
        + [Fraction(1 if j == i else 0) for j in range(r)]
        for i in range(r)
    ]
    for col in range(r):
        pivot = next(row for row in range(col, r) if aug[row][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        factor = aug[col][col]
        aug[col] = [x / factor for x in aug[col]]
        for row in range(r):
            if row != col and aug[row][col] != 0:
                f = aug[row][col]
                aug[row] = [x - f * y for x, y in zip(aug[row], aug[col])]
    return tuple(tuple(aug[i][r:]) for i in range(r))


def alpha_coordinates(rs: RootSystem, w) -> tuple[Fraction, ...]:
    """Expand a weight in the basis of simple roots (exact rationals)."""
    inv = _cartan_inverse(rs)
    return tuple(
        sum((Fraction(inv[i][j]) * w[j] for j in range(rs.rank)), Fraction(0))
        for i in range(rs.rank)
    )


def dominance_leq(rs: RootSystem, a: Weight, b: Weight) -> bool:
    """True iff b - a is a nonnegative integer combination of simple roots."""
    diff = tuple(x - y for x, y in zip(b, a))
    coords = alpha_coordinates(rs, diff)
    return all(c.denominator == 1 and c >= 0 for c in coords)


# ---------------------------------------------------------------------------
# Weyl-group words via the action on roots (simple-root basis matrices)


@lru_cache(maxsize=None)
def _reflection_matrix(rs: RootSystem, i: int) -> tuple[tuple[int, ...], ...]:
    # s_i(alpha_j) = alpha_j - cartan[i][j] * alpha_i
    r = rs.rank
    return tuple(
        tuple(
            (1 if k == j else 0) - (rs.cartan[i - 1][j] if k == i - 1 else 0)
            for j in range(r)
        )
        for k in range(r)
    )


def _mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def word_matrix(rs: RootSystem, word: Word) -> tuple[tuple[int, ...], ...]:
    """Matrix of the word's element acting on simple-root coordinates."""
    m = _identity(rs.rank)
    for i in word:
        m = _mat_mul(m, _reflection_matrix(rs, i))
    return m


def _mat_vec(m, v):
    n = len(m)
    return tuple(sum(m[i][j] * v[j] for j in range(n)) for i in range(n))


def word_inversions(rs: RootSystem, word: Word) -> int:
    """Coxeter length of the word's element (count of inverted positive roots)."""
    m = word_matrix(rs, word)
    count = 0
    for beta in positive_roots(rs):
        image = _mat_vec(m, beta)
        if all(c <= 0 for c in image):
            count += 1
    return count


def _check_letters(rs: RootSystem, word: Word) -> None:
    for i in word:
        if not 1 <= i <= rs.rank:
            raise ValueError(f"word letter {i} out of range 1..{rs.rank}")


def validate_reduced_word(rs: RootSystem, word: Word) -> bool:
    """True iff the word is a reduced expression for its element."""
    _check_letters(rs, word)
    return word_inversions(rs, tuple(word)) == len(word)


def is_longest_word(rs: RootSystem, word: Word) -> bool:
    """True iff the word is a reduced expression for the longest element."""
    word = tuple(word)
    if not validate_reduced_word(rs, word):
        return False
    if len(word) != rs.n_positive_roots:
        return False
    # the longest element sends the dominant chamber to the antidominant one
    image = act_word(rs, word, weyl_vector(rs))
    return all(c <= 0 for c in image)


def longest_element_word(rs: RootSystem, subset) -> Word:
    """Lexicographically smallest reduced word for the longest element of the
    parabolic subgroup generated by the simple reflections in ``subset``."""
    indices = sorted(set(subset))
    for i in indices:
        if not 1 <= i <= rs.rank:
            raise ValueError(f"simple index {i} out of range 1..{rs.rank}")
    word: list[int] = []
    m = _identity(rs.rank)
    while True:
        # smallest ascent: u(alpha_i) positive means l(u s_i) = l(u) + 1
        chosen = None
        for i in indices:
            col = tuple(m[k][i - 1] for k in range(rs.rank))
            if all(c >= 0 for c in col) and any(c > 0 for c in col):
                chosen = i
                break
        if chosen is None:
            return tuple(word)
        word.append(chosen)
        m = _mat_mul(m, _reflection_matrix(rs, chosen))


def w0_word(rs: RootSystem) -> Word:
    return longest_element_word(rs, range(1, rs.rank + 1))


def lex_reduced_word(rs: RootSystem, m, m_inv) -> Word:
    """Lexicographically smallest reduced word of the element with the given
    simple-root-basis matrix and inverse matrix."""
    ident = _identity(rs.rank)
    word: list[int] = []
    while m != ident:
        for i in range(1, rs.rank + 1):
            # l(s_i w) < l(w) iff w^{-1}(alpha_i) is negative
            col = tuple(m_inv[k][i - 1] for k in range(rs.rank))
            if all(c <= 0 for c in col):
                word.append(i)
                s = _reflection_matrix(rs, i)
                m = _mat_mul(s, m)
                m_inv = _mat_mul(m_inv, s)
                break
        else:  # pragma: no cover - impossible for a valid Weyl matrix
            raise RuntimeError("no descent found; matrix is not a Weyl element")
    return tuple(word)


def levi_complement_word(rs: RootSystem, subset) -> Word:
    """Lexicographically smallest reduced word for w0(I)^{-1} w0."""
    w0i = word_matrix(rs, longest_element_word(rs, subset))
    w0 = word_matrix(rs, w0_word(rs))
    # both factors are involutions
    m = _mat_mul(w0i, w0)
    m_inv = _mat_mul(w0, w0i)
    return lex_reduced_word(rs, m, m_inv)
