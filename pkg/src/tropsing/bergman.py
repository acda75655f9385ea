"""Singularity coefficient matrix, Gale dual, and the matroid behind its kernel.

The curves through a fixed torus point with vanishing first derivatives form
the kernel of a 3 x s matrix A.  Its tropicalization only depends on the
matroid of the columns of a Gale dual B of A, and its maximal cones are the
weight classes of complete flags of flats of that matroid.  Everything here
is exact; matroid ranks come from Gaussian elimination over the columns of B.
"""

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import linalg
from .errors import (
    ConfigurationError,
    DependentPivotsError,
    MalformedFlagError,
    TooLargeError,
    ZeroTorusCoordinateError,
)
from .lattice import Circuit, collinear, convex_hull, orient

DEFAULT_LIMIT = 12


def enumeration_limit(limit=None) -> int:
    if limit is not None:
        return int(limit)
    env = os.environ.get("TROPSING_LIMIT")
    return int(env) if env else DEFAULT_LIMIT


@dataclass(frozen=True)
class CoefficientMatrix:
    """3 x s exact matrix whose kernel parametrizes curves singular at a point."""

    rows: tuple
    config: object
    base_point: tuple  # (p, q) for torus points, (1, 0) for the boundary case

    @property
    def size(self) -> int:
        return len(self.rows[0])

    def column(self, i):
        return tuple(row[i] for row in self.rows)


def coefficient_matrix(config, p=1, q=1) -> CoefficientMatrix:
    """Matrix of the conditions f(p,q) = f_x(p,q) = f_y(p,q) = 0.

    For (p, q) = (1, 1) the rows are the all-ones vector and the two
    coordinate vectors of the configuration; for other torus points each
    column is scaled by p^i q^j, which leaves the matroid unchanged.
    """
    p, q = Fraction(p), Fraction(q)
    if p == 0 or q == 0:
        raise ZeroTorusCoordinateError("base point must lie in the torus")
    rows = [[], [], []]
    for (i, j) in config.points:
        scale = (p ** i) * (q ** j)
        rows[0].append(scale)
        rows[1].append(scale * i)
        rows[2].append(scale * j)
    return CoefficientMatrix(tuple(tuple(r) for r in rows), config, (p, q))


@dataclass(frozen=True)
class GaleDual:
    """(s-3) x s matrix whose rows span the kernel of the coefficient matrix.

    `matrix` is stored in the original column order; `pivots_first()` returns
    the (-A1^t | I) presentation obtained by moving the pivot columns to the
    front, which is how such matrices are usually written down.
    """

    matrix: tuple
    pivots: tuple
    coefficient: CoefficientMatrix

    @property
    def size(self) -> int:
        return self.coefficient.size

    def column(self, i):
        return tuple(row[i] for row in self.matrix)

    def column_order(self):
        rest = [i for i in range(self.size) if i not in self.pivots]
        return tuple(self.pivots) + tuple(rest)

    def pivots_first(self):
        order = self.column_order()
        return tuple(tuple(row[i] for i in order) for row in self.matrix)

    def row_for_nonpivot(self, i) -> int:
        """Index of the Gale row whose unit entry sits at configuration index i."""
        rest = [j for j in range(self.size) if j not in self.pivots]
        return rest.index(i)


def gale_dual(A: CoefficientMatrix, pivots=None) -> GaleDual:
    """Gale dual of A by Gaussian elimination on a pivot triple.

    The default pivot triple is the first (in canonical column order) whose
    columns are linearly independent.  Raises DependentPivotsError otherwise.
    """
    s = A.size
    if pivots is None:
        pivots = None
        for cand in combinations(range(s), 3):
            if linalg.rank([A.column(i) for i in cand]) == 3:
                pivots = cand
                break
        if pivots is None:
            raise DependentPivotsError("matrix has rank < 3")
    else:
        pivots = tuple(int(i) for i in pivots)
        if len(set(pivots)) != 3:
            raise DependentPivotsError("need three distinct pivot indices")
        if linalg.rank([A.column(i) for i in pivots]) != 3:
            raise DependentPivotsError(f"pivot columns {pivots} are dependent")
    rest = [i for i in range(s) if i not in pivots]
    order = list(pivots) + rest
    permuted = [[A.rows[r][i] for i in order] for r in range(3)]
    reduced, piv_cols = linalg.rref(permuted)
    assert piv_cols == (0, 1, 2)
    if all(x == 1 for x in A.rows[0]):
        # transformed points live on the plane {t + x + y = 1}
        for i in range(s):
            assert sum(reduced[r][i] for r in range(3)) == 1
    k = s - 3
    b_perm = []
    for r in range(k):
        row = [-reduced[j][3 + r] for j in range(3)]
        row += [Fraction(1) if c == r else Fraction(0) for c in range(k)]
        b_perm.append(row)
    matrix = []
    for row in b_perm:
        orig = [Fraction(0)] * s
        for pos, col in enumerate(order):
            orig[col] = row[pos]
        matrix.append(tuple(orig))
    gd = GaleDual(tuple(matrix), tuple(pivots), A)
    for arow in A.rows:
        for brow in gd.matrix:
            assert sum(a * b for a, b in zip(arow, brow)) == 0
    return gd


def _column_span(B: GaleDual, subset):
    span = linalg.IncrementalSpan(len(B.matrix))
    for i in subset:
        span.add(B.column(i))
    return span


def column_rank(B: GaleDual, subset) -> int:
    return _column_span(B, subset).rank


def matroid_closure(B: GaleDual, subset):
    span = _column_span(B, subset)
    return tuple(i for i in range(B.size) if span.contains(B.column(i)))


def is_flat(B: GaleDual, subset) -> bool:
    """True iff the span of the chosen columns contains no further column."""
    return matroid_closure(B, subset) == tuple(sorted(set(subset)))


@dataclass(frozen=True)
class FlagOfFlats:
    """Complete chain of flats F_1 < ... < F_{s-3} = ground set (sorted tuples)."""

    flats: tuple

    @property
    def blocks(self):
        out = []
        prev = ()
        for f in self.flats:
            out.append(tuple(i for i in f if i not in set(prev)))
            prev = f
        return tuple(out)

    def block_of(self, i) -> int:
        """1-based position of the block containing index i."""
        for pos, block in enumerate(self.blocks, start=1):
            if i in block:
                return pos
        raise KeyError(i)


@dataclass(frozen=True)
class WeightClass:
    """Ordered partition of the ground set, blocks listed by increasing height."""

    blocks: tuple

    def flag_chain(self):
        chain = []
        acc = []
        for block in self.blocks:
            acc.extend(block)
            chain.append(tuple(sorted(acc)))
        return tuple(chain)


def enumerate_flags(B: GaleDual, limit=None):
    """All complete flags of flats of the column matroid of B.

    Depth-first extension by rank, with the covers of each flat computed only
    once (many chains meet in the same flat).  Output canonically sorted.
    Guarded by the enumeration limit (default 12, overridable via
    TROPSING_LIMIT).
    """
    s = B.size
    if s > enumeration_limit(limit):
        raise TooLargeError(f"flag enumeration disabled for s={s}; raise the limit")
    top_rank = len(B.matrix)
    results = []
    cover_cache = {}

    def covers(flat):
        if flat not in cover_cache:
            out = set()
            fs = set(flat)
            for e in range(s):
                if e not in fs:
                    out.add(matroid_closure(B, list(flat) + [e]))
            cover_cache[flat] = sorted(out)
        return cover_cache[flat]

    def extend(chain, current, crank):
        if crank == top_rank:
            if current == tuple(range(s)):
                results.append(FlagOfFlats(tuple(chain)))
            return
        for nxt in covers(current):
            extend(chain + [nxt], nxt, crank + 1)

    extend([], (), 0)
    return tuple(sorted(results, key=lambda f: f.flats))


@dataclass(frozen=True)
class FlagClass:
    case: str  # 'A' (4-element circuit on top) or 'B' (collinear circuit on top)
    circuit: Circuit
    pair: tuple = None        # case B: the two off-line indices sharing a block
    tail_on_line: bool = None  # case B: later blocks verified to sit on the line


def classify_flag(flag: FlagOfFlats, config) -> FlagClass:
    """Sort a complete flag into one of the two admissible shapes.

    Either the top block is a 4-element circuit and all other blocks are
    singletons, or the top block is a collinear triple, exactly one earlier
    block is a pair of points off that line, and every block between the two
    sits on the line.  Anything else raises MalformedFlagError.
    """
    blocks = flag.blocks
    top = blocks[-1]
    pts = config.points
    if len(top) == 4:
        if any(len(b) != 1 for b in blocks[:-1]):
            raise MalformedFlagError("4-element top block requires singleton blocks")
        if any(orient(pts[a], pts[b], pts[c]) == 0 for a, b, c in combinations(top, 3)):
            raise MalformedFlagError("top block contains a collinear triple")
        kind = "B" if len(convex_hull([pts[i] for i in top])) == 4 else "A"
        return FlagClass("A", Circuit(tuple(top), kind))
    if len(top) == 3:
        if not collinear([pts[i] for i in top]):
            raise MalformedFlagError("3-element top block is not collinear")
        pairs = [k for k, b in enumerate(blocks[:-1]) if len(b) == 2]
        if len(pairs) != 1 or any(
            len(b) != 1 for k, b in enumerate(blocks[:-1]) if k != pairs[0]
        ):
            raise MalformedFlagError("expected exactly one pair block below the circuit")
        j = pairs[0]
        pair = blocks[j]
        a, b = pts[top[0]], pts[top[1]]
        off_line = lambda i: orient(a, b, pts[i]) != 0
        if not (off_line(pair[0]) and off_line(pair[1])):
            raise MalformedFlagError("pair block must lie off the circuit line")
        for later in blocks[j + 1 : -1]:
            if off_line(later[0]):
                raise MalformedFlagError("blocks above the pair must lie on the line")
        return FlagClass("B", Circuit(tuple(top), "C"), tuple(pair), True)
    raise MalformedFlagError(f"top block has size {len(top)}")


@dataclass(frozen=True)
class WeightFlagResult:
    weight_class: WeightClass
    flag: tuple  # cumulative chain, last entry is the full ground set
    is_flag_of_flats: bool


def flag_from_weight(B: GaleDual, u) -> WeightFlagResult:
    """Level sets of u as an ordered partition, with the flat test per flat.

    The induced chain is a flag of flats exactly when u lies in the
    tropicalized kernel, which is how Bergman membership is decided here.
    """
    u = [Fraction(x) for x in u]
    if len(u) != B.size:
        raise ConfigurationError("weight vector length does not match the matrix")
    levels = sorted(set(u))
    blocks = tuple(
        tuple(i for i, x in enumerate(u) if x == lvl) for lvl in levels
    )
    wc = WeightClass(blocks)
    chain = wc.flag_chain()
    ok = all(is_flat(B, f) for f in chain)
    return WeightFlagResult(wc, chain, ok)


def weight_class_sample(flag, gaps=None):
    """Height vector inside the weight class: strict steps between blocks.

    `flag` may be a FlagOfFlats or a WeightClass; `gaps` optionally gives the
    positive increment per step (default all 1, so block k sits at height k).
    """
    blocks = flag.blocks
    n = len(blocks)
    if gaps is None:
        steps = [Fraction(1)] * n
    else:
        steps = [Fraction(g) for g in gaps]
        if len(steps) != n or any(g <= 0 for g in steps):
            raise ConfigurationError("need one positive gap per block")
    size = sum(len(b) for b in blocks)
    u = [Fraction(0)] * size
    h = Fraction(0)
    for block, step in zip(blocks, steps):
        h += step
        for i in block:
            u[i] = h
    return tuple(u)


def bergman_member_loopfree(B: GaleDual, w) -> bool:
    """Membership via optimal-weight bases: no ground element may be a loop.

    With heights ordered so that later blocks are larger, an element belongs
    to some optimal basis iff its column is independent of the columns of
    strictly smaller weight, so we sweep the levels upward keeping an
    incremental span.  (Sweeping downward instead would implement the
    opposite sign convention and disagree with the circuit oracle.)
    """
    w = [Fraction(x) for x in w]
    if len(w) != B.size:
        raise ConfigurationError("weight vector length does not match the matrix")
    levels = {}
    for i, x in enumerate(w):
        levels.setdefault(x, []).append(i)
    span = linalg.IncrementalSpan(len(B.matrix))
    for lvl in sorted(levels):
        group = levels[lvl]
        for i in group:
            if span.contains(B.column(i)):
                return False
        for i in group:
            span.add(B.column(i))
    return True


_SUPPORT_CACHE = {}


def minimal_rowspace_supports(A: CoefficientMatrix):
    """Minimal supports of nonzero vectors in the row space of A.

    Exhaustive subset elimination: S qualifies iff the row space meets the
    coordinate subspace of S nontrivially while every S minus one point meets
    it only in zero.  Cached per matrix.
    """
    key = A.rows
    if key in _SUPPORT_CACHE:
        return _SUPPORT_CACHE[key]
    s = A.size
    if s > 2 * DEFAULT_LIMIT:
        raise TooLargeError("support enumeration is exponential in s")
    dim_cache = {}

    def dim_within(subset):
        if subset not in dim_cache:
            outside = [i for i in range(s) if i not in subset]
            r = linalg.rank([[row[i] for i in outside] for row in A.rows]) if outside else 0
            dim_cache[subset] = linalg.rank(A.rows) - r
        return dim_cache[subset]

    supports = []
    for size in range(1, s + 1):
        for cand in combinations(range(s), size):
            fs = frozenset(cand)
            if any(sup <= fs for sup in supports):
                continue
            if dim_within(fs) >= 1 and all(dim_within(fs - {i}) == 0 for i in fs):
                supports.append(fs)
    result = tuple(sorted(supports, key=lambda f: (len(f), sorted(f))))
    _SUPPORT_CACHE[key] = result
    return result


def bergman_member_circuit_oracle(A: CoefficientMatrix, w) -> bool:
    """Independent membership oracle for the tropicalized kernel.

    For linear ideals, membership means every minimal-support row-space vector
    attains its maximum weight at least twice over its support.
    """
    w = [Fraction(x) for x in w]
    for support in minimal_rowspace_supports(A):
        top = max(w[i] for i in support)
        if sum(1 for i in support if w[i] == top) < 2:
            return False
    return True


def minor_zero_pattern(A: CoefficientMatrix):
    """Which 3x3 minors vanish; this is the matroid fingerprint of A."""
    s = A.size
    zeros = set()
    for trip in combinations(range(s), 3):
        cols = [A.column(i) for i in trip]
        det = (
            cols[0][0] * (cols[1][1] * cols[2][2] - cols[1][2] * cols[2][1])
            - cols[1][0] * (cols[0][1] * cols[2][2] - cols[0][2] * cols[2][1])
            + cols[2][0] * (cols[0][1] * cols[1][2] - cols[0][2] * cols[1][1])
        )
        if det == 0:
            zeros.add(trip)
    return frozenset(zeros)
