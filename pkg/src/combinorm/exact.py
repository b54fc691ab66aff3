"""Exact rational arithmetic, linear algebra, LP, and polytope conversions.

Rationals are stdlib ``fractions.Fraction`` (always in lowest terms, positive
denominator, structural equality).  Sparse vectors are plain ``dict[int,
Fraction]`` with no explicit zeros; matrices are dense lists of rows.  Every
operation here is pure; nothing mutates its inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DimensionLimitExceeded, Infeasible, InputError, Unbounded

Rat = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

DEFAULT_DIMENSION_LIMIT = 10


# ---------------------------------------------------------------------------
# rational scalars and sparse vectors
# ---------------------------------------------------------------------------

def parse_rat(text: str) -> Fraction:
    """Parse "p/q" or "p" into a Fraction."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational literal {text!r}") from exc


def format_rat(q: Fraction) -> str:
    """Render a Fraction as "p/q", or "p" when the denominator is 1."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def vec_clean(entries: dict[int, Fraction]) -> dict[int, Fraction]:
    """Drop explicit zeros and coerce values to Fraction."""
    return {i: Fraction(v) for i, v in entries.items() if v != 0}


def vec_support(x: dict[int, Fraction]) -> frozenset[int]:
    return frozenset(i for i, v in x.items() if v != 0)

def vec_abs(x: dict[int, Fraction]) -> dict[int, Fraction]:
    return {i: abs(v) for i, v in x.items() if v != 0}


def vec_dot(x: dict[int, Fraction], y: dict[int, Fraction]) -> Fraction:
    if len(x) > len(y):
        x, y = y, x
    return sum((v * y[i] for i, v in x.items() if i in y), ZERO)


def vec_add(x: dict[int, Fraction], y: dict[int, Fraction]) -> dict[int, Fraction]:
    out = dict(x)
    for i, v in y.items():
        out[i] = out.get(i, ZERO) + v
    return vec_clean(out)


def vec_scale(x: dict[int, Fraction], c: Fraction) -> dict[int, Fraction]:
    return {} if c == 0 else {i: c * v for i, v in x.items()}


def vec_key(x: dict[int, Fraction]) -> tuple:
    """Hashable canonical form of a sparse vector."""
    return tuple(sorted(x.items()))


# ---------------------------------------------------------------------------
# dense matrices over Q
# ---------------------------------------------------------------------------

def _check_rectangular(m: list[list[Fraction]]) -> tuple[int, int]:
    if not m:
        return 0, 0
    cols = len(m[0])
    if any(len(row) != cols for row in m):
        raise InputError("matrix is not rectangular")
    return len(m), cols


def _integer_rows(m) -> list[list[int]]:
    """Scale each row by its denominator lcm; preserves rank and row spans."""
    out = []
    for row in m:
        fr = [Fraction(v) for v in row]
        scale = 1
        for v in fr:
            scale = scale * v.denominator // gcd(scale, v.denominator)
        out.append([int(v * scale) for v in fr])
    return out


def _bareiss(rows: list[list[int]], pivot_cols: int | None = None) -> tuple[int, int, int]:
    """Fraction-free elimination.  Returns (rank, det_sign_swaps, last_pivot).

    ``rows`` is modified in place.  For a square full-rank input the
    determinant of the integerized matrix is last_pivot adjusted by swaps.
    ``pivot_cols`` restricts pivot search to the first so many columns
    (used for augmented systems).
    """
    n = len(rows)
    if n == 0:
        return 0, 0, 1
    cols = len(rows[0])
    prev = 1
    swaps = 0
    r = 0
    for c in range(cols if pivot_cols is None else min(cols, pivot_cols)):
        pivot_row = next((i for i in range(r, n) if rows[i][c]), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
            swaps += 1
        piv = rows[r][c]
        for i in range(r + 1, n):
            head = rows[i][c]
            ri = rows[i]
            rr = rows[r]
            # Bareiss update applies to every row, zero head included,
            # so the integer division below stays exact.
            for j in range(c, cols):
                ri[j] = (piv * ri[j] - head * rr[j]) // prev
        prev = piv
        r += 1
        if r == n:
            break
    return r, swaps, prev


def rank(m: list[list[Fraction]]) -> int:
    """Exact rank over the rationals (fraction-free elimination)."""
    nrows, _ = _check_rectangular(m)
    if nrows == 0:
        return 0
    rows = _integer_rows(m)
    r, _, _ = _bareiss(rows)
    return r


def determinant(m: list[list[Fraction]]) -> Fraction:
    """Exact determinant of a square rational matrix."""
    nrows, ncols = _check_rectangular(m)
    if nrows != ncols:
        raise InputError("determinant requires a square matrix")
    if nrows == 0:
        return ONE
    scale = ONE
    int_rows = []
    for row in m:
        fr = [Fraction(v) for v in row]
        s = 1
        for v in fr:
            s = s * v.denominator // gcd(s, v.denominator)
        scale *= s
        int_rows.append([int(v * s) for v in fr])
    r, swaps, last = _bareiss(int_rows)
    if r < nrows:
        return ZERO
    det = Fraction(last, 1) * (-1 if swaps % 2 else 1)
    return det / scale


def solve_square(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Solve a square rational system exactly; None when singular."""
    if len(a) == 0:
        return []
    aug = _integer_rows([list(row) + [rhs] for row, rhs in zip(a, b)])
    return _backsolve(aug, len(a))


def solve_square_int(a: list[list[int]], b: list[int]) -> list[Fraction] | None:
    """Integer-matrix fast path of :func:`solve_square` (no row scaling)."""
    if len(a) == 0:
        return []
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    return _backsolve(aug, len(a))


def _backsolve(aug: list[list[int]], n: int) -> list[Fraction] | None:
    r, _, _ = _bareiss(aug, pivot_cols=n)
    if r < n:
        return None
    # full rank forces the echelon pivots onto the diagonal
    x: list[Fraction] = [ZERO] * n
    for i in range(n - 1, -1, -1):
        row = aug[i]
        acc = Fraction(row[n])
        for j in range(i + 1, n):
            if row[j]:
                acc -= row[j] * x[j]
        x[i] = acc / row[i]
    return x


# ---------------------------------------------------------------------------
# polytopes in H-representation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Polytope:
    """``normal . x <= bound`` for every (normal, bound) pair; dense normals."""

    dimension: int
    inequalities: tuple[tuple[tuple[Fraction, ...], Fraction], ...]

    def __post_init__(self):
        if self.dimension < 1:
            raise InputError("polytope dimension must be >= 1")
        for normal, _ in self.inequalities:
            if len(normal) != self.dimension:
                raise InputError("inequality normal has wrong length")

    @staticmethod
    def from_rows(dimension: int, rows) -> "Polytope":
        ineqs = tuple((tuple(Fraction(c) for c in normal), Fraction(bound)) for normal, bound in rows)
        return Polytope(dimension, ineqs)

    def contains(self, point) -> bool:
        return all(sum(c * x for c, x in zip(normal, point)) <= bound
                   for normal, bound in self.inequalities)


def polar_from_points(points, dimension: int) -> Polytope:
    """Polar of conv(points): one inequality p.x <= 1 per generator p."""
    return Polytope.from_rows(dimension, [(tuple(p), ONE) for p in points])


# ---------------------------------------------------------------------------
# exact simplex (Bland's rule, two phases)
# ---------------------------------------------------------------------------

def _simplex_standard(a, b, c):
    """max c.x subject to a x = b, x >= 0, b >= 0 entrywise.

    Returns (value, x).  Raises Infeasible/Unbounded.  Dense Fraction
    tableau with Bland's anti-cycling rule; exact arithmetic makes the
    pivot tests tolerance-free.
    """
    m = len(a)
    n = len(c)

    # phase 1: artificial basis
    tab = [list(a[i]) + [ZERO] * m + [b[i]] for i in range(m)]
    for i in range(m):
        tab[i][n + i] = ONE
    basis = [n + i for i in range(m)]
    cost = [ZERO] * n + [ONE] * m + [ZERO]
    _simplex_iterate(tab, basis, cost, minimize=True)
    if sum(tab[i][-1] * (ONE if basis[i] >= n else ZERO) for i in range(m)) != 0:
        raise Infeasible("no feasible point")
    # drive leftover artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if tab[i][j] != 0), None)
            if col is None:
                continue  # redundant row
            _pivot(tab, basis, i, col)

    # phase 2 on original objective, artificial columns frozen
    cost2 = list(c) + [ZERO] * m + [ZERO]
    _simplex_iterate(tab, basis, cost2, minimize=False, banned=set(range(n, n + m)))
    x = [ZERO] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = tab[i][-1]
    value = sum(ci * xi for ci, xi in zip(c, x))
    return value, x


def _reduced_costs(tab, basis, cost):
    m = len(tab)
    width = len(tab[0]) - 1
    lam = {}
    red = list(cost[:width])
    for i, bv in enumerate(basis):
        lam[i] = cost[bv]
    for j in range(width):
        s = cost[j]
        for i in range(m):
            if tab[i][j] != 0 and lam[i] != 0:
                s -= lam[i] * tab[i][j]
        red[j] = s
    return red


def _pivot(tab, basis, row, col):
    piv = tab[row][col]
    tab[row] = [v / piv for v in tab[row]]
    for i in range(len(tab)):
        if i != row and tab[i][col] != 0:
            f = tab[i][col]
            tab[i] = [v - f * w for v, w in zip(tab[i], tab[row])]
    basis[row] = col


def _simplex_iterate(tab, basis, cost, minimize, banned=frozenset()):
    m = len(tab)
    width = len(tab[0]) - 1
    while True:
        red = _reduced_costs(tab, basis, cost)
        enter = None
        for j in range(width):
            if j in banned:
                continue
            improving = red[j] < 0 if minimize else red[j] > 0
            if improving:
                enter = j  # Bland: smallest improving index
                break
        if enter is None:
            return
        leave = None
        best = None
        for i in range(m):
            coef = tab[i][enter]
            if coef > 0:
                ratio = tab[i][-1] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            raise Unbounded("objective unbounded above")
        _pivot(tab, basis, leave, enter)


def lp_maximize(objective, p: Polytope) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Exact maximum of objective . x over the polytope with a witness point.

    Free variables are split into positive and negative parts; one slack per
    inequality.  Bounded, non-empty inputs are the caller's contract.
    """
    n = p.dimension
    if len(objective) != n:
        raise InputError("objective length does not match dimension")
    rows = []
    rhs = []
    for normal, bound in p.inequalities:
        row = [Fraction(v) for v in normal] + [-Fraction(v) for v in normal]
        row += [ZERO] * len(p.inequalities)
        rows.append(row)
        rhs.append(Fraction(bound))
    for i, row in enumerate(rows):
        row[2 * n + i] = ONE
        if rhs[i] < 0:
            rows[i] = [-v for v in row]
            rhs[i] = -rhs[i]
    c = [Fraction(v) for v in objective] + [-Fraction(v) for v in objective]
    c += [ZERO] * len(p.inequalities)
    value, x = _simplex_standard(rows, rhs, c)
    point = tuple(x[j] - x[n + j] for j in range(n))
    return value, point


# ---------------------------------------------------------------------------
# vertex enumeration
# ---------------------------------------------------------------------------

def vertices(p: Polytope, dimension_limit: int = DEFAULT_DIMENSION_LIMIT) -> list[tuple[Fraction, ...]]:
    """All vertices of a bounded polytope, canonically sorted.

    Enumerates dimension-sized subsets of the inequalities, solves each
    square subsystem, and keeps feasible solutions whose active set has full
    rank.  Exhaustive and exact; intended for dimension <= the configured cap.
    """
    n = p.dimension
    if n > dimension_limit:
        raise DimensionLimitExceeded(f"dimension {n} exceeds limit {dimension_limit}")
    seen: set[tuple[Fraction, ...]] = set()
    ineqs = p.inequalities
    for subset in itertools.combinations(range(len(ineqs)), n):
        a = [list(ineqs[i][0]) for i in subset]
        b = [ineqs[i][1] for i in subset]
        x = solve_square(a, b)
        if x is None:
            continue
        pt = tuple(x)
        if pt in seen:
            continue
        if p.contains(pt):
            seen.add(pt)
    return sorted(seen)


def vertices_nonneg_system(rows: list[tuple[tuple[int, ...], int]], dim: int) -> list[tuple[Fraction, ...]]:
    """Vertices of {x >= 0 : row . x <= bound for each row}; rows integral, >= 0.

    Same subset enumeration as :func:`vertices`, organised by vertex support:
    choosing the nonnegativity constraints x_i = 0 off a support S first
    leaves a square system of restricted rows on S.  Subsets whose restricted
    rows repeat or fail to cover S are singular and skipped.  Every
    coordinate must appear in some row (boundedness).
    """
    for i in range(dim):
        if not any(r[0][i] for r in rows):
            raise InputError(f"coordinate {i} unbounded: no row covers it")
    out: list[tuple[Fraction, ...]] = [tuple([ZERO] * dim)]  # origin (bounds are positive)
    seen: set[tuple[Fraction, ...]] = {out[0]}
    row_masks = []
    for coeffs, bound in rows:
        if bound <= 0:
            raise InputError("nonneg system bounds must be positive")
        mask = 0
        for i, cval in enumerate(coeffs):
            if cval < 0:
                raise InputError("nonneg system rows must be nonnegative")
            if cval:
                mask |= 1 << i
        row_masks.append(mask)

    full = (1 << dim) - 1
    for support in range(1, full + 1):
        idx = [i for i in range(dim) if support >> i & 1]
        s = len(idx)
        # distinct nonzero restrictions of the rows to the support; duplicate
        # restrictions are dependent rows, so deduping skips only singular
        # subsets, and feasibility needs each distinct restriction once
        restricted: dict[tuple, int] = {}
        for (coeffs, bound), mask in zip(rows, row_masks):
            if mask & support:
                key = tuple(coeffs[i] for i in idx) + (bound,)
                restricted.setdefault(key, len(restricted))
        rest = list(restricted)
        if len(rest) < s:
            continue
        rest_masks = []
        for key in rest:
            m = 0
            for pos, cval in enumerate(key[:-1]):
                if cval:
                    m |= 1 << pos
            rest_masks.append(m)
        target = (1 << s) - 1
        cover_all = 0
        for m in rest_masks:
            cover_all |= m
        if cover_all != target:
            continue
        for combo in itertools.combinations(range(len(rest)), s):
            m = 0
            for ci in combo:
                m |= rest_masks[ci]
            if m != target:
                continue  # a zero column is singular for sure
            sol = solve_square_int([list(rest[ci][:-1]) for ci in combo],
                                   [rest[ci][-1] for ci in combo])
            if sol is None or any(v <= 0 for v in sol):
                continue
            ok = True
            for key in rest:
                total = ZERO
                for pos, cval in enumerate(key[:-1]):
                    if cval:
                        total += cval * sol[pos]
                if total > key[-1]:
                    ok = False
                    break
            if not ok:
                continue
            pt = [ZERO] * dim
            for pos, i in enumerate(idx):
                pt[i] = sol[pos]
            tpt = tuple(pt)
            if tpt not in seen:
                seen.add(tpt)
                out.append(tpt)
    return sorted(seen)


def in_hull(point, generators) -> bool:
    """Exact test for point in conv(generators) via LP feasibility.

    Solves for convex coefficients with phase-1 simplex only.
    """
    gens = [tuple(Fraction(v) for v in g) for g in generators]
    pt = tuple(Fraction(v) for v in point)
    if not gens:
        return False
    n = len(pt)
    if any(len(g) != n for g in gens):
        raise InputError("generator dimension mismatch")
    k = len(gens)
    a = []
    b = []
    for coord in range(n):
        a.append([g[coord] for g in gens])
        b.append(pt[coord])
    a.append([ONE] * k)
    b.append(ONE)
    for i in range(len(a)):
        if b[i] < 0:
            a[i] = [-v for v in a[i]]
            b[i] = -b[i]
    try:
        _simplex_standard(a, b, [ZERO] * k)
    except Infeasible:
        return False
    return True
