"""Sierpinski graphs from rational injections and the fast chain norm.

An injection f of 1..N into Q induces the order n <=_f k iff n <= k and
f(n) <= f(k); cliques of its comparability graph are the sequences rising in
both position and value, so the norm is a weighted longest-increasing-
subsequence problem solved in O(n log n) with a Fenwick prefix-max tree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import HostExhausted, InputError

ZERO = Fraction(0)


# ---------------------------------------------------------------------------
# canonical enumerations of Q
# ---------------------------------------------------------------------------

def stern_brocot_depths(max_depth: int) -> list[list[Fraction]]:
    """Positive Stern-Brocot tree levels 1..max_depth, each in value order."""
    levels = [[(Fraction(1), (0, 1), (1, 0))]]
    while len(levels) < max_depth:
        nxt = []
        for _, lo, hi in levels[-1]:
            me = (lo[0] + hi[0], lo[1] + hi[1])
            left = (lo[0] + me[0], lo[1] + me[1])
            right = (me[0] + hi[0], me[1] + hi[1])
            nxt.append((Fraction(left[0], left[1]), lo, me))
            nxt.append((Fraction(right[0], right[1]), me, hi))
        levels.append(nxt)
    return [[node[0] for node in lvl] for lvl in levels]


def _stern_brocot_stream():
    """0, then each depth's positive nodes by (numerator, denominator), with
    the negative twin right after its positive."""
    yield Fraction(0)
    levels = [[(Fraction(1), (0, 1), (1, 0))]]
    while True:
        vals = sorted((v for v, _, _ in levels[-1]),
                      key=lambda q: (q.numerator, q.denominator))
        for q in vals:
            yield q
            yield -q
        nxt = []
        for _, lo, hi in levels[-1]:
            me = (lo[0] + hi[0], lo[1] + hi[1])
            nxt.append((Fraction(lo[0] + me[0], lo[1] + me[1]), lo, me))
            nxt.append((Fraction(me[0] + hi[0], me[1] + hi[1]), me, hi))
        levels[-1] = nxt


def _cantor_stream():
    """0, then p/q and -p/q by anti-diagonals of the (p, q) grid."""
    yield Fraction(0)
    s = 2
    while True:
        for p in range(1, s):
            q = s - p
            if gcd(p, q) == 1:
                yield Fraction(p, q)
                yield Fraction(-p, q)
        s += 1


_GENERATORS = {"stern-brocot": _stern_brocot_stream, "cantor": _cantor_stream}


@dataclass
class RationalInjection:
    """Rational values indexed 1..N, optionally extendable by a generator."""

    values: list[Fraction] = field(default_factory=list)
    generator: str | None = None
    _stream: object = field(default=None, repr=False)

    def __post_init__(self):
        self.values = [Fraction(v) for v in self.values]
        if len(set(self.values)) != len(self.values):
            raise InputError("injection values must be pairwise distinct")
        if self.generator is not None:
            if self.generator not in _GENERATORS:
                raise InputError(f"unknown generator {self.generator!r}")
            if self.values:
                raise InputError("explicit values and generator are exclusive")
            self._stream = _GENERATORS[self.generator]()

    def truncation(self) -> int:
        return len(self.values)

    def value_at(self, n: int) -> Fraction:
        """f(n) for 1-based n, extending generated injections on demand."""
        if n < 1:
            raise InputError("injection indices start at 1")
        while n > len(self.values):
            if self._stream is None:
                raise HostExhausted(f"explicit injection has only {len(self.values)} values")
            self.values.append(next(self._stream))
        return self.values[n - 1]


def explicit_injection(values) -> RationalInjection:
    return RationalInjection([Fraction(v) for v in values])


def generated_injection(name: str) -> RationalInjection:
    return RationalInjection([], generator=name)


@dataclass
class SierpinskiContext:
    injection: RationalInjection

    def value(self, n: int) -> Fraction:
        return self.injection.value_at(n)

    def below(self, n: int, k: int) -> bool:
        """n <=_f k: both orders agree."""
        return n <= k and self.value(n) <= self.value(k)


def context_from_values(values) -> SierpinskiContext:
    return SierpinskiContext(explicit_injection(values))


# ---------------------------------------------------------------------------
# graph truncations
# ---------------------------------------------------------------------------

def sierpinski_graph(ctx: SierpinskiContext, n: int):
    """Comparability graph of <=_f on 1..n: edge {i,j} (i<j) iff f(i) < f(j)."""
    from . import graphs

    if ctx.injection._stream is None and n > ctx.injection.truncation():
        raise InputError(f"truncation {ctx.injection.truncation()} exceeded")
    edges = [(i, j) for i, j in itertools.combinations(range(1, n + 1), 2)
             if ctx.value(i) < ctx.value(j)]
    return graphs.from_edges(range(1, n + 1), edges)


# ---------------------------------------------------------------------------
# the fast chain norm
# ---------------------------------------------------------------------------

class _FenwickMax:
    """Prefix-maximum tree over 1..n (integer values, max with 0)."""

    def __init__(self, n: int):
        self.n = n
        self.tree = [0] * (n + 1)

    def update(self, i: int, value: int) -> None:
        while i <= self.n:
            if self.tree[i] < value:
                self.tree[i] = value
            i += i & -i

    def prefix_max(self, i: int) -> int:
        best = 0
        while i > 0:
            if self.tree[i] > best:
                best = self.tree[i]
            i -= i & -i
        return best


def weighted_increasing_mass(pairs, weights) -> Fraction:
    """Max total weight of a chain increasing in position and in value.

    pairs: iterable of (position, value) with distinct positions and values;
    weights: position -> Fraction >= 0.  Weights are scaled to a common
    denominator once so the Fenwick tree works on machine integers.
    """
    items = sorted(pairs)
    if not items:
        return ZERO
    den = 1
    for pos, _ in items:
        d = weights[pos].denominator
        den = den * d // gcd(den, d)
    scaled = {pos: int(weights[pos] * den) for pos, _ in items}
    ranks = {v: i + 1 for i, v in enumerate(sorted(v for _, v in items))}
    tree = _FenwickMax(len(items))
    best = 0
    for pos, val in items:
        r = ranks[val]
        here = scaled[pos] + tree.prefix_max(r - 1)
        if here > best:
            best = here
        tree.update(r, here)
    return Fraction(best, den)


def chain_norm(ctx: SierpinskiContext, x: dict[int, Fraction]) -> Fraction:
    """The clique-family norm of the Sierpinski graph, in O(n log n)."""
    supp = sorted(i for i, v in x.items() if v != 0)
    if not supp:
        return ZERO
    if ctx.injection._stream is None and supp[-1] > ctx.injection.truncation():
        raise InputError("vector support exceeds the injection truncation")
    weights = {i: abs(Fraction(x[i])) for i in supp}
    return weighted_increasing_mass(((i, ctx.value(i)) for i in supp), weights)


# ---------------------------------------------------------------------------
# Lemma-style embedding between Sierpinski graphs
# ---------------------------------------------------------------------------

def embed(host: SierpinskiContext, guest: SierpinskiContext, n: int) -> dict[int, int]:
    """Increasing induced embedding of the guest truncation into the host.

    Step k+1 picks the first host index above every chosen one whose value
    falls strictly between the already-used values that must stay below
    resp. above (the interval is the relative order of guest values).  For
    generated hosts the enumeration order realises the minimal
    Stern-Brocot-depth tie-break; explicit hosts raise HostExhausted when no
    stored value fits.
    """
    mapping: dict[int, int] = {}
    last = 0
    for k in range(1, n + 1):
        gv = guest.value(k)
        lo, hi = None, None
        for g_idx, h_idx in mapping.items():
            hv = host.value(h_idx)
            if guest.value(g_idx) < gv:
                lo = hv if lo is None else max(lo, hv)
            else:
                hi = hv if hi is None else min(hi, hv)
        idx = last + 1
        while True:
            if host.injection._stream is None and idx > host.injection.truncation():
                raise HostExhausted("no admissible host value in the stored range")
            val = host.value(idx)
            if (lo is None or val > lo) and (hi is None or val < hi):
                break
            idx += 1
        mapping[k] = idx
        last = idx
    return mapping


def is_induced_embedding(host: SierpinskiContext, guest: SierpinskiContext,
                         mapping: dict[int, int]) -> bool:
    """Edges and non-edges both preserved, and the map is increasing."""
    ks = sorted(mapping)
    for a, b in itertools.combinations(ks, 2):
        if not mapping[a] < mapping[b]:
            return False
        guest_edge = guest.value(a) < guest.value(b)
        host_edge = host.value(mapping[a]) < host.value(mapping[b])
        if guest_edge != host_edge:
            return False
    return True


# ---------------------------------------------------------------------------
# Banach decomposition on a finite window
# ---------------------------------------------------------------------------

def banach_partition(phi: dict[int, int], psi: dict[int, int], n: int):
    """Schroeder-Bernstein orbit classes for two partial injections on 1..n.

    The window is taken as the whole structure: walking predecessors
    (phi maps the A side into B, psi maps B into A) either stops on the A
    side, stops on the B side, or cycles.  A-origins and cycles land in
    A1/B1, B-origins in A2/B2.  ``undetermined`` stays empty under these
    truncation semantics and is returned for interface stability.
    """
    window = range(1, n + 1)
    phi = {k: v for k, v in phi.items() if 1 <= k <= n and 1 <= v <= n}
    psi = {k: v for k, v in psi.items() if 1 <= k <= n and 1 <= v <= n}
    for name, f in (("phi", phi), ("psi", psi)):
        if len(set(f.values())) != len(f):
            raise InputError(f"{name} is not injective on the window")
    phi_inv = {v: k for k, v in phi.items()}
    psi_inv = {v: k for k, v in psi.items()}

    def origin(x: int, side: str) -> str:
        seen = set()
        while True:
            if (x, side) in seen:
                return "cycle"
            seen.add((x, side))
            if side == "a":
                pre = psi_inv.get(x)
                if pre is None:
                    return "a"
                x, side = pre, "b"
            else:
                pre = phi_inv.get(x)
                if pre is None:
                    return "b"
                x, side = pre, "a"

    a1, a2, b1, b2 = set(), set(), set(), set()
    for x in window:
        (a1 if origin(x, "a") in ("a", "cycle") else a2).add(x)
        (b1 if origin(x, "b") in ("a", "cycle") else b2).add(x)
    return a1, a2, b1, b2, set()


def doubling_bound_check(f: SierpinskiContext, h: SierpinskiContext,
                         rho: dict[int, int], x: dict[int, Fraction]) -> bool:
    """Two-sided factor-2 norm comparability along a relabeling rho."""
    y = {rho[i]: v for i, v in x.items()}
    lhs = chain_norm(f, x)
    rhs = chain_norm(h, y)
    return lhs <= 2 * rhs and rhs <= 2 * lhs
