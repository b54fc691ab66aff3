"""Hereditary families of finite sets over integer ids.

A family is a membership predicate plus a finite (possibly truncated)
universe.  Hereditarity and covering are construction invariants: every
builder either guarantees them or validates them eagerly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import InputError, LadderMissing


def colex_key(s) -> tuple:
    """Sort key realising colexicographic order on finite integer sets."""
    return tuple(sorted(s, reverse=True))


def _as_set(e) -> frozenset[int]:
    s = frozenset(e)
    if not all(isinstance(v, int) for v in s):
        raise InputError("set elements must be integers")
    return s


class Family:
    """Immutable hereditary family with finite universe.

    ``contains`` raises on elements outside the universe; hereditary
    builders keep the predicate pure so families are safe to share.
    """

    def __init__(self, universe, predicate, tag: str, meta: dict | None = None, graph=None):
        self.universe: tuple[int, ...] = tuple(sorted(set(universe)))
        if not self.universe:
            raise InputError("family universe must be non-empty")
        self._predicate = predicate
        self.tag = tag
        self.meta = dict(meta or {})
        self.graph = graph
        self._uset = frozenset(self.universe)

    def contains(self, e) -> bool:
        s = _as_set(e)
        if not s <= self._uset:
            raise InputError(f"elements {sorted(s - self._uset)} outside universe")
        if not s:
            return True
        return self._predicate(s)

    def __contains__(self, e) -> bool:
        return self.contains(e)

    def members(self, ground=None) -> list[frozenset[int]]:
        """All members inside ``ground`` (default: whole universe), colex order.

        DFS extension: supersets of non-members are never members, so the
        search tree prunes at the first failure.
        """
        g = sorted(self._uset if ground is None else _as_set(ground))
        if not set(g) <= self._uset:
            raise InputError("ground not within universe")
        out = [frozenset()]

        def extend(cur: frozenset, start: int):
            for i in range(start, len(g)):
                nxt = cur | {g[i]}
                if self.contains(nxt):
                    out.append(nxt)
                    extend(nxt, i + 1)

        extend(frozenset(), 0)
        return sorted(out, key=colex_key)

    def max_elements(self, ground=None) -> list[frozenset[int]]:
        """Members of ``ground`` with no proper member extension inside it."""
        g = sorted(self._uset if ground is None else _as_set(ground))
        if self.graph is not None and set(g) == set(self.graph.vertices):
            from . import graphs

            return graphs.maximal_cliques(self.graph)
        if self.graph is not None:
            from . import graphs

            return graphs.maximal_cliques(self.graph.induced(g))
        mem = self.members(g)
        out = [f for f in mem
               if not any(self.contains(f | {v}) for v in g if v not in f)]
        return sorted(out, key=colex_key)

    def find_chain(self, depth: int) -> list[frozenset[int]] | None:
        """A strictly increasing member chain of the given length, if any.

        Single-element steps suffice by hereditarity, so this is a bounded
        search for a member of size depth-1; compactness itself is not
        decidable from a predicate.
        """
        if depth <= 0:
            return []
        target = depth - 1
        g = sorted(self._uset)

        def grow(cur: frozenset, start: int):
            if len(cur) == target:
                return cur
            for i in range(start, len(g)):
                nxt = cur | {g[i]}
                if self.contains(nxt):
                    got = grow(nxt, i + 1)
                    if got is not None:
                        return got
            return None

        top = grow(frozenset(), 0)
        if top is None:
            return None
        ordered = sorted(top)
        return [frozenset(ordered[:k]) for k in range(depth)]

    def __repr__(self):
        u = self.universe
        span = f"{u[0]}..{u[-1]}" if len(u) > 2 and u == tuple(range(u[0], u[-1] + 1)) else str(list(u))
        return f"Family<{self.tag} on {span}>"


def check_hereditary(f: Family, ground=None) -> bool:
    """Test utility: every subset of every member is a member."""
    for m in f.members(ground):
        for r in range(len(m)):
            for sub in itertools.combinations(m, r):
                if not f.contains(sub):
                    return False
    return True


def check_covers(f: Family) -> bool:
    return all(f.contains({v}) for v in f.universe)


# ---------------------------------------------------------------------------
# basic builders
# ---------------------------------------------------------------------------

def explicit_family(universe, generating_sets) -> Family:
    """Hereditary closure of the generating sets (must cover the universe)."""
    gens = [_as_set(s) for s in generating_sets]
    uni = tuple(sorted(set(universe)))
    for s in gens:
        if not s <= set(uni):
            raise InputError("generating set outside universe")
    covered = set().union(*gens) if gens else set()
    if covered != set(uni):
        raise InputError("explicit family does not cover its universe")
    gens_t = tuple(gens)
    fam = Family(uni, lambda e: any(e <= g for g in gens_t), "explicit",
                 meta={"sets": sorted(map(sorted, gens))})
    return fam


def all_subsets_family(universe) -> Family:
    return Family(universe, lambda e: True, "all-subsets")


def bounded_card_family(universe, k: int) -> Family:
    if k < 1:
        raise InputError("cardinality bound must cover singletons")
    return Family(universe, lambda e: len(e) <= k, "bounded-card", meta={"k": k})


def graph_clique_family(g, complemented_from=None) -> Family:
    from . import graphs

    tag = "graph-cliques" if complemented_from is None else "graph-anticliques"
    meta = {"graph": graphs.to_json_dict(complemented_from or g)}
    masks = g.masks()
    pos = {v: i for i, v in enumerate(g.vertices)}

    def is_clique(e: frozenset) -> bool:
        items = [pos[v] for v in e]
        for i, a in enumerate(items):
            ma = masks[a]
            for b in items[i + 1:]:
                if not ma >> b & 1:
                    return False
        return True

    return Family(g.vertices, is_clique, tag, meta=meta, graph=g)


# ---------------------------------------------------------------------------
# orthogonal family and graph recognition
# ---------------------------------------------------------------------------

def truncate_universe(f: Family, truncation: int) -> tuple[int, ...]:
    if truncation < 1 or truncation > len(f.universe):
        raise InputError(f"truncation {truncation} outside 1..{len(f.universe)}")
    return f.universe[:truncation]


def perp(f: Family, truncation: int | None = None) -> Family:
    """Orthogonal family: sets meeting every member of ``f`` at most once.

    Hereditarity reduces the test to pairs: E is orthogonal iff no 2-subset
    of E is a member, so the answer is exact for any finitely supported query
    inside the truncated universe.
    """
    uni = f.universe if truncation is None else truncate_universe(f, truncation)

    def ortho(e: frozenset) -> bool:
        return not any(f.contains({a, b}) for a, b in itertools.combinations(sorted(e), 2))

    return Family(uni, ortho, "perp", meta={"inner": f.tag})


def is_graph_generated(f: Family, truncation: int | None = None):
    """Whether f equals the clique family of its own pair graph.

    Returns (True, None) or (False, witness) with the witness a clique of
    the pair graph missing from f (smallest size, colex first).
    """
    from . import graphs

    uni = f.universe if truncation is None else truncate_universe(f, truncation)
    pairs = [(a, b) for a, b in itertools.combinations(sorted(uni), 2) if f.contains({a, b})]
    g = graphs.from_edges(uni, pairs)
    # f is always contained in the pair-graph cliques; only the reverse can fail
    order = sorted(uni)
    adj = g.adjacency

    # breadth-by-size search keeps the witness minimal
    cliques_prev = [frozenset()]
    while cliques_prev:
        nxt_level = []
        for c in cliques_prev:
            start = max(c) if c else None
            cands = [v for v in order if (start is None or v > start)
                     and all(v in adj[w] for w in c)]
            for v in cands:
                cand_set = c | {v}
                if not f.contains(cand_set):
                    return False, cand_set
                nxt_level.append(cand_set)
        nxt_level.sort(key=colex_key)
        cliques_prev = nxt_level
    return True, None


# ---------------------------------------------------------------------------
# sign vectors
# ---------------------------------------------------------------------------

def sign_vectors(sets) -> list[dict[int, int]]:
    """All +-1 assignments supported on each given set, deduplicated."""
    seen = set()
    out = []
    for s in sorted((_as_set(x) for x in sets), key=colex_key):
        items = sorted(s)
        for signs in itertools.product((1, -1), repeat=len(items)):
            key = tuple(zip(items, signs))
            if key not in seen:
                seen.add(key)
                out.append(dict(key))
    return out


def sign_vector_key(sv: dict[int, int]) -> tuple:
    return tuple(sorted(sv.items()))


# ---------------------------------------------------------------------------
# ordinals and Schreier families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Ordinal:
    """Zero, successor, or limit with a fundamental sequence.

    ``key`` is a canonical token: ("fin", n) and ("omega", a, b) for
    omega*a+b keep memoisation and equality structural for the ordinals the
    canonical ladder supports.
    """

    kind: str
    key: tuple
    pred: "Ordinal | None" = None
    fund: object = field(default=None, compare=False)

    @staticmethod
    def from_int(n: int) -> "Ordinal":
        if n < 0:
            raise InputError("ordinal must be nonnegative")
        o = Ordinal("zero", ("fin", 0))
        for k in range(1, n + 1):
            o = Ordinal("succ", ("fin", k), pred=o)
        return o

    @staticmethod
    def omega_times_plus(a: int, b: int) -> "Ordinal":
        """omega*a + b with the canonical ladder at every limit."""
        if a < 0 or b < 0:
            raise InputError("coefficients must be nonnegative")
        if a == 0:
            return Ordinal.from_int(b)
        if b > 0:
            o = Ordinal.omega_times_plus(a, 0)
            for k in range(1, b + 1):
                o = Ordinal("succ", ("omega", a, k), pred=o)
            return o
        return Ordinal("limit", ("omega", a, 0),
                       fund=lambda k: Ordinal.omega_times_plus(a - 1, k))

    @staticmethod
    def limit(fund, name: str) -> "Ordinal":
        if fund is None:
            raise LadderMissing("limit ordinal requires a fundamental sequence")
        return Ordinal("limit", ("custom", name), fund=fund)

    def successor(self) -> "Ordinal":
        kind, *rest = self.key
        if kind == "fin":
            return Ordinal("succ", ("fin", rest[0] + 1), pred=self)
        if kind == "omega":
            return Ordinal("succ", ("omega", rest[0], rest[1] + 1), pred=self)
        return Ordinal("succ", ("succ-of",) + self.key, pred=self)

    def ladder(self, k: int) -> "Ordinal":
        if self.kind != "limit":
            raise InputError("ladder defined only at limit ordinals")
        if self.fund is None:
            raise LadderMissing(f"no fundamental sequence at {self.key}")
        return self.fund(k)


def parse_ordinal(text: str) -> Ordinal:
    """Parse "3", "omega", "omega*2", "omega*2+1" (canonical ladders)."""
    t = str(text).strip().replace(" ", "")
    if t.isdigit():
        return Ordinal.from_int(int(t))
    if not t.startswith("omega"):
        raise InputError(f"cannot parse ordinal {text!r}")
    rest = t[len("omega"):]
    a, b = 1, 0
    if rest.startswith("*"):
        mul, _, tail = rest[1:].partition("+")
        a = int(mul)
        b = int(tail) if tail else 0
    elif rest.startswith("+"):
        b = int(rest[1:])
    elif rest:
        raise InputError(f"cannot parse ordinal {text!r}")
    return Ordinal.omega_times_plus(a, b)


class SchreierFamily(Family):
    """S_alpha or S*_alpha on {1..truncation} by recursive decomposition."""

    def __init__(self, alpha: Ordinal, variant: str = "standard", truncation: int = 20,
                 ladder_shift: int = 0):
        if variant not in ("standard", "star"):
            raise InputError("variant must be 'standard' or 'star'")
        self.alpha = alpha
        self.variant = variant
        self.ladder_shift = ladder_shift  # +1 realises the shifted ladder xi+
        self._memo: dict = {}
        meta = {"alpha": str(alpha.key), "variant": variant,
                "ladder": "canonical" if ladder_shift == 0 else f"canonical+{ladder_shift}"}
        super().__init__(range(1, truncation + 1),
                         lambda e: self._member(alpha, tuple(sorted(e))),
                         "schreier", meta=meta)

    def _member(self, alpha: Ordinal, e: tuple[int, ...]) -> bool:
        if not e:
            return True
        key = (alpha.key, e)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if alpha.kind == "zero":
            res = len(e) <= 1
        elif alpha.kind == "succ":
            res = self._schreier_step(alpha.pred, e)
        else:
            res = self._limit_step(alpha, e)
        self._memo[key] = res
        return res

    def _schreier_step(self, beta: Ordinal, e: tuple[int, ...]) -> bool:
        # E = F_1 < ... < F_m with m <= min F_1 and every block in S_beta
        for m in range(1, e[0] + 1):
            if self._split(e, [beta] * m):
                return True
        return False

    def _limit_step(self, gamma: Ordinal, e: tuple[int, ...]) -> bool:
        def rung(k: int) -> Ordinal:
            o = gamma.ladder(k)
            for _ in range(self.ladder_shift):
                o = o.successor()
            return o

        if self.variant == "standard":
            # D((S_xi_k)_k): member of some rung usable at k <= min E
            return any(self._member(rung(k), e) for k in range(1, e[0] + 1))
        # D*: E = F_m < ... < F_1 in position order, block j from rung m-j+1
        for m in range(1, e[0] + 1):
            if self._split(e, [rung(m - j) for j in range(m)]):
                return True
        return False

    def _split(self, e: tuple[int, ...], block_levels: list[Ordinal]) -> bool:
        """Can e be cut into consecutive nonempty blocks at the given levels?"""
        if len(block_levels) == 1:
            return self._member(block_levels[0], e)
        head = block_levels[0]
        rest = block_levels[1:]
        for cut in range(1, len(e) - len(rest) + 1):
            if self._member(head, e[:cut]) and self._split(e[cut:], rest):
                return True
        return False


def schreier(alpha, variant: str = "standard", truncation: int = 20,
             ladder_shift: int = 0) -> SchreierFamily:
    if isinstance(alpha, int):
        alpha = Ordinal.from_int(alpha)
    elif isinstance(alpha, str):
        alpha = parse_ordinal(alpha)
    return SchreierFamily(alpha, variant, truncation, ladder_shift)


# ---------------------------------------------------------------------------
# Farah and union constructions
# ---------------------------------------------------------------------------

def _disjoint_parts(parts):
    grounds = []
    fams = []
    seen: set[int] = set()
    for ground, fam in parts:
        gset = _as_set(ground)
        if gset & seen:
            raise InputError("part ground sets overlap")
        if gset != frozenset(fam.universe):
            raise InputError("part ground must equal the part family universe")
        seen |= gset
        grounds.append(gset)
        fams.append(fam)
    if not grounds:
        raise InputError("at least one part required")
    return grounds, fams


def farah(parts) -> Family:
    """Members are the sets whose trace on every part belongs to that part."""
    grounds, fams = _disjoint_parts(parts)
    uni = sorted(set().union(*grounds))

    def pred(e: frozenset) -> bool:
        return all(fams[i].contains(e & grounds[i]) for i in range(len(fams)))

    return Family(uni, pred, "farah", meta={"parts": len(fams)})


def union_family(parts) -> Family:
    """Members live inside a single part and belong to it there."""
    grounds, fams = _disjoint_parts(parts)
    uni = sorted(set().union(*grounds))

    def pred(e: frozenset) -> bool:
        for i, g in enumerate(grounds):
            if e <= g:
                return fams[i].contains(e)
        return False

    return Family(uni, pred, "union", meta={"parts": len(fams)})


# ---------------------------------------------------------------------------
# partial orders, chains, antichains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PartialOrder:
    elements: tuple[int, ...]
    le: frozenset[tuple[int, int]]

    def __post_init__(self):
        elems = tuple(sorted(set(self.elements)))
        object.__setattr__(self, "elements", elems)
        rel = frozenset((int(a), int(b)) for a, b in self.le)
        object.__setattr__(self, "le", rel)
        eset = set(elems)
        for a, b in rel:
            if a not in eset or b not in eset:
                raise InputError(f"relation pair ({a},{b}) outside elements")
        for x in elems:
            if (x, x) not in rel:
                raise InputError(f"reflexivity violated at {x}")
        for a, b in rel:
            if a != b and (b, a) in rel:
                raise InputError(f"antisymmetry violated at ({a},{b})")
        for a, b in rel:
            for c, d in rel:
                if b == c and (a, d) not in rel:
                    raise InputError(f"transitivity violated at ({a},{b},{d})")

    def comparable(self, a: int, b: int) -> bool:
        return (a, b) in self.le or (b, a) in self.le


def poset_chains(order: PartialOrder) -> Family:
    def pred(e: frozenset) -> bool:
        return all(order.comparable(a, b) for a, b in itertools.combinations(e, 2))

    return Family(order.elements, pred, "poset-chains")


def poset_antichains(order: PartialOrder) -> Family:
    def pred(e: frozenset) -> bool:
        return not any(order.comparable(a, b) for a, b in itertools.combinations(e, 2))

    return Family(order.elements, pred, "poset-antichains")


def product_order(n: int) -> PartialOrder:
    """Componentwise order on {1..n}x{1..n}; id of (i, j) is (i-1)*n + j."""
    if n < 1:
        raise InputError("product order needs n >= 1")
    pairs = []
    pts = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    for (i0, j0) in pts:
        for (i1, j1) in pts:
            if i0 <= i1 and j0 <= j1:
                pairs.append(((i0 - 1) * n + j0, (i1 - 1) * n + j1))
    return PartialOrder(tuple(range(1, n * n + 1)), frozenset(pairs))


def product_point_id(n: int, i: int, j: int) -> int:
    if not (1 <= i <= n and 1 <= j <= n):
        raise InputError("point outside the grid")
    return (i - 1) * n + j
