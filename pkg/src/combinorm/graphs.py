"""Finite simple graphs: clique machinery, perfection tests, canonical forms.

Vertices are integer ids.  Internally most algorithms run on bitmask
adjacency over positions 0..n-1; the public surface always speaks vertex ids.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import InputError, SizeLimitExceeded

DEFAULT_SIZE_LIMIT = 12


@dataclass(frozen=True)
class Graph:
    vertices: tuple[int, ...]
    adjacency: dict[int, frozenset[int]] = field(compare=False)
    edges: frozenset[frozenset[int]] = field(default=None)

    def __post_init__(self):
        vs = tuple(sorted(set(self.vertices)))
        object.__setattr__(self, "vertices", vs)
        vset = set(vs)
        adj = {v: frozenset(self.adjacency.get(v, frozenset())) for v in vs}
        for v, nb in adj.items():
            if v in nb:
                raise InputError(f"loop at vertex {v}")
            if not nb <= vset:
                raise InputError(f"neighbour outside vertex set at {v}")
            for w in nb:
                if v not in adj[w]:
                    raise InputError("adjacency is not symmetric")
        object.__setattr__(self, "adjacency", adj)
        object.__setattr__(
            self, "edges",
            frozenset(frozenset((v, w)) for v in vs for w in adj[v] if v < w))

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __eq__(self, other):
        return isinstance(other, Graph) and self.vertices == other.vertices and self.edges == other.edges

    @property
    def n(self) -> int:
        return len(self.vertices)

    def has_edge(self, v: int, w: int) -> bool:
        return w in self.adjacency.get(v, frozenset())

    def complement(self) -> "Graph":
        vs = self.vertices
        adj = {v: frozenset(w for w in vs if w != v and w not in self.adjacency[v]) for v in vs}
        return Graph(vs, adj)

    def induced(self, subset) -> "Graph":
        sub = set(subset)
        if not sub <= set(self.vertices):
            raise InputError("induced subset not within vertex set")
        adj = {v: self.adjacency[v] & sub for v in sub}
        return Graph(tuple(sorted(sub)), adj)

    def masks(self) -> list[int]:
        """Adjacency bitmasks over vertex positions (sorted order)."""
        pos = {v: i for i, v in enumerate(self.vertices)}
        out = [0] * self.n
        for v in self.vertices:
            m = 0
            for w in self.adjacency[v]:
                m |= 1 << pos[w]
            out[pos[v]] = m
        return out


def from_edges(vertices, edges) -> Graph:
    vs = tuple(sorted(set(vertices)))
    adj = {v: set() for v in vs}
    for e in edges:
        a, b = tuple(e)
        if a == b:
            raise InputError(f"loop at vertex {a}")
        adj[a].add(b)
        adj[b].add(a)
    return Graph(vs, {v: frozenset(nb) for v, nb in adj.items()})


def empty_graph(n: int, start: int = 1) -> Graph:
    return from_edges(range(start, start + n), [])


def complete_graph(n: int, start: int = 1) -> Graph:
    vs = list(range(start, start + n))
    return from_edges(vs, itertools.combinations(vs, 2))


def cycle_graph(n: int, start: int = 1) -> Graph:
    vs = list(range(start, start + n))
    return from_edges(vs, [(vs[i], vs[(i + 1) % n]) for i in range(n)])


def path_graph(n: int, start: int = 1) -> Graph:
    vs = list(range(start, start + n))
    return from_edges(vs, [(vs[i], vs[i + 1]) for i in range(n - 1)])


def antihole_graph(length: int, start: int = 1) -> Graph:
    return cycle_graph(length, start).complement()


# ---------------------------------------------------------------------------
# clique families
# ---------------------------------------------------------------------------

def cliques(g: Graph):
    """Hereditary family of finite cliques of ``g``."""
    from . import families

    return families.graph_clique_family(g)


def anticliques(g: Graph):
    """anticliques(g) = cliques of the complement."""
    from . import families

    return families.graph_clique_family(g.complement(), complemented_from=g)


def comparability(order) -> Graph:
    """Comparability graph of a partial order: edges are comparable pairs."""
    elems = order.elements
    edges = [(a, b) for a, b in itertools.combinations(elems, 2) if order.comparable(a, b)]
    return from_edges(elems, edges)


def is_clique(g: Graph, subset) -> bool:
    sub = list(subset)
    return all(g.has_edge(a, b) for a, b in itertools.combinations(sub, 2))


def is_anticlique(g: Graph, subset) -> bool:
    sub = list(subset)
    return all(not g.has_edge(a, b) for a, b in itertools.combinations(sub, 2))


def maximal_cliques(g: Graph) -> list[frozenset[int]]:
    """Bron-Kerbosch with pivoting; result sorted colexicographically."""
    masks = g.masks()
    n = g.n
    out_masks: list[int] = []
    if n == 0:
        return []

    def expand(r: int, p: int, x: int):
        if not p and not x:
            out_masks.append(r)
            return
        pivot_pool = p | x
        pivot = max(range(n), key=lambda u: bin(masks[u] & p).count("1")
                    if pivot_pool >> u & 1 else -1)
        cand = p & ~masks[pivot]
        while cand:
            v = (cand & -cand).bit_length() - 1
            bit = 1 << v
            expand(r | bit, p & masks[v], x & masks[v])
            p &= ~bit
            x |= bit
            cand &= ~bit
    expand(0, (1 << n) - 1, 0)
    verts = g.vertices
    sets = [frozenset(verts[i] for i in range(n) if m >> i & 1) for m in out_masks]
    return sorted(sets, key=colex_key)


def colex_key(s) -> tuple:
    return tuple(sorted(s, reverse=True))


def clique_number(g: Graph) -> int:
    if g.n == 0:
        return 0
    return max(len(c) for c in maximal_cliques(g))


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number by DSATUR-ordered branch and bound."""
    n = g.n
    if n == 0:
        return 0
    masks = g.masks()
    lower = clique_number(g)
    # greedy upper bound
    order = sorted(range(n), key=lambda v: -bin(masks[v]).count("1"))
    colors = {}
    for v in order:
        used = {colors[w] for w in range(n) if masks[v] >> w & 1 and w in colors}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    best = max(colors.values()) + 1
    if best == lower:
        return lower

    assignment = [-1] * n

    def saturation(v):
        return len({assignment[w] for w in range(n) if masks[v] >> w & 1 and assignment[w] >= 0})

    def dfs(colored: int, used_colors: int) -> None:
        nonlocal best
        if used_colors >= best:
            return
        if colored == n:
            best = used_colors
            return
        v = max((u for u in range(n) if assignment[u] < 0),
                key=lambda u: (saturation(u), bin(masks[u]).count("1")))
        banned = {assignment[w] for w in range(n) if masks[v] >> w & 1 and assignment[w] >= 0}
        for c in range(min(used_colors + 1, best)):
            if c in banned:
                continue
            assignment[v] = c
            dfs(colored + 1, max(used_colors, c + 1))
            assignment[v] = -1
            if best == lower:
                return

    dfs(0, 0)
    return best


# ---------------------------------------------------------------------------
# hole / antihole search and perfection
# ---------------------------------------------------------------------------

def _induced_cycle_order(g: Graph, subset) -> list[int] | None:
    """Vertices of ``subset`` in cycle order when they induce a chordless cycle."""
    sub = sorted(subset)
    k = len(sub)
    h = g.induced(sub)
    if any(len(h.adjacency[v]) != 2 for v in sub):
        return None
    start = sub[0]
    prev, cur = None, start
    order = [start]
    for _ in range(k - 1):
        nbs = sorted(h.adjacency[cur] - ({prev} if prev is not None else set()))
        if not nbs:
            return None
        prev, cur = cur, nbs[0]
        order.append(cur)
    if start not in h.adjacency[order[-1]] or len(set(order)) != k:
        return None
    return order


def find_odd_hole(g: Graph, size_limit: int = DEFAULT_SIZE_LIMIT) -> list[int] | None:
    """Smallest induced odd chordless cycle of length >= 5, in cycle order."""
    if g.n > size_limit:
        raise SizeLimitExceeded(f"{g.n} vertices exceeds limit {size_limit}")
    for k in range(5, g.n + 1, 2):
        for subset in itertools.combinations(g.vertices, k):
            order = _induced_cycle_order(g, subset)
            if order is not None:
                return order
    return None


def find_odd_antihole(g: Graph, size_limit: int = DEFAULT_SIZE_LIMIT) -> list[int] | None:
    if g.n > size_limit:
        raise SizeLimitExceeded(f"{g.n} vertices exceeds limit {size_limit}")
    return find_odd_hole(g.complement(), size_limit)


def is_perfect(g: Graph, method: str = "spgt", size_limit: int = DEFAULT_SIZE_LIMIT) -> bool:
    """Perfection test: no odd hole/antihole, or chi == omega on every induced subgraph."""
    if g.n > size_limit:
        raise SizeLimitExceeded(f"{g.n} vertices exceeds limit {size_limit}")
    if method == "spgt":
        return find_odd_hole(g, size_limit) is None and find_odd_antihole(g, size_limit) is None
    if method == "chi_omega":
        for r in range(1, g.n + 1):
            for subset in itertools.combinations(g.vertices, r):
                h = g.induced(subset)
                if chromatic_number(h) != clique_number(h):
                    return False
        return True
    raise InputError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# canonical forms and the shipped corpus
# ---------------------------------------------------------------------------

def _edge_mask(g: Graph) -> int:
    """Upper-triangle edge bitmask in the graph's own vertex order."""
    pos = {v: i for i, v in enumerate(g.vertices)}
    mask = 0
    for e in g.edges:
        a, b = sorted(pos[v] for v in e)
        mask |= 1 << _pair_index(a, b)
    return mask


def _pair_index(a: int, b: int) -> int:
    # pairs (a, b) with a < b ordered colexicographically
    return b * (b - 1) // 2 + a


@lru_cache(maxsize=None)
def _pair_table(n: int) -> list[tuple[int, int]]:
    return [(a, b) for b in range(n) for a in range(b)]


def canonical_form(g: Graph) -> tuple[int, int]:
    """(n, minimal edge mask over vertex relabelings) - an isomorphism invariant.

    Colour refinement first; only permutations respecting the refined colour
    classes are tried, which keeps the search tiny away from regular graphs.
    """
    n = g.n
    masks = g.masks()
    if n <= 1:
        return n, 0
    colors = [bin(m).count("1") for m in masks]
    while True:
        sig = [(colors[v], tuple(sorted(colors[w] for w in range(n) if masks[v] >> w & 1)))
               for v in range(n)]
        palette = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [palette[s] for s in sig]
        if new == colors:
            break
        colors = new
    cells: dict[int, list[int]] = {}
    for v in range(n):
        cells.setdefault(colors[v], []).append(v)
    ordered_cells = [cells[c] for c in sorted(cells)]
    pairs = _pair_table(n)
    best = None
    for perm_parts in itertools.product(*[itertools.permutations(c) for c in ordered_cells]):
        perm = [v for part in perm_parts for v in part]
        # perm maps new position -> old vertex position
        mask = 0
        for k, (a, b) in enumerate(pairs):
            if masks[perm[a]] >> perm[b] & 1:
                mask |= 1 << k
        if best is None or mask < best:
            best = mask
    return n, best


def graph_from_canonical(n: int, mask: int, start: int = 1) -> Graph:
    pairs = _pair_table(n)
    edges = [(a + start, b + start) for k, (a, b) in enumerate(pairs) if mask >> k & 1]
    return from_edges(range(start, start + n), edges)


EXPECTED_CLASS_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044}


def generate_corpus(max_n: int = 7) -> dict[int, list[int]]:
    """All graphs up to isomorphism with 1..max_n vertices, as canonical masks.

    Incremental extension: every n-vertex class arises from some
    (n-1)-vertex class by attaching one vertex, so canonicalising all such
    extensions and deduplicating enumerates the classes exactly once.
    """
    corpus: dict[int, list[int]] = {1: [0]}
    for n in range(2, max_n + 1):
        found: set[int] = set()
        for smaller in corpus[n - 1]:
            base = graph_from_canonical(n - 1, smaller, start=1)
            base_edges = [tuple(sorted(e)) for e in base.edges]
            for nb in range(1 << (n - 1)):
                edges = list(base_edges)
                edges += [(w + 1, n) for w in range(n - 1) if nb >> w & 1]
                g = from_edges(range(1, n + 1), edges)
                found.add(canonical_form(g)[1])
        corpus[n] = sorted(found)
    return corpus


def write_corpus(path, corpus: dict[int, list[int]]) -> None:
    with open(path, "w") as fh:
        for n in sorted(corpus):
            for mask in corpus[n]:
                fh.write(f"{n} {mask}\n")


def load_corpus(path=None, max_n: int = 7) -> list[Graph]:
    """The shipped isomorphism-class corpus, validated against known counts."""
    if path is None:
        from importlib.resources import files

        path = files("combinorm.data") / "graphs_le7.txt"
    counts: dict[int, int] = {}
    out = []
    with open(str(path)) as fh:
        for line in fh:
            n_str, mask_str = line.split()
            n, mask = int(n_str), int(mask_str)
            if n > max_n:
                continue
            counts[n] = counts.get(n, 0) + 1
            out.append(graph_from_canonical(n, mask))
    for n, expected in EXPECTED_CLASS_COUNTS.items():
        if n <= max_n and counts.get(n) != expected:
            raise InputError(f"corpus has {counts.get(n)} classes at n={n}, expected {expected}")
    return out


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------

def to_json_dict(g: Graph) -> dict:
    return {"vertices": list(g.vertices),
            "edges": sorted(sorted(e) for e in g.edges)}


def from_json_dict(data: dict) -> Graph:
    try:
        return from_edges(data["vertices"], data.get("edges", []))
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad graph JSON: {exc}") from exc


def read_dimacs(text: str) -> Graph:
    """DIMACS edge format: ``p edge n m`` then ``e u v`` lines."""
    n = None
    edges = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) < 3 or parts[1] not in ("edge", "edges", "col"):
                raise InputError(f"bad DIMACS problem line: {line!r}")
            n = int(parts[2])
        elif parts[0] == "e":
            edges.append((int(parts[1]), int(parts[2])))
        else:
            raise InputError(f"unrecognised DIMACS line: {line!r}")
    if n is None:
        raise InputError("DIMACS input missing problem line")
    return from_edges(range(1, n + 1), edges)


def write_dimacs(g: Graph) -> str:
    ids = {v: i + 1 for i, v in enumerate(g.vertices)}
    lines = [f"p edge {g.n} {len(g.edges)}"]
    for e in sorted(sorted(ids[v] for v in e) for e in g.edges):
        lines.append(f"e {e[0]} {e[1]}")
    return "\n".join(lines) + "\n"


def load_graph(path) -> Graph:
    text = open(path).read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return from_json_dict(json.loads(text))
    return read_dimacs(text)
