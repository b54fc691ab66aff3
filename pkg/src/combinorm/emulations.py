"""Emulations of hereditary families inside partial Sierpinski spaces.

An emulation is an ordered list of labeled blocks with a rational value per
position, strictly decreasing inside each block and injective overall.  A
label set E achieves norm |E| exactly when it belongs to the emulated
family; the transforms below carry emulations through the Schreier and
diagonal-star operations, block for block as in their existence proofs.
"""

from __future__ import annotations

import itertools
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, SizeLimitExceeded
from .sierpinski import weighted_increasing_mass

ONE = Fraction(1)


@dataclass(frozen=True)
class Emulation:
    blocks: tuple[tuple[int, int], ...]  # (label, size) in block order
    theta: tuple[Fraction, ...]          # one value per position, block order

    def __post_init__(self):
        blocks = tuple((int(t), int(s)) for t, s in self.blocks)
        theta = tuple(Fraction(v) for v in self.theta)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "theta", theta)
        if any(s < 1 for _, s in blocks):
            raise InputError("block sizes must be >= 1")
        labels = [t for t, _ in blocks]
        if len(set(labels)) != len(labels):
            raise InputError("block labels must be distinct")
        if sum(s for _, s in blocks) != len(theta):
            raise InputError("theta length must match total block size")
        if len(set(theta)) != len(theta):
            raise InputError("theta must be injective")
        offset = 0
        for _, s in blocks:
            run = theta[offset:offset + s]
            if any(run[i] <= run[i + 1] for i in range(s - 1)):
                raise InputError("theta must decrease inside every block")
            offset += s

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(t for t, _ in self.blocks)

    def block_values(self) -> dict[int, tuple[Fraction, ...]]:
        out = {}
        offset = 0
        for t, s in self.blocks:
            out[t] = self.theta[offset:offset + s]
            offset += s
        return out

    def positions(self) -> dict[int, range]:
        out = {}
        offset = 0
        for t, s in self.blocks:
            out[t] = range(offset, offset + s)
            offset += s
        return out


def normalize_unit(values) -> list[Fraction]:
    """Order-preserving rational rescale into the open interval (0, 1)."""
    vals = [Fraction(v) for v in values]
    if not vals:
        return []
    lo, hi = min(vals), max(vals)
    span = hi - lo + 1
    return [(v - lo + Fraction(1, 2)) / span for v in vals]


# ---------------------------------------------------------------------------
# norms along an emulation
# ---------------------------------------------------------------------------

def emulation_norm(e: Emulation, label_set) -> int:
    """Longest chain rising in position and value through the chosen blocks."""
    chosen = frozenset(label_set)
    unknown = chosen - set(e.labels)
    if unknown:
        raise InputError(f"unknown labels {sorted(unknown)}")
    pairs = []
    weights = {}
    pos_map = e.positions()
    theta = e.theta
    for t in chosen:
        for p in pos_map[t]:
            pairs.append((p, theta[p]))
            weights[p] = ONE
    return int(weighted_increasing_mass(pairs, weights))


def emulation_weighted_norm(e: Emulation, coefficients: dict[int, Fraction]) -> Fraction:
    """Norm of sum of a_t x_t: every position of block t carries weight |a_t|."""
    pairs = []
    weights = {}
    pos_map = e.positions()
    for t, a in coefficients.items():
        if t not in pos_map:
            raise InputError(f"unknown label {t}")
        for p in pos_map[t]:
            pairs.append((p, e.theta[p]))
            weights[p] = abs(Fraction(a))
    return weighted_increasing_mass(pairs, weights)


def full_transversal(e: Emulation, label_set) -> bool:
    """Does some chain visit every chosen block?  Greedy least-feasible value.

    Equivalent to emulation_norm(e, E) == |E| but linear in the positions:
    picking the smallest value above the previous one never hurts later
    blocks.
    """
    chosen = sorted(frozenset(label_set), key=list(e.labels).index)
    unknown = set(chosen) - set(e.labels)
    if unknown:
        raise InputError(f"unknown labels {sorted(unknown)}")
    block_vals = e.block_values()
    prev = None
    for t in chosen:
        vals = sorted(block_vals[t])
        if prev is None:
            pick = vals[0]
        else:
            i = bisect_right(vals, prev)
            if i == len(vals):
                return False
            pick = vals[i]
        prev = pick
    return True


def verify_emulation(e: Emulation, family, max_size: int):
    """Exhaustive iff-check up to the size bound; returns (ok, counterexample)."""
    labels = sorted(e.labels)
    if not set(labels) <= set(family.universe):
        raise InputError("emulation labels outside the family universe")
    for r in range(1, max_size + 1):
        for combo in itertools.combinations(labels, r):
            if full_transversal(e, combo) != family.contains(combo):
                return False, frozenset(combo)
    return True, None


# ---------------------------------------------------------------------------
# canonical base emulations
# ---------------------------------------------------------------------------

def base_singletons(n: int) -> Emulation:
    """Unit blocks with decreasing theta: emulates sets of size <= 1."""
    return Emulation(tuple((t, 1) for t in range(1, n + 1)),
                     tuple(Fraction(-t) for t in range(1, n + 1)))


def base_all_finite(n: int) -> Emulation:
    """Unit blocks with increasing theta: emulates all finite sets."""
    return Emulation(tuple((t, 1) for t in range(1, n + 1)),
                     tuple(Fraction(t) for t in range(1, n + 1)))


def _require_consecutive_labels(e: Emulation) -> int:
    if e.labels != tuple(range(1, len(e.blocks) + 1)):
        raise InputError("transform input must carry blocks labeled 1..N in order")
    return len(e.blocks)


# ---------------------------------------------------------------------------
# the Schreier and diagonal transforms
# ---------------------------------------------------------------------------

def schreier_transform(e: Emulation) -> Emulation:
    """Emulation of S(F) from an ordered emulation of F.

    Output block n concatenates n shifted copies of input block n: copy k
    keeps the (0,1)-normalised values minus k, so later copies sit strictly
    below earlier ones and each output block stays decreasing.
    """
    n_blocks = _require_consecutive_labels(e)
    theta_hat = normalize_unit(e.theta)
    pos_map = e.positions()
    blocks = []
    theta: list[Fraction] = []
    for n in range(1, n_blocks + 1):
        run = [theta_hat[p] for p in pos_map[n]]
        blocks.append((n, len(run) * n))
        for k in range(1, n + 1):
            theta.extend(v - k for v in run)
    return Emulation(tuple(blocks), tuple(theta))


def dstar_transform(parts) -> Emulation:
    """Emulation of the diagonal-star union from ordered part emulations.

    Output block n concatenates block n of parts 1..n (normalised, part k
    shifted down by k); it exists while every needed part supplies block n.
    """
    parts = list(parts)
    if not parts:
        raise InputError("dstar_transform needs at least one part")
    sizes = []
    for p in parts:
        sizes.append(_require_consecutive_labels(p))
    n_out = 0
    for n in range(1, len(parts) + 1):
        if all(sizes[k] >= n for k in range(n)):
            n_out = n
        else:
            break
    if n_out == 0:
        raise InputError("no output block is fully supported by the parts")
    hats = [normalize_unit(p.theta) for p in parts]
    blocks = []
    theta: list[Fraction] = []
    for n in range(1, n_out + 1):
        total = 0
        for k in range(1, n + 1):
            part = parts[k - 1]
            run = [hats[k - 1][p] for p in part.positions()[n]]
            theta.extend(v - k for v in run)
            total += len(run)
        blocks.append((n, total))
    return Emulation(tuple(blocks), tuple(theta))


def _translated_parts(parts, ascending: bool):
    emus = list(parts)
    if not emus:
        raise InputError("at least one part required")
    all_labels = [t for e in emus for t in e.labels]
    if len(set(all_labels)) != len(all_labels):
        raise InputError("part label sets must be disjoint")
    blocks = []
    theta: list[Fraction] = []
    for m, e in enumerate(emus, start=1):
        shift = Fraction(m if ascending else -m)
        blocks.extend(e.blocks)
        theta.extend(v + shift for v in normalize_unit(e.theta))
    return Emulation(tuple(blocks), tuple(theta))


def union_shift(parts) -> Emulation:
    """Ranges pushed pairwise downward: emulates the union family."""
    return _translated_parts(parts, ascending=False)


def farah_shift(parts) -> Emulation:
    """Ranges pushed pairwise upward: emulates the Farah product."""
    return _translated_parts(parts, ascending=True)


# ---------------------------------------------------------------------------
# exhaustive search over order types
# ---------------------------------------------------------------------------

def _family_automorphisms(family) -> list[dict[int, int]]:
    uni = sorted(family.universe)
    members = set(family.members())
    autos = []
    for perm in itertools.permutations(uni):
        m = dict(zip(uni, perm))
        # a universe bijection mapping members into members is an automorphism
        if all(frozenset(m[v] for v in s) in members for s in members):
            autos.append(m)
    return autos


def search_emulation(family, max_block: int = 2):
    """First emulation of a small family by exhaustive order-type search.

    Search space: block label orders (modulo family automorphisms), block
    size vectors, and insertions of each block's decreasing run into the
    current value order.  Every placement is checked against all subsets of
    already-placed labels, so wrong branches die as early as possible.
    Returns None when the space is exhausted.
    """
    uni = sorted(family.universe)
    n = len(uni)
    if n > 6:
        raise SizeLimitExceeded("search_emulation supports at most 6 labels")
    if max_block > 3:
        raise SizeLimitExceeded("search_emulation supports block sizes at most 3")

    autos = _family_automorphisms(family)

    def canonical_order(order: tuple[int, ...]) -> bool:
        return all(order <= tuple(g[t] for t in order) for g in autos)

    def consistent(order, sizes, ranks) -> bool:
        """All subsets containing the newest label satisfy the iff."""
        j = len(sizes) - 1
        placed = order[:j + 1]
        newest = placed[-1]
        e = _order_type_emulation(placed, sizes, ranks)
        for r in range(1, j + 2):
            for combo in itertools.combinations(placed, r):
                if newest not in combo:
                    continue
                if full_transversal(e, combo) != family.contains(combo):
                    return False
        return True

    for order in itertools.permutations(uni):
        if not canonical_order(order):
            continue
        found = _place_blocks(order, [], [], max_block, consistent)
        if found is not None:
            sizes, ranks = found
            return _order_type_emulation(order, sizes, ranks)
    return None


def _place_blocks(order, sizes, ranks, max_block, consistent):
    if len(sizes) == len(order):
        return list(sizes), list(ranks)
    m = len(ranks)
    for s in range(1, max_block + 1):
        for gaps in itertools.combinations_with_replacement(range(m + 1), s):
            # descending insertion keeps lower gap indices valid
            work = list(ranks)
            for g in sorted(gaps, reverse=True):
                work.insert(g, None)
            flat = _flatten_ranks(work, len(sizes))
            sizes.append(s)
            if consistent(order, sizes, flat):
                got = _place_blocks(order, sizes, flat, max_block, consistent)
                if got is not None:
                    return got
            sizes.pop()
    return None


def _flatten_ranks(work, block_index):
    """Replace None markers by (block_index, copy) tags, newest block last."""
    out = []
    copy = 0
    for item in work:
        if item is None:
            out.append((block_index, copy))
            copy += 1
        else:
            out.append(item)
    return out


def _order_type_emulation(placed_labels, sizes, ranks) -> Emulation:
    """Emulation whose theta realises the rank order with integer values."""
    # ranks: ascending list of (block_index, copy) tags; value = index + 1
    value_of = {tag: Fraction(i + 1) for i, tag in enumerate(ranks)}
    blocks = []
    theta: list[Fraction] = []
    for j, t in enumerate(placed_labels[:len(sizes)]):
        vals = sorted((value_of[(j, c)] for c in range(sizes[j])), reverse=True)
        blocks.append((t, sizes[j]))
        theta.extend(vals)
    return Emulation(tuple(blocks), tuple(theta))
