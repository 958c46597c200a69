"""Exhaustive and random generators for small systems.

Used by the property suites and the demos.  Random generators take a
``random.Random`` so runs are reproducible from a seed.
"""

from __future__ import annotations

import random
from itertools import permutations
from typing import Iterator

from .covers import Cover, Family
from .dynamics import LatticeAutomorphism, automorphism_from_permutation, isomorphism_from_map
from .lattice import Poset, iter_bits, poset_validate
from .errors import NotLowerComplete
from .shift import SymbolPoset, symbol_poset_validate
from .topology import FiniteSpace, space_validate

LABELS = "abcdefghijklmnopqrstuvwxyz"


def _labels(k: int) -> list[str]:
    return list(LABELS[:k])


def labelled_posets(k: int) -> Iterator[Poset]:
    """Every poset on points ``a, b, ...`` whose order extends the label order."""
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    labels = _labels(k)
    for bits in range(1 << len(pairs)):
        rel = {pairs[t] for t in range(len(pairs)) if bits >> t & 1}
        closed = all((i, l) in rel for (i, j) in rel for (j2, l) in rel if j == j2)
        if closed:
            yield poset_validate(labels, [(labels[i], labels[j]) for i, j in rel])


def _canonical_form(P: Poset) -> tuple:
    k = len(P)
    best = None
    for perm in permutations(range(k)):
        # relation after relabelling point i as perm[i]
        rel = tuple(sorted((perm[i], perm[j]) for j in range(k) for i in iter_bits(P.down[j]) if i != j))
        if best is None or rel < best:
            best = rel
    return best


def posets_up_to_iso(k: int) -> list[Poset]:
    seen, out = set(), []
    for P in labelled_posets(k):
        form = _canonical_form(P)
        if form not in seen:
            seen.add(form)
            out.append(P)
    return out


def small_posets(max_points: int) -> list[Poset]:
    """Posets with ``1..max_points`` points, one per isomorphism class."""
    return [P for k in range(1, max_points + 1) for P in posets_up_to_iso(k)]


def order_automorphisms(P: Poset) -> list[tuple[int, ...]]:
    """Point permutations ``π`` preserving and reflecting the order."""
    k = len(P)
    out = []
    for perm in permutations(range(k)):
        if all(P.point_leq(i, j) == P.point_leq(perm[i], perm[j]) for i in range(k) for j in range(k)):
            out.append(perm)
    return out


def automorphisms(P: Poset) -> list[LatticeAutomorphism]:
    return [automorphism_from_permutation(P, perm) for perm in order_automorphisms(P)]


def relabelled(P: Poset, perm) -> tuple[Poset, object]:
    """An isomorphic copy of ``P`` with fresh labels, and the lattice isomorphism onto it."""
    k = len(P)
    labels = [f"q{perm[i]}" for i in range(k)]
    Q = poset_validate(
        sorted(labels),
        [(labels[i], labels[j]) for j in range(k) for i in iter_bits(P.down[j]) if i != j],
    )
    phi = isomorphism_from_map(P, Q, {P.labels[i]: labels[i] for i in range(k)})
    return Q, phi


def antichain_covers(P: Poset) -> list[Cover]:
    """Every cover that is an antichain of nonzero downsets."""
    masks = [m for m in P.downset_masks() if m]
    full = P.full_mask
    out = []

    def rec(start: int, chosen: list[int], union: int):
        if union == full:
            out.append(Cover(P, frozenset(chosen)))
        for idx in range(start, len(masks)):
            m = masks[idx]
            if all(m & c != m and m & c != c for c in chosen):
                chosen.append(m)
                rec(idx + 1, chosen, union | m)
                chosen.pop()

    rec(0, [], 0)
    return out


def all_covers(P: Poset) -> list[Cover]:
    """Every subset of the lattice whose join is 1 (small lattices only)."""
    masks = P.downset_masks()
    full = P.full_mask
    out = []
    for bits in range(1, 1 << len(masks)):
        chosen = [masks[i] for i in range(len(masks)) if bits >> i & 1]
        union = 0
        for m in chosen:
            union |= m
        if union == full:
            out.append(Cover(P, frozenset(chosen)))
    return out


def random_poset(rng: random.Random, k: int, density: float = 0.35) -> Poset:
    labels = _labels(k)
    pairs = [(labels[i], labels[j]) for i in range(k) for j in range(i + 1, k) if rng.random() < density]
    return poset_validate(labels, pairs)


def random_family(rng: random.Random, P: Poset, size: int | None = None) -> Family:
    masks = P.downset_masks()
    size = rng.randint(1, min(6, len(masks))) if size is None else size
    return Family(P, frozenset(rng.choice(masks) for _ in range(size)))


def random_cover(rng: random.Random, P: Poset, extra: int | None = None) -> Cover:
    """Random downsets plus enough principal downsets of maximal points to cover."""
    masks = P.downset_masks()
    extra = rng.randint(0, 5) if extra is None else extra
    chosen = {rng.choice(masks) for _ in range(extra)}
    union = 0
    for m in chosen:
        union |= m
    for p in P.maximal_points():
        if not union >> p & 1:
            # a random downset that contains p
            options = [m for m in masks if m >> p & 1]
            pick = rng.choice(options)
            chosen.add(pick)
            union |= pick
    return Cover(P, frozenset(chosen))


def random_symbol_poset(rng: random.Random, k: int, tries: int = 200) -> SymbolPoset:
    labels = _labels(k)
    for _ in range(tries):
        pairs = [(labels[i], labels[j]) for i in range(k) for j in range(i + 1, k) if rng.random() < 0.4]
        try:
            return symbol_poset_validate(labels, pairs)
        except NotLowerComplete:
            continue
    return symbol_poset_validate(labels)


def all_symbol_posets(max_symbols: int) -> list[SymbolPoset]:
    """Lower complete orders, one per isomorphism class, on 1..max_symbols symbols."""
    out = []
    for P in small_posets(max_symbols):
        pairs = [(P.labels[i], P.labels[j]) for j in range(len(P)) for i in iter_bits(P.down[j]) if i != j]
        try:
            out.append(symbol_poset_validate(P.labels, pairs))
        except NotLowerComplete:
            pass
    return out


def alexandrov_space(points: list[str], pairs) -> FiniteSpace:
    """Opens = up-sets of the preorder generated by ``pairs`` (may be non-T0)."""
    k = len(points)
    idx = {p: i for i, p in enumerate(points)}
    up = [1 << i for i in range(k)]
    for a, b in pairs:
        up[idx[a]] |= 1 << idx[b]
    for m in range(k):
        for i in range(k):
            if up[i] >> m & 1:
                up[i] |= up[m]
    opens = []
    for mask in range(1 << k):
        if all(up[i] & ~mask == 0 for i in iter_bits(mask)):
            opens.append([points[i] for i in iter_bits(mask)])
    return space_validate(points, opens)


def random_space(rng: random.Random, k: int, prefix: str = "") -> FiniteSpace:
    points = [f"{prefix}{c}" for c in _labels(k)]
    pairs = [(a, b) for a in points for b in points if a != b and rng.random() < 0.25]
    return alexandrov_space(points, pairs)


def _all_labelled_orders(m: int) -> set[frozenset]:
    """Strict order relations on ``range(m)``, every labelling included."""
    out = set()
    for P in labelled_posets(m):
        rel = [(i, j) for j in range(m) for i in iter_bits(P.down[j]) if i != j]
        for perm in permutations(range(m)):
            out.add(frozenset((perm[i], perm[j]) for i, j in rel))
    return out


def _set_partitions(items: list) -> Iterator[list[list]]:
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[head]] + part
        for i in range(len(part)):
            yield part[:i] + [[head] + part[i]] + part[i + 1:]


def all_finite_spaces(k: int) -> Iterator[FiniteSpace]:
    """Every topology on ``k`` labelled points.

    Finite topologies correspond to preorders (opens = up-sets), and a
    preorder is a partition into equivalence blocks plus a partial order on
    the blocks.
    """
    points = _labels(k)
    orders: dict[int, set] = {}
    for blocks in _set_partitions(list(range(k))):
        m = len(blocks)
        if m not in orders:
            orders[m] = _all_labelled_orders(m)
        block_of = {x: b for b, blk in enumerate(blocks) for x in blk}
        for rel in sorted(orders[m], key=sorted):
            up = [0] * k
            for x in range(k):
                for y in range(k):
                    bx, by = block_of[x], block_of[y]
                    if bx == by or (bx, by) in rel:
                        up[x] |= 1 << y
            opens = frozenset(
                frozenset(points[i] for i in iter_bits(mask))
                for mask in range(1 << k)
                if all(up[i] & ~mask == 0 for i in iter_bits(mask))
            )
            yield FiniteSpace(tuple(points), opens)


def spaces_with_points(k: int, t1_only: bool = False) -> list[FiniteSpace]:
    return [X for X in all_finite_spaces(k) if not t1_only or X.is_t1]


def random_map(rng: random.Random, X: FiniteSpace, Y: FiniteSpace, tries: int = 200) -> dict:
    """A random continuous map, falling back to a constant map."""
    for _ in range(tries):
        table = {x: rng.choice(Y.points) for x in X.points}
        if all(frozenset(x for x in X.points if table[x] in v) in X.opens for v in Y.opens):
            return table
    y = rng.choice(Y.points)
    return {x: y for x in X.points}
