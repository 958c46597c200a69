"""Cover calculus on a finite distributive lattice.

A :class:`Family` is a finite set of lattice elements; a :class:`Cover` is a
family whose join is 1.  Both hold their members as downset bitmasks over a
shared :class:`~lattidyn.lattice.Poset`.  Duplicates collapse and a zero
member is allowed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DuplicateInputs, MixedPosets, NotACover, NotProperMaximal, ValidationError
from .lattice import Downset, Poset, iter_bits, popcount


@dataclass(frozen=True, eq=False)
class Family:
    poset: Poset = field(repr=False)
    masks: frozenset

    def __post_init__(self):
        object.__setattr__(self, "masks", frozenset(self.masks))

    @classmethod
    def of(cls, items: Iterable[Downset], poset: Poset | None = None) -> "Family":
        """Build from downsets; ``poset`` is required when ``items`` is empty."""
        items = list(items)
        P = poset if poset is not None else (items[0].poset if items else None)
        if P is None:
            raise ValidationError("an empty family needs its poset")
        for d in items:
            if d.poset is not P and d.poset != P:
                raise MixedPosets("family members belong to different posets")
        return _make(P, (d.mask for d in items))

    def __eq__(self, other):
        if not isinstance(other, Family):
            return NotImplemented
        return self.masks == other.masks and self.poset == other.poset

    def __hash__(self):
        return hash((self.poset, self.masks))

    def __len__(self):
        return len(self.masks)

    def __iter__(self):
        return iter(self.members())

    def __contains__(self, d: Downset):
        return d.mask in self.masks and d.poset == self.poset

    def sorted_masks(self) -> list[int]:
        key = self.poset.mask_key
        return sorted(self.masks, key=lambda m: (popcount(m), key(m)))

    def members(self) -> list[Downset]:
        return [Downset(self.poset, m) for m in self.sorted_masks()]

    @property
    def join_mask(self) -> int:
        out = 0
        for m in self.masks:
            out |= m
        return out

    @property
    def is_cover(self) -> bool:
        return self.join_mask == self.poset.full_mask

    @cached_property
    def canonical(self) -> "Family":
        """Antichain of the inclusion-maximal members (equivalent to ``self``)."""
        return _make(self.poset, maximal_masks(self.masks))

    def to_json(self) -> list[list[str]]:
        return [list(self.poset.mask_key(m)) for m in self.sorted_masks()]

    def __repr__(self):
        inner = ", ".join("{" + ",".join(self.poset.mask_key(m)) + "}" for m in self.sorted_masks())
        return f"{type(self).__name__}([{inner}])"


class Cover(Family):
    """A family whose join is the top element."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_cover:
            raise NotACover(f"join of {self.to_json()} is not 1")


def _make(poset: Poset, masks: Iterable[int]) -> Family:
    masks = frozenset(masks)
    full = poset.full_mask
    acc = 0
    for m in masks:
        acc |= m
    if acc == full:
        return Cover(poset, masks)
    return Family(poset, masks)


def maximal_masks(masks: Iterable[int]) -> list[int]:
    kept: list[int] = []
    for m in sorted(set(masks), key=int.bit_count, reverse=True):
        if not any(m & ~k == 0 for k in kept):
            kept.append(m)
    return kept


def as_family(x, poset: Poset | None = None) -> Family:
    if isinstance(x, Family):
        return x
    return Family.of(x, poset)


def _pair(u, v) -> tuple[Family, Family]:
    U = as_family(u, getattr(v, "poset", None))
    V = as_family(v, U.poset)
    if U.poset is not V.poset and U.poset != V.poset:
        raise MixedPosets("families belong to different posets")
    return U, V


def cover(items: Iterable[Downset], poset: Poset | None = None) -> Cover:
    fam = Family.of(items, poset)
    if not isinstance(fam, Cover):
        raise NotACover(f"join of {fam.to_json()} is not 1")
    return fam


def is_cover(items, poset: Poset | None = None) -> bool:
    return as_family(items, poset).is_cover


def _refines_masks(us: Iterable[int], vs: Iterable[int]) -> bool:
    vs = list(vs)
    return all(any(u & ~v == 0 for v in vs) for u in us)


def refines(u, v) -> bool:
    """``U ≺ V``: every member of U lies below some member of V."""
    U, V = _pair(u, v)
    return _refines_masks(U.masks, V.masks)


def equivalent(u, v) -> bool:
    U, V = _pair(u, v)
    return U.canonical.masks == V.canonical.masks


def wedge(u, v) -> Family:
    """All pairwise meets; a cover whenever both arguments are."""
    U, V = _pair(u, v)
    return _make(U.poset, {a & b for a in U.masks for b in V.masks})


def wedge_canonical(u: Family, v: Family) -> Family:
    """Canonical form of ``wedge(u, v)``, computed without the full product."""
    U, V = _pair(u, v)
    return _make(U.poset, maximal_masks(a & b for a in U.canonical.masks for b in V.canonical.masks))


def order(u) -> int:
    """Largest number of distinct members with a nonzero common meet.

    Downsets meet nontrivially iff they share a point, so this is the largest
    number of members containing any single point.  The empty subfamily has
    meet 1, so a family of only zeros has order 0.
    """
    U = as_family(u)
    best = 0
    for p in range(len(U.poset)):
        bit = 1 << p
        best = max(best, sum(1 for m in U.masks if m & bit))
    return best


def order_bruteforce(u) -> int:
    U = as_family(u)
    ms = sorted(U.masks)
    full = U.poset.full_mask
    for k in range(len(ms), 0, -1):
        for sub in combinations(ms, k):
            acc = full
            for m in sub:
                acc &= m
            if acc:
                return k
    return 0


def square(u) -> Family:
    """Joins of overlapping pairs (a member paired with itself included)."""
    U = as_family(u)
    ms = [m for m in U.masks if m]
    return _make(U.poset, {a | b for a in ms for b in ms if a & b})


def components(v) -> Family:
    """Joins of the overlap-connected clusters of the nonzero members."""
    V = as_family(v)
    ms = [m for m in V.sorted_masks() if m]
    parent = list(range(len(ms)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in combinations(range(len(ms)), 2):
        if ms[i] & ms[j]:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    joins: dict[int, int] = {}
    for i, m in enumerate(ms):
        r = find(i)
        joins[r] = joins.get(r, 0) | m
    return _make(V.poset, joins.values())


# --- minimal subcovers -----------------------------------------------------


def min_set_cover(universe: int, sets: Sequence[int]) -> list[int]:
    """Indices of a minimum-size subfamily of ``sets`` whose union is ``universe``.

    Exact depth-first branch and bound: a greedy solution seeds the upper
    bound, branching is on the uncovered element with fewest candidate sets,
    and a partial solution is cut when ``ceil(uncovered / largest set)`` more
    sets cannot beat the incumbent.  Sets are tried in the given order and an
    incumbent is replaced only by a strictly smaller one, so the returned
    witness is deterministic.
    """
    union = 0
    for s in sets:
        union |= s
    if union & universe != universe:
        raise NotACover("sets do not cover the universe")
    if universe == 0:
        return []
    sets = [s & universe for s in sets]
    containing: dict[int, list[int]] = {}
    for idx, s in enumerate(sets):
        for e in iter_bits(s):
            containing.setdefault(e, []).append(idx)
    largest = max(popcount(s) for s in sets)

    best = _greedy(universe, sets)

    chosen: list[int] = []

    def search(covered: int):
        nonlocal best
        uncovered = universe & ~covered
        if not uncovered:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        need = -(-popcount(uncovered) // largest)
        if len(chosen) + need >= len(best):
            return
        elem = min(iter_bits(uncovered), key=lambda e: (len(containing[e]), e))
        for idx in containing[elem]:
            chosen.append(idx)
            search(covered | sets[idx])
            chosen.pop()
            if len(chosen) + need >= len(best):
                return

    search(0)
    return sorted(best)


def _greedy(universe: int, sets: Sequence[int]) -> list[int]:
    covered, picks = 0, []
    while covered != universe:
        idx = max(range(len(sets)), key=lambda i: (popcount(sets[i] & ~covered), -i))
        picks.append(idx)
        covered |= sets[idx]
    return picks


def minimal_subcover(u) -> tuple[Cover, int]:
    """An exact minimum-cardinality subcover and its size.

    Only inclusion-maximal members are offered to the solver: swapping a
    member for a larger one keeps a subcover a subcover.  Candidates are
    ordered by their sorted-label serialization.
    """
    U = as_family(u)
    if not U.is_cover:
        raise NotACover(f"join of {U.to_json()} is not 1")
    P = U.poset
    cands = sorted(maximal_masks(U.masks), key=P.mask_key)
    picks = min_set_cover(P.full_mask, cands)
    return Cover(P, frozenset(cands[i] for i in picks)), len(picks)


def minimal_subcover_bruteforce(u) -> int:
    """Reference count by enumerating subsets of increasing size."""
    U = as_family(u)
    ms = sorted(U.masks)
    full = U.poset.full_mask
    for k in range(0, len(ms) + 1):
        for sub in combinations(ms, k):
            acc = 0
            for m in sub:
                acc |= m
            if acc == full:
                return k
    raise NotACover("not a cover")


def has_proper_subcover(u) -> bool:
    """True when dropping some member still leaves a cover."""
    U = as_family(u)
    full = U.poset.full_mask
    ms = list(U.masks)
    for i in range(len(ms)):
        acc = 0
        for j, m in enumerate(ms):
            if j != i:
                acc |= m
        if acc == full:
            return True
    return False


# --- proper maximal elements --------------------------------------------------


def proper_maximal_elements(P: Poset) -> list[Downset]:
    """Coatoms of the downset lattice.

    ``D`` is covered exactly by ``D ∪ {p}`` for ``p`` minimal outside ``D``,
    so ``D`` sits directly under 1 iff its complement is one maximal point.
    """
    out = [Downset(P, P.full_mask & ~(1 << p)) for p in P.maximal_points()]
    return sorted(out, key=lambda d: P.mask_key(d.mask))


def is_proper_maximal(d: Downset, downsets: Iterable[int] | None = None) -> bool:
    """Check the definition directly against all lattice elements."""
    P = d.poset
    if d.mask == P.full_mask:
        return False
    pool = P.downset_masks() if downsets is None else downsets
    return all(e in (d.mask, P.full_mask) for e in pool if d.mask & ~e == 0)


def maximal_meet_cover(us: Sequence[Downset]) -> Cover:
    """``{v_k}`` with ``v_k`` the meet of all inputs except ``u_k``.

    For pairwise distinct proper maximal inputs the result is a cover with
    one member per input and no proper subcover.
    """
    us = list(us)
    if not us:
        raise ValidationError("need at least one proper maximal element")
    P = us[0].poset
    for d in us:
        if d.poset != P:
            raise MixedPosets("inputs belong to different posets")
    if len({d.mask for d in us}) != len(us):
        raise DuplicateInputs("proper maximal elements must be pairwise distinct")
    full = P.full_mask
    for d in us:
        comp = full & ~d.mask
        # complement must be a single maximal point
        if popcount(comp) != 1 or P.up[comp.bit_length() - 1] != comp:
            raise NotProperMaximal(f"{d!r} is not a proper maximal element")
    vs = []
    for k in range(len(us)):
        acc = full
        for i, d in enumerate(us):
            if i != k:
                acc &= d.mask
        vs.append(acc)
    return Cover(P, frozenset(vs))


def finest_cover(P: Poset) -> Cover:
    """The join-irreducibles; this cover refines every cover."""
    return Cover(P, frozenset(P.down))
