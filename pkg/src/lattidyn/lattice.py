"""Finite bounded distributive lattices through Birkhoff duality.

A finite distributive lattice is stored as the poset of its join-irreducible
elements; lattice elements are the downsets of that poset.  Downsets are kept
as integer bitmasks over the point indices, so join and meet are ``|`` and
``&`` and the order is mask inclusion.

    >>> P = poset_validate(["a", "b", "c"], [("c", "a"), ("c", "b")])
    >>> a, b = P.principal("a"), P.principal("b")
    >>> (a & b).labels()
    ('c',)
    >>> (a | b).is_one
    True
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    CycleDetected,
    EmptyPoset,
    MixedPosets,
    NotADownset,
    NotALattice,
    NotBounded,
    NotDistributive,
    PosetTooLarge,
    SearchCapExceeded,
    ValidationError,
    ZeroEqualsOne,
)

MAX_POINTS = 64


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True, eq=False)
class Poset:
    """Finite partial order on labelled points ``0..k-1``.

    ``down[i]`` is the bitmask of points below (or equal to) point ``i``.
    Instances should come from :func:`poset_validate` or
    :meth:`Poset.from_leq`, which check the order axioms.
    """

    labels: tuple[str, ...]
    down: tuple[int, ...]

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Poset):
            return NotImplemented
        return self.labels == other.labels and self.down == other.down

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self):
        return hash((self.labels, self.down))

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        rel = [
            (self.labels[i], self.labels[j])
            for j in range(len(self))
            for i in iter_bits(self.down[j])
            if i != j
        ]
        return f"Poset({list(self.labels)}, leq={rel})"

    @classmethod
    def from_leq(cls, labels: Sequence[str], leq, *, max_points: int = MAX_POINTS) -> "Poset":
        """Build from a boolean matrix with ``leq[i, j]`` true iff ``i <= j``."""
        leq = np.asarray(leq, dtype=bool)
        pairs = [(labels[i], labels[j]) for i, j in zip(*np.nonzero(leq)) if i != j]
        P = poset_validate(labels, pairs, max_points=max_points)
        if not np.array_equal(P.leq, leq | np.eye(len(labels), dtype=bool)):
            raise ValidationError("leq matrix is not transitively closed")
        return P

    @cached_property
    def index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def up(self) -> tuple[int, ...]:
        up = [0] * len(self)
        for j, d in enumerate(self.down):
            for i in iter_bits(d):
                up[i] |= 1 << j
        return tuple(up)

    @cached_property
    def leq(self) -> np.ndarray:
        """Read-only boolean matrix, ``leq[i, j]`` iff point i <= point j."""
        k = len(self)
        m = np.zeros((k, k), dtype=bool)
        for j, d in enumerate(self.down):
            for i in iter_bits(d):
                m[i, j] = True
        m.flags.writeable = False
        return m

    @cached_property
    def full_mask(self) -> int:
        return (1 << len(self)) - 1

    def point_leq(self, i: int, j: int) -> bool:
        return bool(self.down[j] >> i & 1)

    def maximal_points(self) -> list[int]:
        return [i for i in range(len(self)) if self.up[i] == 1 << i]

    def minimal_points(self) -> list[int]:
        return [i for i in range(len(self)) if self.down[i] == 1 << i]

    def resolve(self, point) -> int:
        if isinstance(point, str):
            try:
                return self.index[point]
            except KeyError:
                raise ValidationError(f"unknown point {point!r}") from None
        return int(point)

    def is_downset_mask(self, mask: int) -> bool:
        return all(self.down[i] & ~mask == 0 for i in iter_bits(mask))

    def downset_closure(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= self.down[i]
        return out

    # lattice elements
    def element(self, mask: int) -> "Downset":
        return Downset(self, mask)

    def downset(self, points: Iterable = ()) -> "Downset":
        """The downset made of exactly ``points``; raises if not downward closed."""
        mask = 0
        for p in points:
            mask |= 1 << self.resolve(p)
        if not self.is_downset_mask(mask):
            raise NotADownset(f"{sorted(self.labels[i] for i in iter_bits(mask))} is not downward closed")
        return Downset(self, mask)

    def principal(self, point) -> "Downset":
        return Downset(self, self.down[self.resolve(point)])

    @property
    def zero(self) -> "Downset":
        return Downset(self, 0)

    @property
    def one(self) -> "Downset":
        return Downset(self, self.full_mask)

    def mask_key(self, mask: int) -> tuple[str, ...]:
        """Serialization key of a downset: its sorted point labels."""
        return tuple(sorted(self.labels[i] for i in iter_bits(mask)))

    def downset_masks(self, cap: int | None = None) -> list[int]:
        """All downset masks, sorted by (size, labels).

        Raises :class:`SearchCapExceeded` when ``cap`` is given and more than
        ``cap`` downsets exist.
        """
        # walk points in a linear extension; a point may join only if its
        # strict predecessors are already in
        order = sorted(range(len(self)), key=lambda i: popcount(self.down[i]))
        out: list[int] = []

        def rec(pos: int, mask: int):
            if cap is not None and len(out) > cap:
                return
            if pos == len(order):
                out.append(mask)
                return
            i = order[pos]
            rec(pos + 1, mask)
            if self.down[i] & ~(1 << i) & ~mask == 0:
                rec(pos + 1, mask | 1 << i)

        rec(0, 0)
        if cap is not None and len(out) > cap:
            raise SearchCapExceeded(f"more than {cap} downsets")
        out.sort(key=lambda m: (popcount(m), self.mask_key(m)))
        return out

    def downsets(self) -> list["Downset"]:
        return [Downset(self, m) for m in self.downset_masks()]


@dataclass(frozen=True)
class Downset:
    """An element of the lattice of downsets of ``poset``."""

    poset: Poset = field(repr=False)
    mask: int

    def _check(self, other: "Downset") -> None:
        if self.poset is not other.poset and self.poset != other.poset:
            raise MixedPosets("downsets belong to different posets")

    def __or__(self, other: "Downset") -> "Downset":
        return join(self, other)

    def __and__(self, other: "Downset") -> "Downset":
        return meet(self, other)

    def __le__(self, other: "Downset") -> bool:
        return leq(self, other)

    def __lt__(self, other: "Downset") -> bool:
        return leq(self, other) and self.mask != other.mask

    def __ge__(self, other: "Downset") -> bool:
        return leq(other, self)

    def __gt__(self, other: "Downset") -> bool:
        return leq(other, self) and self.mask != other.mask

    @property
    def is_zero(self) -> bool:
        return self.mask == 0

    @property
    def is_one(self) -> bool:
        return self.mask == self.poset.full_mask

    def labels(self) -> tuple[str, ...]:
        return self.poset.mask_key(self.mask)

    def to_json(self) -> list[str]:
        return list(self.labels())

    def __repr__(self):
        return "{" + ",".join(self.labels()) + "}"


def poset_validate(
    labels: Sequence[str],
    pairs: Iterable[tuple[str, str]] = (),
    *,
    max_points: int = MAX_POINTS,
) -> Poset:
    """Build a poset from labels and generating pairs ``(lo, hi)`` meaning lo <= hi.

    The result carries the reflexive-transitive closure.  A relation whose
    closure is not antisymmetric raises :class:`CycleDetected` naming the cycle.
    """
    labels = tuple(str(x) for x in labels)
    if not labels:
        raise EmptyPoset("a poset needs at least one point")
    if len(set(labels)) != len(labels):
        raise ValidationError("point labels must be distinct")
    if len(labels) > max_points:
        raise PosetTooLarge(f"{len(labels)} points exceeds the configured cap of {max_points}")
    index = {lab: i for i, lab in enumerate(labels)}
    k = len(labels)
    edges: list[list[int]] = [[] for _ in range(k)]
    down = [1 << i for i in range(k)]
    for lo, hi in pairs:
        try:
            i, j = index[str(lo)], index[str(hi)]
        except KeyError as exc:
            raise ValidationError(f"relation references undeclared point {exc.args[0]!r}") from None
        down[j] |= 1 << i
        if i != j:
            edges[i].append(j)
    for m in range(k):
        bit = 1 << m
        for j in range(k):
            if down[j] & bit:
                down[j] |= down[m]
    for j in range(k):
        for i in iter_bits(down[j]):
            if i != j and down[i] >> j & 1:
                raise CycleDetected([labels[x] for x in _cycle_through(edges, i, j)])
    return Poset(labels, tuple(down))


def _cycle_through(edges, i, j):
    def path(src, dst):
        prev = {src: None}
        queue = deque([src])
        while queue:
            x = queue.popleft()
            if x == dst:
                break
            for y in edges[x]:
                if y not in prev:
                    prev[y] = x
                    queue.append(y)
        out, x = [], dst
        while x is not None:
            out.append(x)
            x = prev[x]
        return out[::-1]

    there = path(i, j)
    back = path(j, i)
    return there + back[1:]


def _same(a: Downset, b: Downset) -> Poset:
    a._check(b)
    return a.poset


def join(d: Downset, e: Downset) -> Downset:
    return Downset(_same(d, e), d.mask | e.mask)


def meet(d: Downset, e: Downset) -> Downset:
    return Downset(_same(d, e), d.mask & e.mask)


def leq(d: Downset, e: Downset) -> bool:
    _same(d, e)
    return d.mask & ~e.mask == 0


def join_all(items: Iterable[Downset], poset: Poset | None = None) -> Downset:
    """Join of a finite family; the empty join is 0 (needs ``poset``)."""
    items = list(items)
    if not items:
        if poset is None:
            raise ValidationError("join_all of an empty family needs the poset")
        return poset.zero
    return reduce(join, items)


def meet_all(items: Iterable[Downset], poset: Poset | None = None) -> Downset:
    """Meet of a finite family; the empty meet is 1 (needs ``poset``)."""
    items = list(items)
    if not items:
        if poset is None:
            raise ValidationError("meet_all of an empty family needs the poset")
        return poset.one
    return reduce(meet, items)


def join_irreducibles(P: Poset) -> list[Downset]:
    """Principal downsets, in point-index order."""
    return [Downset(P, d) for d in P.down]


@dataclass(frozen=True)
class ExplicitLattice:
    """A lattice given by its operation tables over element indices."""

    names: tuple[str, ...]
    join: tuple[tuple[int, ...], ...]
    meet: tuple[tuple[int, ...], ...]
    zero: int
    one: int

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(str(x) for x in self.names))
        object.__setattr__(self, "join", tuple(tuple(int(x) for x in row) for row in self.join))
        object.__setattr__(self, "meet", tuple(tuple(int(x) for x in row) for row in self.meet))

    def __len__(self):
        return len(self.names)

    def leq(self, x: int, y: int) -> bool:
        return self.join[x][y] == y

    def validate(self) -> None:
        """Check every lattice law; raise the most specific error found."""
        k = len(self.names)
        if k == 0:
            raise EmptyPoset("lattice has no elements")
        if len(set(self.names)) != k:
            raise ValidationError("element names must be distinct")
        J, M = self.join, self.meet
        for table, what in ((J, "join"), (M, "meet")):
            if len(table) != k or any(len(row) != k for row in table):
                raise NotALattice(f"{what} table must be {k}x{k}")
            if any(not 0 <= x < k for row in table for x in row):
                raise NotALattice(f"{what} table references an unknown element")
        if not (0 <= self.zero < k and 0 <= self.one < k):
            raise NotBounded("zero/one index out of range")
        rng = range(k)
        for x in rng:
            if J[x][x] != x or M[x][x] != x:
                raise NotALattice(f"idempotence fails at {self.names[x]}")
            for y in rng:
                if J[x][y] != J[y][x] or M[x][y] != M[y][x]:
                    raise NotALattice(f"commutativity fails at ({self.names[x]}, {self.names[y]})")
                if J[x][M[x][y]] != x or M[x][J[x][y]] != x:
                    raise NotALattice(f"absorption fails at ({self.names[x]}, {self.names[y]})")
        for x in rng:
            for y in rng:
                jxy, mxy = J[x][y], M[x][y]
                for z in rng:
                    if J[jxy][z] != J[x][J[y][z]] or M[mxy][z] != M[x][M[y][z]]:
                        raise NotALattice("associativity fails at ("
                                          f"{self.names[x]}, {self.names[y]}, {self.names[z]})")
        for x in rng:
            if J[self.zero][x] != x or M[self.one][x] != x:
                raise NotBounded(f"{self.names[self.zero]}/{self.names[self.one]} are not neutral")
        if self.zero == self.one:
            raise ZeroEqualsOne("the lattice has 0 = 1")
        for x in rng:
            for y in rng:
                for z in rng:
                    if M[x][J[y][z]] != J[M[x][y]][M[x][z]]:
                        raise NotDistributive(
                            f"{self.names[x]} meet ({self.names[y]} join {self.names[z]}) "
                            "differs from the join of the meets"
                        )


def from_explicit(L: ExplicitLattice, *, max_points: int = MAX_POINTS) -> tuple[Poset, dict[str, Downset]]:
    """Convert an explicit lattice to its dual poset of join-irreducibles.

    Returns the poset and a map from element name to downset; the map is a
    lattice isomorphism onto the downset lattice.
    """
    L.validate()
    k = len(L)
    below = [[y for y in range(k) if L.leq(y, x) and y != x] for x in range(k)]
    irreducibles = []
    for x in range(k):
        if x == L.zero:
            continue
        # x is join-irreducible iff it is not the join of its strict lower set
        acc = L.zero
        for y in below[x]:
            acc = L.join[acc][y]
        if acc != x:
            irreducibles.append(x)
    labels = [L.names[j] for j in irreducibles]
    pairs = [(L.names[a], L.names[b]) for a in irreducibles for b in irreducibles if a != b and L.leq(a, b)]
    P = poset_validate(labels, pairs, max_points=max_points)
    element_map = {}
    for x in range(k):
        mask = 0
        for i, j in enumerate(irreducibles):
            if L.leq(j, x):
                mask |= 1 << i
        element_map[L.names[x]] = Downset(P, mask)
    if len({d.mask for d in element_map.values()}) != k:
        # distributive lattices are determined by their irreducibles
        raise NotDistributive("element map is not injective")
    return P, element_map


def to_explicit(P: Poset) -> tuple[ExplicitLattice, list[Downset]]:
    """Tables of the downset lattice of ``P``; element i is ``elements[i]``."""
    masks = P.downset_masks()
    pos = {m: i for i, m in enumerate(masks)}
    names = ["{" + ",".join(P.mask_key(m)) + "}" for m in masks]
    J = [[pos[a | b] for b in masks] for a in masks]
    M = [[pos[a & b] for b in masks] for a in masks]
    L = ExplicitLattice(tuple(names), J, M, pos[0], pos[P.full_mask])
    return L, [Downset(P, m) for m in masks]
