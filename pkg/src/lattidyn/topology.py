"""Finite topological spaces and the open-set lattice functor.

A continuous ``f: X -> Y`` induces the unital morphism ``λ_f V = f⁻¹V`` from
the opens of ``Y`` to the opens of ``X``; homeomorphisms induce lattice
automorphisms.  Open-set lattices go through
:func:`~lattidyn.lattice.from_explicit`, so every space lands on the dual
poset of its join-irreducible opens.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping

from .covers import proper_maximal_elements
from .dynamics import LatticeAutomorphism, UnitalMorphism
from .errors import NotATopology, NotContinuous, NotHomeomorphism, ValidationError, ZeroEqualsOne
from .lattice import Downset, ExplicitLattice, Poset, from_explicit, iter_bits


def _name(u: frozenset) -> str:
    return "{" + ",".join(sorted(u)) + "}"


@dataclass(frozen=True, eq=False)
class FiniteSpace:
    points: tuple[str, ...]
    opens: frozenset

    def __eq__(self, other):
        if not isinstance(other, FiniteSpace):
            return NotImplemented
        return set(self.points) == set(other.points) and self.opens == other.opens

    def __hash__(self):
        return hash((frozenset(self.points), self.opens))

    @property
    def whole(self) -> frozenset:
        return frozenset(self.points)

    def sorted_opens(self) -> list[frozenset]:
        return sorted(self.opens, key=lambda u: (len(u), sorted(u)))

    def _separated(self, x: str, y: str) -> bool:
        return any(x in u and y not in u for u in self.opens)

    @cached_property
    def is_t0(self) -> bool:
        return all(self._separated(x, y) or self._separated(y, x) for x, y in combinations(self.points, 2))

    @cached_property
    def is_t1(self) -> bool:
        return all(self._separated(x, y) and self._separated(y, x) for x, y in combinations(self.points, 2))

    @cached_property
    def _lattice(self) -> tuple[Poset, dict]:
        opens = self.sorted_opens()
        if len(opens) < 2:
            raise ZeroEqualsOne("a space with a single open set has 0 = 1")
        if not self.is_t0:
            warnings.warn(
                "space is not T0: topologically indistinguishable points collapse in the open lattice",
                stacklevel=3,
            )
        pos = {u: i for i, u in enumerate(opens)}
        L = ExplicitLattice(
            tuple(_name(u) for u in opens),
            tuple(tuple(pos[a | b] for b in opens) for a in opens),
            tuple(tuple(pos[a & b] for b in opens) for a in opens),
            pos[frozenset()],
            pos[self.whole],
        )
        P, by_name = from_explicit(L)
        return P, {u: by_name[_name(u)] for u in opens}

    def to_json(self) -> dict:
        return {"points": list(self.points), "opens": [sorted(u) for u in self.sorted_opens()]}


def space_validate(points: Iterable[str], opens: Iterable[Iterable[str]]) -> FiniteSpace:
    """Check the topology axioms; a failure names the offending pair of opens."""
    points = tuple(str(p) for p in points)
    if len(set(points)) != len(points):
        raise ValidationError("point labels must be distinct")
    universe = frozenset(points)
    fam = set()
    for u in opens:
        u = frozenset(str(p) for p in u)
        if not u <= universe:
            raise ValidationError(f"open set {sorted(u)} references undeclared points {sorted(u - universe)}")
        fam.add(u)
    if frozenset() not in fam:
        raise NotATopology("the empty set is not open")
    if universe not in fam:
        raise NotATopology("the whole space is not open")
    ordered = sorted(fam, key=lambda u: (len(u), sorted(u)))
    for a, b in combinations(ordered, 2):
        if a | b not in fam:
            raise NotATopology(f"union of {sorted(a)} and {sorted(b)} is not open")
        if a & b not in fam:
            raise NotATopology(f"intersection of {sorted(a)} and {sorted(b)} is not open")
    return FiniteSpace(points, frozenset(fam))


def open_lattice(X: FiniteSpace) -> tuple[Poset, dict[frozenset, Downset]]:
    """Dual poset of ``(opens, ⊆)`` and the map sending each open to its downset."""
    P, emap = X._lattice
    return P, dict(emap)


@dataclass(frozen=True)
class ContinuousMap:
    source: FiniteSpace = field(repr=False)
    target: FiniteSpace = field(repr=False)
    mapping: tuple  # sorted (point, image) pairs

    @property
    def table(self) -> dict[str, str]:
        return dict(self.mapping)

    def preimage(self, v: frozenset) -> frozenset:
        return frozenset(x for x, y in self.mapping if y in v)

    def __call__(self, x: str) -> str:
        return self.table[x]


def continuous_map(X: FiniteSpace, Y: FiniteSpace, mapping: Mapping[str, str]) -> ContinuousMap:
    table = {str(k): str(v) for k, v in mapping.items()}
    if set(table) != set(X.points):
        raise ValidationError("map must be defined on exactly the source points")
    if not set(table.values()) <= set(Y.points):
        raise ValidationError("map sends points outside the target space")
    f = ContinuousMap(X, Y, tuple(sorted(table.items())))
    for v in Y.sorted_opens():
        if f.preimage(v) not in X.opens:
            raise NotContinuous(f"preimage of open {sorted(v)} is not open")
    return f


def compose_maps(g: ContinuousMap, f: ContinuousMap) -> ContinuousMap:
    """``g ∘ f`` (apply ``f`` first)."""
    if f.target != g.source:
        raise ValidationError("maps are not composable")
    gt = g.table
    return ContinuousMap(f.source, g.target, tuple((x, gt[y]) for x, y in f.mapping))


def identity_map(X: FiniteSpace) -> ContinuousMap:
    return ContinuousMap(X, X, tuple(sorted((p, p) for p in X.points)))


def induced_morphism(f: ContinuousMap) -> UnitalMorphism:
    """``λ_f: L_Y -> L_X``, ``V ↦ f⁻¹V``, as a preimage morphism of dual posets."""
    X, Y = f.source, f.target
    PX, ex = open_lattice(X)
    PY, ey = open_lattice(Y)
    for v in Y.opens:
        if f.preimage(v) not in X.opens:
            raise NotContinuous(f"preimage of open {sorted(v)} is not open")
    by_mask_x = {d.mask: u for u, d in ex.items()}
    g = []
    for j in range(len(PX)):
        J = by_mask_x[PX.down[j]]
        # least open of Y whose preimage contains J; it is join-irreducible
        least = Y.whole
        for v in Y.opens:
            if J <= f.preimage(v):
                least &= v
        mask = ey[least].mask
        point = [y for y in iter_bits(mask) if PY.down[y] == mask]
        if not point:
            raise ValidationError("preimage map does not preserve joins")
        g.append(point[0])
    return UnitalMorphism(PY, PX, tuple(g))


def induced_automorphism(f: ContinuousMap) -> LatticeAutomorphism:
    """Automorphism ``V ↦ f⁻¹V`` of ``L_X`` for a homeomorphism ``f: X -> X``."""
    X = f.source
    if f.target != X:
        raise NotHomeomorphism("a self-homeomorphism needs source == target")
    if sorted(f.table.values()) != sorted(X.points):
        raise NotHomeomorphism("map is not a bijection")
    image = {u: frozenset(f(x) for x in u) for u in X.opens}
    for u, im in image.items():
        if im not in X.opens:
            raise NotHomeomorphism(f"image of open {sorted(u)} is not open")
    lam = induced_morphism(f)
    return LatticeAutomorphism(lam.source, lam.target, lam.point_map)


def proper_maximal_opens(X: FiniteSpace) -> list[frozenset]:
    P, emap = open_lattice(X)
    back = {d.mask: u for u, d in emap.items()}
    return sorted((back[d.mask] for d in proper_maximal_elements(P)), key=sorted)
