"""Morphisms of finite distributive lattices and their cover dynamics.

A unital morphism ``D(P) -> D(Q)`` is stored dually as a monotone point map
``g: Q -> P`` acting by preimage, ``λ(D) = g⁻¹(D)``.  An automorphism is the
case ``P = Q`` with ``g`` an order automorphism; then ``λ(D)`` is the image of
``D`` under ``g⁻¹``.

Expansivity on a finite lattice is decided through wedge trajectories::

    A_N = ⋀_{|n|<=N} λⁿU      (two-sided)
    A_N = ⋀_{0<=n<=N} λⁿU     (forward)

Each trajectory is ≺-decreasing and, once two consecutive terms are
equivalent, constant up to equivalence from then on.  The stabilized limit
refines every cover iff it refines the join-irreducibles ``J(L)``, which in
turn refine every cover.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

from .covers import (
    Family,
    _make,
    as_family,
    components,
    finest_cover,
    order,
    refines,
    square,
    wedge,
    wedge_canonical,
)
from .errors import (
    MixedPosets,
    NegativeDepth,
    NotExpansivityCover,
    NotMonotone,
    NotOrderAutomorphism,
    NotPositiveExpansivityCover,
    NotPositivelyExpansive,
    NotStabilized,
    SquareNotExpansivityCover,
    ValidationError,
)
from .lattice import Downset, Poset

N_MAX = 64
TWO_SIDED = "two_sided"
FORWARD = "forward"


@dataclass(frozen=True, eq=False)
class UnitalMorphism:
    """Lattice morphism ``D(source) -> D(target)`` given by a monotone point map.

    ``point_map[q]`` is the source point assigned to target point ``q``.
    """

    source: Poset = field(repr=False)
    target: Poset = field(repr=False)
    point_map: tuple[int, ...]

    def __post_init__(self):
        g = tuple(int(x) for x in self.point_map)
        object.__setattr__(self, "point_map", g)
        if len(g) != len(self.target) or any(not 0 <= p < len(self.source) for p in g):
            raise ValidationError("point map must send every target point to a source point")
        T, S = self.target, self.source
        for q2 in range(len(T)):
            for q1 in range(len(T)):
                if T.point_leq(q1, q2) and not S.point_leq(g[q1], g[q2]):
                    raise NotMonotone(f"point map breaks {T.labels[q1]} <= {T.labels[q2]}")
        fibers = [0] * len(S)
        for q, p in enumerate(g):
            fibers[p] |= 1 << q
        object.__setattr__(self, "_fibers", tuple(fibers))
        object.__setattr__(self, "_cache", {})
        object.__setattr__(self, "_powers", {})
        object.__setattr__(self, "_trajectories", {})

    def __eq__(self, other):
        if not isinstance(other, UnitalMorphism):
            return NotImplemented
        return (
            self.point_map == other.point_map
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self):
        return hash((self.source, self.target, self.point_map))

    def __repr__(self):
        pairs = ", ".join(
            f"{self.target.labels[q]}->{self.source.labels[p]}" for q, p in enumerate(self.point_map)
        )
        return f"{type(self).__name__}({pairs})"

    def act(self, mask: int) -> int:
        cache = self._cache
        out = cache.get(mask)
        if out is None:
            out, m = 0, mask
            fibers = self._fibers
            while m:
                low = m & -m
                out |= fibers[low.bit_length() - 1]
                m ^= low
            cache[mask] = out
        return out

    def __call__(self, x):
        return apply(self, x)

    @property
    def is_endomorphism(self) -> bool:
        return self.source == self.target

    @property
    def is_isomorphism(self) -> bool:
        g = self.point_map
        if len(set(g)) != len(g) or len(self.source) != len(self.target):
            return False
        T, S = self.target, self.source
        n = len(T)
        return all(T.point_leq(a, b) == S.point_leq(g[a], g[b]) for a in range(n) for b in range(n))

    def compose(self, other: "UnitalMorphism") -> "UnitalMorphism":
        """``self ∘ other`` (apply ``other`` first)."""
        if other.target != self.source:
            raise MixedPosets("morphisms are not composable")
        g = tuple(other.point_map[p] for p in self.point_map)
        if isinstance(self, LatticeAutomorphism) and isinstance(other, LatticeAutomorphism):
            return LatticeAutomorphism(self.source, self.target, g)
        return UnitalMorphism(other.source, self.target, g)

    def inverse(self) -> "UnitalMorphism":
        cached = self._powers.get("inverse")
        if cached is not None:
            return cached
        if not self.is_isomorphism:
            raise NotOrderAutomorphism("morphism is not an isomorphism")
        inv = [0] * len(self.point_map)
        for q, p in enumerate(self.point_map):
            inv[p] = q
        cls = LatticeAutomorphism if isinstance(self, LatticeAutomorphism) else UnitalMorphism
        out = self._powers["inverse"] = cls(self.target, self.source, tuple(inv))
        return out

    def to_json(self) -> dict:
        return {"map": {self.target.labels[q]: self.source.labels[p] for q, p in enumerate(self.point_map)}}


class LatticeAutomorphism(UnitalMorphism):
    """Automorphism of ``D(P)``, dual to an order automorphism of ``P``."""

    def __post_init__(self):
        super().__post_init__()
        if self.source != self.target:
            raise NotOrderAutomorphism("an automorphism needs source == target")
        if not self.is_isomorphism:
            raise NotOrderAutomorphism("point map is not an order automorphism")

    @property
    def poset(self) -> Poset:
        return self.source

    @property
    def permutation(self) -> tuple[int, ...]:
        """Point permutation ``π`` with ``λ(D) = π(D)``."""
        return self.inverse().point_map

    def to_json(self) -> dict:
        P = self.poset
        return {"permutation": {P.labels[p]: P.labels[q] for p, q in enumerate(self.permutation)}}


Morphism = Union[UnitalMorphism, LatticeAutomorphism]


def identity(P: Poset) -> LatticeAutomorphism:
    return LatticeAutomorphism(P, P, tuple(range(len(P))))


def automorphism_from_permutation(P: Poset, mapping: Mapping | Sequence[int]) -> LatticeAutomorphism:
    """Automorphism sending each point ``p`` to ``mapping[p]`` (labels or indices)."""
    if isinstance(mapping, Mapping):
        pi = [None] * len(P)
        for a, b in mapping.items():
            pi[P.resolve(a)] = P.resolve(b)
        for i, x in enumerate(pi):
            if x is None:
                pi[i] = i
    else:
        pi = [int(x) for x in mapping]
    if sorted(pi) != list(range(len(P))):
        raise NotOrderAutomorphism("mapping is not a bijection of the points")
    inv = [0] * len(P)
    for p, q in enumerate(pi):
        inv[q] = p
    try:
        return LatticeAutomorphism(P, P, tuple(inv))
    except NotMonotone as exc:
        raise NotOrderAutomorphism(str(exc)) from None


def isomorphism_from_map(P: Poset, Q: Poset, mapping: Mapping | Sequence[int]) -> UnitalMorphism:
    """Lattice isomorphism ``D(P) -> D(Q)`` induced by a point bijection ``P -> Q``."""
    if isinstance(mapping, Mapping):
        psi = [Q.resolve(mapping[lab]) for lab in P.labels]
    else:
        psi = [int(x) for x in mapping]
    inv = [0] * len(Q)
    if sorted(psi) != list(range(len(Q))):
        raise NotOrderAutomorphism("mapping is not a bijection")
    for p, q in enumerate(psi):
        inv[q] = p
    try:
        phi = UnitalMorphism(P, Q, tuple(inv))
    except NotMonotone as exc:
        raise NotOrderAutomorphism(str(exc)) from None
    if not phi.is_isomorphism:
        raise NotOrderAutomorphism("mapping is not an order isomorphism")
    return phi


def morphism_from_map(source: Poset, target: Poset, mapping: Mapping) -> UnitalMorphism:
    """Preimage morphism ``D(source) -> D(target)`` of ``mapping: target -> source``."""
    g = [None] * len(target)
    for q, p in mapping.items():
        g[target.resolve(q)] = source.resolve(p)
    if any(x is None for x in g):
        raise ValidationError("map must assign every target point")
    return UnitalMorphism(source, target, tuple(g))


def power(lam: LatticeAutomorphism, m: int) -> LatticeAutomorphism:
    """``λᵐ``; ``m`` may be zero or negative."""
    out = lam._powers.get(m)
    if out is None:
        base = lam if m >= 0 else lam.inverse()
        g = list(range(len(lam.poset)))
        for _ in range(abs(m)):
            g = [base.point_map[p] for p in g]
        out = lam._powers[m] = LatticeAutomorphism(lam.poset, lam.poset, tuple(g))
    return out


def conjugate(lam: LatticeAutomorphism, phi: UnitalMorphism) -> LatticeAutomorphism:
    """``φ λ φ⁻¹`` for an isomorphism ``φ: D(P) -> D(Q)``."""
    if phi.source != lam.poset:
        raise MixedPosets("conjugating isomorphism must start at the automorphism's lattice")
    out = phi.compose(lam).compose(phi.inverse())
    return LatticeAutomorphism(out.source, out.target, out.point_map)


def apply(lam: UnitalMorphism, x):
    """Elementwise action on a downset or a family of downsets."""
    if isinstance(x, Downset):
        if x.poset != lam.source:
            raise MixedPosets("downset is not in the morphism's domain")
        return Downset(lam.target, lam.act(x.mask))
    fam = as_family(x, lam.source)
    if fam.poset != lam.source:
        raise MixedPosets("family is not in the morphism's domain")
    return _make(lam.target, {lam.act(m) for m in fam.masks})


def _require_endo(lam: UnitalMorphism, mode: str) -> None:
    if not lam.is_endomorphism:
        raise ValidationError("wedge trajectories need an endomorphism")
    if mode == TWO_SIDED and not isinstance(lam, LatticeAutomorphism):
        raise ValidationError("two-sided wedges need an automorphism")
    if mode not in (TWO_SIDED, FORWARD):
        raise ValidationError(f"unknown mode {mode!r}")


def _trajectory(lam: UnitalMorphism, U: Family, mode: str):
    """Yield canonical ``A_0, A_1, ...``."""
    A = U.canonical
    yield A
    fwd = U.canonical
    bwd = U.canonical
    inv = lam.inverse() if mode == TWO_SIDED else None
    while True:
        fwd = apply(lam, fwd).canonical
        A = wedge_canonical(A, fwd)
        if inv is not None:
            bwd = apply(inv, bwd).canonical
            A = wedge_canonical(A, bwd)
        yield A


class _Memo:
    """Distinct canonical ``A_0, A_1, ...`` of one trajectory, grown on demand.

    Once ``A_{s+1} = A_s`` every later term equals ``A_s``: the next term is
    ``λ⁻¹A ∧ λA`` two-sided and ``U ∧ λA`` forward, a function of the
    current one.  ``settled_at`` is that ``s``.
    """

    def __init__(self, lam, U, mode):
        self.gen = _trajectory(lam, U, mode)
        self.covers = [next(self.gen)]
        self.settled_at = None

    def extend(self, N: int) -> None:
        while self.settled_at is None and len(self.covers) <= N:
            A = next(self.gen)
            if A.masks == self.covers[-1].masks:
                self.settled_at = len(self.covers) - 1
                self.gen = None
            else:
                self.covers.append(A)

    def at(self, N: int) -> Family:
        self.extend(N)
        return self.covers[min(N, len(self.covers) - 1)]


def _memo(lam: UnitalMorphism, U: Family, mode: str) -> _Memo:
    key = (mode, U.canonical.masks)
    memo = lam._trajectories.get(key)
    if memo is None:
        memo = lam._trajectories[key] = _Memo(lam, U, mode)
    return memo


def iterated_wedge(lam: UnitalMorphism, u, N: int, mode: str = TWO_SIDED) -> Family:
    """Canonical ``⋀ λⁿU`` over ``|n| <= N`` (two-sided) or ``0 <= n <= N`` (forward)."""
    if N < 0:
        raise NegativeDepth(f"depth must be >= 0, got {N}")
    _require_endo(lam, mode)
    U = as_family(u, lam.source)
    return _memo(lam, U, mode).at(N)


def wedge_window(lam: LatticeAutomorphism, u, lo: int, hi: int) -> Family:
    """Raw ``⋀_{n=lo}^{hi} λⁿU`` for an arbitrary integer window."""
    U = as_family(u, lam.source)
    out = None
    for n in range(lo, hi + 1):
        term = apply(power(lam, n), U)
        out = term if out is None else wedge(out, term)
    return out


@dataclass(frozen=True)
class WedgeTrajectory:
    mode: str
    covers: tuple
    stabilized_at: int | None

    @property
    def limit(self) -> Family:
        if self.stabilized_at is None:
            raise NotStabilized("trajectory did not stabilize within its budget")
        return self.covers[self.stabilized_at]


def stabilize(lam: UnitalMorphism, u, mode: str = TWO_SIDED, N_max: int = N_MAX) -> WedgeTrajectory:
    """Iterate wedges until ``A_{N+1} ~ A_N`` or ``N_max`` steps have run."""
    if N_max < 1:
        raise ValidationError("N_max must be >= 1")
    _require_endo(lam, mode)
    U = as_family(u, lam.source)
    memo = _memo(lam, U, mode)
    memo.extend(N_max)
    s = memo.settled_at
    if s is not None and s + 1 <= N_max:
        return WedgeTrajectory(mode, tuple(memo.covers) + (memo.covers[-1],), s)
    return WedgeTrajectory(mode, tuple(memo.covers[: N_max + 1]), None)


def _limit(lam, U, mode, N_max) -> Family:
    traj = stabilize(lam, U, mode, N_max)
    if traj.stabilized_at is None:
        raise NotStabilized(f"no stabilization within N_max={N_max}")
    return traj.limit


def is_expansivity_cover(lam: LatticeAutomorphism, u, N_max: int = N_MAX) -> bool:
    U = as_family(u, lam.source)
    return refines(_limit(lam, U, TWO_SIDED, N_max), finest_cover(lam.source))


def is_positive_expansivity_cover(lam: UnitalMorphism, u, N_max: int = N_MAX) -> bool:
    U = as_family(u, lam.source)
    return refines(_limit(lam, U, FORWARD, N_max), finest_cover(lam.source))


def is_expansive(lam: LatticeAutomorphism, candidate=None, N_max: int = N_MAX):
    """Decide expansivity; returns ``(answer, witness cover or None)``.

    Testing ``J(L)`` alone suffices: if any cover U is an expansivity cover
    then so is every cover finer than U, and ``J(L)`` refines U.  A
    ``candidate`` cover may be supplied to test that cover instead.
    """
    U = finest_cover(lam.source) if candidate is None else as_family(candidate, lam.source)
    ok = is_expansivity_cover(lam, U, N_max)
    return ok, (U if ok else None)


def is_positively_expansive(lam: UnitalMorphism, candidate=None, N_max: int = N_MAX):
    U = finest_cover(lam.source) if candidate is None else as_family(candidate, lam.source)
    ok = is_positive_expansivity_cover(lam, U, N_max)
    return ok, (U if ok else None)


def first_refining_depth(lam, u, v, mode: str = TWO_SIDED, N_max: int = N_MAX) -> int | None:
    """Least N with ``A_N(U) ≺ V``, or None if none up to stabilization/N_max."""
    _require_endo(lam, mode)
    U = as_family(u, lam.source)
    V = as_family(v, lam.source)
    memo = _memo(lam, U, mode)
    for k in range(N_max + 1):
        memo.extend(k)
        if k >= len(memo.covers):
            return None
        if refines(memo.covers[k], V):
            return k
    return None


# --- Mañé ---------------------------------------------------------------------


def mane_witness(lam: LatticeAutomorphism, u, v, N_max: int = N_MAX) -> Family:
    """``W = ⋀_{|k|<=N} λᵏU`` for the least N with ``W ≺ V``."""
    U = as_family(u, lam.source)
    if not is_expansivity_cover(lam, U, N_max):
        raise NotExpansivityCover(f"{U!r} is not an expansivity cover")
    N = first_refining_depth(lam, U, v, TWO_SIDED, N_max)
    return iterated_wedge(lam, U, N, TWO_SIDED)


def mane_check(lam: LatticeAutomorphism, u, v, w, n: int) -> bool:
    """Evaluate ``λ⁻ⁿW ∧ (⋀_{|k|<=n} λᵏU) ∧ λⁿW ≺ ⋀_{|k|<=n} λᵏV`` literally."""
    if n < 0:
        raise NegativeDepth(f"n must be >= 0, got {n}")
    P = lam.source
    U, V, W = (as_family(x, P) for x in (u, v, w))
    for F in (U, V, W):
        if F.poset != P:
            raise MixedPosets("covers belong to different posets")
    # refinement only sees maximal members, so canonical wedges give the same answer
    lhs = wedge_canonical(wedge_canonical(apply(power(lam, -n), W), iterated_wedge(lam, U, n)), apply(power(lam, n), W))
    return refines(lhs, iterated_wedge(lam, V, n))


def mane_dimension_certificate(lam: LatticeAutomorphism, u, n: int, N_max: int = N_MAX) -> tuple[Family, int]:
    """Component cover ``Vₙᵂ`` and the order bound ``|W|²``.

    ``W`` comes from :func:`mane_witness` applied to the expansivity cover
    ``U²`` and target ``U``.  With ``Wₙ = λ⁻ⁿW ∧ λⁿW`` and
    ``Vₙ = Uₙ ∧ Wₙ`` the cover is the union over ``w ∈ Wₙ`` of the
    components of ``w ∧ Vₙ``.  It is a cover of order at most ``|W|²`` that
    refines ``Uₙ``.
    """
    if n < 0:
        raise NegativeDepth(f"n must be >= 0, got {n}")
    U = as_family(u, lam.source)
    U2 = square(U)
    if not is_expansivity_cover(lam, U2, N_max):
        raise SquareNotExpansivityCover("U² is not an expansivity cover")
    W = mane_witness(lam, U2, U, N_max)
    Wn = wedge(apply(power(lam, -n), W), apply(power(lam, n), W))
    Un = iterated_wedge(lam, U, n)
    Vn = wedge(Un, Wn)
    parts = set()
    for w in Wn.masks:
        parts |= components(Family(lam.source, {w & v for v in Vn.masks})).masks
    return _make(lam.source, parts), len(W) ** 2


# --- Utz ----------------------------------------------------------------------


def utz_generator(lam: LatticeAutomorphism, u, N_max: int = N_MAX) -> tuple[Family, int]:
    """``U₀ = ⋀_{n=0}^{N} λⁿU`` for the least N with ``U₀ ≺ λ⁻¹U``."""
    U = as_family(u, lam.source)
    if not is_positive_expansivity_cover(lam, U, N_max):
        raise NotPositiveExpansivityCover(f"{U!r} is not a positive expansivity cover")
    target = apply(lam.inverse(), U)
    N = first_refining_depth(lam, U, target, FORWARD, N_max)
    if N is None:
        raise NotStabilized("no depth refines λ⁻¹U")
    return iterated_wedge(lam, U, N, FORWARD), N


def iterate_until_refines(lam: LatticeAutomorphism, u0, v, n_max: int = N_MAX) -> int | None:
    """Least ``n <= n_max`` with ``λⁿU₀ ≺ V``."""
    F = as_family(u0, lam.source)
    for n in range(n_max + 1):
        if refines(F, v):
            return n
        F = apply(lam, F)
    return None


def utz_bound(lam: LatticeAutomorphism, N_max: int = N_MAX) -> int:
    """``|U₀|`` for the canonical positive expansivity witness."""
    ok, witness = is_positively_expansive(lam, N_max=N_max)
    if not ok:
        raise NotPositivelyExpansive("automorphism is not positively expansive")
    U0, _ = utz_generator(lam, witness, N_max)
    return len(U0)


# --- dimension ----------------------------------------------------------------

SEARCH_CAP = 4096


def dimension(P: Poset, search_cap: int = SEARCH_CAP) -> int:
    """Covering dimension of ``D(P)``.

    Because ``J(L)`` refines every cover, it is enough to minimise the order
    over covers ``V ≺ J(L)``.  In such a cover the member holding a maximal
    point ``p`` is a downset inside some ``↓q`` with ``q >= p``, hence equals
    ``↓p``.  Those principal downsets already cover, and adding members never
    lowers the order, so the minimum is the order of ``{↓p : p maximal}``.
    """
    P.downset_masks(cap=search_cap)
    tops = Family(P, frozenset(P.down[p] for p in P.maximal_points()))
    return order(tops) - 1
