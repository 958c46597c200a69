"""Non-Hausdorff shifts over a lower complete symbol poset.

The phase space ``S^Z`` is never built.  A cylinder ``C(w)`` over a window of
coordinates is the set of sequences lying pointwise below the word ``w``
there; since every finite word appears as a block of some sequence,
inclusion of cylinders and coverage of ``S^Z`` reduce to statements about
finite words.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Sequence

from .covers import maximal_masks, min_set_cover
from .errors import BudgetExceeded, LengthMismatch, NotLowerComplete, ValidationError, WindowNotSymmetric
from .lattice import Poset, iter_bits, poset_validate

Word = tuple  # tuple of symbol labels
WORD_BUDGET = 4096
EXHAUSTIVE_LIMIT = 12


@dataclass(frozen=True, eq=False)
class SymbolPoset:
    """Finite symbol set with a lower complete partial order.

    The adjoined bottom ``0`` is implicit: it is the empty lower bound.
    """

    order: Poset

    def __eq__(self, other):
        return isinstance(other, SymbolPoset) and self.order == other.order

    def __hash__(self):
        return hash(self.order)

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.order.labels

    def __len__(self):
        return len(self.order)

    def leq(self, a: str, b: str) -> bool:
        P = self.order
        return P.point_leq(P.index[a], P.index[b])

    def glb(self, symbols: Iterable[str]) -> str | None:
        """Greatest lower bound, or None when the set has no lower bound in S."""
        P = self.order
        symbols = list(symbols)
        lb = P.full_mask
        for s in symbols:
            lb &= P.down[P.resolve(s)]
        if not lb:
            return None
        for g in iter_bits(lb):
            if P.down[g] == lb:
                return P.labels[g]
        raise NotLowerComplete(symbols, [P.labels[i] for i in _maximal_in(P, lb)])

    @cached_property
    def tops(self) -> frozenset[str]:
        """Symbols above every symbol (at most one exists)."""
        P = self.order
        return frozenset(P.labels[i] for i in range(len(P)) if P.down[i] == P.full_mask)

    def to_json(self) -> dict:
        P = self.order
        rel = [[P.labels[i], P.labels[j]] for j in range(len(P)) for i in iter_bits(P.down[j]) if i != j]
        return {"symbols": list(P.labels), "leq": rel}


def _maximal_in(P: Poset, mask: int) -> list[int]:
    return [i for i in iter_bits(mask) if P.up[i] & mask == 1 << i]


def symbol_poset_validate(symbols: Sequence[str], pairs: Iterable[tuple[str, str]] = ()) -> SymbolPoset:
    """Validate a symbol order; raises :class:`NotLowerComplete` with a witness.

    Up to twelve symbols every nonempty subset is checked.  Beyond that only
    pairs are checked, which suffices: the lower bounds of a set are the
    lower bounds of the glb of any two members together with the rest.
    """
    P = poset_validate(symbols, pairs)
    k = len(P)
    sizes = range(1, k + 1) if k <= EXHAUSTIVE_LIMIT else (2,)
    for r in sizes:
        for sub in combinations(range(k), r):
            lb = P.full_mask
            for s in sub:
                lb &= P.down[s]
            if lb and not any(P.down[g] == lb for g in iter_bits(lb)):
                raise NotLowerComplete(
                    [P.labels[s] for s in sub], [P.labels[i] for i in _maximal_in(P, lb)]
                )
    return SymbolPoset(P)


def maximal_symbols(S: SymbolPoset) -> frozenset[str]:
    P = S.order
    return frozenset(P.labels[i] for i in P.maximal_points())


def _check_lengths(x: Sequence, w: Sequence) -> None:
    if len(x) != len(w):
        raise LengthMismatch(f"words of lengths {len(x)} and {len(w)}")


def word_leq(S: SymbolPoset, x: Sequence[str], w: Sequence[str]) -> bool:
    """Pointwise order, i.e. ``C(x) ⊆ C(w)`` on a common window."""
    _check_lengths(x, w)
    return all(S.leq(a, b) for a, b in zip(x, w))


def word_glb(S: SymbolPoset, x: Sequence[str], w: Sequence[str]) -> Word | None:
    """Pointwise glb; None when some coordinate has no common lower bound."""
    _check_lengths(x, w)
    out = []
    for a, b in zip(x, w):
        g = S.glb((a, b))
        if g is None:
            return None
        out.append(g)
    return tuple(out)


@dataclass(frozen=True)
class CylinderCover:
    """Cylinders ``C(w)`` for words indexed by coordinates ``offset .. offset+n-1``."""

    symbols: SymbolPoset = field(repr=False)
    words: frozenset
    offset: int = 0

    def __post_init__(self):
        words = frozenset(tuple(str(a) for a in w) for w in self.words)
        object.__setattr__(self, "words", words)
        lengths = {len(w) for w in words}
        if len(lengths) > 1:
            raise LengthMismatch("all words of a cylinder family share one window")
        if lengths == {0}:
            raise ValidationError("words must have length >= 1")
        alphabet = set(self.symbols.symbols)
        for w in words:
            if not set(w) <= alphabet:
                raise ValidationError(f"word {w} uses unknown symbols")

    @property
    def length(self) -> int:
        return len(next(iter(self.words))) if self.words else 0

    @property
    def window(self) -> tuple[int, int]:
        return self.offset, self.offset + self.length - 1

    @property
    def is_cover(self) -> bool:
        return word_subcover_covers(self.symbols, self.length, self.words)

    def to_json(self) -> dict:
        return {"offset": self.offset, "words": [list(w) for w in sorted(self.words)]}


def all_words(S: SymbolPoset, n: int) -> list[Word]:
    return list(product(S.symbols, repeat=n))


def n_cylinder_cover(S: SymbolPoset, n: int, offset: int = 0) -> CylinderCover:
    """All ``|S|ⁿ`` cylinders of length ``n``; for ``n = 1`` the 0-cylinders."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    return CylinderCover(S, frozenset(all_words(S, n)), offset)


def word_subcover_covers(S: SymbolPoset, n: int, T: Iterable[Sequence[str]]) -> bool:
    """Whether the cylinders of ``T`` cover the shift space."""
    T = [tuple(w) for w in T]
    for w in T:
        if len(w) != n:
            raise LengthMismatch(f"word {w} does not have length {n}")
    return all(any(word_leq(S, x, w) for w in T) for x in product(S.symbols, repeat=n))


def _word_masks(S: SymbolPoset, n: int) -> list[int]:
    """``masks[i]`` = bitset of words below word i, words in product order."""
    P = S.order
    s = len(P)
    masks = [P.down[a] for a in range(s)]
    for _ in range(n - 1):
        nxt = []
        for m in masks:
            spread = 0
            for i in iter_bits(m):
                spread |= 1 << (i * s)
            for a in range(s):
                acc = 0
                for b in iter_bits(P.down[a]):
                    acc |= spread << b
                nxt.append(acc)
        masks = nxt
    return masks


def minimal_word_subcover(S: SymbolPoset, n: int, budget: int = WORD_BUDGET) -> tuple[frozenset, int]:
    """Exact minimum subcover of the ``n``-cylinder cover and its size."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    size = len(S) ** n
    if size > budget:
        raise BudgetExceeded(f"|S|^n = {size} words exceeds the budget of {budget}")
    words = all_words(S, n)
    masks = _word_masks(S, n)
    keep = set(maximal_masks(masks))
    cands = sorted((w for w, m in zip(words, masks) if m in keep))
    pos = {w: i for i, w in enumerate(words)}
    picks = min_set_cover((1 << size) - 1, [masks[pos[w]] for w in cands])
    return frozenset(cands[i] for i in picks), len(picks)


def shift_entropy(S: SymbolPoset, n_check: int = 4, budget: int = WORD_BUDGET) -> tuple[float, dict]:
    """``log |S₊|`` together with exact counts for ``n = 1..n_check``."""
    tops = maximal_symbols(S)
    value = math.log(len(tops))
    counts, witnesses = [], []
    for n in range(1, n_check + 1):
        witness, count = minimal_word_subcover(S, n, budget)
        counts.append(count)
        witnesses.append(sorted(witness))
    expected = [len(tops) ** n for n in range(1, n_check + 1)]
    report = {
        "entropy": value,
        "maximal_symbols": sorted(tops),
        "counts": counts,
        "expected": expected,
        "verified": counts == expected,
        "estimates": [math.log(c) / n for n, c in enumerate(counts, start=1)],
        "witness": [list(w) for w in witnesses[-1]] if witnesses else [],
    }
    return value, report


def cylinder_contained(S: SymbolPoset, a: Sequence[str], a_off: int, b: Sequence[str], b_off: int) -> bool:
    """``C(a) ⊆ C(b)`` for words on windows starting at ``a_off`` and ``b_off``.

    On coordinates constrained by ``b`` but not by ``a`` every symbol can
    occur, so ``b`` must hold a greatest symbol there.
    """
    tops = S.tops
    for k, sym in enumerate(b, start=b_off):
        i = k - a_off
        if 0 <= i < len(a):
            if not S.leq(a[i], sym):
                return False
        elif sym not in tops:
            return False
    return True


def cylinder_refines(A: CylinderCover, B: CylinderCover) -> bool:
    S = A.symbols
    return all(
        any(cylinder_contained(S, a, A.offset, b, B.offset) for b in B.words) for a in A.words
    )


def shift_expansivity_check(
    S: SymbolPoset, V: CylinderCover, N_max: int = 64, budget: int = WORD_BUDGET
) -> int | None:
    """Least ``N <= N_max`` with ``⋀_{|n|<=N} σⁿU ≺ V`` for the 0-cylinders ``U``.

    The wedge is the family of all cylinders on ``[-N, N]``.  ``V`` must live
    on a symmetric window ``[-m, m]``.  Past ``N = m`` the answer no longer
    changes (the extra coordinates are unconstrained by ``V``), so the search
    stops there.  Only cylinder targets are supported.
    """
    lo, hi = V.window
    if lo != -hi:
        raise WindowNotSymmetric(f"window [{lo}, {hi}] is not symmetric about 0")
    m = hi
    for N in range(0, min(m, N_max) + 1):
        if len(S) ** (2 * N + 1) > budget:
            raise BudgetExceeded(f"window [-{N}, {N}] needs more than {budget} words")
        if cylinder_refines(n_cylinder_cover(S, 2 * N + 1, -N), V):
            return N
    return None
