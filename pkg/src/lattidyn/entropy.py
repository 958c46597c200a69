"""Entropy of covers and of lattice endomorphisms.

``h(U)`` is the log of the smallest subcover size of ``U``; the entropy of
``λ`` relative to ``U`` is the limit of ``h(⋀_{k<n} λᵏU) / n``.  Counts are
kept as exact integers and logs are taken only when reporting.  The count
sequence is submultiplicative, so every ``aₙ/n`` bounds the limit from above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .covers import as_family, minimal_subcover, wedge_canonical
from .dynamics import FORWARD, N_MAX, LatticeAutomorphism, UnitalMorphism, _require_endo, apply, is_expansive
from .errors import NotExpansive, ValidationError


def cover_entropy(u) -> tuple[int, float]:
    """``(count, log count)`` for the minimum subcover of ``u``."""
    _, count = minimal_subcover(as_family(u))
    return count, math.log(count)


@dataclass(frozen=True)
class EntropySequence:
    """Exact counts ``m_n`` for ``n = 1..len(counts)`` and derived estimates."""

    counts: tuple[int, ...]
    tol: float = 1e-9

    @property
    def values(self) -> list[float]:
        return [math.log(m) for m in self.counts]

    @property
    def estimates(self) -> list[float]:
        return [math.log(m) / n for n, m in enumerate(self.counts, start=1)]

    @property
    def best_upper_bound(self) -> float:
        return min(self.estimates)

    @property
    def converged(self) -> bool:
        """Last two estimates agree, or the last three counts grow geometrically."""
        if self.exact is not None:
            return True
        est = self.estimates
        return len(est) >= 2 and abs(est[-1] - est[-2]) < self.tol

    @property
    def ratio(self) -> Fraction | None:
        """``r`` when the last three counts satisfy ``m_{n+1} = r m_n``."""
        c = self.counts
        if len(c) < 3:
            return None
        r1 = Fraction(c[-1], c[-2])
        r2 = Fraction(c[-2], c[-3])
        return r1 if r1 == r2 else None

    @property
    def exact(self) -> float | None:
        """``log r`` when the counts end in an exact geometric run ``c rⁿ``."""
        r = self.ratio
        return None if r is None else math.log(r)

    def is_subadditive(self) -> bool:
        c = self.counts
        n = len(c)
        return all(c[i + j + 1] <= c[i] * c[j] for i in range(n) for j in range(n - i - 1))

    def to_json(self) -> dict:
        return {
            "counts": list(self.counts),
            "estimates": self.estimates,
            "upper_bound": self.best_upper_bound,
            "converged": self.converged,
        }


def relative_entropy(lam: UnitalMorphism, u, n_max: int = N_MAX, tol: float = 1e-9) -> EntropySequence:
    """Counts of ``⋀_{k=0}^{n-1} λᵏU`` for ``n = 1..n_max``."""
    if n_max < 1:
        raise ValidationError("n_max must be >= 1")
    _require_endo(lam, FORWARD)
    U = as_family(u, lam.source)
    counts = []
    A = U.canonical
    shifted = U.canonical
    for n in range(1, n_max + 1):
        if n > 1:
            shifted = apply(lam, shifted).canonical
            A = wedge_canonical(A, shifted)
        counts.append(minimal_subcover(A)[1])
    return EntropySequence(tuple(counts), tol)


def expansive_entropy(lam: LatticeAutomorphism, n_max: int = N_MAX) -> tuple[float, EntropySequence]:
    """``h(λ)`` as the entropy relative to the expansivity witness.

    The value is the exact geometric rate when the counts settle into one,
    otherwise the best Fekete upper bound.
    """
    ok, witness = is_expansive(lam)
    if not ok:
        raise NotExpansive("automorphism is not expansive")
    seq = relative_entropy(lam, witness, n_max)
    value = seq.exact if seq.exact is not None else seq.best_upper_bound
    return value, seq


def entropy_lower_bound(lam: UnitalMorphism, covers, n_max: int = N_MAX) -> dict:
    """Largest relative entropy over user-supplied covers.

    This is only a lower bound for ``h(λ)``, the supremum over all covers,
    and each per-cover figure is itself the best computed upper estimate.
    """
    results = []
    for c in covers:
        seq = relative_entropy(lam, c, n_max)
        results.append(seq.exact if seq.exact is not None else seq.best_upper_bound)
    return {
        "lower_bound": max(results) if results else 0.0,
        "per_cover": results,
        "note": "maximum over the supplied covers only; h(λ) may be larger",
    }
