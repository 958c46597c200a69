import math
import random

import pytest

import oracles
from conftest import family_sets
from lattidyn.covers import Family, finest_cover, wedge
from lattidyn.dynamics import FORWARD, apply, automorphism_from_permutation, identity, iterated_wedge, morphism_from_map
from lattidyn.enumeration import automorphisms, random_cover, random_poset, small_posets
from lattidyn.entropy import (
    EntropySequence,
    cover_entropy,
    entropy_lower_bound,
    expansive_entropy,
    relative_entropy,
)
from lattidyn.errors import ValidationError
from lattidyn.lattice import poset_validate


def fam(P, *groups):
    return Family.of([P.downset(g) for g in groups], P)


class TestCoverEntropy:
    def test_top(self, vposet):
        assert cover_entropy([vposet.one]) == (1, 0.0)

    def test_discrete(self):
        for k in (1, 2, 3, 5):
            P = poset_validate("abcde"[:k])
            count, value = cover_entropy(finest_cover(P))
            assert count == k
            assert value == pytest.approx(math.log(k), abs=1e-12)

    def test_vposet(self, vposet):
        assert cover_entropy(fam(vposet, "ac", "bc", "c"))[0] == 2

    def test_zero_iff_top_member(self):
        rng = random.Random(2)
        for _ in range(100):
            P = random_poset(rng, rng.randint(1, 5))
            U = random_cover(rng, P)
            assert (cover_entropy(U)[1] == 0) == (P.full_mask in U.masks)


class TestSequence:
    def test_estimates_and_bound(self):
        seq = EntropySequence((2, 4, 8))
        assert seq.estimates == pytest.approx([math.log(2)] * 3)
        assert seq.best_upper_bound == pytest.approx(math.log(2))
        assert seq.exact == pytest.approx(math.log(2))
        assert seq.converged and seq.is_subadditive()

    def test_not_subadditive(self):
        assert not EntropySequence((2, 5)).is_subadditive()

    def test_short_sequences_have_no_rate(self):
        assert EntropySequence((3, 3)).exact is None

    def test_json_shape(self):
        assert set(EntropySequence((1, 1, 1)).to_json()) == {"counts", "estimates", "upper_bound", "converged"}


class TestRelative:
    def test_identity_counts_constant(self, vposet):
        U = fam(vposet, "ac", "bc", "c")
        seq = relative_entropy(identity(vposet), U, 6)
        assert seq.counts == (2,) * 6
        assert seq.exact == 0.0

    def test_swap_on_antichain(self, antichain):
        lam = automorphism_from_permutation(antichain, {"a": "b", "b": "a"})
        seq = relative_entropy(lam, finest_cover(antichain), 5)
        assert seq.counts == (2,) * 5
        assert seq.estimates == pytest.approx([math.log(2) / n for n in range(1, 6)])

    def test_counts_match_direct_wedges(self):
        rng = random.Random(19)
        for _ in range(40):
            P = random_poset(rng, rng.randint(1, 5), density=0.2)
            lam = rng.choice(automorphisms(P))
            U = random_cover(rng, P)
            seq = relative_entropy(lam, U, 4)
            for n, count in enumerate(seq.counts, start=1):
                A = iterated_wedge(lam, U, n - 1, FORWARD)
                assert count == oracles.min_subcover(family_sets(A), frozenset(P.labels))

    def test_rejects_bad_depth(self, vposet):
        with pytest.raises(ValidationError):
            relative_entropy(identity(vposet), finest_cover(vposet), 0)

    def test_morphism(self, chain):
        const = morphism_from_map(chain, chain, {"c": "c", "a": "c"})
        seq = relative_entropy(const, finest_cover(chain), 4)
        assert seq.counts == (1, 1, 1, 1)

    def test_subadditive_everywhere(self):
        rng = random.Random(29)
        for _ in range(100):
            P = random_poset(rng, rng.randint(1, 5), density=0.2)
            lam = rng.choice(automorphisms(P))
            assert relative_entropy(lam, random_cover(rng, P), 6).is_subadditive()


class TestExpansiveEntropy:
    def test_finite_systems_have_zero_entropy(self):
        for P in small_posets(4):
            for lam in automorphisms(P):
                value, seq = expansive_entropy(lam, 8)
                assert value == 0.0
                assert seq.counts[-1] == seq.counts[-2] == seq.counts[-3]

    def test_witness_dominates_other_covers(self):
        rng = random.Random(43)
        for P in small_posets(3):
            for lam in automorphisms(P):
                h, _ = expansive_entropy(lam, 6)
                for _ in range(4):
                    seq = relative_entropy(lam, random_cover(rng, P), 6)
                    assert seq.exact is not None and seq.exact <= h

    def test_lower_bound_report(self, vposet):
        lam = identity(vposet)
        report = entropy_lower_bound(lam, [finest_cover(vposet), [vposet.one]], 4)
        assert report["lower_bound"] == 0.0 and len(report["per_cover"]) == 2

    def test_wedge_with_image(self):
        # counts depend only on the forward wedge
        P = poset_validate("abc")
        lam = automorphism_from_permutation(P, [1, 2, 0])
        U = fam(P, "ab", "c")
        m2 = relative_entropy(lam, U, 2).counts[1]
        assert m2 == oracles.min_subcover(family_sets(wedge(U, apply(lam, U))), frozenset("abc"))
