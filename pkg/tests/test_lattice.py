import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import label_set, lattice_sets, relation
from lattidyn.enumeration import random_poset, small_posets
from lattidyn.errors import (
    CycleDetected,
    EmptyPoset,
    MixedPosets,
    NotADownset,
    NotBounded,
    NotDistributive,
    PosetTooLarge,
    SearchCapExceeded,
    ValidationError,
    ZeroEqualsOne,
)
from lattidyn.lattice import (
    Downset,
    ExplicitLattice,
    from_explicit,
    join,
    join_all,
    join_irreducibles,
    leq,
    meet,
    meet_all,
    poset_validate,
    to_explicit,
)

pair_lists = st.lists(
    st.tuples(st.sampled_from("abcde"), st.sampled_from("abcde")), max_size=8
)


class TestPosetValidate:
    def test_single_point(self, point):
        assert point.labels == ("a",)
        assert point.leq.tolist() == [[True]]

    def test_vposet_closure(self, vposet):
        assert relation(vposet) == oracles.closure("abc", [("c", "a"), ("c", "b")])
        assert vposet.maximal_points() == [0, 1]
        assert vposet.minimal_points() == [2]

    def test_two_cycle(self):
        with pytest.raises(CycleDetected) as exc:
            poset_validate("ab", [("a", "b"), ("b", "a")])
        assert exc.value.cycle[0] == exc.value.cycle[-1]
        assert set(exc.value.cycle) == {"a", "b"}
        assert exc.value.to_json()["error"] == "cycle_detected"

    def test_longer_cycle_is_reported_along_edges(self):
        pairs = [("a", "b"), ("b", "c"), ("c", "d"), ("d", "b")]
        with pytest.raises(CycleDetected) as exc:
            poset_validate("abcd", pairs)
        cyc = exc.value.cycle
        assert cyc[0] == cyc[-1]
        for lo, hi in zip(cyc, cyc[1:]):
            assert (lo, hi) in pairs

    def test_empty(self):
        with pytest.raises(EmptyPoset):
            poset_validate([])

    def test_unknown_label(self):
        with pytest.raises(ValidationError):
            poset_validate("ab", [("a", "z")])

    def test_duplicate_labels(self):
        with pytest.raises(ValidationError):
            poset_validate(["a", "a"])

    def test_size_cap(self):
        with pytest.raises(PosetTooLarge):
            poset_validate([f"p{i}" for i in range(65)])
        with pytest.raises(PosetTooLarge):
            poset_validate("abc", max_points=2)

    def test_leq_matrix_is_read_only(self, vposet):
        with pytest.raises(ValueError):
            vposet.leq[0, 0] = False

    @given(pair_lists)
    @settings(max_examples=200, deadline=None)
    def test_closure_matches_oracle(self, pairs):
        if oracles.has_cycle("abcde", pairs):
            with pytest.raises(CycleDetected):
                poset_validate("abcde", pairs)
            return
        P = poset_validate("abcde", pairs)
        assert relation(P) == oracles.closure("abcde", pairs)
        M = P.leq
        assert np.all(np.diag(M))
        assert not np.any(M & M.T & ~np.eye(5, dtype=bool))
        assert np.array_equal((M.astype(int) @ M.astype(int)) > 0, M)


class TestDownsets:
    def test_enumeration_matches_oracle(self):
        for P in small_posets(4):
            assert sorted(map(sorted, lattice_sets(P))) == sorted(
                map(sorted, oracles.downsets(P.labels, relation(P)))
            )

    def test_not_a_downset(self, vposet):
        with pytest.raises(NotADownset):
            vposet.downset(["a"])

    def test_closure_helper(self, vposet):
        assert vposet.element(vposet.downset_closure(1)).labels() == ("a", "c")

    def test_search_cap(self):
        P = poset_validate("abcdefgh")
        with pytest.raises(SearchCapExceeded):
            P.downset_masks(cap=100)
        assert len(P.downset_masks(cap=256)) == 256

    def test_repr_and_json(self, vposet):
        d = vposet.principal("a")
        assert repr(d) == "{a,c}"
        assert d.to_json() == ["a", "c"]


class TestOperations:
    def test_antichain_join_meet(self, antichain):
        a, b = antichain.principal("a"), antichain.principal("b")
        assert join(a, b).labels() == ("a", "b")
        assert meet(a, antichain.one).labels() == ("a",)

    def test_vposet_meet(self, vposet):
        assert meet(vposet.principal("a"), vposet.principal("b")).labels() == ("c",)

    def test_leq(self, vposet):
        c, a = vposet.principal("c"), vposet.principal("a")
        assert leq(c, a) and not leq(a, c)
        assert c < a and a >= c

    def test_empty_folds(self, vposet):
        assert join_all([], vposet).is_zero
        assert meet_all([], vposet).is_one

    def test_join_all_principals(self, vposet):
        assert join_all([vposet.principal("a"), vposet.principal("b")]).is_one

    def test_mixed_posets(self, vposet, antichain):
        with pytest.raises(MixedPosets):
            join(vposet.principal("a"), antichain.principal("a"))
        with pytest.raises(MixedPosets):
            meet_all([vposet.principal("a"), antichain.principal("a")])

    def test_equal_posets_mix_freely(self):
        P = poset_validate("ab")
        Q = poset_validate("ab")
        assert join(P.principal("a"), Q.principal("b")).is_one

    def test_join_irreducibles(self, point, antichain, vposet):
        assert [label_set(d) for d in join_irreducibles(point)] == [{"a"}]
        assert [label_set(d) for d in join_irreducibles(antichain)] == [{"a"}, {"b"}]
        assert [set(d.labels()) for d in join_irreducibles(vposet)] == [{"a", "c"}, {"b", "c"}, {"c"}]


def _laws_hold(P, D, E, F):
    assert D | E == E | D and D & E == E & D
    assert (D | E) | F == D | (E | F) and (D & E) & F == D & (E & F)
    assert D | (D & E) == D and D & (D | E) == D
    assert D & (E | F) == (D & E) | (D & F)
    assert D | (E & F) == (D | E) & (D | F)
    assert (D <= E) == (D | E == E) == (D & E == D)


def test_lattice_laws_random_triples():
    rng = random.Random(7)
    count = 0
    for _ in range(40):
        P = random_poset(rng, rng.randint(1, 6))
        els = P.downsets()
        for _ in range(30):
            _laws_hold(P, rng.choice(els), rng.choice(els), rng.choice(els))
            count += 1
    assert count >= 1000


def test_every_downset_is_the_join_of_irreducibles_below():
    for P in small_posets(4):
        J = join_irreducibles(P)
        for D in P.downsets():
            assert join_all([j for j in J if j <= D], P) == D


def test_irreducibles_are_join_irreducible():
    for P in small_posets(4):
        els = P.downsets()
        for j in join_irreducibles(P):
            strictly_below = [e for e in els if e < j]
            assert not j.is_zero
            assert join_all(strictly_below, P) != j


def _table(names, order_pairs):
    """Explicit lattice tables from an order on named elements."""
    k = len(names)
    le = {(x, y) for x, y in order_pairs} | {(x, x) for x in range(k)}

    def lub(x, y):
        ubs = [z for z in range(k) if (x, z) in le and (y, z) in le]
        return next(z for z in ubs if all((z, w) in le for w in ubs))

    def glb(x, y):
        lbs = [z for z in range(k) if (z, x) in le and (z, y) in le]
        return next(z for z in lbs if all((w, z) in le for w in lbs))

    J = [[lub(x, y) for y in range(k)] for x in range(k)]
    M = [[glb(x, y) for y in range(k)] for x in range(k)]
    return J, M


class TestExplicit:
    def test_two_chain(self):
        P, emap = from_explicit(ExplicitLattice(("0", "1"), [[0, 1], [1, 1]], [[0, 0], [0, 1]], 0, 1))
        assert P.labels == ("1",)
        assert emap["0"].is_zero and emap["1"].is_one

    def test_boolean_square(self):
        names = ("0", "x", "y", "1")
        J, M = _table(names, [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)])
        P, emap = from_explicit(ExplicitLattice(names, J, M, 0, 3))
        assert set(P.labels) == {"x", "y"}
        assert relation(P) == {("x", "x"), ("y", "y")}

    def test_m3_rejected(self):
        names = ("0", "x", "y", "z", "1")
        J, M = _table(names, [(0, i) for i in range(1, 5)] + [(i, 4) for i in (1, 2, 3)])
        with pytest.raises(NotDistributive):
            from_explicit(ExplicitLattice(names, J, M, 0, 4))

    def test_n5_rejected(self):
        names = ("0", "a", "b", "c", "1")
        order = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (2, 4), (3, 4)]
        J, M = _table(names, order)
        with pytest.raises(NotDistributive):
            from_explicit(ExplicitLattice(names, J, M, 0, 4))

    def test_zero_equals_one(self):
        with pytest.raises(ZeroEqualsOne):
            from_explicit(ExplicitLattice(("0",), [[0]], [[0]], 0, 0))

    def test_wrong_bounds(self):
        names = ("0", "1")
        with pytest.raises(NotBounded):
            from_explicit(ExplicitLattice(names, [[0, 1], [1, 1]], [[0, 0], [0, 1]], 1, 0))

    def test_round_trip_is_isomorphism(self):
        for P in small_posets(4):
            L, elements = to_explicit(P)
            Q, emap = from_explicit(L)
            assert len(Q) == len(P)
            image = [emap[name] for name in L.names]
            assert len({d.mask for d in image}) == len(L)
            k = len(L)
            for x in range(k):
                for y in range(k):
                    assert image[L.join[x][y]] == image[x] | image[y]
                    assert image[L.meet[x][y]] == image[x] & image[y]
            assert image[L.zero].is_zero and image[L.one].is_one

    def test_downset_dataclass_checks_poset(self, vposet, antichain):
        with pytest.raises(MixedPosets):
            Downset(vposet, 1) <= Downset(antichain, 1)
