import random
import warnings

import pytest

import oracles
from lattidyn.covers import finest_cover
from lattidyn.dynamics import apply, identity, is_expansive
from lattidyn.enumeration import alexandrov_space, all_finite_spaces, random_map, random_space, spaces_with_points
from lattidyn.errors import NotATopology, NotContinuous, NotHomeomorphism, ZeroEqualsOne
from lattidyn.topology import (
    compose_maps,
    continuous_map,
    identity_map,
    induced_automorphism,
    induced_morphism,
    open_lattice,
    proper_maximal_opens,
    space_validate,
)

SIERPINSKI = (["a", "b"], [[], ["a"], ["a", "b"]])
DISCRETE = (["a", "b"], [[], ["a"], ["b"], ["a", "b"]])


class TestSpaces:
    def test_discrete(self):
        X = space_validate(*DISCRETE)
        assert X.is_t0 and X.is_t1

    def test_sierpinski(self):
        X = space_validate(*SIERPINSKI)
        assert X.is_t0 and not X.is_t1

    def test_missing_union(self):
        with pytest.raises(NotATopology):
            space_validate(["a", "b"], [[], ["a"], ["b"]])
        with pytest.raises(NotATopology, match="union"):
            space_validate("abc", [[], ["a"], ["b"], ["a", "b", "c"]])

    def test_missing_empty(self):
        with pytest.raises(NotATopology):
            space_validate(["a"], [["a"]])

    def test_enumeration_counts(self):
        # number of topologies on 1..4 labelled points
        assert [sum(1 for _ in all_finite_spaces(k)) for k in (1, 2, 3, 4)] == [1, 4, 29, 355]

    def test_enumerated_spaces_are_topologies(self):
        for X in all_finite_spaces(3):
            assert oracles.topology_axioms(X.points, X.opens)


class TestOpenLattice:
    def test_discrete(self):
        P, _ = open_lattice(space_validate(*DISCRETE))
        assert len(P) == 2 and P.maximal_points() == [0, 1]

    def test_sierpinski_is_two_chain(self):
        P, emap = open_lattice(space_validate(*SIERPINSKI))
        assert len(P) == 2
        assert P.point_leq(P.index["{a}"], P.index["{a,b}"])

    def test_downset_space_round_trip(self, vposet):
        # the space whose opens are the downsets of the V-poset
        opens = [list(d.labels()) for d in vposet.downsets()]
        P, emap = open_lattice(space_validate("abc", opens))
        assert len(P) == 3
        assert len(P.maximal_points()) == 2 and len(P.minimal_points()) == 1

    def test_map_is_lattice_isomorphism(self):
        for X in all_finite_spaces(3):
            if len(X.opens) < 2:
                continue
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                P, emap = open_lattice(X)
            assert len({d.mask for d in emap.values()}) == len(X.opens)
            for u in X.opens:
                for v in X.opens:
                    assert emap[u | v] == emap[u] | emap[v]
                    assert emap[u & v] == emap[u] & emap[v]

    def test_indiscrete_single_point(self):
        with pytest.raises(ZeroEqualsOne):
            open_lattice(space_validate([], [[]]))

    def test_non_t0_warns(self):
        X = space_validate(["a", "b"], [[], ["a", "b"]])
        with pytest.warns(UserWarning):
            open_lattice(X)


class TestMorphisms:
    def test_identity(self):
        X = space_validate(*SIERPINSKI)
        P, _ = open_lattice(X)
        assert induced_morphism(identity_map(X)) == identity(P)

    def test_constant_map(self):
        X = space_validate(*SIERPINSKI)
        f = continuous_map(X, X, {"a": "a", "b": "a"})
        lam = induced_morphism(f)
        P, emap = open_lattice(X)
        for u in X.opens:
            img = apply(lam, emap[u])
            assert img == (P.one if "a" in u else P.zero)

    def test_not_continuous(self):
        X = space_validate(*SIERPINSKI)
        with pytest.raises(NotContinuous):
            continuous_map(X, X, {"a": "b", "b": "a"})

    def test_preimage_matches(self):
        rng = random.Random(47)
        for _ in range(50):
            X, Y = random_space(rng, rng.randint(1, 4)), random_space(rng, rng.randint(1, 4), "y")
            if len(X.opens) < 2 or len(Y.opens) < 2 or not (X.is_t0 and Y.is_t0):
                continue
            f = continuous_map(X, Y, random_map(rng, X, Y))
            lam = induced_morphism(f)
            _, ex = open_lattice(X)
            _, ey = open_lattice(Y)
            for v in Y.opens:
                assert apply(lam, ey[v]) == ex[f.preimage(v)]

    def test_swap_homeomorphism(self):
        X = space_validate(*DISCRETE)
        aut = induced_automorphism(continuous_map(X, X, {"a": "b", "b": "a"}))
        P, emap = open_lattice(X)
        assert apply(aut, emap[frozenset("a")]) == emap[frozenset("b")]
        assert is_expansive(aut)[0]

    def test_identity_on_sierpinski_is_expansive(self):
        X = space_validate(*SIERPINSKI)
        ok, w = is_expansive(induced_automorphism(identity_map(X)))
        assert ok and w == finest_cover(open_lattice(X)[0])

    def test_continuous_bijection_not_open(self):
        X = space_validate(*DISCRETE)
        Y = space_validate(*SIERPINSKI)
        f = continuous_map(X, Y, {"a": "a", "b": "b"})
        with pytest.raises(NotHomeomorphism):
            induced_automorphism(f)
        # on one space: a continuous bijection whose inverse is not continuous
        Z = alexandrov_space(["a", "b", "c"], [("a", "b")])
        g = continuous_map(Z, Z, {"a": "a", "b": "b", "c": "c"})
        assert induced_automorphism(g) == identity(open_lattice(Z)[0])


def test_functor_laws():
    rng = random.Random(53)
    checked = 0
    while checked < 100:
        X = random_space(rng, rng.randint(1, 4), "x")
        Y = random_space(rng, rng.randint(1, 4), "y")
        Z = random_space(rng, rng.randint(1, 4), "z")
        if not all(S.is_t0 and len(S.opens) >= 2 for S in (X, Y, Z)):
            continue
        f = continuous_map(X, Y, random_map(rng, X, Y))
        g = continuous_map(Y, Z, random_map(rng, Y, Z))
        assert induced_morphism(compose_maps(g, f)) == induced_morphism(f).compose(induced_morphism(g))
        assert induced_morphism(identity_map(X)) == identity(open_lattice(X)[0])
        checked += 1


def test_t1_proper_maximal_opens_are_point_complements():
    for k in range(1, 6):
        for X in spaces_with_points(k, t1_only=True):
            if len(X.opens) < 2:
                continue
            expected = sorted((X.whole - {p} for p in X.points), key=sorted)
            assert proper_maximal_opens(X) == expected
