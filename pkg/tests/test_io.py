import json
import math

import pytest

from lattidyn import io
from lattidyn.errors import CycleDetected, NotContinuous, NotOrderAutomorphism, ParseError
from lattidyn.lattice import Poset


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestLoad:
    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError, match="nope.json"):
            io.load_json(tmp_path / "nope.json")

    def test_syntax_error_reports_position(self, tmp_path):
        path = write(tmp_path, "bad.json", '{"points": ["a",\n  ]}')
        with pytest.raises(ParseError, match=r"line 2 column 3"):
            io.load_json(path)

    def test_round_trip(self, tmp_path):
        path = write(tmp_path, "p.json", '{"points": ["a"]}')
        assert io.load_json(path) == {"points": ["a"]}


class TestFields:
    def test_missing_field(self):
        with pytest.raises(ParseError, match="missing field 'points'"):
            io.poset_from_json({"leq": []})

    def test_wrong_type(self):
        with pytest.raises(ParseError, match="wrong type"):
            io.poset_from_json({"points": "abc"})

    def test_not_an_object(self):
        with pytest.raises(ParseError, match="JSON object"):
            io.poset_from_json(["a"])

    def test_bad_pair(self):
        with pytest.raises(ParseError, match=r"leq\[0\]"):
            io.poset_from_json({"points": ["a", "b"], "leq": [["a"]]})

    def test_cycle_passes_through(self):
        with pytest.raises(CycleDetected):
            io.poset_from_json({"points": ["a", "b"], "leq": [["a", "b"], ["b", "a"]]})


class TestObjects:
    def test_poset(self, data_dir):
        P = io.poset_from_json(io.load_json(data_dir / "vposet.json"))
        assert isinstance(P, Poset) and P.labels == ("a", "b", "c")

    def test_cover_accepts_object_and_list(self, vposet):
        a = io.cover_from_json(vposet, {"cover": [["a", "c"], ["b", "c"]]})
        b = io.cover_from_json(vposet, [["a", "c"], ["b", "c"]])
        assert a == b and a.is_cover

    def test_cover_member_must_be_list(self, vposet):
        with pytest.raises(ParseError, match=r"cover\[0\]"):
            io.cover_from_json(vposet, ["a"])

    def test_automorphism(self, vposet, data_dir):
        lam = io.automorphism_from_json(vposet, io.load_json(data_dir / "vposet-swap.json"))
        assert lam.compose(lam) == io.automorphism_from_json(vposet, io.load_json(data_dir / "id.json"))

    def test_automorphism_rejects_non_order_map(self, vposet):
        with pytest.raises(NotOrderAutomorphism):
            io.automorphism_from_json(vposet, {"permutation": {"a": "c", "c": "a", "b": "b"}})

    def test_lattice_detection(self, data_dir):
        assert io.is_lattice_json(io.load_json(data_dir / "m3.json"))
        assert not io.is_lattice_json(io.load_json(data_dir / "vposet.json"))

    def test_cylinder_window(self, data_dir):
        S = io.symbols_from_json(io.load_json(data_dir / "v-symbols.json"))
        C = io.cylinder_cover_from_json(S, io.load_json(data_dir / "v-window.json"))
        assert C.offset == -1 and len(C.words) == 8

    def test_space_and_map(self, data_dir):
        X = io.space_from_json(io.load_json(data_dir / "discrete2.json"))
        f = io.map_from_json(X, X, io.load_json(data_dir / "swap-map.json"))
        assert f.preimage(frozenset("a")) == frozenset("b")
        S = io.space_from_json(io.load_json(data_dir / "sierpinski.json"))
        with pytest.raises(NotContinuous):
            io.map_from_json(S, S, {"map": {"a": "b", "b": "a"}})


class TestSerialization:
    def test_rounding(self):
        assert io.normalize(math.log(2)) == 0.69314718056
        assert io.normalize(1 / 3) == 0.333333333333

    def test_sets_and_tuples(self):
        assert io.normalize({"x": (1, 2), "y": {3, 1}}) == {"x": [1, 2], "y": [1, 3]}

    def test_unknown_type(self):
        with pytest.raises(TypeError):
            io.normalize(object())

    def test_dumps_is_deterministic(self):
        a = io.dumps({"b": 1, "a": [0.1 + 0.2]})
        b = io.dumps({"a": [0.3], "b": 1})
        assert a == b
        assert json.loads(a) == {"a": [0.3], "b": 1}

    def test_to_json_objects(self, vposet):
        assert io.normalize(vposet.principal("a")) == vposet.principal("a").to_json()


def test_cover_member_must_be_downward_closed(vposet):
    from lattidyn.errors import NotADownset

    with pytest.raises(NotADownset):
        io.cover_from_json(vposet, [["a"], ["b", "c"]])
