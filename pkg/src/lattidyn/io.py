"""JSON ingestion and report serialization."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

from .covers import Family
from .dynamics import LatticeAutomorphism, UnitalMorphism, automorphism_from_permutation, morphism_from_map
from .errors import ParseError
from .lattice import ExplicitLattice, Poset, poset_validate
from .shift import CylinderCover, SymbolPoset, symbol_poset_validate
from .topology import ContinuousMap, FiniteSpace, continuous_map, space_validate


def load_json(path) -> Any:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _field(data, key: str, kind, where: str):
    if not isinstance(data, dict):
        raise ParseError(f"{where}: expected a JSON object")
    if key not in data:
        raise ParseError(f"{where}: missing field {key!r}")
    value = data[key]
    if not isinstance(value, kind):
        raise ParseError(f"{where}: field {key!r} has the wrong type")
    return value


def _pairs(raw, where: str) -> list[tuple[str, str]]:
    out = []
    for i, pair in enumerate(raw):
        if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
            raise ParseError(f"{where}: leq[{i}] must be a [lower, upper] pair")
        out.append((str(pair[0]), str(pair[1])))
    return out


def poset_from_json(data, where: str = "poset") -> Poset:
    points = _field(data, "points", list, where)
    pairs = _pairs(data.get("leq", []), where)
    return poset_validate(points, pairs)


def lattice_from_json(data, where: str = "lattice") -> ExplicitLattice:
    return ExplicitLattice(
        tuple(_field(data, "names", list, where)),
        _field(data, "join", list, where),
        _field(data, "meet", list, where),
        _field(data, "zero", int, where),
        _field(data, "one", int, where),
    )


def is_lattice_json(data) -> bool:
    return isinstance(data, dict) and "join" in data and "meet" in data


def cover_from_json(P: Poset, data, where: str = "cover") -> Family:
    if isinstance(data, dict):
        data = _field(data, "cover", list, where)
    if not isinstance(data, list):
        raise ParseError(f"{where}: expected a list of downsets")
    members = []
    for i, d in enumerate(data):
        if not isinstance(d, list):
            raise ParseError(f"{where}[{i}]: a downset is a list of point labels")
        members.append(P.downset(str(x) for x in d))
    return Family.of(members, P)


def automorphism_from_json(P: Poset, data, where: str = "auto") -> LatticeAutomorphism:
    perm = _field(data, "permutation", dict, where)
    return automorphism_from_permutation(P, {str(k): str(v) for k, v in perm.items()})


def morphism_from_json(P: Poset, data, where: str = "morphism") -> UnitalMorphism:
    table = _field(data, "map", dict, where)
    return morphism_from_map(P, P, {str(k): str(v) for k, v in table.items()})


def symbols_from_json(data, where: str = "symbols") -> SymbolPoset:
    symbols = _field(data, "symbols", list, where)
    return symbol_poset_validate(symbols, _pairs(data.get("leq", []), where))


def cylinder_cover_from_json(S: SymbolPoset, data, where: str = "cover") -> CylinderCover:
    words = _field(data, "words", list, where)
    if "window" in data:
        window = _field(data, "window", list, where)
        offset = int(window[0])
    else:
        offset = int(data.get("offset", 0))
    return CylinderCover(S, frozenset(tuple(str(a) for a in w) for w in words), offset)


def space_from_json(data, where: str = "space") -> FiniteSpace:
    return space_validate(_field(data, "points", list, where), _field(data, "opens", list, where))


def map_from_json(X: FiniteSpace, Y: FiniteSpace, data, where: str = "map") -> ContinuousMap:
    return continuous_map(X, Y, _field(data, "map", dict, where))


def _round(x: float) -> float:
    if math.isfinite(x):
        return float(f"{x:.12g}")
    return x


def normalize(obj):
    """Round floats to 12 significant digits and turn tuples/sets into lists."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return _round(obj)
    if isinstance(obj, dict):
        return {str(k): normalize(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted(normalize(v) for v in obj)
    if isinstance(obj, (list, tuple)):
        return [normalize(v) for v in obj]
    if hasattr(obj, "to_json"):
        return normalize(obj.to_json())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(normalize(obj), sort_keys=True, indent=2, ensure_ascii=False)
