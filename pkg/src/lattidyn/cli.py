"""``lattidyn`` command-line front end.

Every subcommand reads JSON inputs, runs one library operation and prints a
deterministic report.  Exit status: 0 on success, 1 on a domain or parse
error, 2 when a configured budget runs out.  Errors are reported as a JSON
object on standard output.
"""

from __future__ import annotations

import argparse
import math
import random
import sys
from dataclasses import dataclass, field

from . import covers as cv
from . import dynamics as dy
from . import entropy as en
from . import io
from . import shift as sh
from . import topology as tp
from .enumeration import random_cover
from .errors import BudgetError, LattidynError, ParseError, SquareNotExpansivityCover
from .lattice import from_explicit, join_irreducibles


@dataclass
class RunConfig:
    command: str
    action: str | None = None
    poset: str | None = None
    auto: str | None = None
    morphism: str | None = None
    cover: list[str] = field(default_factory=list)
    symbols: str | None = None
    space: list[str] = field(default_factory=list)
    map: str | None = None
    n_max: int = 64
    check: int = 4
    search_cap: int = 4096
    samples: int = 0
    format: str = "json"
    seed: int = 0

    def validate(self) -> None:
        for name in ("n_max", "check", "search_cap"):
            if getattr(self, name) < 1:
                raise ParseError(f"--{name.replace('_', '-')} must be positive")
        if self.samples < 0:
            raise ParseError("--samples must be >= 0")


def _need(value, flag: str):
    if not value:
        raise ParseError(f"missing required input {flag}")
    return value


def _poset(cfg: RunConfig):
    data = io.load_json(_need(cfg.poset, "--poset"))
    if io.is_lattice_json(data):
        P, _ = from_explicit(io.lattice_from_json(data))
        return P
    return io.poset_from_json(data)


def _covers(cfg: RunConfig, P, count: int | None = None):
    paths = _need(cfg.cover, "--cover")
    if count is not None and len(paths) < count:
        raise ParseError(f"this command needs {count} --cover inputs")
    return [io.cover_from_json(P, io.load_json(p)) for p in paths]


def _auto(cfg: RunConfig, P):
    return io.automorphism_from_json(P, io.load_json(_need(cfg.auto, "--auto")))


def _endo(cfg: RunConfig, P):
    if cfg.auto:
        return _auto(cfg, P)
    return io.morphism_from_json(P, io.load_json(_need(cfg.morphism, "--morphism")))


def cmd_poset_check(cfg):
    P = _poset(cfg)
    closure = [[P.labels[i], P.labels[j]] for j in range(len(P)) for i in range(len(P)) if i != j and P.point_leq(i, j)]
    return {
        "points": list(P.labels),
        "leq": sorted(closure),
        "maximal": sorted(P.labels[i] for i in P.maximal_points()),
        "minimal": sorted(P.labels[i] for i in P.minimal_points()),
    }


def cmd_lattice_info(cfg):
    P = _poset(cfg)
    masks = P.downset_masks(cap=cfg.search_cap)
    return {
        "points": list(P.labels),
        "elements": [list(P.mask_key(m)) for m in masks],
        "size": len(masks),
        "join_irreducibles": [d.to_json() for d in join_irreducibles(P)],
        "proper_maximal": [d.to_json() for d in cv.proper_maximal_elements(P)],
    }


def cmd_cover(cfg):
    P = _poset(cfg)
    act = cfg.action
    if act in ("refines", "wedge"):
        U, V = _covers(cfg, P, 2)[:2]
        if act == "refines":
            return {"refines": cv.refines(U, V), "equivalent": cv.equivalent(U, V)}
        W = cv.wedge(U, V)
        return {"wedge": W.to_json(), "canonical": W.canonical.to_json(), "is_cover": W.is_cover}
    (U,) = _covers(cfg, P, 1)[:1]
    if act == "order":
        return {"order": cv.order(U)}
    if act == "square":
        S = cv.square(U)
        return {"square": S.to_json(), "is_cover": S.is_cover}
    if act == "components":
        return {"components": cv.components(U).to_json()}
    if act == "minsub":
        sub, count = cv.minimal_subcover(U)
        return {"subcover": sub.to_json(), "count": count, "entropy": math.log(count)}
    raise ParseError(f"unknown cover action {act!r}")


def cmd_expansive(cfg):
    P = _poset(cfg)
    lam = _auto(cfg, P)
    cand = _covers(cfg, P)[0] if cfg.cover else None
    ok, witness = dy.is_expansive(lam, cand, cfg.n_max)
    U = witness if witness is not None else cand
    traj = dy.stabilize(lam, U if U is not None else cv.finest_cover(P), dy.TWO_SIDED, cfg.n_max)
    return {
        "expansive": ok,
        "witness": witness.to_json() if witness is not None else None,
        "stabilized_at": traj.stabilized_at,
        "limit": traj.limit.to_json(),
    }


def cmd_positively_expansive(cfg):
    P = _poset(cfg)
    lam = _endo(cfg, P)
    cand = _covers(cfg, P)[0] if cfg.cover else None
    ok, witness = dy.is_positively_expansive(lam, cand, cfg.n_max)
    return {"positively_expansive": ok, "witness": witness.to_json() if witness is not None else None}


def cmd_dim(cfg):
    return {"dim": dy.dimension(_poset(cfg), cfg.search_cap)}


def cmd_mane_cert(cfg):
    P = _poset(cfg)
    lam = _auto(cfg, P)
    U = _covers(cfg, P)[0] if cfg.cover else cv.finest_cover(P)
    if not dy.is_expansivity_cover(lam, cv.square(U), cfg.n_max):
        raise SquareNotExpansivityCover("the square of the cover is not an expansivity cover")
    W = dy.mane_witness(lam, cv.square(U), U, cfg.n_max)
    rows = []
    for n in range(cfg.check):
        cert, bound = dy.mane_dimension_certificate(lam, U, n, cfg.n_max)
        rows.append({
            "n": n,
            "cover": cert.to_json(),
            "is_cover": cert.is_cover,
            "order": cv.order(cert),
            "bound": bound,
            "refines_Un": cv.refines(cert, dy.iterated_wedge(lam, U, n)),
        })
    return {"W": W.to_json(), "bound": len(W) ** 2, "dim": dy.dimension(P, cfg.search_cap), "certificates": rows}


def cmd_utz(cfg):
    P = _poset(cfg)
    lam = _auto(cfg, P)
    ok, witness = dy.is_positively_expansive(lam, N_max=cfg.n_max)
    if not ok:
        return {"positively_expansive": False}
    U0, N = dy.utz_generator(lam, witness, cfg.n_max)
    return {
        "positively_expansive": True,
        "U0": U0.to_json(),
        "N": N,
        "bound": len(U0),
        "proper_maximal": len(cv.proper_maximal_elements(P)),
    }


def cmd_entropy(cfg):
    P = _poset(cfg)
    lam = _endo(cfg, P)
    if cfg.cover:
        seq = en.relative_entropy(lam, _covers(cfg, P)[0], cfg.n_max)
        return {**seq.to_json(), "exact": seq.exact}
    if isinstance(lam, dy.LatticeAutomorphism):
        value, seq = en.expansive_entropy(lam, cfg.n_max)
        return {**seq.to_json(), "exact": seq.exact, "entropy": value}
    rng = random.Random(cfg.seed)
    pool = [cv.finest_cover(P)] + [random_cover(rng, P) for _ in range(cfg.samples)]
    return en.entropy_lower_bound(lam, pool, cfg.n_max)


def cmd_shift_entropy(cfg):
    S = io.symbols_from_json(io.load_json(_need(cfg.symbols, "--symbols")))
    _, report = sh.shift_entropy(S, cfg.check, cfg.search_cap)
    return report


def cmd_shift_expansive(cfg):
    S = io.symbols_from_json(io.load_json(_need(cfg.symbols, "--symbols")))
    V = io.cylinder_cover_from_json(S, io.load_json(_need(cfg.cover, "--cover")[0]))
    N = sh.shift_expansivity_check(S, V, cfg.n_max, cfg.search_cap)
    return {"N": N, "window": list(V.window), "target_is_cover": V.is_cover}


def cmd_topo(cfg):
    spaces = [io.space_from_json(io.load_json(p)) for p in _need(cfg.space, "--space")]
    X = spaces[0]
    if cfg.action == "validate":
        return {**X.to_json(), "t0": X.is_t0, "t1": X.is_t1}
    if cfg.action == "lattice":
        P, emap = tp.open_lattice(X)
        return {
            "points": list(P.labels),
            "leq": [[P.labels[i], P.labels[j]] for j in range(len(P)) for i in range(len(P)) if i != j and P.point_leq(i, j)],
            "opens": [[sorted(u), emap[u].to_json()] for u in X.sorted_opens()],
        }
    if cfg.action == "morphism":
        Y = spaces[1] if len(spaces) > 1 else X
        f = io.map_from_json(X, Y, io.load_json(_need(cfg.map, "--map")))
        lam = tp.induced_morphism(f)
        out = {"morphism": lam.to_json(), "preimages": [[sorted(v), sorted(f.preimage(v))] for v in Y.sorted_opens()]}
        if Y == X and sorted(f.table.values()) == sorted(X.points):
            try:
                aut = tp.induced_automorphism(f)
            except LattidynError:
                out["homeomorphism"] = False
            else:
                ok, _ = dy.is_expansive(aut, N_max=cfg.n_max)
                out.update(homeomorphism=True, expansive=ok)
        return out
    raise ParseError(f"unknown topo action {cfg.action!r}")


COMMANDS = {
    "poset-check": cmd_poset_check,
    "lattice-info": cmd_lattice_info,
    "cover": cmd_cover,
    "expansive": cmd_expansive,
    "positively-expansive": cmd_positively_expansive,
    "dim": cmd_dim,
    "mane-cert": cmd_mane_cert,
    "utz": cmd_utz,
    "entropy": cmd_entropy,
    "shift-entropy": cmd_shift_entropy,
    "shift-expansive": cmd_shift_expansive,
    "topo": cmd_topo,
}

COVER_ACTIONS = ("refines", "wedge", "order", "square", "components", "minsub")
TOPO_ACTIONS = ("validate", "lattice", "morphism")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--poset")
    common.add_argument("--auto")
    common.add_argument("--morphism")
    common.add_argument("--cover", action="append", default=[])
    common.add_argument("--symbols")
    common.add_argument("--space", action="append", default=[])
    common.add_argument("--map")
    common.add_argument("--n-max", type=int, default=64)
    common.add_argument("--check", type=int, default=4)
    common.add_argument("--search-cap", type=int, default=4096)
    common.add_argument("--samples", type=int, default=0)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="lattidyn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "cover":
            p.add_argument("action", choices=COVER_ACTIONS)
        elif name == "topo":
            p.add_argument("action", choices=TOPO_ACTIONS)
    return parser


def _table(report) -> str:
    lines = []
    for key in sorted(report):
        lines.append(f"{key}: {io.dumps(report[key]) if isinstance(report[key], (list, dict)) else io.normalize(report[key])}")
    return "\n".join(lines)


def run(cfg: RunConfig) -> tuple[int, str]:
    try:
        cfg.validate()
        report = COMMANDS[cfg.command](cfg)
        code = 0
    except BudgetError as exc:
        report, code = exc.to_json(), 2
    except LattidynError as exc:
        report, code = exc.to_json(), 1
    text = _table(report) if cfg.format == "table" and code == 0 else io.dumps(report)
    return code, text


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        action=getattr(args, "action", None),
        poset=args.poset,
        auto=args.auto,
        morphism=args.morphism,
        cover=args.cover,
        symbols=args.symbols,
        space=args.space,
        map=args.map,
        n_max=args.n_max,
        check=args.check,
        search_cap=args.search_cap,
        samples=args.samples,
        format=args.format,
        seed=args.seed,
    )
    code, text = run(cfg)
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
