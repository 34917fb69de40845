"""Command line interface: suite runner and standalone computations.

Every compute subcommand prints one JSON object. Failures print
``{"error": <type>, "message": <text>}`` and exit nonzero (2 for bad input,
1 for domain errors and failing checks).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import agd, suites, virasoro
from .density import Density
from .diffeo import CircleDiffeo
from .errors import CoadjointError, ConfigError, ParseError
from .sturm import SturmLiouville, fundamental_path, monodromy_invariant
from .trig import TrigPoly

NAMED_FIELDS = {"sin": TrigPoly.sin_mode(1), "cos": TrigPoly.cos_mode(1),
                "1": TrigPoly.constant(1.0), "one": TrigPoly.constant(1.0)}


def _json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{what}: invalid JSON ({exc.msg})") from None


def _parse(builder, text: str, what: str):
    data = _json(text, what)
    try:
        return builder(data)
    except CoadjointError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{what}: {exc}") from None


def parse_field(text: str) -> TrigPoly:
    """``sin``, ``cos``, ``1`` or a TrigPoly JSON object."""
    if text.strip().lower() in NAMED_FIELDS:
        return NAMED_FIELDS[text.strip().lower()]
    return _parse(TrigPoly.from_dict, text, "vector field")


def parse_chart_density(data) -> agd.ChartDensity:
    """``{"weight": "-1/2", "coeffs": {"0": "1", "2": "3/2"}}`` meaning ``sum c_a t^a (dt)^weight``."""
    return agd.ChartDensity.make({int(a): Fraction(str(c)) for a, c in data["coeffs"].items()},
                                 Fraction(str(data["weight"])))


def _chart_to_json(phi: agd.ChartDensity) -> dict:
    return {"weight": str(phi.weight), "coeffs": {str(a): str(c) for a, c in phi.coeffs}}


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


# -- suite commands ------------------------------------------------------------

def _load_config(args) -> suites.SuiteConfig:
    data = {}
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ParseError(f"config: invalid JSON ({exc.msg})") from None
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
    if getattr(args, "seed", None) is not None:
        data["seed"] = args.seed
    if getattr(args, "suite", None):
        data["suites"] = args.suite
    return suites.SuiteConfig.from_dict(data)


def _report(report: suites.Report) -> int:
    for line in report.lines():
        print(line)
    return 0 if report.ok else 1


def cmd_verify(args) -> int:
    return _report(suites.run_suites(_load_config(args)))


def _single_suite(name, select=None):
    def run(args) -> int:
        cfg = _load_config(args)
        cfg = suites.SuiteConfig(cfg.seed, cfg.degree_cap, cfg.rk4_steps, cfg.tolerances, [name])
        return _report(suites.run_suites(cfg, select))
    return run


def cmd_super_verify(args) -> int:
    sector = args.sector
    other = "ns" if sector == "ramond" else "ramond"
    osp = sector == "ns"

    def select(chk):
        if chk.name.startswith("osp_"):
            return osp
        return not chk.name.endswith("_" + other)
    return _single_suite("superalg", select)(args)


# -- compute commands ----------------------------------------------------------

def cmd_schwarzian(args) -> int:
    f = _parse(CircleDiffeo.from_dict, args.diffeo, "diffeo")
    _emit(virasoro.schwarzian(f, args.kind).to_dict())
    return 0


def cmd_monodromy(args) -> int:
    L = _parse(SturmLiouville.from_dict, args.op, "operator")
    path = fundamental_path(L, args.steps)
    out = monodromy_invariant(path).to_dict()
    out["wronskian_drift"] = path.wronskian_drift
    _emit(out)
    return 0


def cmd_gf_cocycle(args) -> int:
    X, Y = parse_field(args.X), parse_field(args.Y)
    _emit({"kind": args.kind, "value": virasoro.gf_cocycle(X, Y, args.kind)})
    return 0


def cmd_star(args) -> int:
    F = _parse(agd.LaurentPoly2.from_json, args.F, "F")
    G = _parse(agd.LaurentPoly2.from_json, args.G, "G")
    series = agd.star(F, G, args.order)
    _emit({"order": series.order, "coeffs": series.to_json()})
    return 0


def cmd_transvectant(args) -> int:
    phi_data = _json(args.phi, "phi")
    if isinstance(phi_data, dict) and "value" in phi_data:
        phi = _parse(Density.from_dict, args.phi, "phi")
        psi = _parse(Density.from_dict, args.psi, "psi")
        _emit(agd.transvectant(phi, psi, args.m, not args.uncrossed).to_dict())
        return 0
    phi = _parse(parse_chart_density, args.phi, "phi")
    psi = _parse(parse_chart_density, args.psi, "psi")
    _emit(_chart_to_json(agd.transvectant(phi, psi, args.m, not args.uncrossed)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coadjoint", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def suite_opts(p, suite_flag=False):
        p.add_argument("--seed", type=int)
        p.add_argument("--config", help="JSON file with SuiteConfig fields")
        if suite_flag:
            p.add_argument("--suite", action="append", choices=suites.SUITE_NAMES)

    p = sub.add_parser("verify", help="run invariant suites, JSON lines report")
    suite_opts(p, True)
    p.set_defaults(func=cmd_verify)
    for name, suite in (("virasoro-verify", "virasoro"), ("extalg-verify", "extalg"),
                        ("agd-verify", "agd")):
        p = sub.add_parser(name, help=f"run the {suite} suite")
        suite_opts(p)
        p.set_defaults(func=_single_suite(suite))
    p = sub.add_parser("super-verify", help="run the superalgebra suite for one sector")
    suite_opts(p)
    p.add_argument("--sector", choices=("ramond", "ns"), default="ramond")
    p.set_defaults(func=cmd_super_verify)

    p = sub.add_parser("schwarzian", help="Schwarzian of a circle diffeo")
    p.add_argument("--diffeo", default='{"shift": 0.0}', help='{"shift": s, "p": TrigPoly}')
    p.add_argument("--kind", choices=("standard", "modified"), default="standard")
    p.set_defaults(func=cmd_schwarzian)

    p = sub.add_parser("monodromy", help="monodromy invariant of a Sturm-Liouville operator")
    p.add_argument("--op", required=True, help='{"a": a, "u": TrigPoly} or {"c": c, "u": ...}')
    p.add_argument("--steps", type=int, default=4096)
    p.set_defaults(func=cmd_monodromy)

    p = sub.add_parser("gf-cocycle", help="Gelfand-Fuchs cocycle of two vector fields")
    p.add_argument("X")
    p.add_argument("Y")
    p.add_argument("--kind", choices=("standard", "modified"), default="standard")
    p.set_defaults(func=cmd_gf_cocycle)

    p = sub.add_parser("star", help="Moyal star product of Laurent polynomials")
    p.add_argument("F", help="[[i, j, num, den], ...]")
    p.add_argument("G")
    p.add_argument("--order", type=int, default=2)
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("transvectant", help="transvectant of two densities")
    p.add_argument("phi", help='chart {"weight", "coeffs"} or circle {"lambda", "value"}')
    p.add_argument("psi")
    p.add_argument("-m", type=int, default=1)
    p.add_argument("--uncrossed", action="store_true",
                   help="use the uncrossed weight assignment (not equivariant)")
    p.set_defaults(func=cmd_transvectant)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ConfigError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return 2
    except (CoadjointError, ValueError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return 1


if __name__ == "__main__":
    sys.exit(main())
