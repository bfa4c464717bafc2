# -*- coding: utf-8 -*-
"""
castlepy
Created on Wed Apr  2 14:05:33 2025

@author: Caghan Uenlueer
Neuromorphic Quantumphotonics
Heidelberg University
E-Mail:	caghan.uenlueer@kip.uni-heidelberg.de

This file is part of castlepy, which is licensed under the MIT License.
"""
import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from castlepy._version import __version__
from castlepy.agcode import OnePointCode
from castlepy.bounds import bound_report, dstar, hstar, records_enumerate
from castlepy.config import RunConfig
from castlepy.curves import Curve, CurveParams, curve_new, full_curve_generators
from castlepy.errors import BudgetError, ValidationError, exit_code_for
from castlepy.numsemi import printed_order_report

log = logging.getLogger("castlepy.cli")

_HANDLER_TAG = "_castlepy_cli"


def configure_logging(verbosity: int = 0):
    """
    Attach one stderr handler to the "castlepy" logger.

    Parameters:
        verbosity (int): 1 for DEBUG, -1 for WARNING, otherwise INFO.
    """
    root = logging.getLogger("castlepy")
    for handler in list(root.handlers):
        if getattr(handler, _HANDLER_TAG, False):
            root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("castlepy: %(message)s"))
    setattr(handler, _HANDLER_TAG, True)
    root.addHandler(handler)
    root.setLevel({1: logging.DEBUG, -1: logging.WARNING}.get(verbosity, logging.INFO))
    root.propagate = False


def _modulus(text: str) -> List[int]:
    try:
        return [int(c) for c in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"modulus must be comma separated integers. Got {text!r}"
        )


def _curve_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--q", type=int, required=True, help="base prime power q")
    parser.add_argument("--n", type=int, required=True, help="degree of GF(q^n) over GF(q)")
    parser.add_argument("--r", type=int, required=True, help="second exponent, gcd(n, r) = 1")
    choice = parser.add_mutually_exclusive_group()
    choice.add_argument("--s", type=int, help="degree exponent of g_s (trace split)")
    choice.add_argument("--gs", help='explicit g_s, e.g. "y^4+a^18*y^2+a*y"')
    choice.add_argument("--full", action="store_true", help="full curve, g_s = T_n")
    parser.add_argument("--model", choices=("reduced", "trace"), help="plane model")
    parser.add_argument("--model-sign", type=int, choices=(1, -1), dest="model_sign")
    parser.add_argument("--modulus", type=_modulus, help="ascending coefficients, e.g. 1,0,1,0,0,1")


def _common_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--config", help="TOML file with RunConfig defaults")
    parser.add_argument("--output-dir", dest="output_dir", help="directory for result files")
    parser.add_argument("--json", action="store_true", help="mirror the report to stdout")
    parser.add_argument("--deepening-cap", type=int, dest="deepening_cap")
    level = parser.add_mutually_exclusive_group()
    level.add_argument("-v", "--verbose", action="store_const", const=1, dest="verbosity")
    level.add_argument("-q", "--quiet", action="store_const", const=-1, dest="verbosity")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="castlepy",
        description="Castle curves X^s_{n,r}, their Weierstrass semigroups and one-point codes.",
    )
    parser.add_argument("--version", action="version", version=f"castlepy {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    curve = sub.add_parser("curve", help="curve report: genus, points, semigroup")
    _curve_arguments(curve)
    _common_arguments(curve)
    curve.set_defaults(handler=cmd_curve)

    semigroup = sub.add_parser("semigroup", help="Weierstrass semigroup at P_inf")
    _curve_arguments(semigroup)
    _common_arguments(semigroup)
    semigroup.set_defaults(handler=cmd_semigroup)

    code = sub.add_parser("code", help="one-point code C_m: generator matrix and bounds")
    _curve_arguments(code)
    _common_arguments(code)
    code.add_argument("--m", type=int, required=True)
    code.add_argument("--shorten", type=int, default=0, help="shorten on the first S points")
    code.add_argument("--exact", action="store_true", help="exact minimum distance")
    code.add_argument("--budget", type=int, dest="distance_budget")
    code.add_argument("--workers", type=int)
    code.set_defaults(handler=cmd_code)

    bounds = sub.add_parser("bounds", help="H* and the order bound profile")
    _curve_arguments(bounds)
    _common_arguments(bounds)
    bounds.add_argument("--m", type=int, help="single lookup instead of the whole profile")
    bounds.set_defaults(handler=cmd_bounds)

    records = sub.add_parser("records", help="rebuild the record ledger")
    _common_arguments(records)
    records.add_argument("--only", choices=("ex44", "ex45"))
    records.add_argument("--fast", action="store_true", help="skip the rank verification")
    records.add_argument("--exact", action="store_true", help="exact distances (refused)")
    records.add_argument("--budget", type=int, dest="distance_budget")
    records.add_argument("--modulus", type=_modulus)
    records.set_defaults(handler=cmd_records)
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    """RunConfig from --config, overridden by explicit flags."""
    if getattr(args, "config", None):
        try:
            config = RunConfig.load_single(args.config)
        except FileNotFoundError as e:
            raise ValidationError(str(e))
    else:
        config = RunConfig()
    overrides = {key: getattr(args, key, None) for key in RunConfig.KEYS}
    return config.update(**overrides)


def build_curve(args: argparse.Namespace, config: RunConfig) -> Curve:
    common = dict(model=config.model, model_sign=config.model_sign, modulus=config.modulus)
    if args.full:
        params = CurveParams.full(args.q, args.n, args.r, **common)
    elif args.gs is not None:
        params = CurveParams(args.q, args.n, args.r, g_s=args.gs, **common)
    else:
        params = CurveParams(args.q, args.n, args.r, s=args.s, **common)
    return curve_new(params)


def _stem(curve: Curve) -> str:
    return f"q{curve.q}_n{curve.n}_r{curve.r}_s{curve.s}_{curve.model}"


def emit(report: Dict[str, Any], path: str, to_stdout: bool):
    """Write ``report`` as canonical JSON and optionally mirror it."""
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    with open(path, "w") as file:
        file.write(text)
    log.info("wrote %s", path)
    if to_stdout:
        sys.stdout.write(text)


def cmd_curve(args: argparse.Namespace, config: RunConfig) -> int:
    curve = build_curve(args, config)
    report = curve.report(deepening_cap=config.deepening_cap)
    emit(report, config.output_path(f"curve_{_stem(curve)}.json"), args.json)
    return 0


def cmd_semigroup(args: argparse.Namespace, config: RunConfig) -> int:
    curve = build_curve(args, config)
    data = curve.weierstrass_semigroup(deepening_cap=config.deepening_cap)
    report = data.to_dict()
    printed = (
        full_curve_generators(curve.q, curve.n, curve.r)
        if curve.is_full
        else tuple(data.semigroup.minimal_generators())
    )
    report.update(printed_order_report(printed))
    emit(report, config.output_path(f"semigroup_{_stem(curve)}.json"), args.json)
    return 0


def cmd_code(args: argparse.Namespace, config: RunConfig) -> int:
    curve = build_curve(args, config)
    code = OnePointCode(curve, args.m, config.deepening_cap)
    hs = hstar(code.semigroup, code.length)
    report = bound_report(code, hs)
    target = code
    if args.shorten:
        target = code.shorten(args.shorten)
        report.update(length=target.length, k=target.k, shorten_s=args.shorten)
    if args.exact:
        distance = target.minimum_distance(
            budget=config.distance_budget,
            workers=config.workers,
            progress=args.verbosity != -1,
        )
        report["exact_distance"] = distance
        report["exact_refused"] = distance is None

    stem = f"code_{_stem(curve)}_m{args.m}"
    if args.shorten:
        stem += f"_sh{args.shorten}"
    target.write_matrix(config.output_path(f"{stem}.csv"))
    emit(report, config.output_path(f"{stem}.json"), args.json)
    return 0


def cmd_bounds(args: argparse.Namespace, config: RunConfig) -> int:
    curve = build_curve(args, config)
    data = curve.weierstrass_semigroup(deepening_cap=config.deepening_cap)
    hs = hstar(data.semigroup, curve.expected_points - 1)
    report: Dict[str, Any] = {"u": hs.u, "hstar": list(hs.elements)}
    if args.m is not None:
        report["m"] = args.m
        report["dstar"] = dstar(hs, args.m)
        name = f"bounds_{_stem(curve)}_m{args.m}.json"
    else:
        report["profile"] = [list(row) for row in hs.dstar_profile()]
        name = f"bounds_{_stem(curve)}.json"
    emit(report, config.output_path(name), args.json)
    return 0


def cmd_records(args: argparse.Namespace, config: RunConfig) -> int:
    if args.exact:
        raise BudgetError(
            "exact distances of the record codes exceed any enumeration budget "
            f"({config.distance_budget}); the ledger uses the order bound"
        )
    ledger = records_enumerate(
        only=args.only,
        verify=not args.fast,
        modulus=config.modulus,
        deepening_cap=config.deepening_cap,
    )
    name = "records.csv" if args.only is None else f"records_{args.only}.csv"
    path = config.output_path(name)
    ledger.write_csv(path)
    log.info("records: %d triples written to %s", len(ledger), path)
    if args.json:
        sys.stdout.write(json.dumps(ledger.to_dict(), indent=2, sort_keys=True) + "\n")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbosity or 0)
    try:
        config = load_config(args)
        return args.handler(args, config)
    except Exception as e:
        code = exit_code_for(e)
        if code == 1:
            log.exception("unexpected failure")
        else:
            log.error("%s", e)
        return code


if __name__ == "__main__":
    sys.exit(main())
