"""
Command line front end.

    tropcrit potential cp2
    tropcrit tropical cp2 --k 1,2 --svg cp2.svg
    tropcrit verify cp2 --k 0,1 --samples 5
    tropcrit gallery --out gallery --only cp2
    tropcrit presets

Exit codes: 0 ok, 2 parse error, 3 verification failure, 4 IO error.
"""

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .components import render_complex_svg, render_gallery_index
from .conf import ProbeConf, run_parallel
from .errors import ParseError, TropcritError, UnsupportedDimension
from .newton import dimension_probe
from .novikov import format_fraction, to_fraction
from .potential import potential
from .presets import GalleryCase, gallery_cases, get_preset, list_presets
from .problem import ProblemSpec
from .tropical import crit_trop_result

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VERIFY = 3
EXIT_IO = 4


class ArgumentParser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so main() owns the exit code."""

    def error(self, message):
        raise ParseError(message)


def setup_logging(verbose: int = 0):
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("[%(name)s] %(message)s"))
    root = logging.getLogger("tropcrit")
    root.handlers[:] = [handler]
    root.setLevel(logging.DEBUG if verbose >= 2 else logging.INFO if verbose == 1 else logging.WARNING)
    root.propagate = False


def parse_k(text: str | None) -> list[list[int]] | None:
    """Parse --k: "k1,k2" is one column, "a,b;c,d" several, "none" the trivial subtorus."""
    if text is None:
        return None
    text = text.strip()
    if text.lower() == "none":
        return []
    try:
        return [[int(x) for x in column.split(",")] for column in text.split(";") if column.strip()]
    except ValueError as e:
        raise ParseError(f"Bad --k value {text!r}: {e}") from e


def _fraction_arg(text: str) -> Fraction:
    try:
        return to_fraction(text)
    except ParseError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def build_problem(args: argparse.Namespace, need_k: bool = True) -> ProblemSpec:
    """ProblemSpec from --json or from a preset plus flags; flags override file values."""
    columns = parse_k(args.k)
    if args.json:
        spec = ProblemSpec.load(args.json)
        if columns is not None:
            spec = ProblemSpec.build(spec.polytope, columns, spec.corrections, order=spec.order,
                                     samples=spec.samples, seed=spec.seed, name=spec.name)
    else:
        if not args.preset:
            raise ParseError("Give a preset name or --json FILE")
        preset = get_preset(args.preset)
        polytope = preset.polytope(alpha=args.alpha, c=args.c, d=args.d)
        if columns is None:
            if need_k:
                raise ParseError("--k is required (use --k none for the trivial subtorus)")
            columns = []
        spec = ProblemSpec.build(polytope, columns, name=args.preset)
    overrides = {}
    if args.order is not None:
        overrides["order"] = args.order
    if getattr(args, "samples", None) is not None:
        overrides["samples"] = args.samples
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    if overrides:
        spec = ProblemSpec(spec.polytope, spec.subtorus, spec.corrections, **{
            "order": spec.order, "samples": spec.samples, "seed": spec.seed, "name": spec.name, **overrides,
        })
    return spec


def _emit(data: dict):
    print(json.dumps(data, indent=2))


def cmd_potential(args: argparse.Namespace) -> int:
    spec = build_problem(args, need_k=False)
    po = potential(spec.polytope, spec.corrections)
    print(po)
    _emit(po.to_json())
    return EXIT_OK


def cmd_tropical(args: argparse.Namespace) -> int:
    spec = build_problem(args)
    result = crit_trop_result(spec.polytope, spec.subtorus, spec.corrections)
    _emit(result.to_json())
    if args.svg:
        try:
            svg = render_complex_svg(result.complex, spec.polytope, title=spec.name)
        except UnsupportedDimension as e:
            logger.error("%s", e)
            return EXIT_PARSE
        Path(args.svg).write_text(svg)
        logger.info("Wrote %s", args.svg)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    spec = build_problem(args)
    probe = ProbeConf(samples=spec.samples, seed=spec.seed, order=spec.order)
    report = dimension_probe(spec.polytope, spec.subtorus, spec.corrections, probe=probe)
    _emit(report.to_json())
    if not report.ok:
        logger.error(
            "%d unexplained lift failures, %d lifts off the tropical locus",
            report.unexplained, report.off_complex,
        )
        return EXIT_VERIFY
    return EXIT_OK


def run_gallery_case(case: GalleryCase) -> tuple[dict, str]:
    """JSON document and SVG text for one gallery case."""
    polytope = case.polytope()
    problem = ProblemSpec.build(polytope, case.columns, name=case.name)
    result = crit_trop_result(problem.polytope, problem.subtorus)
    data = {
        "case": case.name,
        "preset": case.preset,
        "params": {k: format_fraction(v) for k, v in case.params.items()},
        "K": problem.subtorus.columns(),
        **result.to_json(),
    }
    return data, render_complex_svg(result.complex, polytope, title=case.name)


def cmd_gallery(args: argparse.Namespace) -> int:
    cases = gallery_cases(args.only)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    results = run_parallel(run_gallery_case, cases)
    entries = []
    for case, (data, svg) in zip(cases, results):
        (out / f"{case.name}.json").write_text(json.dumps(data, indent=2) + "\n")
        (out / f"{case.name}.svg").write_text(svg)
        entries.append(
            {
                "name": case.name,
                "preset": case.preset,
                "params": data["params"],
                "K": ";".join(",".join(str(k) for k in col) for col in data["K"]),
                "cells": len(data["cells"]),
                "nodes": data["nodes"],
                "exact": data["exact"],
                "svg": f"{case.name}.svg",
            }
        )
    text, html = render_gallery_index(entries)
    (out / "index.md").write_text(text)
    (out / "index.html").write_text(html)
    logger.info("Wrote %d cases to %s", len(cases), out)
    return EXIT_OK


def cmd_presets(args: argparse.Namespace) -> int:
    for preset in list_presets():
        params = " ".join(f"--{p} {format_fraction(preset.defaults[p])}" for p in preset.params)
        print(f"{preset.name:<12} {preset.description}{'  [' + params + ']' if params else ''}")
    return EXIT_OK


def _add_problem_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("preset", nargs="?", help="preset name, see `tropcrit presets`")
    parser.add_argument("--json", metavar="FILE", help="problem file instead of a preset")
    parser.add_argument("--k", help='subtorus columns: "k1,k2", "a,b;c,d" or "none"')
    parser.add_argument("--alpha", type=_fraction_arg)
    parser.add_argument("--c", type=_fraction_arg)
    parser.add_argument("--d", type=_fraction_arg)
    parser.add_argument("--order", type=_fraction_arg, help="truncation order p/q")


def make_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="tropcrit", description="Tropical critical loci of toric potentials")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    p = sub.add_parser("potential", help="print the potential function")
    _add_problem_arguments(p)
    p.set_defaults(func=cmd_potential)

    p = sub.add_parser("tropical", help="compute the tropical critical locus")
    _add_problem_arguments(p)
    p.add_argument("--svg", metavar="FILE", help="write a figure (n = 2 only)")
    p.set_defaults(func=cmd_tropical)

    p = sub.add_parser("verify", help="lift sample points to Novikov-field critical points")
    _add_problem_arguments(p)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gallery", help="write the figure gallery")
    p.add_argument("--out", default="gallery", help="output directory")
    p.add_argument("--only", help="restrict to one preset")
    p.set_defaults(func=cmd_gallery)

    p = sub.add_parser("presets", help="list presets")
    p.set_defaults(func=cmd_presets)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = make_parser().parse_args(argv)
    except ParseError as e:
        print(f"[tropcrit] {e}", file=sys.stderr)
        return EXIT_PARSE
    setup_logging(args.verbose)
    try:
        return args.func(args)
    except OSError as e:
        logger.error("IO error: %s", e)
        return EXIT_IO
    except (ValueError, TropcritError) as e:
        logger.error("%s", e)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
