"""Command-line front end.

Every subcommand prints a single JSON line on stdout. Artifacts go to the
paths given with ``--out``. Exit status is 2 for usage errors and 1 for
runtime errors; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .analysis import (
    ModelSpec,
    concentration_experiment,
    convergence_experiment,
    er_limit,
    estimate_limit_ratio,
    neighborhood_histogram,
    parse_offspring,
    reference_histogram,
    tv_distance,
)
from .errors import InputError, NetControlError
from .generators import (
    DegreeSequence,
    gen_config_inout,
    gen_config_total,
    gen_er_directed,
    gen_pa,
    gen_regular_directed,
)
from .graph import BALL_MODES, MINUS
from .io import read_degrees, read_graph, write_edge_list, write_json_graph, write_labels
from .matching import METHODS, ratio
from .rewiring import VARIANTS, rewire
from .seeds import SEED_MAX, fresh_master_seed

MODELS = ("er", "config-inout", "config-total", "regular", "pa")
GRAPH_FORMATS = ("tsv-edges", "json")
REPORT_FORMATS = ("csv", "json")


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value <= SEED_MAX:
        raise argparse.ArgumentTypeError(f"seed must lie in [0, 2^64 - 1], got {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=False) + "\n")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=_seed, help="64-bit master seed; drawn and recorded when omitted")
    p.add_argument("--out", type=Path, help="output path")


def _add_model(p: argparse.ArgumentParser, many_n: bool = False) -> None:
    p.add_argument("--model", choices=MODELS)
    if many_n:
        p.add_argument("--n", type=_positive_int, nargs="+", help="ascending sizes")
    else:
        p.add_argument("--n", type=_positive_int)
    p.add_argument("--c", type=float, help="ER: mean total degree is 2c")
    p.add_argument("--r", type=int, help="PA: edges per new vertex")
    p.add_argument("--alpha", type=float, default=0.0, help="PA: uniform-attachment probability")
    p.add_argument("--d", type=int, help="regular: degree")
    p.add_argument("--degrees", type=Path, help="degree sequence file for config models")
    p.add_argument("--offspring", help="i.i.d. degree law for config-total, e.g. poisson:2 or constant:3")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="netcontrol", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="sample a random directed multigraph")
    _add_model(p)
    _add_common(p)
    p.add_argument("--variant", choices=VARIANTS, default="inout", help="regular: exact in/out or total")
    p.add_argument("--format", choices=GRAPH_FORMATS, default="tsv-edges")

    p = sub.add_parser("match", help="maximum directed matching and driver nodes")
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--method", choices=METHODS, default="exact")
    p.add_argument("--T", type=int, default=3, help="bounded method: longest augmenting path")
    _add_common(p)

    p = sub.add_parser("rewire", help="degree-preserving resample of a graph")
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--variant", choices=VARIANTS, default="inout")
    p.add_argument("--format", choices=GRAPH_FORMATS, default="tsv-edges")
    _add_common(p)

    p = sub.add_parser("concentration", help="spread of m over rewires vs the Azuma bound")
    p.add_argument("--in", dest="input", type=Path)
    _add_model(p)
    p.add_argument("--variant", choices=VARIANTS, default="inout")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--jobs", type=_positive_int, default=os.cpu_count() or 1)
    p.add_argument("--format", choices=REPORT_FORMATS, default="json")
    _add_common(p)

    p = sub.add_parser("convergence", help="mean of m across growing sizes")
    _add_model(p, many_n=True)
    p.add_argument("--variant", choices=VARIANTS, default="inout")
    p.add_argument("--trials", type=_positive_int, default=10, help="seeds per size")
    p.add_argument("--reference", help="float, or 'er' for the directed ER limit at --c")
    p.add_argument("--jobs", type=_positive_int, default=os.cpu_count() or 1)
    p.add_argument("--format", choices=REPORT_FORMATS, default="json")
    _add_common(p)

    p = sub.add_parser("limit", help="ER closed-form limit, optionally a tree estimate")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--T", type=int, help="path bound for the tree estimate")
    p.add_argument("--depth", type=int, help="tree truncation depth, must exceed --T")
    p.add_argument("--samples", type=_positive_int, default=10_000)
    p.add_argument("--offspring", help="tree offspring law; default poisson:<c>")
    p.add_argument("--directed", action="store_true", help="estimate on directed trees")
    _add_common(p)

    p = sub.add_parser("nbhd", help="histogram of rooted ball classes")
    p.add_argument("--in", dest="input", type=Path)
    _add_model(p)
    p.add_argument("--variant", choices=VARIANTS, default="inout")
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--samples", type=_positive_int, help="sampled roots; exhaustive when omitted")
    p.add_argument("--mode", choices=BALL_MODES, default=MINUS)
    p.add_argument("--reference-samples", type=_positive_int, default=10_000)
    _add_common(p)
    return parser


def _require(parser, args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        parser.error(f"{args.command} --model {args.model} requires {' '.join(missing)}")


def _degree_data(parser, args, variant: str, n: int | None, rng) -> DegreeSequence:
    if args.degrees is not None:
        ds = read_degrees(args.degrees)
        if ds.variant != variant:
            raise InputError(f"{args.degrees}: expected {variant} degree data, got {ds.variant}")
        return ds
    if variant == "total" and args.offspring is not None and n is not None:
        return DegreeSequence.total(parse_offspring(args.offspring).sample(rng, n))
    parser.error(f"--model {args.model} requires --degrees (or --offspring with --n)")


def _sample_model(parser, args, n: int | None, seed: int):
    model = args.model
    if model is None:
        parser.error("either --in or --model is required")
    if model == "er":
        _require(parser, args, "n", "c")
        return gen_er_directed(n, 2 * args.c, seed)
    if model == "pa":
        _require(parser, args, "n", "r")
        return gen_pa(n, args.r, args.alpha, seed)
    if model == "regular":
        _require(parser, args, "n", "d")
        return gen_regular_directed(n, args.d, "exact_inout" if args.variant == "inout" else "oriented", seed)
    rng = np.random.default_rng(seed)
    if model == "config-inout":
        return gen_config_inout(_degree_data(parser, args, "inout", n, rng), rng)
    return gen_config_total(_degree_data(parser, args, "total", n, rng), rng)


def _model_spec(parser, args) -> ModelSpec:
    if args.model == "er":
        _require(parser, args, "c")
        return ModelSpec("er", {"c": args.c})
    if args.model == "pa":
        _require(parser, args, "r")
        return ModelSpec("pa", {"r": args.r, "alpha": args.alpha})
    if args.model == "regular":
        _require(parser, args, "d")
        return ModelSpec("regular", {"d": args.d, "variant": "exact_inout" if args.variant == "inout" else "oriented"})
    if args.model == "config-total":
        _require(parser, args, "offspring")
        return ModelSpec("config-total", {"offspring": args.offspring})
    parser.error(f"convergence does not support --model {args.model}")


def _write_graph(graph, path: Path, fmt: str) -> None:
    if fmt == "json":
        write_json_graph(graph, path)
    else:
        write_edge_list(graph, path)


def _write_report(report, path: Path, fmt: str) -> None:
    if fmt == "csv":
        report.write_csv(path)
    else:
        report.write_json(path)


def cmd_generate(parser, args, seed):
    if args.out is None:
        parser.error("generate requires --out")
    graph = _sample_model(parser, args, args.n, seed)
    _write_graph(graph, args.out, args.format)
    return {"command": "generate", "model": args.model, "n": graph.n, "num_edges": graph.num_edges,
            "seed": seed, "out": str(args.out)}


def cmd_match(parser, args, seed):
    graph, labels = read_graph(args.input)
    report = ratio(graph, args.method, args.T, seed)
    drivers_path = args.out or args.input.with_name(args.input.name + ".drivers.txt")
    labels_path = drivers_path.with_suffix(".labels.tsv")
    drivers_path.write_text("".join(labels[v] + "\n" for v in report.drivers), encoding="utf-8")
    write_labels(labels, labels_path)
    payload = {"command": "match", "n": report.n, "m": report.m, "n_D": report.n_d, "matching_size": report.matching_size,
               "drivers_path": str(drivers_path), "labels_path": str(labels_path), "method": args.method}
    if args.method != "exact":
        payload["seed"] = seed
    return payload


def cmd_rewire(parser, args, seed):
    if args.out is None:
        parser.error("rewire requires --out")
    graph, _ = read_graph(args.input)
    out = rewire(graph, args.variant, seed)
    _write_graph(out, args.out, args.format)
    return {"command": "rewire", "variant": args.variant, "n": out.n, "num_edges": out.num_edges,
            "seed": seed, "out": str(args.out)}


def cmd_concentration(parser, args, seed):
    if args.input is not None:
        graph, _ = read_graph(args.input)
    else:
        graph = _sample_model(parser, args, args.n, seed)
    report = concentration_experiment(graph, args.variant, args.trials, seed, args.jobs)
    if args.out is not None:
        _write_report(report, args.out, args.format)
    violations = [r["epsilon"] for r in report.bound_table
                  if r["azuma_bound"] is not None and r["empirical_tail"] > r["azuma_bound"]]
    return {"command": "concentration", "seed": seed, "summary": report.summary(),
            "bound_violations": violations, "out": None if args.out is None else str(args.out)}


def cmd_convergence(parser, args, seed):
    if args.n is None:
        parser.error("convergence requires --n")
    if args.model is None:
        parser.error("convergence requires --model")
    spec = _model_spec(parser, args)
    reference = None
    if args.reference == "er":
        if args.model != "er":
            parser.error("--reference er needs --model er")
        reference = er_limit(args.c).directed_ratio_limit
    elif args.reference is not None:
        reference = float(args.reference)
    report = convergence_experiment(spec, args.n, args.trials, seed, args.jobs, reference)
    if args.out is not None:
        _write_report(report, args.out, args.format)
    return {"command": "convergence", "seed": seed, "groups": report.groups,
            "out": None if args.out is None else str(args.out)}


def cmd_limit(parser, args, seed):
    payload = {"command": "limit", **er_limit(args.c).as_dict()}
    if args.T is not None or args.depth is not None:
        if args.T is None or args.depth is None:
            parser.error("the tree estimate needs both --T and --depth")
        off = parse_offspring(args.offspring or f"poisson:{args.c}")
        est = estimate_limit_ratio(off, args.directed, args.depth, args.T, args.samples, seed)
        payload["estimate"] = est.as_dict()
        payload["seed"] = seed
    if args.out is not None:
        args.out.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return payload


def cmd_nbhd(parser, args, seed):
    if args.input is not None:
        graph, _ = read_graph(args.input)
    else:
        graph = _sample_model(parser, args, args.n, seed)
    hist = neighborhood_histogram(graph, args.radius, args.samples, seed, args.mode)
    payload = {"command": "nbhd", "seed": seed, "n": graph.n, "radius": args.radius, "mode": args.mode,
               "samples": hist.samples, "classes": len(hist.counts), "overflow": hist.overflow}
    report = hist.as_dict()
    if args.offspring is not None:
        ref = reference_histogram(parse_offspring(args.offspring), args.radius, args.reference_samples,
                                  seed, directed=True, mode=args.mode)
        payload["tv_to_reference"] = report["tv_to_reference"] = tv_distance(hist, ref)
    if args.out is not None:
        args.out.write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
        payload["out"] = str(args.out)
    return payload


COMMANDS = {
    "generate": cmd_generate,
    "match": cmd_match,
    "rewire": cmd_rewire,
    "concentration": cmd_concentration,
    "convergence": cmd_convergence,
    "limit": cmd_limit,
    "nbhd": cmd_nbhd,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    seed = args.seed if args.seed is not None else fresh_master_seed()
    try:
        payload = COMMANDS[args.command](parser, args, seed)
    except (NetControlError, OSError, ValueError, KeyError) as exc:
        print(f"netcontrol: error: {exc}", file=sys.stderr)
        return 1
    _emit(payload)
    return 0


if __name__ == "__main__":
    sys.exit(main())
