"""Command-line interface.

Subcommands: count, optimize, certify, verify, table, oracle. Output is
deterministic JSON (sorted keys) or aligned text; exit code 0 means every
assertion the invocation made passed.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from fractions import Fraction
from pathlib import Path

from . import bounds as boundsmod
from . import oracle as oraclemod
from .classes import sparse_k33_free
from .counting import count_copies, count_cycle_copies, count_path_copies
from .graphs import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    from_graph6,
    graph_from_json,
    graph_to_json_dict,
    icosahedron_graph,
    is_cycle,
    is_path,
    matching_graph,
    path_graph,
    star_graph,
)
from .mass import mass_from_json, mass_to_json_dict
from .objectives import BlowupObjective, Objective, PathObjective
from .optimize import (
    OptimizerConfig,
    certified_optimum,
    check_mass_bounds,
    check_regularity,
    kkt_residual,
    maximize,
)


def parse_graph_spec(text: str) -> Graph:
    """Accept named graphs (K4, C6, P5, K2,3, icosahedron, star4, matching3),
    graph6 strings prefixed g6:, inline JSON, or a path to a JSON file."""
    s = text.strip()
    if s.startswith("g6:"):
        return from_graph6(s[3:])
    if s.startswith("{"):
        return graph_from_json(s)
    if s.endswith(".json"):
        return graph_from_json(Path(s).read_text())
    if s == "icosahedron":
        return icosahedron_graph()
    import re

    m = re.fullmatch(r"K(\d+),(\d+)", s)
    if m:
        return complete_bipartite(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"K(\d+)", s)
    if m:
        return complete_graph(int(m.group(1)))
    m = re.fullmatch(r"C(\d+)", s)
    if m:
        return cycle_graph(int(m.group(1)))
    m = re.fullmatch(r"P(\d+)", s)
    if m:
        return path_graph(int(m.group(1)))
    m = re.fullmatch(r"star(\d+)", s)
    if m:
        return star_graph(int(m.group(1)))
    m = re.fullmatch(r"matching(\d+)", s)
    if m:
        return matching_graph(int(m.group(1)))
    raise ValueError(f"cannot parse graph spec {text!r}")


def _parse_sizes(text: str) -> tuple[int, ...]:
    if ".." in text:
        lo, hi = text.split("..")
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(x) for x in text.split(","))


def _objective_from_args(args) -> Objective:
    if args.objective == "optp":
        if args.m is None:
            raise ValueError("optp needs --m")
        return PathObjective(args.m)
    if args.pattern is None:
        raise ValueError("optb needs --pattern")
    return BlowupObjective(parse_graph_spec(args.pattern), args.k)


def _emit(payload: dict, args) -> None:
    if args.format == "json":
        text = json.dumps(payload, sort_keys=True, indent=2)
    else:
        text = payload.get("text", json.dumps(payload, sort_keys=True, indent=2))
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def _cmd_count(args) -> tuple[dict, bool]:
    host = parse_graph_spec(args.host)
    pattern = parse_graph_spec(args.pattern)
    if is_path(pattern):
        n_copies = count_path_copies(host, pattern.n)
    elif is_cycle(pattern):
        n_copies = count_cycle_copies(host, pattern.n)
    else:
        n_copies = count_copies(host, pattern)
    payload = {
        "host": graph_to_json_dict(host),
        "pattern": graph_to_json_dict(pattern),
        "count": n_copies,
        "ok": True,
    }
    return payload, True


def _cmd_optimize(args) -> tuple[dict, bool]:
    objective = _objective_from_args(args)
    cfg = OptimizerConfig(
        restarts=args.restarts,
        max_iterations=args.iters,
        tolerance=args.tol,
        sizes=_parse_sizes(args.sizes) if args.sizes else None,
        seed=args.seed,
    )
    result = maximize(objective, cfg)
    cert = certified_optimum(objective)
    checks = {"kkt_residual": result.kkt_residual}
    ok = result.converged and result.value <= float(cert.upper) + 1e-9
    if isinstance(objective, BlowupObjective):
        reg = check_regularity(result.best_mass, objective.h, objective.k)
        mb = check_mass_bounds(result.best_mass, objective.h, objective.k, tolerance=1e-6)
        checks["regularity_max_violation"] = max(
            reg.max_edge_violation, reg.max_vertex_violation
        )
        checks["mass_bounds_max_violation"] = max(
            mb.max_edge_violation, mb.max_vertex_violation
        )
        ok = ok and reg.ok and mb.ok
    payload = {
        "objective": result.objective_label,
        "value": result.value,
        "kkt_residual": result.kkt_residual,
        "stationarity": result.stationarity,
        "converged": result.converged,
        "ground_sizes_swept": list(result.ground_sizes_swept),
        "size_values": [[s, v] for s, v in result.size_values],
        "restarts": result.restarts,
        "heuristic_sweep": result.heuristic_sweep,
        "notes": list(result.notes),
        "best_mass": mass_to_json_dict(result.best_mass),
        "certified": {
            "exact": str(cert.exact) if cert.exact is not None else None,
            "lower": str(cert.lower),
            "upper": str(cert.upper),
            "achieved": cert.achieved,
            "note": cert.note,
        },
        "checks": checks,
        "ok": ok,
    }
    return payload, ok


def _cmd_certify(args) -> tuple[dict, bool]:
    objective = _objective_from_args(args)
    cert = certified_optimum(objective)
    payload = {
        "objective": objective.label(),
        "exact": str(cert.exact) if cert.exact is not None else None,
        "exact_float": float(cert.exact) if cert.exact is not None else None,
        "lower": str(cert.lower),
        "upper": str(cert.upper),
        "achieved": cert.achieved,
        "note": cert.note,
    }
    ok = True
    if args.mass:
        mass = mass_from_json(Path(args.mass).read_text())
        kkt = kkt_residual(mass, objective)
        value = objective.reference_value(mass)
        payload["mass_value"] = float(value)
        payload["mass_kkt_residual"] = kkt.residual
        ok = float(value) <= float(cert.upper) + 1e-9
        if isinstance(objective, BlowupObjective):
            reg = check_regularity(mass, objective.h, objective.k)
            mb = check_mass_bounds(mass, objective.h, objective.k, tolerance=1e-6)
            payload["regularity_ok"] = reg.ok
            payload["mass_bounds_ok"] = mb.ok
            ok = ok and mb.ok
    payload["ok"] = ok
    return payload, ok


def _cmd_verify(args) -> tuple[dict, bool]:
    if args.suite == "inequalities":
        grid3 = oraclemod.GridSpec(3, args.resolution)
        grid4 = oraclemod.GridSpec(min(args.dimension, 4), args.resolution)
        reports = [
            oraclemod.verify_square_pair_bound(args.samples, grid4, seed=args.seed),
            oraclemod.verify_cross_pair_bound(args.samples, grid3, seed=args.seed),
            oraclemod.verify_cyclic_quartic_bound(args.samples, grid3, seed=args.seed),
        ]
        ok = all(r.ok for r in reports)
        payload = {
            "suite": "inequalities",
            "reports": [
                {
                    "name": r.name,
                    "random_samples": r.random_samples,
                    "grid_points": r.grid_points,
                    "violations": r.violations,
                    "max_ratio": r.max_ratio,
                }
                for r in reports
            ],
            "ok": ok,
        }
        return payload, ok
    if args.suite == "2color":
        rep = oraclemod.verify_cyclic_two_coloring(args.mmax)
        payload = {"suite": "2color", **asdict(rep)}
        return payload, rep.ok
    if args.suite == "grid":
        objective = _objective_from_args(args)
        rep = oraclemod.grid_maximize(
            objective, args.ground, args.resolution, mode=args.mode
        )
        cert = certified_optimum(objective)
        ok = rep.value <= float(cert.upper) + 1e-9
        payload = {
            "suite": "grid",
            "objective": objective.label(),
            "value": rep.value,
            "lipschitz_gap": rep.lipschitz_gap,
            "lattice_points": rep.lattice_points,
            "certified_upper": str(cert.upper),
            "argmax": mass_to_json_dict(rep.argmax),
            "ok": ok,
        }
        return payload, ok
    raise ValueError(f"unknown suite {args.suite!r}")


def _cmd_table(args) -> tuple[dict, bool]:
    targets = [boundsmod.parse_target(t) for t in args.targets.split(",")]
    n_values = [int(x) for x in args.n.split(",")]
    table = boundsmod.bound_table(targets, n_values)
    ok = all(0.0 <= r.ratio <= 1.5 for r in table.rows)
    payload = table.to_json_dict()
    payload["ok"] = ok
    payload["text"] = table.to_text()
    return payload, ok


def _cmd_oracle(args) -> tuple[dict, bool]:
    pattern = parse_graph_spec(args.pattern)
    rep = oraclemod.exhaustive_extremal(
        args.n, pattern, graph_class=args.graph_class, c=Fraction(args.c)
    )
    payload = {
        "n": rep.n,
        "graph_class": rep.graph_class,
        "max_count": rep.max_count,
        "argmax": graph_to_json_dict(rep.argmax),
        "graphs_in_class": rep.graphs_in_class,
        "ok": True,
    }
    return payload, True


def _cmd_membership(args) -> tuple[dict, bool]:
    g = parse_graph_spec(args.graph)
    rep = sparse_k33_free(g, Fraction(args.c))
    payload = {
        "graph": graph_to_json_dict(g),
        "c": str(rep.c),
        "member": rep.member,
        "max_density": str(rep.max_density),
        "k33_witness": list(map(list, rep.k33_witness)) if rep.k33_witness else None,
        "density_witness": sorted(rep.density_witness) if rep.density_witness else None,
        "ok": rep.member,
    }
    return payload, rep.member


def _add_common_flags(p: argparse.ArgumentParser, top: bool) -> None:
    # accepted both before and after the subcommand; the subcommand copies
    # use SUPPRESS defaults so they never clobber values parsed at top level
    p.add_argument("--format", choices=("json", "text"),
                   default="json" if top else argparse.SUPPRESS)
    p.add_argument("--out", default=None if top else argparse.SUPPRESS)
    p.add_argument("--seed", type=int, default=0 if top else argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="copymax")
    _add_common_flags(parser, top=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_command(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        _add_common_flags(p, top=False)
        return p

    p = add_command("count", "count copies of a pattern in a host")
    p.add_argument("--host", required=True)
    p.add_argument("--pattern", required=True)
    p.set_defaults(func=_cmd_count)

    p = add_command("optimize", "maximize a functional over pair masses")
    p.add_argument("--objective", choices=("optp", "optb"), required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--pattern", default=None)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--sizes", default=None, help="e.g. 3..6 or 3,4,5")
    p.add_argument("--restarts", type=int, default=64)
    p.add_argument("--iters", type=int, default=200_000)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=_cmd_optimize)

    p = add_command("certify", "closed forms, brackets, and mass checks")
    p.add_argument("--objective", choices=("optp", "optb"), required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--pattern", default=None)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--mass", default=None, help="path to a mass JSON file")
    p.set_defaults(func=_cmd_certify)

    p = add_command("verify", "oracle suites")
    p.add_argument("--suite", choices=("inequalities", "2color", "grid"), required=True)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--resolution", type=int, default=40)
    p.add_argument("--dimension", type=int, default=4)
    p.add_argument("--mmax", type=int, default=20)
    p.add_argument("--objective", choices=("optp", "optb"), default="optp")
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--pattern", default=None)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--ground", type=int, default=3)
    p.add_argument("--mode", choices=("float", "rational"), default="float")
    p.set_defaults(func=_cmd_verify)

    p = add_command("table", "lower/upper bound tables")
    p.add_argument("--targets", required=True, help="comma list, e.g. P7,C6")
    p.add_argument("--n", required=True, help="comma list, e.g. 12,21,30")
    p.set_defaults(func=_cmd_table)

    p = add_command("oracle", "exhaustive tiny-graph extremal search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--graph-class", choices=("planar", "sparse"), default="planar")
    p.add_argument("--c", default="2")
    p.set_defaults(func=_cmd_oracle)

    p = add_command("membership", "host-class membership with witnesses")
    p.add_argument("--graph", required=True)
    p.add_argument("--c", default="2")
    p.set_defaults(func=_cmd_membership)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload, ok = args.func(args)
    except (ValueError, OSError) as exc:
        print(json.dumps({"error": str(exc), "ok": False}, sort_keys=True))
        return 2
    _emit(payload, args)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
