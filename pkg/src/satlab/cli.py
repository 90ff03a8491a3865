"""Command-line front end.

Subcommands: gen, saturate, weaksat, closure, oracle, experiment.
Graphs are read and written in the edge-list text format ("n m" header,
then one "u v" line per edge with u < v). Exit code 0 means every
requested verification passed; 1 means some verification failed; 2 means
bad usage or input.
"""

from __future__ import annotations

import argparse
import sys

from .experiment import ExperimentConfig, run
from .graph import (
    GraphFormatError,
    complete_graph,
    gnp_generate,
    parse_graph,
    serialize_graph,
)
from .oracle import OracleBudgetError, exact_sat, exact_wsat
from .rng import RngHandle
from .saturation import (
    default_params,
    is_ks_saturated,
    layered_construction,
)
from .weaksat import (
    WeakSatStageError,
    bootstrap_closure,
    construct_weak_sat,
    is_weakly_saturated,
    strongly_saturated_in_kn,
    wsat_formula,
)


def _parse_params(text: str) -> dict[str, int]:
    override: dict[str, int] = {}
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if "=" not in piece:
            raise ValueError(f"bad --params entry {piece!r}; expected name=value")
        name, _, value = piece.partition("=")
        name = name.strip()
        if name not in ("a1", "a2", "a3"):
            raise ValueError(f"unknown parameter {name!r}; only a1, a2, a3 can be overridden")
        override[name] = int(value)
    return override


def _parse_n_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _load_graph(path: str):
    with open(path, "r", encoding="ascii") as fh:
        return parse_graph(fh.read())


def _write_graph(graph, path: str | None) -> None:
    text = serialize_graph(graph)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii", newline="") as fh:
            fh.write(text)


def _host_graph(args) -> "tuple":
    """Host graph from --in, or G(n, p, seed)."""
    if getattr(args, "infile", None):
        return _load_graph(args.infile)
    if args.n is None:
        raise ValueError("either --in or --n is required")
    return gnp_generate(args.n, args.p, RngHandle(args.seed).child(0))


def _add_common(sub, *, n=True, p=True, s=True, seed=True, out=True, infile=False):
    if n:
        sub.add_argument("--n", type=int, default=None, help="vertex count")
    if p:
        sub.add_argument("--p", type=float, default=0.5, help="edge probability")
    if s:
        sub.add_argument("--s", type=int, default=3, help="clique size")
    if seed:
        sub.add_argument("--seed", type=int, default=0, help="master seed")
    if out:
        sub.add_argument("--out", default=None, help="output path")
    if infile:
        sub.add_argument("--in", dest="infile", default=None, help="input graph file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="satlab",
        description="Saturation and weak-saturation laboratory for cliques in random graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate G(n,p) and write its edge list")
    _add_common(p_gen, s=False)

    p_sat = sub.add_parser("saturate", help="build and verify a saturated subgraph")
    _add_common(p_sat, infile=True)
    p_sat.add_argument("--params", default=None, help="override a1=..,a2=..,a3=..")

    p_weak = sub.add_parser("weaksat", help="build and verify a weakly saturated subgraph")
    _add_common(p_weak, infile=True)

    p_clo = sub.add_parser("closure", help="bootstrap closure of a subgraph in a host")
    _add_common(p_clo, n=False, p=False)
    p_clo.add_argument("--in", dest="infile", required=True, help="subgraph file")
    p_clo.add_argument("--host", default=None, help="host graph file (default: complete graph)")

    p_or = sub.add_parser("oracle", help="exact minimum saturation numbers (tiny hosts)")
    _add_common(p_or, p=False, out=False, infile=True)
    p_or.add_argument("--max-edges", type=int, default=None, help="search budget override")

    p_exp = sub.add_parser("experiment", help="seeded multi-trial experiments")
    p_exp.add_argument("--mode", required=True, help="strong|weak|oracle-sweep|goodness|edgecover|naive-compare")
    p_exp.add_argument("--n", required=True, help="comma-separated n values")
    p_exp.add_argument("--p", type=float, default=0.5)
    p_exp.add_argument("--s", type=int, default=3)
    p_exp.add_argument("--trials", type=int, default=1)
    p_exp.add_argument("--seed", type=int, default=0)
    p_exp.add_argument("--jobs", type=int, default=1)
    p_exp.add_argument("--format", dest="out_format", choices=("csv", "json"), default="csv")
    p_exp.add_argument("--out", default=None)
    p_exp.add_argument("--params", default=None, help="override a1=..,a2=..,a3=..")
    p_exp.add_argument("--num-pairs", type=int, default=100_000, help="edgecover sample size")
    p_exp.add_argument("--t", type=int, default=3, help="goodness scale")
    p_exp.add_argument("--gamma", type=float, default=0.02, help="goodness density")
    p_exp.add_argument("--samples", type=int, default=200, help="goodness sample count")
    return parser


def _cmd_gen(args) -> int:
    if args.n is None:
        raise ValueError("--n is required")
    G = gnp_generate(args.n, args.p, RngHandle(args.seed).child(0))
    _write_graph(G, args.out)
    print(f"generated n={G.n} m={G.m}", file=sys.stderr)
    return 0


def _cmd_saturate(args) -> int:
    G = _host_graph(args)
    params = default_params(G.n, args.p, args.s)
    if args.params:
        from dataclasses import replace

        params = replace(params, **_parse_params(args.params))
        params.check_against(G.n)
    H, partition, report = layered_construction(
        G, args.p, args.s, params, RngHandle(args.seed).child(1)
    )
    if args.out:
        _write_graph(H, args.out)
    aux = report.aux or {}
    print(f"host: n={G.n} m={G.m}")
    print(f"params: a1={params.a1} a2={params.a2} a3={params.a3} k={params.k} a4={params.a4}")
    print(f"edges: {H.m}  (pre-extension {aux.get('pre_extension_edges')})")
    print(f"rest_weak: {aux.get('rest_weak_size')}")
    print(f"incomplete_rest_pairs: {aux.get('incomplete_rest_pairs')}")
    print(f"incomplete_bridge_edges: {aux.get('incomplete_bridge_edges')}")
    print(f"core_failures: {list(aux.get('core_failures', ()))}")
    print(f"ks_free: {report.is_ks_free}  saturated: {report.is_saturated}")
    return 0 if report.is_saturated else 1


def _cmd_weaksat(args) -> int:
    G = _host_graph(args)
    target = wsat_formula(G.n, args.s)
    try:
        H, trace = construct_weak_sat(G, args.s, RngHandle(args.seed).child(1))
    except WeakSatStageError as exc:
        print(f"construction failed ({exc})")
        return 1
    verified = is_weakly_saturated(H, G, args.s)
    cert = strongly_saturated_in_kn(G, args.s)
    if args.out:
        _write_graph(H, args.out)
    print(f"host: n={G.n} m={G.m}")
    print(f"edges: {H.m}  formula: {target}")
    print(f"base: {sorted(trace.base)}  cone_size: {len(trace.base_cone)}")
    print(f"weakly_saturated: {verified}  strongly_saturated_in_kn: {cert}")
    return 0 if verified and H.m == target else 1


def _cmd_closure(args) -> int:
    H = _load_graph(args.infile)
    G = _load_graph(args.host) if args.host else complete_graph(H.n)
    closed, trace = bootstrap_closure(H, G, args.s, RngHandle(args.seed).child(0))
    if args.out:
        _write_graph(closed, args.out)
    print(f"start_edges: {H.m}")
    print(f"added: {len(trace.steps)}")
    print(f"closure_edges: {closed.m}  host_edges: {G.m}")
    print(f"reaches_host: {closed == G}")
    return 0


def _cmd_oracle(args) -> int:
    if getattr(args, "infile", None):
        G = _load_graph(args.infile)
        label = args.infile
    else:
        if args.n is None:
            raise ValueError("either --in or --n is required")
        G = complete_graph(args.n)
        label = f"K_{args.n}"
    sat_budget = args.max_edges if args.max_edges is not None else 24
    wsat_budget = args.max_edges if args.max_edges is not None else 18
    sat_res = exact_sat(G, args.s, max_edges=sat_budget)
    wsat_res = exact_wsat(G, args.s, max_edges=wsat_budget)
    sat_ok = is_ks_saturated(sat_res.witness, G, args.s).is_saturated
    wsat_ok = is_weakly_saturated(wsat_res.witness, G, args.s)
    print(f"host: {label} (n={G.n} m={G.m}), s={args.s}")
    print(f"sat: {sat_res.value}  nodes: {sat_res.nodes_explored}  witness_ok: {sat_ok}")
    print(f"wsat: {wsat_res.value}  nodes: {wsat_res.nodes_explored}  witness_ok: {wsat_ok}")
    if G.n >= args.s - 1:
        print(f"formula: {wsat_formula(G.n, args.s)}")
    return 0 if sat_ok and wsat_ok else 1


def _cmd_experiment(args) -> int:
    config = ExperimentConfig(
        mode=args.mode,
        n_values=_parse_n_list(args.n),
        p=args.p,
        s=args.s,
        trials=args.trials,
        master_seed=args.seed,
        out_path=args.out,
        out_format=args.out_format,
        jobs=args.jobs,
        params_override=_parse_params(args.params) if args.params else None,
        num_pairs=args.num_pairs,
        t=args.t,
        gamma=args.gamma,
        samples=args.samples,
    )
    records, summary = run(config)
    for n, row in summary["per_n"].items():
        mean = row["mean_ratio"]
        mean_text = f"{mean:.4f}" if mean is not None else "-"
        print(
            f"n={n}: trials={row['trials']} verified={row['verified']}/{row['trials']} "
            f"mean_ratio={mean_text} wall_ms={row['wall_time_ms']:.0f}"
        )
    if args.mode == "naive-compare":
        for rec in records:
            print(
                f"n={rec.n} trial={rec.trial_index} "
                f"naive_edges={rec.aux['naive_edge_count']} "
                f"layered_edges={rec.edge_count} "
                f"naive/layered={rec.aux['naive_vs_layered_ratio']:.4f}"
            )
    if args.out:
        print(f"wrote {len(records)} records to {args.out} ({args.out_format})")
    return 0 if summary["all_verified"] else 1


_COMMANDS = {
    "gen": _cmd_gen,
    "saturate": _cmd_saturate,
    "weaksat": _cmd_weaksat,
    "closure": _cmd_closure,
    "oracle": _cmd_oracle,
    "experiment": _cmd_experiment,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, GraphFormatError, OracleBudgetError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
