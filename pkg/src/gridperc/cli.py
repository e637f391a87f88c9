"""Command-line driver.

Subcommands: formula, extremal, edges, closure, certify, audit, minperc,
rneighbour, wsat, sweep.  Output is JSON by default; tabular commands also
render CSV via --format csv.  Exit codes: 0 success / verified / percolated,
1 negative result (non-percolation, invalid certificate, nothing found within
bounds), 2 invalid input, 3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time

from .certificate import (
    CertificateError,
    audit_percolating_set,
    certificate_to_dict,
    certified_lower_bound,
)
from .grid import (
    GridSpec,
    count_edges,
    decode_vertex,
    encode_vertex,
    enumerate_edges,
    extremal_set,
    extremal_size,
)
from .percolation import closure, grid_hypergraph, read_hypergraph, weak_saturation_hypergraph
from .search import (
    DEFAULT_BUDGET,
    SearchBudgetExceeded,
    greedy_r_neighbour_upper_bound,
    grid_graph,
    hypercube_graph,
    min_percolating_exact,
    min_r_neighbour_percolating,
    r_neighbour_closure,
)


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in str(text).split(",") if tok != ""]
    except ValueError:
        raise ValueError(f"expected a comma-separated integer list, got {text!r}") from None


def _parse_spec(args) -> GridSpec:
    ns = _int_list(args.n)
    ts = _int_list(args.t)
    if not ns or not ts:
        raise ValueError("--n and --t must each give at least one value")
    d = args.d if args.d is not None else max(len(ns), len(ts))
    if len(ns) == 1:
        ns = ns * d
    if len(ts) == 1:
        ts = ts * d
    if len(ns) != d or len(ts) != d:
        raise ValueError(
            f"inconsistent list lengths: --d {d}, --n gives {len(ns)}, --t gives {len(ts)}"
        )
    return GridSpec(tuple(ns), tuple(ts), args.r)


def _add_spec_args(p: argparse.ArgumentParser, with_family: bool = True) -> None:
    p.add_argument("--d", type=int, default=None, help="number of axes (inferred from --n/--t lists if omitted)")
    p.add_argument("--r", type=int, required=True, help="number of varying axes per edge")
    p.add_argument("--n", required=True, help="axis length, or comma list of per-axis lengths")
    p.add_argument("--t", required=True, help="thickness, or comma list of per-axis thicknesses")
    if with_family:
        p.add_argument("--family", choices=["K", "P"], default="K", help="edge family (default K)")


def _add_output_args(p: argparse.ArgumentParser, formats=("json",)) -> None:
    p.add_argument("--out", default=None, help="write output to this file instead of stdout")
    p.add_argument("--format", choices=list(formats), default=formats[0])


def _write(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, payload) -> None:
    _write(args, json.dumps(payload, indent=2) + "\n")


def _emit_csv(args, header, rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _write(args, buf.getvalue())


def _cmd_formula(args) -> int:
    spec = _parse_spec(args)
    value = extremal_size(spec)
    if args.format == "csv":
        _emit_csv(args, ["extremalSize"], [[value]])
    else:
        _emit_json(args, {"extremalSize": value})
    return 0


def _cmd_extremal(args) -> int:
    spec = _parse_spec(args)
    u = extremal_set(spec)
    if args.format == "csv":
        header = [f"x{k}" for k in range(1, spec.d + 1)]
        _emit_csv(args, header, [list(v) for v in u])
    else:
        _emit_json(args, {"uSize": len(u), "vertices": [list(v) for v in u]})
    return 0


def _cmd_edges(args) -> int:
    spec = _parse_spec(args)
    count = count_edges(spec, args.family)
    if args.format == "csv":
        if args.list:
            rows = [
                [i, " ".join(str(encode_vertex(spec, v)) for v in edge.vertices())]
                for i, edge in enumerate(enumerate_edges(spec, args.family))
            ]
            _emit_csv(args, ["index", "vertices"], rows)
        else:
            _emit_csv(args, ["count"], [[count]])
        return 0
    payload = {"family": args.family, "count": count}
    if args.list:
        payload["edges"] = [
            {
                "varying": list(edge.varying),
                "values": [list(vals) for vals in edge.values],
                "fixed": list(edge.fixed),
                "vertices": [encode_vertex(spec, v) for v in edge.vertices()],
            }
            for edge in enumerate_edges(spec, args.family)
        ]
    _emit_json(args, payload)
    return 0


def _cmd_closure(args) -> int:
    if args.input:
        h = read_hypergraph(args.input)
        if args.infected is None:
            raise ValueError("--infected is required with --input")
        initial = _int_list(args.infected)
    else:
        if args.n is None or args.t is None or args.r is None:
            raise ValueError("provide either --input FILE or a grid spec (--n/--t/--r)")
        spec = _parse_spec(args)
        h = grid_hypergraph(spec, args.family)
        if args.initial_u:
            initial = [encode_vertex(spec, v) for v in extremal_set(spec)]
        elif args.infected is not None:
            initial = _int_list(args.infected)
        else:
            raise ValueError("provide --infected ids or --initial-u")
    result = closure(h, initial)
    perc = len(result.final) == h.num_vertices
    _emit_json(
        args,
        {
            "numVertices": h.num_vertices,
            "initial": sorted(result.initial),
            "finalSize": len(result.final),
            "final": sorted(result.final),
            "percolates": perc,
            "trace": [[v, e] for v, e in result.trace],
        },
    )
    return 0 if perc else 1


def _cmd_certify(args) -> int:
    spec = _parse_spec(args)
    cert = certified_lower_bound(spec, args.family, jobs=args.jobs)
    _emit_json(args, certificate_to_dict(cert, include_f_vectors=args.include_f_vectors))
    return 0


def _cmd_audit(args) -> int:
    spec = _parse_spec(args)
    cert = certified_lower_bound(spec, args.family, jobs=args.jobs)
    if args.infected is not None:
        vertices = [decode_vertex(spec, i) for i in _int_list(args.infected)]
    else:
        vertices = extremal_set(spec)
    if args.remove:
        drop = set(_int_list(args.remove))
        vertices = [v for v in vertices if encode_vertex(spec, v) not in drop]
    report = audit_percolating_set(cert, vertices, family=args.family)
    _emit_json(
        args,
        {
            "family": args.family,
            "initialSize": report.initial_size,
            "percolated": report.percolated,
            "seedRank": report.seed_rank,
            "uSize": report.u_size,
            "stepsInSpan": list(report.steps_in_span),
            "allStepsInSpan": report.all_steps_in_span,
            "ok": report.ok,
        },
    )
    return 0 if report.ok else 1


def _cmd_minperc(args) -> int:
    spec = _parse_spec(args)
    h = grid_hypergraph(spec, args.family)
    if args.exhaustive:
        result = min_percolating_exact(h, budget=args.budget)
        if result is None:
            print("error: no percolating set found within bounds", file=sys.stderr)
            return 1
        payload = {
            "family": args.family,
            "mode": "exhaustive",
            "minimum": result.minimum,
            "witness": list(result.witness),
            "tested": result.tested,
        }
    else:
        cert = certified_lower_bound(spec, args.family)
        witness = sorted(encode_vertex(spec, v) for v in extremal_set(spec))
        run = closure(h, witness)
        if len(run.final) != h.num_vertices:
            raise CertificateError("extremal set failed to percolate")
        payload = {
            "family": args.family,
            "mode": "certified",
            "minimum": cert.lower_bound,
            "witness": witness,
            "tested": 1,
        }
    if args.format == "csv":
        _emit_csv(
            args,
            ["family", "mode", "minimum", "witness", "tested"],
            [[payload["family"], payload["mode"], payload["minimum"],
              " ".join(map(str, payload["witness"])), payload["tested"]]],
        )
    else:
        _emit_json(args, payload)
    return 0


def _cmd_rneighbour(args) -> int:
    if (args.grid is None) == (args.hypercube is None):
        raise ValueError("provide exactly one of --grid or --hypercube")
    if args.grid is not None:
        g = grid_graph(_int_list(args.grid))
        desc = {"kind": "grid", "dims": _int_list(args.grid)}
    else:
        g = hypercube_graph(args.hypercube)
        desc = {"kind": "hypercube", "d": args.hypercube}
    if args.exhaustive:
        result = min_r_neighbour_percolating(g, args.r, budget=args.budget)
        if result is None:
            print("error: no percolating set found within bounds", file=sys.stderr)
            return 1
        payload = {
            "graph": desc,
            "r": args.r,
            "mode": "exhaustive",
            "minimum": result.minimum,
            "witness": list(result.witness),
            "tested": result.tested,
        }
    else:
        witness = greedy_r_neighbour_upper_bound(g, args.r, trials=args.trials, seed=args.seed)
        payload = {
            "graph": desc,
            "r": args.r,
            "mode": "greedy",
            "upperBound": len(witness),
            "witness": sorted(witness),
            "trials": args.trials,
            "seed": args.seed,
        }
    # independent sanity check on whichever witness we are about to report
    if len(r_neighbour_closure(g, payload["witness"], args.r)) != g.num_vertices:
        raise CertificateError("reported witness does not percolate")
    _emit_json(args, payload)
    return 0


def _cmd_wsat(args) -> int:
    h = weak_saturation_hypergraph(args.n, args.k)
    result = min_percolating_exact(h, budget=args.budget)
    if result is None:
        print("error: no percolating set found within bounds", file=sys.stderr)
        return 1
    _emit_json(
        args,
        {
            "n": args.n,
            "k": args.k,
            "numVertices": h.num_vertices,
            "numEdges": len(h.edges),
            "minimum": result.minimum,
            "witness": list(result.witness),
            "tested": result.tested,
        },
    )
    return 0


SWEEP_HEADER = ["d", "r", "n", "t", "family", "formula", "lower_bound", "brute_force", "edges", "u_size", "runtime_ms"]


def _sweep_specs(args):
    for d in range(1, args.max_d + 1):
        for r in range(1, d + 1):
            for n in range(2, args.max_n + 1):
                if n**d > args.max_cells:
                    continue
                for t in range(2, n + 1):
                    yield GridSpec.cube(n, d, t, r)


def _cmd_sweep(args) -> int:
    families = [f.strip() for f in args.families.split(",") if f.strip()]
    for f in families:
        if f not in ("K", "P"):
            raise ValueError(f"unknown family {f!r} in --families")
    rows = []
    for spec in _sweep_specs(args):
        cert = certified_lower_bound(spec, "K", jobs=args.jobs)
        u_size = len(extremal_set(spec))
        for family in families:
            started = time.perf_counter()
            formula = extremal_size(spec)
            edge_count = count_edges(spec, family)
            brute = ""
            if args.brute_tests > 0:
                nv = spec.num_vertices
                predicted = sum(math.comb(nv, k) for k in range(formula + 1))
                if predicted <= args.brute_tests:
                    found = min_percolating_exact(
                        grid_hypergraph(spec, family), budget=args.brute_tests
                    )
                    if found is not None:
                        brute = found.minimum
            runtime_ms = int((time.perf_counter() - started) * 1000)
            rows.append(
                [spec.d, spec.r, spec.dims[0], spec.thick[0], family, formula,
                 cert.lower_bound, brute, edge_count, u_size, runtime_ms]
            )
    if args.format == "csv":
        _emit_csv(args, SWEEP_HEADER, rows)
    else:
        _emit_json(args, [dict(zip(SWEEP_HEADER, row)) for row in rows])
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridperc",
        description="Bootstrap percolation on grid hypergraphs with exact lower-bound certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("formula", help="closed-form minimum percolating set size")
    _add_spec_args(p, with_family=False)
    _add_output_args(p, ("json", "csv"))
    p.set_defaults(handler=_cmd_formula)

    p = sub.add_parser("extremal", help="list the extremal percolating set")
    _add_spec_args(p, with_family=False)
    _add_output_args(p, ("json", "csv"))
    p.set_defaults(handler=_cmd_extremal)

    p = sub.add_parser("edges", help="count (or list) the edges of a grid family")
    _add_spec_args(p)
    p.add_argument("--list", action="store_true", help="include every edge in the output")
    _add_output_args(p, ("json", "csv"))
    p.set_defaults(handler=_cmd_edges)

    p = sub.add_parser("closure", help="run the bootstrap closure from an initial set")
    p.add_argument("--input", default=None, help="hypergraph text file ('p <nv> <ne>' header)")
    p.add_argument("--infected", default=None, help="comma list of initially infected 0-based ids")
    p.add_argument("--initial-u", action="store_true", help="start from the extremal set (grid mode)")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--n", default=None)
    p.add_argument("--t", default=None)
    p.add_argument("--family", choices=["K", "P"], default="K")
    _add_output_args(p)
    p.set_defaults(handler=_cmd_closure)

    p = sub.add_parser("certify", help="build and verify the exact lower-bound certificate")
    _add_spec_args(p)
    p.add_argument("--include-f-vectors", action="store_true", help="serialize the per-vertex vectors")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for dependency checks")
    _add_output_args(p)
    p.set_defaults(handler=_cmd_certify)

    p = sub.add_parser("audit", help="audit a percolating set against the certificate")
    _add_spec_args(p)
    p.add_argument("--infected", default=None, help="comma ids of the initial set (default: extremal set)")
    p.add_argument("--remove", default=None, help="comma ids to drop from the initial set")
    p.add_argument("--jobs", type=int, default=1)
    _add_output_args(p)
    p.set_defaults(handler=_cmd_audit)

    p = sub.add_parser("minperc", help="minimum percolating set of a grid family")
    _add_spec_args(p)
    p.add_argument("--exhaustive", action="store_true",
                   help="force the independent brute-force oracle (default: certificate-assisted)")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    _add_output_args(p, ("json", "csv"))
    p.set_defaults(handler=_cmd_minperc)

    p = sub.add_parser("rneighbour", help="r-neighbour bootstrap percolation on a graph")
    p.add_argument("--grid", default=None, help="comma list of grid side lengths")
    p.add_argument("--hypercube", type=int, default=None, help="hypercube dimension")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--exhaustive", action="store_true",
                   help="exact minimum by subset enumeration (default: greedy upper bound)")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--trials", type=int, default=50, help="greedy restarts (greedy mode)")
    p.add_argument("--seed", type=int, default=0)
    _add_output_args(p)
    p.set_defaults(handler=_cmd_rneighbour)

    p = sub.add_parser("wsat", help="minimum percolating edge set for clique completion")
    p.add_argument("--n", type=int, required=True, help="complete-graph vertex count")
    p.add_argument("--k", type=int, required=True, help="clique size")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    _add_output_args(p)
    p.set_defaults(handler=_cmd_wsat)

    p = sub.add_parser("sweep", help="formula/certificate/search agreement sweep over homogeneous specs")
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--max-d", type=int, default=3)
    p.add_argument("--max-cells", type=int, default=64)
    p.add_argument("--families", default="K,P")
    p.add_argument("--brute-tests", type=int, default=0,
                   help="also brute-force specs whose predicted subset count fits this cap")
    p.add_argument("--jobs", type=int, default=1)
    _add_output_args(p, ("csv", "json"))
    p.set_defaults(handler=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except SearchBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except CertificateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
