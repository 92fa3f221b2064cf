"""Command-line interface.

Subcommands:

* ``analyze``    -- connectivity, local groups, balance, nondegeneracy,
  adapted partition, derived-graph components, root-connectivity criterion.
* ``simulate``   -- integrate the clustering dynamics from seeded random
  initial conditions; write a trajectory CSV and a JSON limit report.
* ``construct``  -- build a balanced nondegenerate voltage assignment on a
  given digraph and write it as an instance file.
* ``count``      -- number of balanced nondegenerate maps, ``S(n, k) (k-1)!``.

Exit codes: 0 success, 2 parse error, 3 infeasible or criterion not met,
4 numerical failure.  Identical commands with identical seeds produce
byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from . import derived as derived_mod
from . import dynamics, voltage
from .errors import (
    CriterionNotMet,
    Diverged,
    Infeasible,
    NotRooted,
    NotSurjective,
    NotWeaklyConnected,
    ParseError,
    StepTooLarge,
    VoltClustError,
)
from .instance import (
    Instance,
    dumps_canonical,
    eta_from_dict,
    graph_from_dict,
    group_from_spec,
    instance_to_dict,
    load_instance,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INFEASIBLE = 3
EXIT_NUMERIC = 4

FIXTURE_NAMES = ("fig1_c6", "fig1_d6", "signed_c3_balanced", "signed_c3_unbalanced")


def _resolve_instance(arg: str) -> Instance:
    p = Path(arg)
    if p.exists():
        return load_instance(p)
    name = arg[:-5] if arg.endswith(".json") else arg
    if name in FIXTURE_NAMES:
        return load_instance(resources.files("voltclust") / "fixtures" / f"{name}.json")
    raise ParseError(
        f"no such instance file or built-in fixture: {arg!r} "
        f"(fixtures: {', '.join(FIXTURE_NAMES)})"
    )


def _fmt_float(x: float) -> str:
    return repr(float(x))


def _partition_str(blocks) -> str:
    return " ".join("{" + ",".join(map(str, b)) + "}" for b in blocks)


def _subgroup_words(sub) -> list[str]:
    return list(sub.words())


def _analysis_payload(inst: Instance):
    vg = inst.voltage_graph
    report = voltage.analyze(vg)
    dg = derived_mod.build_derived(vg)
    conn = vg.graph.connectivity
    payload = {
        "vertices": vg.graph.n,
        "edges": len(vg.graph.edges),
        "group": {"order": vg.group.order, "dimension": vg.group.dimension},
        "connectivity": {
            "weak": conn.weak,
            "strong": conn.strong,
            "rooted": conn.rooted,
            "roots": list(conn.roots),
        },
        "balanced": report.balanced,
        "nondegenerate": report.nondegenerate,
        "local_groups": {
            str(v): _subgroup_words(report.local_groups[v - 1])
            for v in range(1, vg.graph.n + 1)
        },
        "directed_local_groups": {
            str(v): _subgroup_words(report.directed_local_groups[v - 1])
            for v in range(1, vg.graph.n + 1)
        },
        "adapted_partition": [list(b) for b in report.adapted_partition],
        "predicted_clusters": report.cluster_count,
        "root_condition_holds": report.root_condition_holds,
        "derived": {
            "vertices": dg.digraph.n,
            "edges": len(dg.digraph.edges),
            "components": len(dg.components),
            "component_sizes": [len(c) for c in dg.components],
        },
    }
    if conn.rooted:
        rc = derived_mod.root_connectivity_report(dg)
        payload["derived"]["components_rooted"] = list(rc.components_rooted)
        payload["derived"]["criterion_consistent"] = rc.consistent
    return payload, report, dg


def _cmd_analyze(args) -> int:
    inst = _resolve_instance(args.instance)
    payload, report, dg = _analysis_payload(inst)
    print(
        f"instance: {args.instance}  "
        f"({payload['vertices']} vertices, {payload['edges']} edges, "
        f"group order {payload['group']['order']}, dimension {payload['group']['dimension']})"
    )
    conn = payload["connectivity"]
    print(
        f"connectivity: weak={conn['weak']} strong={conn['strong']} rooted={conn['rooted']} "
        f"roots={conn['roots']}"
    )
    print(f"balanced: {report.balanced}")
    print(f"nondegenerate: {report.nondegenerate}")
    print(f"local group at v1: {{{', '.join(payload['local_groups']['1'])}}}")
    print(f"adapted partition: {_partition_str(report.adapted_partition)}")
    print(f"predicted clusters: m = {report.cluster_count}")
    print(
        f"derived graph: {payload['derived']['vertices']} vertices, "
        f"{payload['derived']['edges']} edges, {payload['derived']['components']} components"
    )
    print(f"root condition (G*_r = G_r at roots): {report.root_condition_holds}")
    if args.json:
        Path(args.json).write_text(dumps_canonical(payload))
        print(f"wrote {args.json}")
    if args.dot:
        Path(args.dot).write_text(derived_mod.to_dot(dg))
        print(f"wrote {args.dot}")
    return EXIT_OK


def _write_trajectory_csv(path: str, traj: dynamics.Trajectory) -> None:
    n, k = traj.states.shape[1], traj.states.shape[2]
    header = ["t"] + [f"x{i}_{d}" for i in range(1, n + 1) for d in range(1, k + 1)]
    lines = [",".join(header)]
    for t, state in zip(traj.times, traj.states):
        row = [_fmt_float(t)] + [_fmt_float(x) for x in state.reshape(-1)]
        lines.append(",".join(row))
    Path(path).write_text("\n".join(lines) + "\n")


def _cmd_simulate(args) -> int:
    inst = _resolve_instance(args.instance)
    vg = inst.voltage_graph
    weights = dynamics.resolve_weights(vg, inst.weights)
    rng = np.random.default_rng(args.seed)
    p0 = rng.uniform(-1.0, 1.0, size=(vg.graph.n, vg.group.dimension))
    if args.step is None:
        max_row = max(sum(weights[(i, j)] for j in vg.graph.out_neighbors(i)) for i in range(1, vg.graph.n + 1))
        step = 0.5 / max_row if max_row > 0 else 0.1
    else:
        step = args.step
    common = dict(weights=weights, step=step, t_max=args.tmax, tol=args.tol, record_every=args.record_every)
    if args.lifted:
        result = dynamics.simulate_lifted(vg, p0, **common)
        traj = result.projected
    else:
        traj = dynamics.simulate(vg, p0, **common)
    _write_trajectory_csv(args.out, traj)

    report = voltage.analyze(vg)
    limit = dynamics.verify_limit(vg, traj.final, cluster_tol=args.cluster_tol)
    criterion_error = None
    predicted = None
    try:
        predicted = dynamics.predicted_cluster_count(vg)
    except CriterionNotMet as exc:
        criterion_error = str(exc)

    checks_pass = (
        traj.converged
        and limit.edge_alignment_error < args.check_tol
        and limit.norm_spread < args.check_tol
        and limit.fixed_point_error < args.check_tol
        and limit.partition_relation in ("equal", "coarser_than")
    )
    payload = {
        "instance": args.instance,
        "seed": args.seed,
        "step": step,
        "t_max": args.tmax,
        "tol": args.tol,
        "lifted": bool(args.lifted),
        "converged": traj.converged,
        "final_time": float(traj.times[-1]),
        "residual": traj.residual,
        "rate_estimate": traj.rate_estimate,
        "edge_alignment_error": limit.edge_alignment_error,
        "norm_spread": limit.norm_spread,
        "fixed_point_error": limit.fixed_point_error,
        "clusters": [list(c) for c in limit.clusters],
        "adapted_partition": [list(b) for b in limit.adapted_partition],
        "partition_relation": limit.partition_relation,
        "matches_adapted_partition": limit.matches_adapted_partition,
        "predicted_clusters": predicted,
        "criterion_not_met": criterion_error,
        "balanced": report.balanced,
        "nondegenerate": report.nondegenerate,
        "checks_pass": checks_pass,
        "final": [[float(x) for x in row] for row in traj.final],
    }
    if args.report:
        Path(args.report).write_text(dumps_canonical(payload))
    print(
        f"converged={traj.converged} at t={float(traj.times[-1])} residual={traj.residual:.3e}"
    )
    print(
        f"edge_alignment={limit.edge_alignment_error:.3e} norm_spread={limit.norm_spread:.3e} "
        f"fixed_point={limit.fixed_point_error:.3e}"
    )
    print(f"clusters ({len(limit.clusters)}): {_partition_str(limit.clusters)}")
    print(f"adapted partition relation: {limit.partition_relation}")
    print(f"wrote {args.out}")
    if args.report:
        print(f"wrote {args.report}")
    if criterion_error is not None:
        print(f"criterion not met: {criterion_error}", file=sys.stderr)
        return EXIT_INFEASIBLE
    if not checks_pass:
        print("convergence checks failed", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _load_group_spec(arg: str) -> dict:
    text = arg
    p = Path(arg)
    if p.exists():
        text = p.read_text()
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"group spec is neither a file nor valid JSON: {exc.msg}") from exc
    if not isinstance(spec, dict):
        raise ParseError("group spec must be a JSON object")
    return spec


def _cmd_construct(args) -> int:
    try:
        graph_data = json.loads(Path(args.graph).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {args.graph}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{args.graph}:{exc.lineno}: invalid JSON: {exc.msg}") from exc
    graph, weights = graph_from_dict(graph_data)
    spec = _load_group_spec(args.group)
    group = group_from_spec(spec)
    if args.eta == "random":
        vg = voltage.construct_balanced_nondegenerate(graph, group, "random", seed=args.seed)
    else:
        try:
            eta_data = json.loads(Path(args.eta).read_text())
        except OSError as exc:
            raise ParseError(f"cannot read {args.eta}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ParseError(f"{args.eta}:{exc.lineno}: invalid JSON: {exc.msg}") from exc
        eta = eta_from_dict(eta_data, group, graph.n)
        vg = voltage.construct_balanced_nondegenerate(graph, group, eta)
    inst = Instance(voltage_graph=vg, weights=weights, group_spec=spec)
    Path(args.out).write_text(dumps_canonical(instance_to_dict(inst)))
    print(f"wrote {args.out} (balanced and nondegenerate by construction)")
    return EXIT_OK


def _cmd_count(args) -> int:
    print(voltage.count_balanced_nondegenerate(args.n, args.k))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="voltclust",
        description="Analyze voltage graphs and simulate point-group cluster consensus.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="analyze an instance file or built-in fixture")
    pa.add_argument("instance", help="instance file path or fixture name")
    pa.add_argument("--json", help="write the analysis report as JSON")
    pa.add_argument("--dot", help="write the derived graph as DOT with colored components")
    pa.set_defaults(func=_cmd_analyze)

    ps = sub.add_parser("simulate", help="simulate the clustering dynamics")
    ps.add_argument("instance", help="instance file path or fixture name")
    ps.add_argument("--seed", type=int, default=0, help="seed for the initial conditions")
    ps.add_argument("--step", type=float, default=None, help="integration step (default: 0.5 / max row weight)")
    ps.add_argument("--tmax", type=float, default=500.0, help="time horizon")
    ps.add_argument("--tol", type=float, default=1e-10, help="velocity norm convergence tolerance")
    ps.add_argument("--record-every", type=int, default=1, help="record every Nth step")
    ps.add_argument("--out", required=True, help="trajectory CSV output path")
    ps.add_argument("--report", help="limit-report JSON output path")
    ps.add_argument("--lifted", action="store_true", help="integrate on the derived graph and project back")
    ps.add_argument("--check-tol", type=float, default=1e-6, help="tolerance for the limit checks")
    ps.add_argument("--cluster-tol", type=float, default=1e-6, help="limit-point clustering tolerance")
    ps.set_defaults(func=_cmd_simulate)

    pc = sub.add_parser("construct", help="construct a balanced nondegenerate assignment")
    pc.add_argument("--graph", required=True, help="digraph JSON file")
    pc.add_argument("--group", required=True, help="group spec (inline JSON or file path)")
    pc.add_argument("--eta", default="random", help="'random' or a JSON file mapping vertices to words")
    pc.add_argument("--seed", type=int, default=0, help="seed for random eta")
    pc.add_argument("--out", required=True, help="instance JSON output path")
    pc.set_defaults(func=_cmd_construct)

    pn = sub.add_parser("count", help="count balanced nondegenerate maps: S(n, k) (k-1)!")
    pn.add_argument("--n", type=int, required=True, help="number of vertices")
    pn.add_argument("--k", type=int, required=True, help="group order")
    pn.set_defaults(func=_cmd_count)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (Infeasible, NotSurjective, CriterionNotMet, NotRooted, NotWeaklyConnected) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (StepTooLarge, Diverged) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except VoltClustError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
