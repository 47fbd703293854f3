import argparse
import json
import os
import sys
from os.path import join

from .._util import (
    AssumptionError,
    FunnelError,
    ObserverError,
    ScenarioError,
    TraceFormatError,
)
from ..sim import Trace, run
from ._plot import plot_trace
from ._report import verify_trace
from ._scenario import Scenario, load_scenario

REPORT_FILE = "report.json"
SWEEP_FILE = "sweep.json"
TOPOLOGY_FILE = "topology.json"


def run_scenario(scenario, seed=None, verbose=False):
    """
    Simulate a scenario and verify the resulting trace.

    Returns
    -------
    trace : :class:`stlppc.sim.Trace`
        Recorded run with its fault log.
    report : :class:`.Report`
        Verdicts of the run.
    """
    if seed is not None and seed != scenario.seed:
        scenario = scenario.with_overrides(seed=seed)
    design = scenario.design()
    trace = run(design.system, scenario.world(), scenario.horizon, scenario.dt, verbose)
    return trace, verify_trace(trace, scenario)


def cmd_run(args):
    scenario = load_scenario(args.scenario, seed=args.seed, dt=args.dt, eta=args.eta)
    os.makedirs(args.out, exist_ok=True)
    trace, report = run_scenario(scenario, verbose=args.verbose)
    trace.write(args.out)
    report.write_json(join(args.out, REPORT_FILE))
    if args.plot:
        _, notes = plot_trace(trace, args.out)
        for n in notes:
            print(f"note: {n}")
    print(report.to_text())
    return 0 if report.passed else 1


def cmd_verify(args):
    scenario = load_scenario(
        args.scenario, validate=False, seed=args.seed, dt=args.dt, eta=args.eta
    )
    trace = Trace.read(args.trace)
    report = verify_trace(trace, scenario)
    if args.out is not None:
        os.makedirs(args.out, exist_ok=True)
        report.write_json(join(args.out, REPORT_FILE))
    print(report.to_text())
    return 0 if report.passed else 1


def cmd_topology(args):
    scenario = load_scenario(args.scenario, validate=False)
    analysis = scenario.analysis()
    doc = analysis.as_dict()
    doc["tasks"] = {
        t.name: dict(agent=t.agent, **doc["tasks"][str(t.agent)]) for t in scenario.tasks
    }
    print(topology_text(scenario, analysis))
    print(json.dumps(doc, indent=2))
    if args.out is not None:
        os.makedirs(args.out, exist_ok=True)
        with open(join(args.out, TOPOLOGY_FILE), "w") as fp:
            json.dump(doc, fp, indent=2)
    return 0 if analysis.report.passed else 1


def cmd_plot(args):
    trace = Trace.read(args.trace)
    os.makedirs(args.out, exist_ok=True)
    files, notes = plot_trace(trace, args.out)
    for n in notes:
        print(f"note: {n}")
    for f in files:
        print(f)
    return 0


def cmd_sweep(args):
    from joblib import Parallel, delayed

    scenario = load_scenario(args.scenario, dt=args.dt, eta=args.eta)
    first = scenario.seed if args.first_seed is None else args.first_seed
    seeds = list(range(first, first + args.seeds))
    doc = scenario.doc

    results = Parallel(n_jobs=args.jobs)(delayed(_sweep_one)(doc, s) for s in seeds)

    passed = all(r["passed"] for r in results)
    for r in results:
        worst = min(r["robustness"].values(), default=float("inf"))
        print(
            f"seed {r['seed']:>4}  {'pass' if r['passed'] else 'FAIL'}"
            f"  min robustness {worst:+.6f}  faults {r['faults']}"
        )
    summary = {"scenario": scenario.name, "dt": scenario.dt, "passed": passed, "runs": results}
    os.makedirs(args.out, exist_ok=True)
    with open(join(args.out, SWEEP_FILE), "w") as fp:
        json.dump(summary, fp, indent=2)
    return 0 if passed else 1


def _sweep_one(doc, seed):
    scenario = Scenario(doc).with_overrides(seed=seed)
    trace, report = run_scenario(scenario)
    return {
        "seed": seed,
        "passed": report.passed,
        "robustness": {t.name: t.robustness for t in report.tasks},
        "observers_passed": report.observers.passed,
        "faults": len(trace.faults),
    }


def topology_text(scenario, analysis):
    """
    Human-readable summary of the graph analysis of a scenario.
    """
    lines = [f"scenario {scenario.name}: {len(scenario.agents)} agents"]
    edges = ", ".join(f"{i}-{j}" for i, j in sorted(scenario.gc.edges))
    lines.append(f"communication edges: {edges or 'none'}")

    lines.append("clusters:")
    for c, members in enumerate(analysis.clustering.clusters, 1):
        lines.append(f"  C{c} {{{', '.join(map(str, sorted(members)))}}}")

    if analysis.dag is None:
        lines.append("cluster DAG: not acyclic")
    else:
        arrows = ", ".join(f"C{a + 1} -> C{b + 1}" for a, b in sorted(analysis.dag.edges))
        lines.append(f"cluster DAG: {arrows or 'no edges'}")
        order = ", ".join(f"C{c + 1}" for c in analysis.order)
        lines.append(f"topological order (leaves first): {order}")

    lines.append(f"k = {analysis.k}, {len(analysis.observer_pairs)} observer pairs")
    for t in scenario.tasks:
        communicated, estimated = analysis.readers(t.agent)
        lines.append(
            f"  {t.name} (agent {t.agent}): {analysis.task_kind(t.agent)},"
            f" communicated {sorted(communicated)}, estimated {sorted(estimated)}"
        )

    lines.append(f"assumptions: {'pass' if analysis.report.passed else 'fail'}")
    for c in analysis.report.checks:
        line = f"  {c.name:<14} {'pass' if c.passed else 'fail'}"
        lines.append(line if c.passed else f"{line}  {c.message}")
    return "\n".join(lines)


def build_cli():
    ap = argparse.ArgumentParser(
        prog="stlppc",
        description="Decentralised STL control of multi-agent systems with prescribed performance.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="Simulate a scenario and write trace, faults and report")
    _scenario_flags(p)
    p.add_argument("--out", required=True, help="Output directory")
    p.add_argument("--plot", action="store_true", help="Also write the SVG panels")
    p.add_argument("-v", "--verbose", action="store_true", help="Show a progress bar")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify", help="Re-derive the verdicts of a recorded trace")
    _scenario_flags(p)
    p.add_argument("--trace", required=True, help="Trace CSV or the directory holding it")
    p.add_argument("--out", default=None, help="Directory for report.json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("topology", help="Print clusters, cluster DAG and hop depth")
    p.add_argument("--scenario", required=True, help="Scenario file or shipped name")
    p.add_argument("--out", default=None, help="Directory for topology.json")
    p.set_defaults(func=cmd_topology)

    p = sub.add_parser("plot", help="Draw the SVG panels of a trace")
    p.add_argument("--trace", required=True, help="Trace CSV or the directory holding it")
    p.add_argument("--out", required=True, help="Output directory")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("sweep", help="Run several disturbance seeds")
    _scenario_flags(p, seed=False)
    p.add_argument("--out", required=True, help="Directory for sweep.json")
    p.add_argument("--seeds", type=int, default=10, help="Number of seeds (default 10)")
    p.add_argument("--first-seed", type=int, default=None, help="First seed")
    p.add_argument("--jobs", type=int, default=1, help="Parallel processes (default 1)")
    p.set_defaults(func=cmd_sweep)

    return ap


def _scenario_flags(p, seed=True):
    p.add_argument("--scenario", required=True, help="Scenario file or shipped name")
    if seed:
        p.add_argument("--seed", type=int, default=None, help="Override the seed")
    p.add_argument("--dt", type=float, default=None, help="Override the step size")
    p.add_argument("--eta", type=float, default=None, help="Override the smooth-min sharpness")


def main(argv=None):
    """
    Command-line entry point; returns the exit code.

    ``0`` when the run or the check passes, ``1`` when a task or an
    assumption fails, ``2`` on usage, schema or I/O errors.
    """
    args = build_cli().parse_args(argv)
    try:
        return int(args.func(args))
    except (ScenarioError, TraceFormatError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (AssumptionError, ObserverError, FunnelError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
