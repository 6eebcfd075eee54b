"""Command line interface."""

from __future__ import annotations

import csv
import json
import sys

import click

from .bench import run_experiment
from .delta import DELTA_KINDS
from .engine import SolveLimits, solve
from .generator import SIZE_CLASSES, GeneratorSpec, generate
from .initflow import INIT_STRATEGIES, InitializationError
from .model import (
    InstanceError,
    farm_to_dict,
    load_farm,
    save_farm,
    solution_to_dict,
)
from .oracle import OracleCapError, oracle_optimum
from .residual import build_residual, dump_residual_csv
from .stats import sign_test


def _seed_default() -> int:
    import os

    return int(os.environ.get("WCP_SEED", "0"))


seed_option = click.option(
    "--seed", type=int, default=None, help="RNG seed (default: WCP_SEED env or 0)."
)


def _resolve_seed(seed: int | None) -> int:
    return _seed_default() if seed is None else seed


@click.group()
def main():
    """Wind farm cabling: negative cycle canceling solver and tooling."""


@main.command()
@click.option("--size-class", type=click.Choice(sorted(SIZE_CLASSES)), default="n1-like")
@click.option("--turbines", type=(int, int), default=None, help="Override turbine count range.")
@click.option("--substations", type=int, default=None)
@click.option("--connectivity", type=click.Choice(["k-nearest", "complete"]), default=None)
@click.option("--k", type=int, default=8, help="Neighbors per vertex for k-nearest.")
@click.option("--divisor", type=int, default=1, help="Scale the size class down for desk runs.")
@seed_option
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
def gen(size_class, turbines, substations, connectivity, k, divisor, seed, output):
    """Generate a random instance."""
    spec = GeneratorSpec(
        size_class=size_class,
        seed=_resolve_seed(seed),
        turbine_range=turbines,
        substations=substations,
        connectivity=connectivity,
        k=k,
        divisor=divisor,
    )
    farm = generate(spec)
    if output:
        save_farm(farm, output)
        click.echo(f"wrote {output}: {farm.n_turbines} turbines, {len(farm.edges)} edges")
    else:
        json.dump(farm_to_dict(farm), sys.stdout, indent=2)
        sys.stdout.write("\n")


@main.command("solve")
@click.argument("instance", type=click.Path(exists=True, dir_okay=False))
@click.option("--init", "init_name", type=click.Choice(sorted(INIT_STRATEGIES)),
              default="collecting-dijkstra-any", show_default=True)
@click.option("--delta", "delta_name", type=click.Choice(DELTA_KINDS),
              default="inc-dec", show_default=True)
@seed_option
@click.option("--time-limit-ms", type=float, default=None, help="Stop after this wall time.")
@click.option("--trace", type=click.Path(dir_okay=False), default=None,
              help="Write one CSV row per cancellation.")
@click.option("--dump-residual", type=click.Path(dir_okay=False), default=None,
              help="Write the final residual graph (delta=1) as CSV.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
def solve_cmd(instance, init_name, delta_name, seed, time_limit_ms, trace, dump_residual, output):
    """Solve an instance and print the solution JSON."""
    farm = load_farm(instance)
    try:
        sol = solve(
            farm,
            INIT_STRATEGIES[init_name],
            delta_name,
            limits=SolveLimits(time_ms=time_limit_ms),
            seed=_resolve_seed(seed),
        )
    except InitializationError as exc:
        raise click.ClickException(str(exc))

    if trace:
        with open(trace, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["iteration", "delta", "cycle_length", "gamma", "cost_after"])
            for entry in sol.trace:
                writer.writerow(
                    [
                        entry.iteration,
                        entry.delta,
                        entry.cycle_length,
                        str(entry.gamma),
                        str(entry.cost_after),
                    ]
                )
    if dump_residual:
        dump_residual_csv(build_residual(farm, sol.flow, 1), dump_residual)

    body = sol.to_dict()
    if output:
        with open(output, "w") as fh:
            json.dump(body, fh, indent=2)
            fh.write("\n")
    else:
        json.dump(body, sys.stdout, indent=2)
        sys.stdout.write("\n")
    status = "exhausted" if sol.exhausted else "stopped at limit"
    click.echo(
        f"cost {float(sol.cost):.6g} ({status}, {sol.cancellations} cancellations, "
        f"{sol.wall_time_ms:.1f} ms)",
        err=True,
    )


@main.command("oracle")
@click.argument("instance", type=click.Path(exists=True, dir_okay=False))
@click.option("--max-turbines", type=int, default=7, show_default=True)
@click.option("--max-edges", type=int, default=12, show_default=True)
def oracle_cmd(instance, max_turbines, max_edges):
    """Exact optimum of a tiny instance by exhaustive enumeration."""
    farm = load_farm(instance)
    try:
        result = oracle_optimum(farm, max_turbines=max_turbines, max_edges=max_edges)
    except OracleCapError as exc:
        raise click.ClickException(str(exc))
    if not result.feasible:
        raise click.ClickException("instance is infeasible")
    body = solution_to_dict(farm, result.flow)
    body["proved_optimal"] = True
    json.dump(body, sys.stdout, indent=2)
    sys.stdout.write("\n")


@main.command("bench")
@click.argument("instances", type=click.Path(exists=True, dir_okay=False), nargs=-1, required=True)
@click.option("--init", "init_names", multiple=True,
              type=click.Choice(sorted(INIT_STRATEGIES)), help="Default: all eight.")
@click.option("--delta", "delta_names", multiple=True,
              type=click.Choice(DELTA_KINDS), help="Default: all eight.")
@seed_option
@click.option("--time-limit-ms", type=float, default=None)
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("-o", "--output", "out_csv", type=click.Path(dir_okay=False), required=True,
              help="Result CSV; existing rows are kept (resume).")
def bench_cmd(instances, init_names, delta_names, seed, time_limit_ms, jobs, out_csv):
    """Run strategy variants over instance files, appending to a CSV."""
    inits = list(init_names) or sorted(INIT_STRATEGIES)
    deltas = list(delta_names) or list(DELTA_KINDS)
    variants = [(i, d) for i in inits for d in deltas]
    farms = [(path, load_farm(path)) for path in instances]
    rows = run_experiment(
        farms,
        variants,
        limits=SolveLimits(time_ms=time_limit_ms),
        seed=_resolve_seed(seed),
        jobs=jobs,
        out_csv=out_csv,
    )
    errors = sum(1 for r in rows if r.status.startswith("error"))
    click.echo(f"{len(rows)} rows in {out_csv}" + (f" ({errors} errors)" if errors else ""))


@main.command("compare")
@click.argument("results_csv", type=click.Path(exists=True, dir_okay=False))
@click.option("--column", default="cost", show_default=True)
@click.option("--by", type=click.Choice(["delta", "init"]), default="delta", show_default=True)
@click.option("--correction", type=int, default=112, show_default=True,
              help="Bonferroni correction factor.")
def compare_cmd(results_csv, column, by, correction):
    """Pairwise sign tests between strategies from a bench CSV."""
    from fractions import Fraction

    rows = list(csv.DictReader(open(results_csv)))
    groups: dict[str, dict[str, Fraction]] = {}
    for r in rows:
        if not r[column] or r["status"].startswith("error"):
            continue
        key = r["instance"] if by == "delta" else f"{r['instance']}:{r['delta']}"
        groups.setdefault(r[by], {})[key] = Fraction(r[column])

    names = sorted(groups)
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            shared = sorted(set(groups[a]) & set(groups[b]))
            if not shared:
                continue
            res = sign_test(
                [groups[a][k] for k in shared],
                [groups[b][k] for k in shared],
                correction_factor=correction,
            )
            marker = "**" if res.significant_1e4 else "*" if res.significant_1e2 else "  "
            click.echo(
                f"{marker} {a} < {b}: wins {res.n_less}/{res.n_less + res.n_greater} "
                f"(ties {res.n_equal}), corrected p = {res.corrected_p:.4g}"
            )


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--workers", type=int, default=4, show_default=True,
              help="Concurrent solver slots before 503.")
def serve_cmd(host, port, workers):
    """Run the HTTP planner service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(workers=workers), host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
