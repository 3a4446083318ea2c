"""
Main CLI interface for matroid-bandits.

This module provides the command-line interface for running bandit
experiments on matroids, generating instances, checking invariants and
printing regret bounds.
"""

import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import click
import numpy as np
import structlog
import yaml
from rich.console import Console
from rich.progress import BarColumn, Progress, SpinnerColumn, TextColumn, TimeElapsedColumn
from rich.table import Table

from .. import __version__
from ..core.config import RunConfig, default_policies, dump_document, load_run_config
from ..core.errors import ConfigError, MatroidBanditError
from ..harness.instances import (
    Instance,
    generate_lower_bound_instance,
    random_bernoulli_means,
    random_graphic,
    random_linear,
    random_partition,
    random_transversal,
    random_uniform,
    resolve_instance,
)
from ..harness.loaders import format_instance
from ..harness.metrics import (
    compute_gap_dependent_bound,
    compute_gap_free_bound,
    compute_gap_profile,
    compute_lower_bound,
)
from ..harness.output import build_summary, write_run_outputs
from ..harness.simulator import Simulator
from ..harness.verification import run_verification

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INVARIANT = 2

GENERATE_FAMILIES = ("partition", "uniform", "graphic", "transversal", "linear")

console = Console()
logger = structlog.get_logger(__name__)


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    """JSON logs on stderr by default, readable ones under --verbose, none under --quiet."""
    if verbose:
        level = logging.DEBUG
    elif quiet:
        level = logging.CRITICAL + 1
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr, format="%(message)s", force=True)
    renderer = structlog.dev.ConsoleRenderer() if verbose else structlog.processors.JSONRenderer()
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            renderer,
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=False,
    )


def report_issues(title: str, issues: List[str]) -> None:
    console.print(f"❌ {title}", style="red")
    for issue in issues:
        console.print(f"   • {issue}", style="red")


def load_config_or_exit(ctx: click.Context, config_path: Path) -> RunConfig:
    try:
        return load_run_config(config_path)
    except ConfigError as e:
        report_issues(f"Invalid configuration: {config_path}", e.issues)
        ctx.exit(EXIT_VALIDATION)


def resolve_or_exit(ctx: click.Context, cfg: RunConfig, config_path: Path) -> Instance:
    try:
        return resolve_instance(cfg, base_dir=config_path.parent)
    except MatroidBanditError as e:
        report_issues(f"Cannot build the instance for {config_path}", [str(e)])
        ctx.exit(EXIT_VALIDATION)


def horizons_for(n: int) -> List[int]:
    """Powers of ten from 100 up to n, then n itself."""
    horizons = [10 ** k for k in range(2, 9) if 10 ** k < n]
    return horizons + [n]


@click.group()
@click.version_option(version=__version__)
@click.option('--verbose', '-v', is_flag=True, help='Verbose output')
@click.option('--quiet', '-q', is_flag=True, help='Quiet output')
@click.pass_context
def cli(ctx, verbose, quiet):
    """matroid-bandits - Learning maximum-weight matroid bases from semi-bandit feedback

    Run OMM and its baselines on matroid bandit instances, generate
    instances, check invariants and print regret bounds.
    """
    ctx.ensure_object(dict)
    ctx.obj['verbose'] = verbose
    ctx.obj['quiet'] = quiet
    configure_logging(verbose, quiet)


@cli.command()
@click.argument('config_path', type=click.Path(path_type=Path))
@click.option('--output', '-o', type=click.Path(path_type=Path), help='Output directory')
@click.option('--workers', '-w', type=int, help='Worker processes (overrides the config)')
@click.pass_context
def run(ctx, config_path, output, workers):
    """Run the experiment described by a config file.

    Writes traces.csv, manifest.yaml and summary.json to the output directory.

    Examples:
      matroid-bandits run configs/lower_bound.yaml
      matroid-bandits run configs/graphic.yaml --output results/graphic -w 4
    """
    cfg = load_config_or_exit(ctx, config_path)
    if workers is not None:
        if workers < 1:
            report_issues("Invalid option", ["--workers must be at least 1"])
            ctx.exit(EXIT_VALIDATION)
        cfg.workers = workers
    instance = resolve_or_exit(ctx, cfg, config_path)
    output_dir = output or cfg.output_dir()
    quiet = ctx.obj.get('quiet', False)

    if not quiet:
        console.print(f"\n🎲 {cfg.name}: L={instance.ground_set_size}, "
                      f"K={instance.matroid.rank()}, {instance.environment.kind} weights", style="cyan")
        console.print(f"   {len(cfg.policies)} policies × {cfg.replications} replications × "
                      f"{cfg.horizon} episodes\n")

    simulator = Simulator(cfg, instance)
    total = len(cfg.policies) * cfg.replications
    with Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        TextColumn("[progress.percentage]{task.percentage:>3.0f}%"),
        TimeElapsedColumn(),
        console=console,
        disable=quiet,
    ) as progress:
        task = progress.add_task("[cyan]Simulating...", total=total)
        result = simulator.run(progress=lambda r: progress.update(
            task, advance=1, description=f"[cyan]{r.policy} #{r.replication}"))

    paths = write_run_outputs(result, output_dir)
    summary = build_summary(result)

    if not quiet:
        show_run_summary(summary)
        console.print(f"\n📁 Outputs in {output_dir}")
        for kind, path in paths.items():
            console.print(f"   ✓ {kind}: {path.name}")

    if cfg.instrument:
        if result.invariant_failures:
            report_issues("Invariant checks failed",
                          [f"{r.policy} #{r.replication}: {r.decomposition_failures} decomposition, "
                           f"{r.dominance_violations} UCB dominance"
                           for r in result.results if r.invariant_failures])
            ctx.exit(EXIT_INVARIANT)
        if not quiet:
            console.print("✓ Decomposition and UCB dominance held in every episode", style="green")


def show_run_summary(summary: Dict[str, Any]) -> None:
    """Final-episode table: regret, per-step return and, for latency weights, per-step cost."""
    has_cost = any(p["expected_cost_per_step"] is not None for p in summary["policies"].values())
    table = Table(title=f"{summary['name']} after {summary['horizon']} episodes")
    table.add_column("Policy", style="cyan")
    table.add_column("Reps", justify="right")
    table.add_column("Pseudo-regret", justify="right")
    table.add_column("Per-step return", justify="right")
    if has_cost:
        table.add_column("Per-step cost", justify="right")

    for label, curve in summary["policies"].items():
        row = [
            label,
            str(curve["replications"]),
            f"{curve['pseudo_regret_mean'][-1]:.2f} ± {curve['pseudo_regret_stderr'][-1]:.2f}",
            f"{curve['per_step_return_mean'][-1]:.4f}",
        ]
        if has_cost:
            cost = curve["expected_cost_per_step"]
            row.append("-" if cost is None else f"{cost:.3f}")
        table.add_row(*row)

    console.print()
    console.print(table)
    console.print(f"Optimal return per step: {summary['optimal_return']:.4f}")
    console.print(f"Gap-dependent bound at n={summary['horizon']}: "
                  f"{summary['bounds']['gap_dependent']:.1f}")


@cli.command()
@click.argument('family', type=click.Choice(GENERATE_FAMILIES))
@click.option('--L', 'ground_set_size', type=int, help='Number of items')
@click.option('--K', 'rank', type=int, help='Rank (blocks for partition, k for uniform)')
@click.option('--delta', type=float, help='Gap of the lower-bound partition instance')
@click.option('--vertices', type=int, help='Vertices of a graphic instance')
@click.option('--edges', type=int, help='Edges of a graphic instance')
@click.option('--right', type=int, help='Right vertices of a transversal instance')
@click.option('--dimension', type=int, help='Row count of a linear instance')
@click.option('--seed', type=int, default=0, show_default=True, help='Generator seed')
@click.option('--horizon', type=int, default=1000, show_default=True, help='Horizon of the emitted config')
@click.option('--format', 'file_format', type=click.Choice(['config', 'native']),
              default='config', show_default=True, help='Run config or instance file')
@click.option('--output', '-o', type=click.Path(path_type=Path), help='Write here instead of stdout')
@click.pass_context
def generate(ctx, family, ground_set_size, rank, delta, vertices, edges, right, dimension,
             seed, horizon, file_format, output):
    """Generate a synthetic instance.

    With --delta, partition emits the instance whose regret grows at least
    like (L - K) / (4 delta) log n for every consistent policy.

    Examples:
      matroid-bandits generate partition --L 20 --K 4 --delta 0.1
      matroid-bandits generate graphic --vertices 20 --edges 50 --format native
    """
    rng = np.random.default_rng(seed)
    try:
        matroid_spec, environment, text = _generate(
            family, rng, ground_set_size, rank, delta, vertices, edges, right, dimension,
            native=file_format == 'native')
    except click.UsageError:
        raise
    except MatroidBanditError as e:
        report_issues(f"Cannot generate a {family} instance", [str(e)])
        ctx.exit(EXIT_VALIDATION)

    if text is None:
        document = {
            "name": f"{family}-{seed}",
            "matroid": matroid_spec,
            "environment": environment,
            "policies": default_policies(),
            "horizon": horizon,
            "seed": seed,
            "replications": 1,
        }
        if output:
            dump_document(document, output)
        else:
            click.echo(yaml.safe_dump(document, default_flow_style=None, sort_keys=False), nl=False)
    elif output:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)

    if output and not ctx.obj.get('quiet', False):
        console.print(f"✓ Wrote {family} instance to {output}", style="green")


def _need(value: Optional[Any], flag: str, family: str) -> Any:
    if value is None:
        raise click.UsageError(f"{family} instances need {flag}")
    return value


def _generate(family: str, rng: np.random.Generator, L: Optional[int], K: Optional[int],
              delta: Optional[float], vertices: Optional[int], edges: Optional[int],
              right: Optional[int], dimension: Optional[int], native: bool):
    """(matroid dict, environment dict, native text or None) for one family."""
    if family == "graphic":
        matroid = random_graphic(_need(vertices, "--vertices", family),
                                 _need(edges, "--edges", family), rng)
        latencies = np.round(rng.uniform(1.0, 10.0, matroid.ground_set_size), 3).tolist()
        environment = {"kind": "clipped_shifted_exponential", "latencies": latencies}
    else:
        L = _need(L, "--L", family)
        if family == "partition" and delta is not None:
            instance = generate_lower_bound_instance(L, _need(K, "--K", family), delta)
            matroid, means = instance.matroid, instance.environment.mean_vector()
        else:
            if family == "partition":
                matroid = random_partition(L, _need(K, "--K", family), rng)
            elif family == "uniform":
                matroid = random_uniform(L, rng, K)
            elif family == "transversal":
                matroid = random_transversal(L, _need(right, "--right", family), rng)
            else:
                matroid = random_linear(L, _need(dimension, "--dimension", family), rng)
            means = random_bernoulli_means(L, rng)
        environment = {"kind": "bernoulli", "means": [float(x) for x in means]}

    text = format_instance(matroid, environment) if native else None
    return matroid.to_dict(), environment, text


@cli.command()
@click.argument('config_path', type=click.Path(path_type=Path))
@click.option('--per-family', type=int, default=3, show_default=True,
              help='Random instances per matroid family')
@click.option('--bases', type=int, default=25, show_default=True,
              help='Random bases per instance for the bijection and decomposition suites')
@click.option('--json', 'as_json', is_flag=True, help='Output as JSON')
@click.pass_context
def verify(ctx, config_path, per_family, bases, as_json):
    """Run the invariant suites on random instances and the configured one.

    Suites: matroid axioms, greedy vs brute force, exchange bijection
    properties and regret decomposition. Exits with 2 when any suite fails.
    """
    cfg = load_config_or_exit(ctx, config_path)
    instance = resolve_or_exit(ctx, cfg, config_path)
    suites = run_verification(seed=cfg.seed, instance=instance, per_family=per_family,
                              bases_per_instance=bases)

    if as_json:
        click.echo(json.dumps([suite.to_dict() for suite in suites], indent=2))
    else:
        table = Table(title="Invariant suites")
        table.add_column("Suite", style="cyan")
        table.add_column("Checks", justify="right")
        table.add_column("Result")
        for suite in suites:
            status = "[green]✓ pass[/green]" if suite.passed else f"[red]❌ {len(suite.failures)} failed[/red]"
            table.add_row(suite.name, str(suite.checks), status)
        console.print(table)
        for suite in suites:
            if not suite.passed:
                report_issues(suite.name, suite.failures[:10])

    if not all(suite.passed for suite in suites):
        ctx.exit(EXIT_INVARIANT)


@cli.command()
@click.argument('config_path', type=click.Path(path_type=Path))
@click.option('--horizon', '-n', 'horizons', type=int, multiple=True,
              help='Horizons to evaluate (default: powers of ten up to the config horizon)')
@click.option('--json', 'as_json', is_flag=True, help='Output as JSON')
@click.pass_context
def bounds(ctx, config_path, horizons, as_json):
    """Print regret bounds for the configured instance.

    Shows the gap-dependent and gap-free upper bounds, and the asymptotic
    lower bound for lower-bound partition instances.
    """
    cfg = load_config_or_exit(ctx, config_path)
    instance = resolve_or_exit(ctx, cfg, config_path)
    profile = compute_gap_profile(instance.matroid, instance.environment.mean_vector())
    L, K = instance.ground_set_size, profile.rank
    horizons = sorted(set(horizons)) if horizons else horizons_for(cfg.horizon)
    if any(n < 1 for n in horizons):
        report_issues("Invalid option", ["--horizon values must be at least 1"])
        ctx.exit(EXIT_VALIDATION)

    rows = []
    for n in horizons:
        row = {
            "n": n,
            "gap_dependent": compute_gap_dependent_bound(profile, n),
            "gap_free": compute_gap_free_bound(L, K, n) if n >= 2 else None,
        }
        if instance.lower_bound:
            lb = instance.lower_bound
            row["lower_bound"] = compute_lower_bound(int(lb["L"]), int(lb["K"]), lb["delta"], n)
        rows.append(row)

    if as_json:
        click.echo(json.dumps({"L": L, "K": K, "delta_min": profile.delta_min, "bounds": rows},
                              indent=2))
        return

    delta_min = profile.delta_min
    console.print(f"\n📐 L={L}, K={K}, smallest gap: "
                  f"{'none' if delta_min is None else f'{delta_min:.4g}'}\n", style="cyan")
    table = Table(title="Regret bounds")
    table.add_column("n", justify="right", style="cyan")
    table.add_column("Gap-dependent", justify="right")
    table.add_column("Gap-free", justify="right")
    if instance.lower_bound:
        table.add_column("Lower bound", justify="right")
    for row in rows:
        cells = [str(row["n"]), f"{row['gap_dependent']:.1f}",
                 "-" if row["gap_free"] is None else f"{row['gap_free']:.1f}"]
        if instance.lower_bound:
            cells.append(f"{row['lower_bound']:.1f}")
        table.add_row(*cells)
    console.print(table)


def main(argv: Optional[List[str]] = None) -> int:
    """Run the CLI and return its exit code; usage errors exit with 1."""
    try:
        result = cli.main(args=argv, prog_name="matroid-bandits", standalone_mode=False)
    except click.UsageError as e:
        e.show()
        return EXIT_VALIDATION
    except click.ClickException as e:
        e.show()
        return EXIT_VALIDATION
    except click.Abort:
        console.print("Aborted.", style="red")
        return EXIT_VALIDATION
    return result if isinstance(result, int) else EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
