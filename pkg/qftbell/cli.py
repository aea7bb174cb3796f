"""
Command-line interface.

Every subcommand builds a RunConfig (defaults, then --config file, then flags),
runs one command function and writes its table as CSV with a provenance
header. Exit codes: 0 ok, 1 usage, 2 validation, 3 numerical failure.
"""

import logging
import sys
from pathlib import Path

import click

from qftbell import commands
from qftbell.config import load_run_config
from qftbell.constants import EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, FAMILIES, FIGURE_SLICES, VERSION
from qftbell.errors import QftBellError
from qftbell.utils import format_csv, provenance_lines, write_output

logger = logging.getLogger(__name__)


class BumpSpec(click.ParamType):
    """side:R:sharpness[:t0], e.g. right:1:2."""

    name = "bump"

    def convert(self, value, param, ctx):
        if isinstance(value, dict):
            return value
        parts = value.split(":")
        if len(parts) not in (3, 4):
            self.fail(f"{value!r} is not of the form side:R:sharpness[:t0]", param, ctx)
        try:
            numbers = [float(p) for p in parts[1:]]
        except ValueError:
            self.fail(f"{value!r} has a non-numeric size, sharpness or offset", param, ctx)
        return dict(zip(("side", "R", "sharpness", "t0"), [parts[0], *numbers]))


def _configure_logging(verbose: int) -> None:
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _run(ctx: click.Context, name: str, command, overrides: dict = None, trace: Path = None) -> None:
    """Load the configuration, run a command function and emit its table."""
    options = ctx.obj
    try:
        config = load_run_config(options["config"], {**options["overrides"], **(overrides or {})})
    except QftBellError as e:
        click.echo(f"Error: {e}", err=True)
        ctx.exit(e.exit_code)
    response = command(config)
    if response.get("message"):
        click.echo(f"{response['status']}: {response['message']}", err=True)
    result = response.get("result")
    if result is not None:
        comments = provenance_lines(name, config.seed, config.provenance_settings(), config.digest)
        comments += list(result.get("comments", ()))
        write_output(format_csv(result["header"], result["rows"], comments), config.out)
        if trace is not None and "trace" in result:
            write_output(format_csv(result["trace"]["header"], result["trace"]["rows"], comments), trace)
    ctx.exit(response.get("exit_code", EXIT_OK))


@click.group()
@click.version_option(VERSION, prog_name="qftbell")
@click.option("--family", type=click.Choice(FAMILIES), default=None, help="Kernel family of the observables.")
@click.option("--seed", type=int, default=None, help="Root seed of every random choice.")
@click.option("--points", type=int, default=None, help="QMC points per replicate.")
@click.option("--replicates", type=int, default=None, help="Independent replicates for error bars.")
@click.option("--mass", type=float, default=None, help="Infrared mass (default 1e-8).")
@click.option("--workers", type=int, default=None, help="Threads for replicates and correlator terms.")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help="CSV output file.")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), default=None)
@click.option("-v", "--verbose", count=True, help="-v for progress, -vv for diagnostics.")
@click.pass_context
def cli(ctx, family, seed, points, replicates, mass, workers, out, config_path, verbose):
    """Bell-CHSH correlators of Weyl observables in the 1+1-d free scalar vacuum."""
    _configure_logging(verbose)
    ctx.obj = dict(
        config=config_path,
        overrides={
            "run/family": family,
            "run/seed": seed,
            "integration/points": points,
            "integration/replicates": replicates,
            "run/mass": mass,
            "run/workers": workers,
            "run/out": None if out is None else str(out),
        },
    )


@cli.command("kernels-verify")
@click.pass_context
def kernels_verify(ctx):
    """Check the Fourier pair of every kernel family."""
    _run(ctx, "kernels-verify", commands.kernels_verify)


@cli.command("smear")
@click.option("--kind", type=click.Choice(["hadamard", "pauli_jordan"]), default=None)
@click.option("--method", type=click.Choice(["qmc", "momentum"]), default=None)
@click.option("--first", type=BumpSpec(), default=None, help="First bump as side:R:sharpness[:t0].")
@click.option("--second", type=BumpSpec(), default=None, help="Second bump as side:R:sharpness[:t0].")
@click.pass_context
def smear(ctx, kind, method, first, second):
    """Smeared Hadamard or Pauli-Jordan integral of two bumps."""
    overrides = {"smear/kind": kind, "smear/method": method, "smear/first": first, "smear/second": second}
    _run(ctx, "smear", commands.smear, overrides)


@cli.command("eval-tt")
@click.option("--eta", type=float, default=None)
@click.option("--eta-p", type=float, default=None)
@click.option("--sigma", type=float, default=None)
@click.option("--sigma-p", type=float, default=None)
@click.option("--lam", "--lambda", "lam", type=float, default=None)
@click.option("--rule", type=click.Choice(["tensor", "adaptive"]), default=None, help="(k, p) quadrature rule.")
@click.pass_context
def eval_tt(ctx, eta, eta_p, sigma, sigma_p, lam, rule):
    """Bell-CHSH value of the closed-form Gram model."""
    overrides = {
        "tt/eta": eta,
        "tt/eta_p": eta_p,
        "tt/sigma": sigma,
        "tt/sigma_p": sigma_p,
        "tt/lam": lam,
        "integration/quad_rule": rule,
    }
    _run(ctx, "eval-tt", commands.eval_tt, overrides)


@cli.command("eval-diamond")
@click.option("--a", "a", type=float, default=None)
@click.option("--a-p", type=float, default=None)
@click.option("--b", "b", type=float, default=None)
@click.option("--b-p", type=float, default=None)
@click.option("--R", "R", type=float, default=None)
@click.option("--R-p", "R_p", type=float, default=None)
@click.option("--method", type=click.Choice(["qmc", "momentum"]), default=None)
@click.pass_context
def eval_diamond(ctx, a, a_p, b, b_p, R, R_p, method):
    """Bell-CHSH value of explicit diamond test functions."""
    overrides = {
        "diamond/a": a,
        "diamond/a_p": a_p,
        "diamond/b": b,
        "diamond/b_p": b_p,
        "diamond/R": R,
        "diamond/R_p": R_p,
        "diamond/method": method,
    }
    _run(ctx, "eval-diamond", commands.eval_diamond, overrides)


@cli.command("scan")
@click.option("--mode", type=click.Choice(["tt", "overlaps", "diamond"]), default=None)
@click.option("--figure", type=click.Choice(sorted(FIGURE_SLICES)), default=None, help="A published surface.")
@click.option("--axis", "axes", type=(str, float, float, int), multiple=True, help="name lower upper points, twice.")
@click.pass_context
def scan(ctx, mode, figure, axes):
    """Bell-CHSH value over a 2D parameter grid."""
    overrides = {"scan/mode": mode, "scan/figure": figure}
    if axes:
        overrides["scan/axes"] = [
            dict(name=name, lower=lower, upper=upper, points=points) for name, lower, upper, points in axes
        ]
    _run(ctx, "scan", commands.scan, overrides)


@cli.command("optimize")
@click.option("--mode", type=click.Choice(["tt", "overlaps", "diamond"]), default=None)
@click.option("--objective", type=click.Choice(["violation", "overlap"]), default=None)
@click.option("--budget", type=int, default=None)
@click.option("--starts", type=int, default=None)
@click.option("--trace", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Write the evaluation trace here.")
@click.pass_context
def optimize(ctx, mode, objective, budget, starts, trace):
    """Search for the largest violation or the closest diamond overlaps."""
    overrides = {"search/mode": mode, "search/objective": objective, "search/budget": budget, "search/starts": starts}
    _run(ctx, "optimize", commands.optimize, overrides, trace=trace)


@cli.command("reproduce")
@click.option("--fit-budget", type=int, default=None)
@click.option("--grid-points", type=int, default=None)
@click.pass_context
def reproduce(ctx, fit_budget, grid_points):
    """Compare every published number with a fresh computation."""
    overrides = {"reproduce/fit_budget": fit_budget, "reproduce/grid_points": grid_points}
    _run(ctx, "reproduce", commands.reproduce, overrides)


def main(argv=None) -> int:
    """Console entry point; returns the exit code instead of raising SystemExit."""
    try:
        code = cli.main(args=argv, prog_name="qftbell", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except click.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_USAGE
    except QftBellError as e:
        click.echo(f"Error: {e}", err=True)
        return e.exit_code
    except Exception as e:
        logger.exception("Unexpected error")
        click.echo(f"Error: {type(e).__name__}: {e}", err=True)
        return EXIT_NUMERICAL
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
