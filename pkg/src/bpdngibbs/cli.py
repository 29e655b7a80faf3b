"""Command-line harness: solving, sampling, criterion tables, temperature tools, figures.

Every subcommand emits CSV with a metadata comment header; numeric fields are
written with 17 significant digits so reruns are byte-identical.  Exit codes:
0 success, 1 usage error, 2 numerical failure.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import click
import numpy as np
from click.core import ParameterSource

from .criteria import ProposalFamily, rank_proposals
from .limits import interior_density
from .model import NumericalError, Problem, load_problem
from .sampling import (
    AnnealConfig,
    MhConfig,
    anneal_temperatures,
    mh_chain,
    mh_chain_batch_1d,
    replicate_seed,
    sa_chain,
    sa_iterations,
)
from .solver import SolverOptions, solve
from .temperature import (
    TemperatureTarget,
    bias_mse_ratio,
    consistent_temperature,
    interior_temperature_from_mse,
    temperature_curves,
)
from .scaling import verify_scaling_1d

# ---------------------------------------------------------------------------
# CSV plumbing
# ---------------------------------------------------------------------------


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "yes" if value else "no"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    v = float(value)
    if math.isnan(v):
        return ""
    return format(v, ".17g")


def _render_csv(comments, header, rows) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _emit(ctx, text: str) -> None:
    out = ctx.obj.get("out")
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


# ---------------------------------------------------------------------------
# Config file resolution: flags > config file > defaults
# ---------------------------------------------------------------------------


def _read_config(path) -> dict:
    cfg = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise click.UsageError(f"config line {raw!r} is not key=value")
        key, _, value = line.partition("=")
        cfg[key.strip()] = value.strip()
    return cfg


def _value(ctx, name, conv=None, key=None):
    """Resolve one parameter: explicit flag wins, then config file, then default."""
    provided = ctx.params[name]
    if ctx.get_parameter_source(name) == ParameterSource.COMMANDLINE:
        return provided
    cfg = ctx.obj.get("config", {})
    key = key or name
    if key in cfg:
        raw = cfg[key]
        if conv is None:
            return raw
        if conv is bool:
            return raw.lower() in ("1", "true", "yes")
        return conv(raw)
    return provided


def _tuple_of_floats(raw: str) -> tuple:
    return tuple(float(v) for v in raw.replace(",", " ").split())


def _tuple_of_ints(raw: str) -> tuple:
    return tuple(int(v) for v in raw.replace(",", " ").split())


def _seed(ctx, default=0) -> int:
    top = ctx.obj.get("seed")
    if top is not None:
        return top
    cfg = ctx.obj.get("config", {})
    if "seed" in cfg:
        return int(cfg["seed"])
    return default


# ---------------------------------------------------------------------------
# Harness operations (also usable as a library)
# ---------------------------------------------------------------------------

TABLE_REGIMES = {1: "interior", 2: "boundary", 3: "exterior"}


def run_table(table_id: int, *, t=1.0, temperature=0.1, chain_length=5000,
              n_designs=600, seed=0, variances=(1.0, 9.0, 16.0), n_threads=1):
    """Criterion table for one regime; returns (report, comments, header, rows)."""
    regime = TABLE_REGIMES[table_id]
    report = rank_proposals(
        ProposalFamily(tuple(variances)), regime,
        t=t, temperature=temperature, chain_length=chain_length,
        n_designs=n_designs, seed=seed, n_threads=n_threads,
    )
    comments = [
        f"table {table_id}: proposal ranking in the {regime} regime",
        f"t={_fmt(t)} temperature={_fmt(temperature)} chain_length={chain_length} "
        f"n_designs={n_designs} seed={seed}",
        f"best_sigma2={_fmt(report.best_sigma2)}",
    ]
    header = ["proposal_sigma2", "bias_criterion", "msq_criterion", "combined"]
    rows = [(r.sigma2, r.bias_value, r.msq_value, r.combined) for r in report.rows]
    return report, comments, header, rows


def run_table4(*, bias_b=0.01, mse=3.5e-4, u=0.5, t=1.0,
               checkpoints=(2000, 5000, 8000), sigma2=1.0, seed=0,
               constraint_tol=0.05):
    """Running bias and mean square of one chain at the consistent temperature.

    Returns (temperature, rows) with one (N, bias_N, mse_N) row per checkpoint,
    all read off a single chain of max(checkpoints) steps.
    """
    target = TemperatureTarget(mse=mse, bias_b=bias_b, regime="interior", u=u)
    temp = consistent_temperature(target, rel_tol=constraint_tol)
    n_max = int(max(checkpoints))
    problem = Problem(matrix_a=[[1.0]], data_y=[t * u], smoothing_t=t)
    config = MhConfig(temperature=temp, proposal_sigma2=sigma2,
                      chain_length=n_max, burn_in=0, seed=seed)
    s = mh_chain(problem, config).states[:, 0]
    prefix = np.cumsum(s)
    prefix2 = np.cumsum(s * s)
    rows = [(int(n), prefix[n - 1] / n, prefix2[n - 1] / n) for n in checkpoints]
    return temp, rows


@dataclass(frozen=True)
class ComparisonReport:
    """Fixed-temperature versus annealed runs on the same step budget."""

    n_budget: int
    temperature: float
    mh_final: np.ndarray
    sa_final: np.ndarray
    mh_running_mean: np.ndarray
    sa_running_mean: np.ndarray
    mh_trajectory: np.ndarray
    sa_trajectory: np.ndarray
    sa_temperatures: np.ndarray
    params: dict = field(default_factory=dict)


def run_comparison(*, bias_b=0.01, mse=3.5e-4, u=0.5, t=1.0, q=1.001, beta0=1.0,
                   sigma2=1.0, replicates=1, seed=0, constraint_tol=0.05):
    """Run the fixed-temperature chain and the annealed chain on equal budgets.

    The budget is the number of annealing steps needed to cool from 1/beta0
    to the consistent temperature.  Replicate r of the two runs uses streams
    derived from (seed, 1) and (seed, 2) master seeds respectively.
    """
    if replicates < 1:
        raise ValueError("need at least one replicate")
    target = TemperatureTarget(mse=mse, bias_b=bias_b, regime="interior", u=u)
    temp = consistent_temperature(target, rel_tol=constraint_tol)
    n_budget = sa_iterations(1.0 / beta0, temp, q)
    if n_budget < 1:
        raise ValueError("the annealing budget is empty; raise the start temperature")
    y = t * u
    ys = np.full(replicates, y)
    mh = mh_chain_batch_1d(t, ys, temp, sigma2, n_budget, replicate_seed(seed, 1))
    schedule = anneal_temperatures(beta0, q, n_budget)
    sa = mh_chain_batch_1d(t, ys, schedule[:, None], sigma2, n_budget,
                           replicate_seed(seed, 2))
    params = {"bias_b": bias_b, "mse": mse, "u": u, "t": t, "q": q, "beta0": beta0,
              "sigma2": sigma2, "replicates": replicates, "seed": seed}
    return ComparisonReport(
        n_budget=n_budget,
        temperature=temp,
        mh_final=mh.states[-1].copy(),
        sa_final=sa.states[-1].copy(),
        mh_running_mean=mh.states.mean(axis=0),
        sa_running_mean=sa.states.mean(axis=0),
        mh_trajectory=mh.states[:, 0].copy(),
        sa_trajectory=sa.states[:, 0].copy(),
        sa_temperatures=schedule,
        params=params,
    )


def emit_figure_data(figure_id: int, **params):
    """Data behind one of the five figures; returns (comments, header, rows)."""
    if figure_id == 1:
        t = params.get("t", 1.0)
        ys = params.get("y_values", (0.0, 0.4, 0.9))
        grid = np.linspace(params.get("x_min", -6.0), params.get("x_max", 6.0),
                           int(params.get("n_points", 1201)))
        cols = [interior_density(y / t, grid) for y in ys]
        comments = [f"figure 1: limit densities below the threshold, t={_fmt(t)}",
                    "columns: x then one density per data value y"]
        header = ["x"] + [f"density_y{_fmt(y)}" for y in ys]
        rows = [(x, *(c[i] for c in cols)) for i, x in enumerate(grid)]
        return comments, header, rows
    if figure_id == 2:
        b = params.get("bias_b", 0.001)
        mse = params.get("mse", 0.01)
        u, t_bias, t_mse, _ = temperature_curves(b, mse, int(params.get("n_points", 512)))
        comments = [f"figure 2: temperature curves for bias_b={_fmt(b)} mse={_fmt(mse)}"]
        header = ["u", "T_bias", "T_mse"]
        return comments, header, list(zip(u, t_bias, t_mse))
    if figure_id == 3:
        u0 = params.get("u", 0.5)
        n = int(params.get("n_points", 512))
        mse_grid = np.linspace(2.0 / n, 2.0, n)
        t_curve = np.array([interior_temperature_from_mse(m, u0) for m in mse_grid])
        u_grid, _, _, constraint = temperature_curves(1.0, 1.0, n)
        comments = [
            f"figure 3: mse -> T(mse, u) at u={_fmt(u0)}, with the constraint ratio",
            "columns mse,T_mse use the mse grid; columns u,constraint use the u grid",
        ]
        header = ["mse", "T_mse", "u", "constraint"]
        rows = list(zip(mse_grid, t_curve, u_grid, constraint))
        return comments, header, rows
    if figure_id == 4:
        beta0 = params.get("beta0", 1.0)
        q = params.get("q", 1.001)
        n = int(params.get("n_points", 99))
        mse_grid = np.linspace(0.001, 0.099, n)
        budgets = []
        for u0 in (0.0, 0.5):
            temps = [interior_temperature_from_mse(m, u0) for m in mse_grid]
            budgets.append([sa_iterations(1.0 / beta0, tv, q) for tv in temps])
        comments = [f"figure 4: annealing budget versus mse, beta0={_fmt(beta0)} q={_fmt(q)}",
                    "budgets for data value y=0 and y=0.5 at t=1"]
        header = ["mse", "n_sa_y0", "n_sa_y0.5"]
        return comments, header, list(zip(mse_grid, budgets[0], budgets[1]))
    if figure_id == 5:
        report = run_comparison(
            bias_b=params.get("bias_b", 0.01), mse=params.get("mse", 3.5e-4),
            u=params.get("u", 0.5), t=params.get("t", 1.0),
            q=params.get("q", 1.001), beta0=params.get("beta0", 1.0),
            sigma2=params.get("sigma2", 1.0), replicates=1,
            seed=params.get("seed", 0),
        )
        comments = [
            "figure 5: fixed-temperature and annealed trajectories on one budget",
            f"n_budget={report.n_budget} temperature={_fmt(report.temperature)}",
        ]
        header = ["step", "theta_mh", "theta_sa", "temperature_sa"]
        rows = [
            (k + 1, report.mh_trajectory[k], report.sa_trajectory[k], report.sa_temperatures[k])
            for k in range(report.n_budget)
        ]
        return comments, header, rows
    raise click.UsageError(f"unknown figure id {figure_id}")


# ---------------------------------------------------------------------------
# Click commands
# ---------------------------------------------------------------------------


@click.group()
@click.option("--seed", type=int, default=None, help="Master seed; overrides config and defaults.")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write CSV here instead of standard output.")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="key=value file; flags override it.")
@click.option("--threads", type=int, default=1, show_default=True,
              help="Worker pool size for table cells.")
@click.pass_context
def cli(ctx, seed, out, config_path, threads):
    """Tools around the l1-penalized least squares objective and its Gibbs measure."""
    ctx.ensure_object(dict)
    ctx.obj["config"] = _read_config(config_path) if config_path else {}
    ctx.obj["seed"] = seed
    ctx.obj["out"] = out
    ctx.obj["threads"] = threads if threads and threads > 0 else 1


@cli.command("solve")
@click.argument("problem_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--max-iterations", type=int, default=100_000, show_default=True)
@click.option("--gradient-tolerance", type=float, default=1e-10, show_default=True)
@click.pass_context
def solve_cmd(ctx, problem_file, max_iterations, gradient_tolerance):
    """Solve a problem file; emit per-index CSV and print the minimum value."""
    problem = load_problem(problem_file)
    opts = SolverOptions(max_iterations=_value(ctx, "max_iterations", int),
                         gradient_tolerance=_value(ctx, "gradient_tolerance", float))
    sol = solve(problem, opts)
    classes = {}
    for i in sol.support_s:
        classes[i] = "S"
    for i in sol.zero_set_i0:
        classes[i] = "dI0" if i in set(sol.boundary_set) else "I0"
    comments = [f"solution of {problem_file}",
                f"m={_fmt(sol.m)} certified_unique={'yes' if sol.unique else 'no'}"]
    rows = [(i + 1, sol.x_star[i], sol.xi[i], classes[i]) for i in range(problem.p)]
    _emit(ctx, _render_csv(comments, ["index", "x_star", "xi", "class"], rows))
    click.echo(f"m = {_fmt(sol.m)}", err=False)
    click.echo(f"certified unique: {'yes' if sol.unique else 'no'}")


@cli.command("sample")
@click.argument("problem_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--temperature", "-t", type=float, default=0.1, show_default=True)
@click.option("--sigma2", type=float, default=1.0, show_default=True)
@click.option("--n", "chain_length", type=int, default=5000, show_default=True)
@click.option("--burn-in", type=int, default=0, show_default=True)
@click.pass_context
def sample_cmd(ctx, problem_file, temperature, sigma2, chain_length, burn_in):
    """Run a fixed-temperature chain on a problem file; emit the states."""
    problem = load_problem(problem_file)
    config = MhConfig(
        temperature=_value(ctx, "temperature", float),
        proposal_sigma2=_value(ctx, "sigma2", float),
        chain_length=_value(ctx, "chain_length", int, key="n"),
        burn_in=_value(ctx, "burn_in", int),
        seed=_seed(ctx),
    )
    result = mh_chain(problem, config)
    comments = [
        f"chain on {problem_file}",
        f"temperature={_fmt(config.temperature)} sigma2={_fmt(config.proposal_sigma2)} "
        f"n={config.chain_length} burn_in={config.burn_in} seed={config.seed}",
        f"acceptance_rate={_fmt(result.acceptance_rate)}",
    ]
    header = ["step"] + [f"x{i + 1}" for i in range(problem.p)]
    rows = [(config.burn_in + k + 1, *result.states[k]) for k in range(len(result.states))]
    _emit(ctx, _render_csv(comments, header, rows))
    click.echo(f"acceptance rate: {_fmt(result.acceptance_rate)}")


@cli.command("anneal")
@click.argument("problem_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--beta0", type=float, default=1.0, show_default=True)
@click.option("--q", type=float, default=1.001, show_default=True)
@click.option("--sigma2", type=float, default=1.0, show_default=True)
@click.option("--n", "chain_length", type=int, default=5000, show_default=True)
@click.pass_context
def anneal_cmd(ctx, problem_file, beta0, q, sigma2, chain_length):
    """Run an annealed chain on a problem file; emit states and temperatures."""
    problem = load_problem(problem_file)
    config = AnnealConfig(
        beta0=_value(ctx, "beta0", float),
        q=_value(ctx, "q", float),
        proposal_sigma2=_value(ctx, "sigma2", float),
        chain_length=_value(ctx, "chain_length", int, key="n"),
        seed=_seed(ctx),
    )
    result = sa_chain(problem, config)
    comments = [
        f"annealed chain on {problem_file}",
        f"beta0={_fmt(config.beta0)} q={_fmt(config.q)} sigma2={_fmt(config.proposal_sigma2)} "
        f"n={config.chain_length} seed={config.seed}",
        f"acceptance_rate={_fmt(result.acceptance_rate)}",
    ]
    header = ["step", "temperature"] + [f"x{i + 1}" for i in range(problem.p)]
    rows = [(k + 1, result.temperatures[k], *result.states[k])
            for k in range(len(result.states))]
    _emit(ctx, _render_csv(comments, header, rows))
    click.echo(f"acceptance rate: {_fmt(result.acceptance_rate)}")


@cli.command("criteria")
@click.option("--regime", type=click.Choice(["interior", "boundary", "exterior"]),
              required=True)
@click.option("--t", type=float, default=1.0, show_default=True)
@click.option("--temperature", type=float, default=0.1, show_default=True)
@click.option("--n", "chain_length", type=int, default=5000, show_default=True)
@click.option("--m", "n_designs", type=int, default=600, show_default=True)
@click.option("--sigma2", type=float, multiple=True, default=(1.0, 9.0, 16.0),
              show_default=True)
@click.pass_context
def criteria_cmd(ctx, regime, t, temperature, chain_length, n_designs, sigma2):
    """Rank proposal variances by the bias and mean-square criteria."""
    variances = ctx.params["sigma2"]
    if ctx.get_parameter_source("sigma2") != ParameterSource.COMMANDLINE:
        cfg = ctx.obj.get("config", {})
        if "sigma2" in cfg:
            variances = _tuple_of_floats(cfg["sigma2"])
    report = rank_proposals(
        ProposalFamily(tuple(variances)), regime,
        t=_value(ctx, "t", float),
        temperature=_value(ctx, "temperature", float),
        chain_length=_value(ctx, "chain_length", int, key="n"),
        n_designs=_value(ctx, "n_designs", int, key="m"),
        seed=_seed(ctx),
        n_threads=ctx.obj["threads"],
    )
    comments = [
        f"proposal ranking, {regime} regime",
        " ".join(f"{k}={_fmt(v)}" for k, v in report.params.items()),
        f"best_sigma2={_fmt(report.best_sigma2)}",
    ]
    header = ["proposal_sigma2", "bias_criterion", "msq_criterion", "combined"]
    rows = [(r.sigma2, r.bias_value, r.msq_value, r.combined) for r in report.rows]
    _emit(ctx, _render_csv(comments, header, rows))


@cli.command("temperature")
@click.option("--regime", type=click.Choice(["interior", "boundary", "exterior"]),
              default="interior", show_default=True)
@click.option("--b", "bias_b", type=float, default=None)
@click.option("--mse", type=float, required=True)
@click.option("--u", type=float, default=None)
@click.option("--t", type=float, default=None)
@click.option("--tolerance", type=float, default=1e-6, show_default=True,
              help="Relative slack for the bias/mse compatibility check.")
@click.option("--emit-curves", is_flag=True, default=False,
              help="Write the u -> T curves and constraint ratio as CSV.")
@click.pass_context
def temperature_cmd(ctx, regime, bias_b, mse, u, t, tolerance, emit_curves):
    """Derive the temperature from bias/mse targets; optionally emit the curves."""
    target = TemperatureTarget(mse=mse, bias_b=bias_b, regime=regime, u=u, t=t)
    temp = consistent_temperature(target, rel_tol=tolerance)
    click.echo(f"temperature = {_fmt(temp)}")
    if emit_curves:
        b_for_curves = bias_b if bias_b else 0.001
        grid, t_bias, t_mse, constraint = temperature_curves(b_for_curves, mse)
        comments = [f"temperature curves for bias_b={_fmt(b_for_curves)} mse={_fmt(mse)}"]
        header = ["u", "T_bias", "T_mse", "constraint"]
        _emit(ctx, _render_csv(comments, header, list(zip(grid, t_bias, t_mse, constraint))))


@cli.command("verify")
@click.option("--y", type=float, required=True)
@click.option("--t", type=float, default=1.0, show_default=True)
@click.option("--temperature", "temps", type=float, multiple=True,
              default=(0.1, 0.01, 0.001), show_default=True)
@click.option("--n", "n_samples", type=int, default=10_000, show_default=True)
@click.pass_context
def verify_cmd(ctx, y, t, temps, n_samples):
    """KS check of the rescaled chain against the regime's limit law."""
    rows = verify_scaling_1d(
        _value(ctx, "y", float), _value(ctx, "t", float),
        temps, _value(ctx, "n_samples", int, key="n"), _seed(ctx),
    )
    comments = [f"scaling verification for y={_fmt(y)} t={_fmt(t)} seed={_seed(ctx)}"]
    header = ["temperature", "regime", "ks", "n_used", "thinning",
              "acceptance_rate", "negative_frequency"]
    data = [(r.temperature, r.regime, r.ks, r.n_used, r.thinning,
             r.acceptance_rate, r.negative_frequency) for r in rows]
    _emit(ctx, _render_csv(comments, header, data))


@cli.command("table")
@click.argument("table_id", type=click.IntRange(1, 4))
@click.option("--t", type=float, default=1.0, show_default=True)
@click.option("--temperature", type=float, default=0.1, show_default=True)
@click.option("--n", "chain_length", type=int, default=5000, show_default=True)
@click.option("--m", "n_designs", type=int, default=600, show_default=True)
@click.option("--sigma2", type=float, multiple=True, default=(1.0, 9.0, 16.0),
              show_default=True, help="Proposal variances (tables 1-3) or the chain variance (table 4).")
@click.option("--b", "bias_b", type=float, default=0.01, show_default=True)
@click.option("--mse", type=float, default=3.5e-4, show_default=True)
@click.option("--u", type=float, default=0.5, show_default=True)
@click.option("--checkpoints", type=str, default="2000,5000,8000", show_default=True)
@click.pass_context
def table_cmd(ctx, table_id, t, temperature, chain_length, n_designs, sigma2,
              bias_b, mse, u, checkpoints):
    """Reproduce one of the four reference tables as CSV."""
    if table_id in (1, 2, 3):
        _, comments, header, rows = run_table(
            table_id,
            t=_value(ctx, "t", float),
            temperature=_value(ctx, "temperature", float),
            chain_length=_value(ctx, "chain_length", int, key="n"),
            n_designs=_value(ctx, "n_designs", int, key="m"),
            seed=_seed(ctx),
            variances=tuple(sigma2),
            n_threads=ctx.obj["threads"],
        )
        _emit(ctx, _render_csv(comments, header, rows))
        return
    marks = _tuple_of_ints(_value(ctx, "checkpoints", str))
    temp, rows = run_table4(
        bias_b=_value(ctx, "bias_b", float, key="b"),
        mse=_value(ctx, "mse", float),
        u=_value(ctx, "u", float),
        t=_value(ctx, "t", float),
        checkpoints=marks,
        sigma2=sigma2[0],
        seed=_seed(ctx),
    )
    comments = [
        "table 4: running bias and mean square at the consistent temperature",
        f"bias_b={_fmt(bias_b)} mse={_fmt(mse)} u={_fmt(u)} t={_fmt(t)} "
        f"temperature={_fmt(temp)} sigma2={_fmt(sigma2[0])} seed={_seed(ctx)}",
    ]
    _emit(ctx, _render_csv(comments, ["N", "bias_N", "mse_N"], rows))


@cli.command("compare")
@click.option("--b", "bias_b", type=float, default=0.01, show_default=True)
@click.option("--mse", type=float, default=3.5e-4, show_default=True)
@click.option("--u", type=float, default=0.5, show_default=True)
@click.option("--t", type=float, default=1.0, show_default=True)
@click.option("--q", type=float, default=1.001, show_default=True)
@click.option("--beta0", type=float, default=1.0, show_default=True)
@click.option("--sigma2", type=float, default=1.0, show_default=True)
@click.option("--replicates", type=int, default=1, show_default=True)
@click.pass_context
def compare_cmd(ctx, bias_b, mse, u, t, q, beta0, sigma2, replicates):
    """Fixed-temperature versus annealed chains on the cooling budget."""
    report = run_comparison(
        bias_b=_value(ctx, "bias_b", float, key="b"),
        mse=_value(ctx, "mse", float),
        u=_value(ctx, "u", float),
        t=_value(ctx, "t", float),
        q=_value(ctx, "q", float),
        beta0=_value(ctx, "beta0", float),
        sigma2=_value(ctx, "sigma2", float),
        replicates=_value(ctx, "replicates", int),
        seed=_seed(ctx),
    )
    comments = [
        "fixed-temperature versus annealed comparison",
        " ".join(f"{k}={_fmt(v)}" for k, v in report.params.items()),
        f"n_budget={report.n_budget} temperature={_fmt(report.temperature)}",
    ]
    header = ["replicate", "theta_mh_final", "theta_sa_final",
              "theta_mh_running_mean", "theta_sa_running_mean"]
    rows = [
        (r + 1, report.mh_final[r], report.sa_final[r],
         report.mh_running_mean[r], report.sa_running_mean[r])
        for r in range(len(report.mh_final))
    ]
    _emit(ctx, _render_csv(comments, header, rows))
    click.echo(f"n_budget = {report.n_budget}")


@cli.command("figure")
@click.argument("figure_id", type=click.IntRange(1, 5))
@click.option("--b", "bias_b", type=float, default=None)
@click.option("--mse", type=float, default=None)
@click.option("--u", type=float, default=None)
@click.option("--sigma2", type=float, default=None)
@click.pass_context
def figure_cmd(ctx, figure_id, bias_b, mse, u, sigma2):
    """Emit the data behind one of the five figures."""
    params = {"seed": _seed(ctx)}
    if bias_b is not None:
        params["bias_b"] = bias_b
    if mse is not None:
        params["mse"] = mse
    if u is not None:
        params["u"] = u
    if sigma2 is not None:
        params["sigma2"] = sigma2
    comments, header, rows = emit_figure_data(figure_id, **params)
    _emit(ctx, _render_csv(comments, header, rows))


@cli.command("limit-density")
@click.option("--t", type=float, default=1.0, show_default=True)
@click.pass_context
def limit_density_cmd(ctx, t):
    """Emit the limit densities below the threshold (same data as figure 1)."""
    comments, header, rows = emit_figure_data(1, t=_value(ctx, "t", float))
    _emit(ctx, _render_csv(comments, header, rows))


def main(argv=None) -> int:
    """Entry point with the documented exit codes (0 ok, 1 usage, 2 numerical)."""
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    except click.ClickException as exc:
        exc.show(file=sys.stderr)
        return 1
    except NumericalError as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        return 2
    except ValueError as exc:
        click.echo(f"invalid parameters: {exc}", err=True)
        return 1


if __name__ == "__main__":
    sys.exit(main())
