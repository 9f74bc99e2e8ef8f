"""Command-line front end: one subcommand per figure recipe.

Model parameters come from flags, optionally seeded from a TOML config file
(flags win). Output paths resolve against --outdir or $NHCHAIN_OUTDIR.
Exit codes: 0 success, 2 configuration error, 3 numerical error.
"""

from __future__ import annotations

import functools
import os
import sys
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path

import click

from .evolution import ZeroNormError
from .lta import DEFAULT_POINTS, DEFAULT_WINDOW, NonPositiveError
from .models import CapacityError, Family, PRESETS, SpinChainParams
from .ensembles import EnsembleKind
from .opent import ZeroOperatorError
from .spectral import NearDefectiveError
from . import experiments

NUMERICAL_ERRORS = (NearDefectiveError, ZeroNormError, NonPositiveError, ZeroOperatorError)


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _resolve_out(out: str) -> Path:
    base = os.environ.get("NHCHAIN_OUTDIR", ".")
    path = Path(out)
    return path if path.is_absolute() else Path(base) / path


def model_options(fn):
    @click.option("--config", "config_path", type=click.Path(exists=True),
                  help="TOML file with model keys (family, L, J, g, h, gamma, beta).")
    @click.option("--preset", "preset_name", type=click.Choice(sorted(PRESETS)),
                  help="Named parameter point; individual flags override it.")
    @click.option("--family", type=click.Choice([f.value for f in Family]), default=None)
    @click.option("--L", "L", type=int, default=None)
    @click.option("--J", "J", type=float, default=None)
    @click.option("--g", type=float, default=None)
    @click.option("--h", type=float, default=None)
    @click.option("--gamma", type=float, default=None)
    @click.option("--beta", type=float, default=None)
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        return fn(*args, **kwargs)
    return wrapper


def build_params(config_path, preset_name, family, L, J, g, h, gamma, beta) -> SpinChainParams:
    merged: dict = {}
    if config_path:
        with open(config_path, "rb") as fh:
            merged.update(tomllib.load(fh))
    if preset_name:
        merged.update(PRESETS[preset_name])
        merged.pop("preset", None)
    if "preset" in merged:
        merged.update(PRESETS[merged.pop("preset")])
    for key, value in (("family", family), ("L", L), ("J", J), ("g", g),
                       ("h", h), ("gamma", gamma), ("beta", beta)):
        if value is not None:
            merged[key] = value
    try:
        merged["family"] = Family(merged.get("family", "hermitian"))
        return SpinChainParams(**merged)
    except (TypeError, ValueError) as exc:
        _fail(2, f"bad model configuration: {exc}")


def run_recipe(fn, *args, **kwargs):
    try:
        fn(*args, **kwargs)
    except NUMERICAL_ERRORS as exc:
        _fail(3, f"{type(exc).__name__}: {exc}")
    except (CapacityError, ValueError) as exc:
        _fail(2, str(exc))


@click.group()
def main():
    """Scrambling and operator entanglement in non-Hermitian spin chains."""


@main.command()
@model_options
@click.option("--v-site", type=int, default=None, help="Site of V (default mid-chain).")
@click.option("--t-max", type=float, default=5.0)
@click.option("--t-step", type=float, default=0.1)
@click.option("--out", default="lightcone.csv", show_default=True)
def lightcone(v_site, t_max, t_step, out, **model):
    """OTOC lightcone scan with V = W = sigma^z."""
    params = build_params(**model)
    run_recipe(experiments.run_lightcone, params, _resolve_out(out),
               v_site=v_site, t_max=t_max, t_step=t_step)


@main.command("opent-series")
@model_options
@click.option("--t-max", type=float, default=20.0)
@click.option("--t-step", type=float, default=0.1)
@click.option("--out", default="opent_series.csv", show_default=True)
def opent_series(t_max, t_step, out, **model):
    """Half-cut operator entanglement of U_t over time."""
    params = build_params(**model)
    run_recipe(experiments.run_opent_series, params, _resolve_out(out),
               t_max=t_max, t_step=t_step)


def _window_options(fn):
    @click.option("--t-min", type=float, default=DEFAULT_WINDOW[0], show_default=True)
    @click.option("--t-max", type=float, default=DEFAULT_WINDOW[1], show_default=True)
    @click.option("--n-points", type=int, default=DEFAULT_POINTS, show_default=True)
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        return fn(*args, **kwargs)
    return wrapper


@main.command("lta-scan-l")
@model_options
@click.option("--ensemble", type=click.Choice([e.value for e in EnsembleKind]), default=None,
              help="Scan a random-matrix ensemble instead of a spin-chain model.")
@click.option("--l-values", default="4,6,8", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@_window_options
@click.option("--out", default="lta_scan_L.csv", show_default=True)
def lta_scan_l(ensemble, l_values, seed, t_min, t_max, n_points, out, **model):
    """Operator-entanglement LTA vs system size (numeric and analytic)."""
    try:
        Ls = [int(x) for x in l_values.split(",")]
    except ValueError:
        _fail(2, f"bad --l-values {l_values!r}")
    target = EnsembleKind(ensemble) if ensemble else build_params(**model)
    run_recipe(experiments.run_lta_scan_L, target, Ls, _resolve_out(out),
               window=(t_min, t_max), n_points=n_points, seed=seed)


@main.command("lta-scan-param")
@model_options
@click.option("--values", required=True, help="Comma-separated gamma or beta values.")
@_window_options
@click.option("--out", default="lta_scan_param.csv", show_default=True)
def lta_scan_param(values, t_min, t_max, n_points, out, **model):
    """Operator-entanglement LTA vs nonhermiticity parameter."""
    params = build_params(**model)
    try:
        vals = [float(x) for x in values.split(",")]
    except ValueError:
        _fail(2, f"bad --values {values!r}")
    run_recipe(experiments.run_lta_scan_param, params, vals, _resolve_out(out),
               window=(t_min, t_max), n_points=n_points)


@main.command("spectrum-flow")
@model_options
@click.option("--start", type=float, default=0.0, show_default=True)
@click.option("--stop", type=float, default=2.0, show_default=True)
@click.option("--step", type=float, default=0.01, show_default=True)
@click.option("--out", default="spectrum_flow.csv", show_default=True)
def spectrum_flow_cmd(start, stop, step, out, **model):
    """Branch-matched spectrum along a gamma (or beta) sweep."""
    import numpy as np
    params = build_params(**model)
    sweep = np.arange(start, stop + step / 2, step)
    if sweep.size == 0:
        _fail(2, "empty sweep")
    run_recipe(experiments.run_spectrum_flow, params, sweep, _resolve_out(out))


@main.command("quench-subsystem")
@model_options
@click.option("--subsystem-sizes", default="1,2,3", show_default=True)
@click.option("--t-max", type=float, default=20.0)
@click.option("--t-step", type=float, default=0.1)
@click.option("--out", default="quench_subsystem.csv", show_default=True)
def quench_subsystem(subsystem_sizes, t_max, t_step, out, **model):
    """Neel-quench entropy series for leftmost subsystems of increasing size."""
    params = build_params(**model)
    try:
        sizes = [int(x) for x in subsystem_sizes.split(",")]
    except ValueError:
        _fail(2, f"bad --subsystem-sizes {subsystem_sizes!r}")
    run_recipe(experiments.run_quench_subsystem, params, sizes, _resolve_out(out),
               t_max=t_max, t_step=t_step)


@main.command("quench-scaling")
@model_options
@click.option("--l-values", default="6,8,10", show_default=True)
@click.option("--t-max", type=float, default=20.0)
@click.option("--t-step", type=float, default=0.1)
@click.option("--out", default="quench_scaling.csv", show_default=True)
def quench_scaling(l_values, t_max, t_step, out, **model):
    """Half-cut Neel-quench entropy for a list of system sizes."""
    params = build_params(**model)
    try:
        Ls = [int(x) for x in l_values.split(",")]
    except ValueError:
        _fail(2, f"bad --l-values {l_values!r}")
    run_recipe(experiments.run_quench_scaling, params, Ls, _resolve_out(out),
               t_max=t_max, t_step=t_step)


@main.command("haar-convergence")
@model_options
@click.option("--t-values", default="1,2,3,5,10", show_default=True)
@click.option("--n-samples", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", default="haar_convergence.json", show_default=True)
def haar_convergence(t_values, n_samples, seed, out, **model):
    """Sampled bipartite OTOC average vs linear operator entanglement."""
    params = build_params(**model)
    try:
        ts = [float(x) for x in t_values.split(",")]
    except ValueError:
        _fail(2, f"bad --t-values {t_values!r}")
    run_recipe(experiments.run_haar_convergence, params, ts, _resolve_out(out),
               n_samples=n_samples, seed=seed)


@main.command("stationary-check")
@click.option("--beta", type=float, required=True)
@click.option("--L", "L", type=int, required=True)
@click.option("--t-values", default="0.5,1,5", show_default=True)
@click.option("--out", default="stationary_check.json", show_default=True)
def stationary_check(beta, L, t_values, out):
    """Stationary-state purity (matrix and both closed forms) and drift."""
    try:
        ts = [float(x) for x in t_values.split(",")]
    except ValueError:
        _fail(2, f"bad --t-values {t_values!r}")
    run_recipe(experiments.run_stationary_check, beta, L, _resolve_out(out), t_values=ts)


if __name__ == "__main__":
    main()
