"""Figure kinds and the render dispatch.

Each kind maps one or more CSV/JSON recipes onto a fixed layout. Rendering
never re-derives data: columns are plotted as stored, and the checksum of each
input's data rows is embedded in the image metadata so any figure can be traced
back to its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .io import SchemaError, Table, read_report, read_table

# Accepted embedded recipe names per figure kind.
KIND_RECIPES = {
    "lightcone": ("lightcone",),
    "opent-series": ("opent_series",),
    "lta-scan": ("opent_lta_scan_L", "opent_lta_scan_param"),
    "spectrum-flow": ("spectrum_flow",),
    "quench": ("quench_subsystem", "quench_scaling"),
    "haar-convergence": ("haar_convergence",),
}

JSON_KINDS = ("haar-convergence",)


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    inputs: tuple
    out: Path
    title: str = ""
    log_y: bool = False
    labels: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind not in KIND_RECIPES:
            raise SchemaError(
                f"unknown figure kind {self.kind!r}; choose from {sorted(KIND_RECIPES)}")
        if not self.inputs:
            raise SchemaError("at least one input file is required")
        object.__setattr__(self, "inputs", tuple(Path(p) for p in self.inputs))
        object.__setattr__(self, "out", Path(self.out))


def _check_recipe(spec: FigureSpec, recipe: str, path) -> None:
    if recipe not in KIND_RECIPES[spec.kind]:
        raise SchemaError(
            f"{path}: recipe {recipe!r} does not belong to figure kind "
            f"{spec.kind!r} (expected one of {KIND_RECIPES[spec.kind]})")


def _label(spec: FigureSpec, index: int, fallback: str) -> str:
    if index < len(spec.labels):
        return spec.labels[index]
    return fallback


def _draw_lightcone(ax, tables):
    table = tables[0]
    sites = sorted({int(r["site"]) for r in table.rows})
    times = sorted({float(r["t"]) for r in table.rows})
    grid = np.full((len(sites), len(times)), np.nan)
    s_index = {s: i for i, s in enumerate(sites)}
    t_index = {t: i for i, t in enumerate(times)}
    for row in table.rows:
        grid[s_index[int(row["site"])], t_index[float(row["t"])]] = float(row["value"])
    mesh = ax.pcolormesh(times, sites, grid, shading="nearest", cmap="viridis")
    ax.set_xlabel("t")
    ax.set_ylabel("site")
    ax.figure.colorbar(mesh, ax=ax, label="normalized OTOC")


def _draw_series(ax, spec, tables):
    for i, table in enumerate(tables):
        ax.plot(table.column("t"), table.column("value"),
                label=_label(spec, i, table.path.stem))
    ax.set_xlabel("t")
    ax.set_ylabel("operator entanglement")
    if len(tables) > 1 or spec.labels:
        ax.legend()


def _draw_lta_scan(ax, spec, tables):
    for i, table in enumerate(tables):
        x = table.column("sweep_value")
        base = _label(spec, i, table.path.stem)
        ax.plot(x, table.column("numeric_lta"), "o-", label=f"{base} numeric")
        analytic = table.column("analytic_lta")
        if not all(np.isnan(analytic)):
            ax.plot(x, analytic, "s--", label=f"{base} analytic")
    ax.set_xlabel(tables[0].metadata.get("config", {}).get("parameter", "L"))
    ax.set_ylabel("operator entanglement LTA")
    ax.legend()


def _draw_quench(ax, spec, tables):
    group_key = "l" if "l" in tables[0].columns else "L"
    for i, table in enumerate(tables):
        if group_key not in table.columns:
            raise SchemaError(f"{table.path}: missing column {group_key!r}")
        groups = sorted({int(r[group_key]) for r in table.rows})
        for g in groups:
            rows = [r for r in table.rows if int(r[group_key]) == g]
            ts = [float(r["t"]) for r in rows]
            ss = [float(r["entropy"]) for r in rows]
            ax.plot(ts, ss, label=f"{_label(spec, i, group_key)}={g}")
    ax.set_xlabel("t")
    ax.set_ylabel("entanglement entropy")
    ax.legend()


def _draw_haar(ax, spec, path):
    metadata, payload, checksum = read_report(path)
    _check_recipe(spec, metadata.get("recipe", ""), path)
    points = payload.get("points")
    if not isinstance(points, list) or not points:
        raise SchemaError(f"{path}: missing column 'points'")
    for key in ("t", "mean", "stderr", "linear_opent"):
        if key not in points[0]:
            raise SchemaError(f"{path}: missing column {key!r}")
    ts = [p["t"] for p in points]
    ax.errorbar(ts, [p["mean"] for p in points],
                yerr=[p["stderr"] for p in points], fmt="o", capsize=3,
                label="sampled Haar mean")
    ax.plot(ts, [p["linear_opent"] for p in points], "k--",
            label="linear operator entanglement")
    ax.set_xlabel("t")
    ax.set_ylabel("OTOC")
    ax.legend()
    return checksum


def render(spec: FigureSpec) -> Path:
    """Render one figure and return the output path.

    The PNG carries a 'Source' metadata entry with 'name:sha256' per input.
    """
    checksums = []
    if spec.kind == "spectrum-flow":
        fig, axes = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    else:
        fig, ax = plt.subplots(figsize=(7, 4.5))

    try:
        if spec.kind in JSON_KINDS:
            checksum = _draw_haar(ax, spec, spec.inputs[0])
            checksums.append(f"{spec.inputs[0].name}:{checksum}")
        else:
            tables = [read_table(p) for p in spec.inputs]
            for table in tables:
                _check_recipe(spec, table.recipe, table.path)
                checksums.append(f"{table.path.name}:{table.checksum}")
            if spec.kind == "lightcone":
                _draw_lightcone(ax, tables)
            elif spec.kind == "opent-series":
                _draw_series(ax, spec, tables)
            elif spec.kind == "lta-scan":
                _draw_lta_scan(ax, spec, tables)
            elif spec.kind == "quench":
                _draw_quench(ax, spec, tables)
            else:  # spectrum-flow: two panels, real part above imaginary part
                table = tables[0]
                x = table.column("sweep_value")
                re = table.column("re")
                im = table.column("im")
                axes[0].plot(x, re, ".", markersize=2)
                axes[0].set_ylabel("Re")
                axes[1].plot(x, im, ".", markersize=2)
                axes[1].set_ylabel("Im")
                axes[1].set_xlabel(table.metadata.get("config", {})
                                   .get("parameter", "sweep value"))
        target = axes[0] if spec.kind == "spectrum-flow" else ax
        if spec.title:
            target.set_title(spec.title)
        if spec.log_y and spec.kind != "spectrum-flow":
            ax.set_yscale("log")
        fig.tight_layout()
        spec.out.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(spec.out, dpi=150,
                    metadata={"Source": ",".join(checksums)})
    finally:
        plt.close(fig)
    return spec.out
