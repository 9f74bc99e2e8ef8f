"""CLI: render one figure from simulation output files.

Exit codes: 0 success, 2 bad input (unknown kind, recipe mismatch, schema
error, missing file).
"""

from __future__ import annotations

import sys

import click

from .figures import KIND_RECIPES, FigureSpec, render
from .io import SchemaError


@click.command()
@click.option("--figure", "kind", required=True,
              type=click.Choice(sorted(KIND_RECIPES)),
              help="Figure kind; must match the recipe embedded in the inputs.")
@click.option("--input", "inputs", multiple=True, required=True,
              type=click.Path(exists=True), help="Input CSV/JSON (repeatable).")
@click.option("--out", required=True, help="Output image path.")
@click.option("--title", default="")
@click.option("--label", "labels", multiple=True,
              help="Per-input legend label (repeatable, positional).")
@click.option("--log-y", is_flag=True, default=False)
def main(kind, inputs, out, title, labels, log_y):
    """Render a figure from delimited simulation output."""
    try:
        spec = FigureSpec(kind=kind, inputs=inputs, out=out, title=title,
                          labels=tuple(labels), log_y=log_y)
        path = render(spec)
    except (SchemaError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    click.echo(str(path))


if __name__ == "__main__":
    main()
