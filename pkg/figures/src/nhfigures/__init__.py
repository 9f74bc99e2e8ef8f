"""Figure rendering for the spin-chain simulation's CSV/JSON outputs."""

from .figures import KIND_RECIPES, FigureSpec, render
from .io import SchemaError, Table, read_report, read_table

__all__ = ["KIND_RECIPES", "FigureSpec", "render", "SchemaError", "Table",
           "read_report", "read_table"]
__version__ = "0.1.0"
