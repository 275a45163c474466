"""Figure rendering for nexpansion sweep CSV files."""

from .render import PlotSpec, SchemaMismatchError, SweepRow, load_sweep, render

__version__ = "0.1.0"
