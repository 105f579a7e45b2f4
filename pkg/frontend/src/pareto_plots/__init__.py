"""Read-only figure rendering for the bandit CSV/JSON output contract."""

from .render import compute_stats, load_csv, main, render

__all__ = ["compute_stats", "load_csv", "main", "render"]

__version__ = "0.1.0"
