"""Tiling reconstruction from row and column projections."""

from .core import (
    CELL,
    Instance,
    Kind,
    Placement,
    ProjectionPair,
    Tile,
    Tiling,
    cell_projections,
    center_projections,
    convert_projections,
    footprint,
    is_interlocking,
    normalize_tile,
    validate_tiling,
)
from .solver import SolverConfig, Status, enumerate_solutions, solve

__all__ = [
    "CELL",
    "Instance",
    "Kind",
    "Placement",
    "ProjectionPair",
    "SolverConfig",
    "Status",
    "Tile",
    "Tiling",
    "cell_projections",
    "center_projections",
    "convert_projections",
    "enumerate_solutions",
    "footprint",
    "is_interlocking",
    "normalize_tile",
    "solve",
    "validate_tiling",
]
__version__ = "0.1.0"
