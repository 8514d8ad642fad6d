"""Jost functions, spectra and zeta-related functions of the interacting xp model."""

from ._xpjost import (
    BoundaryZeroError,
    CollinearityError,
    ConfigError,
    ConsistencyError,
    ConvergenceError,
    DomainError,
    Error,
    Model,
    PoleError,
    WindowError,
    Z,
    fz_integral,
    fz_series,
    run,
    smooth_counting,
    smooth_zero,
    theta,
    zeta,
)

__all__ = [
    "BoundaryZeroError",
    "CollinearityError",
    "ConfigError",
    "ConsistencyError",
    "ConvergenceError",
    "DomainError",
    "Error",
    "Model",
    "PoleError",
    "WindowError",
    "Z",
    "fz_integral",
    "fz_series",
    "run",
    "smooth_counting",
    "smooth_zero",
    "theta",
    "zeta",
]
