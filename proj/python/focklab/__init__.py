"""Toeplitz operators with measure symbols on truncated Fock spaces."""

from ._core import (
    ConfigError,
    assemble,
    basis_indices,
    berezin,
    carleson_constant,
    diagonalization_residual,
    gamma,
    rotation_to_vertical,
    run,
    weyl_matrix,
)

__all__ = [
    "ConfigError",
    "assemble",
    "basis_indices",
    "berezin",
    "carleson_constant",
    "diagonalization_residual",
    "gamma",
    "rotation_to_vertical",
    "run",
    "weyl_matrix",
]
