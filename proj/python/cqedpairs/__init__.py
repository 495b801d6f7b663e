# Copyright 2026 The cqedpairs Authors
# SPDX-License-Identifier: Apache-2.0
"""Polarization-entangled photon pairs from a V-type atom in two cavities."""

from ._core import (
    Config,
    ConfigError,
    NumericalError,
    basis_labels,
    bell_fidelity,
    chsh_fixed,
    chsh_optimal,
    config_keys,
    correlation_matrix,
    rabi_oracle,
    run_experiment,
    self_check,
    simulate,
    sweep,
    sweep_parameters,
)

__all__ = [
    "Config",
    "ConfigError",
    "NumericalError",
    "basis_labels",
    "bell_fidelity",
    "chsh_fixed",
    "chsh_optimal",
    "config_keys",
    "correlation_matrix",
    "rabi_oracle",
    "run_experiment",
    "self_check",
    "simulate",
    "sweep",
    "sweep_parameters",
]
