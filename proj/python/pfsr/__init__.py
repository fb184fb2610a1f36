"""Pseudo-full-space representation classification.

Thin wrapper around the C++ core: proximal operators, the multi-block ADMM
solver, the category-contribution-rate classifier, evaluation indices and
the synthetic data generator.
"""

from ._core import (
    accuracy,
    assign_labels,
    cci,
    ccr,
    classify,
    fit_eigenfaces,
    generate,
    pca_transform,
    rsi,
    soft_threshold,
    solve,
    spectral_norm,
    stability_bound,
    svt,
    zero_diagonal_project,
)

__all__ = [
    "accuracy",
    "assign_labels",
    "cci",
    "ccr",
    "classify",
    "fit_eigenfaces",
    "generate",
    "pca_transform",
    "rsi",
    "soft_threshold",
    "solve",
    "spectral_norm",
    "stability_bound",
    "svt",
    "zero_diagonal_project",
]

__version__ = "0.1.0"
