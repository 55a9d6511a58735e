# Copyright 2026 the mlpr authors
# SPDX-License-Identifier: Apache-2.0
"""Multilinear PageRank solvers.

Solves x = alpha * R(x (x) ... (x) x) + (1 - alpha) * v for a stochastic x,
where R is the column-stochastic mode-1 unfolding of an order-m transition
tensor. The heavy lifting lives in the compiled ``_core`` extension; this
package just re-exports it.
"""

from ._core import (
    DegenerateProjectionError,
    Error,
    ExtrapolationSingularError,
    FlattenedTensor,
    PageRankProblem,
    ParameterError,
    ParseError,
    RegularityReport,
    ShapeError,
    SingularMatrixError,
    SolveReport,
    SolverOptions,
    ValidationError,
    gen_synthetic,
    load_tensor,
    method_names,
    mpe,
    project,
    rre,
    save_tensor,
    solve,
)

__all__ = [
    "DegenerateProjectionError",
    "Error",
    "ExtrapolationSingularError",
    "FlattenedTensor",
    "PageRankProblem",
    "ParameterError",
    "ParseError",
    "RegularityReport",
    "ShapeError",
    "SingularMatrixError",
    "SolveReport",
    "SolverOptions",
    "ValidationError",
    "gen_synthetic",
    "load_tensor",
    "method_names",
    "mpe",
    "project",
    "rre",
    "save_tensor",
    "solve",
]

__version__ = "0.1.0"
