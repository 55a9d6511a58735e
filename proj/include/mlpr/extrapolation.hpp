// Copyright 2026 the mlpr authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "mlpr/tensor.hpp"

namespace mlpr {

/// Fixed-point iterates s_0, ..., s_{q+1} collected for one extrapolation.
struct SequenceWindow {
  std::vector<Vector> iterates;

  int q() const { return static_cast<int>(iterates.size()) - 2; }
};

struct ExtrapolationInfo {
  /// Affine combination weights over s_0..s_d; always sums to one.
  Vector gamma;
  /// Polynomial degree actually used (q, or less after rank truncation).
  int effective_degree = 0;
  bool truncated = false;
};

/// Minimal polynomial extrapolation of the window via a QR factorization of
/// the difference matrix [s_1-s_0, ..., s_{q+1}-s_q]. Exact when the window
/// comes from a linear iteration whose minimal polynomial degree is <= q.
/// Throws ExtrapolationSingularError when the coefficient sum vanishes.
Vector mpe(const SequenceWindow& window, ExtrapolationInfo* info = nullptr);

/// Reduced-rank extrapolation over the same window and QR factorization,
/// solving the least-squares weights through the triangular normal equations.
Vector rre(const SequenceWindow& window, ExtrapolationInfo* info = nullptr);

}  // namespace mlpr
