// Copyright 2026 the mlpr authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "mlpr/tensor.hpp"

namespace mlpr {

struct RegularityReport {
  bool regular = false;
  double threshold = 0.0;  // 1/(m-1)
  double margin = 0.0;     // threshold - alpha; negative when not regular
};

/// One multilinear PageRank instance: find a stochastic x with
///   x = alpha * R(x (x) ... (x) x) + (1 - alpha) * v.
class PageRankProblem {
 public:
  /// Validates alpha in [0,1) and that v is stochastic (nonnegative,
  /// sums to one within the tensor validation tolerance).
  PageRankProblem(FlattenedTensor tensor, double alpha, Vector v);

  const FlattenedTensor& tensor() const noexcept { return tensor_; }
  double alpha() const noexcept { return alpha_; }
  const Vector& v() const noexcept { return v_; }
  Index dim() const noexcept { return tensor_.dim(); }
  int order() const noexcept { return tensor_.order(); }

  /// g(x) = alpha * R(x (x) ... (x) x) + (1 - alpha) * v.
  Vector fixed_point_map(const Vector& x) const;

  /// f(x) = g(x) - x; the solvers drive ||f(x)||_1 below tolerance.
  Vector residual(const Vector& x) const;

  /// Uniqueness condition alpha < 1/(m-1) with its margin.
  RegularityReport check_regularity() const noexcept;

 private:
  FlattenedTensor tensor_;
  double alpha_;
  Vector v_;
};

/// proj(z) = max(z,0) / ||max(z,0)||_1, the nonnegative rescaling back onto
/// the simplex. Throws DegenerateProjectionError when max(z,0) is all zero.
Vector project(const Vector& z);

}  // namespace mlpr
