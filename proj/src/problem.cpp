// Copyright 2026 the mlpr authors
// SPDX-License-Identifier: Apache-2.0

#include "mlpr/problem.hpp"

#include <cmath>

namespace mlpr {

PageRankProblem::PageRankProblem(FlattenedTensor tensor, double alpha, Vector v)
    : tensor_(std::move(tensor)), alpha_(alpha), v_(std::move(v)) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw ParameterError("alpha must lie in [0, 1), got " + std::to_string(alpha));
  if (v_.size() != tensor_.dim())
    throw ShapeError("teleportation vector length " + std::to_string(v_.size()) +
                     " does not match tensor dimension " +
                     std::to_string(tensor_.dim()));
  double sum = 0.0;
  for (Index i = 0; i < v_.size(); ++i) {
    if (v_[i] < 0.0 || !std::isfinite(v_[i]))
      throw ValidationError("teleportation vector has a negative entry");
    sum += v_[i];
  }
  if (std::abs(sum - 1.0) > FlattenedTensor::kStochasticTol)
    throw ValidationError("teleportation vector sums to " + std::to_string(sum) +
                          ", not 1");
}

Vector PageRankProblem::fixed_point_map(const Vector& x) const {
  return alpha_ * tensor_.apply(x) + (1.0 - alpha_) * v_;
}

Vector PageRankProblem::residual(const Vector& x) const {
  return fixed_point_map(x) - x;
}

RegularityReport PageRankProblem::check_regularity() const noexcept {
  RegularityReport r;
  r.threshold = 1.0 / static_cast<double>(tensor_.order() - 1);
  r.margin = r.threshold - alpha_;
  r.regular = alpha_ < r.threshold;
  return r;
}

Vector project(const Vector& z) {
  Vector p = z.cwiseMax(0.0);
  const double s = p.sum();
  if (s <= 0.0)
    throw DegenerateProjectionError(
        "projection input has no positive part; iterate left the simplex");
  return p / s;
}

}  // namespace mlpr
