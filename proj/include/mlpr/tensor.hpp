// Copyright 2026 the mlpr authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "mlpr/errors.hpp"

namespace mlpr {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// One nonzero of a flattened tensor, 0-based indices.
struct Triplet {
  Index row = 0;
  std::int64_t col = 0;
  double value = 0.0;
};

/// Column-stochastic mode-1 unfolding of an order-m stochastic tensor:
/// an n x n^(m-1) matrix whose columns each sum to one.
///
/// Column c (0-based) encodes the index tuple (i_2,...,i_m) with i_2 as the
/// fastest-varying digit:  c = (i_2-1) + (i_3-1)*n + ... + (i_m-1)*n^(m-2).
///
/// Copies are cheap (storage is shared and immutable after construction).
class FlattenedTensor {
 public:
  /// Validated construction from a dense n x n^(m-1) matrix.
  /// With repair=true, column sums within the validation tolerance of one
  /// are renormalized to exactly one; entries must be nonnegative either way.
  static FlattenedTensor dense(int order, Index dim, Matrix values,
                               bool repair = false);

  /// Validated construction from triplets. Duplicate (row,col) entries are
  /// summed. Every logical column must sum to one.
  static FlattenedTensor sparse(int order, Index dim,
                                std::vector<Triplet> entries,
                                bool repair = false);

  int order() const noexcept { return order_; }
  Index dim() const noexcept { return dim_; }
  /// Number of unfolding columns, n^(m-1).
  std::int64_t cols() const noexcept { return cols_; }
  bool is_dense() const noexcept { return dense_ != nullptr; }

  std::int64_t nonzeros() const noexcept;

  /// Dense value matrix; throws ShapeError if stored sparse.
  const Matrix& dense_values() const;
  /// Sorted, deduplicated triplets; throws ShapeError if stored dense.
  const std::vector<Triplet>& triplets() const;

  /// y = R (x (x) x (x) ... (x) x), the order-(m-1) multilinear map.
  /// Never materializes the Kronecker vector for sparse storage.
  Vector apply(const Vector& x) const;

  /// w -> J_f(x) w  where  J_f(x) = alpha * sum_s R(x,...,I_s,...,x) - I,
  /// the Jacobian of f(x) = alpha*R(x(x)...(x)x) + (1-alpha)*v - x.
  Vector jacobian_apply(const Vector& x, const Vector& w, double alpha) const;

  /// Dense n x n Jacobian J_f(x); column j agrees with
  /// jacobian_apply(x, e_j, alpha). Intended for modest n only (O(n^2) memory,
  /// assembly cost proportional to nonzeros * order).
  Matrix dense_jacobian(const Vector& x, double alpha) const;

  /// Tolerance on |column sum - 1| accepted by the validated constructors.
  static constexpr double kStochasticTol = 1e-12;

 private:
  FlattenedTensor() = default;

  int order_ = 0;
  Index dim_ = 0;
  std::int64_t cols_ = 0;
  std::shared_ptr<const Matrix> dense_;
  std::shared_ptr<const std::vector<Triplet>> sparse_;
};

/// Checked power n^(m-1); throws ParameterError on overflow past 2^62.
std::int64_t unfolding_cols(int order, Index dim);

/// unfolding_cols plus a resource guard: throws ParameterError when the dense
/// n x n^(m-1) unfolding would exceed 2^28 doubles (2 GiB).
std::int64_t dense_unfolding_cols(int order, Index dim);

/// Free-function aliases matching the operation names used in the docs.
inline Vector apply_multilinear(const FlattenedTensor& R, const Vector& x) {
  return R.apply(x);
}

/// Solve A x = b by partial-pivoting LU. Throws SingularMatrixError when a
/// pivot collapses to working precision.
Vector dense_solve(const Matrix& A, const Vector& b);

}  // namespace mlpr
