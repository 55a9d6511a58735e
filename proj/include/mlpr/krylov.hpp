// Copyright 2026 the mlpr authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

#include "mlpr/tensor.hpp"

namespace mlpr {

/// Matrix-free linear operator on R^dim.
struct LinearOperator {
  Index dim = 0;
  std::function<Vector(const Vector&)> apply;
};

struct ArnoldiOptions {
  /// Lucky-breakdown threshold, relative to ||r0||: stop when the new
  /// subdiagonal entry h_{j+1,j} falls to breakdown_tol * ||r0||.
  double breakdown_tol = 1e-14;
  /// Second modified Gram-Schmidt pass for ill-conditioned operators.
  bool reorthogonalize = false;
};

/// Arnoldi decomposition A V_j = V_{j+1} H_j built with modified
/// Gram-Schmidt. basis holds steps+1 vectors (steps on lucky breakdown);
/// hessenberg is the (steps+1) x steps upper-Hessenberg block.
struct KrylovWorkspace {
  std::vector<Vector> basis;
  Matrix hessenberg;
  double beta = 0.0;  // ||r0||_2
  int steps = 0;
  bool breakdown = false;
};

KrylovWorkspace arnoldi(const LinearOperator& op, const Vector& r0, int max_dim,
                        const ArnoldiOptions& opts = {});

struct GmresOptions {
  double breakdown_tol = 1e-14;
  bool reorthogonalize = false;
};

struct GmresResult {
  Vector solution;
  double residual_norm = 0.0;  // Givens estimate of ||b - A x||_2
  int iterations = 0;
  bool converged = false;
  bool breakdown = false;
  /// residual_history[0] = ||r0||, then one estimate per iteration.
  std::vector<double> residual_history;
};

/// Single-cycle GMRES (no restart): grows one Krylov basis up to max_dim
/// vectors, monitoring the least-squares residual through a Givens QR of the
/// Hessenberg. The absolute 2-norm tolerance is checked after every step.
GmresResult gmres(const LinearOperator& op, const Vector& b, const Vector& x0,
                  double tol, int max_dim, const GmresOptions& opts = {});

/// Incremental GMRES, one Arnoldi step at a time. Lets callers substitute
/// their own convergence measurement (e.g. re-evaluating a nonlinear residual
/// around the current correction) for the Givens estimate.
class GmresEngine {
 public:
  GmresEngine(const LinearOperator& op, const Vector& r0, int max_dim,
              const GmresOptions& opts = {});

  /// Performs one Arnoldi step plus the Givens update. Returns false when the
  /// basis is exhausted (max_dim reached, breakdown already hit, or beta=0).
  bool step();

  /// |last Givens-transformed rhs entry|: estimate of the current LS residual.
  double residual_estimate() const;

  /// Correction V_j y_j minimizing ||r0 - A z|| over the current subspace.
  Vector current_solution() const;

  int iterations() const noexcept { return steps_; }
  bool exhausted() const noexcept;
  bool breakdown() const noexcept { return breakdown_; }
  double beta() const noexcept { return beta_; }

 private:
  LinearOperator op_;
  int max_dim_;
  GmresOptions opts_;
  double beta_ = 0.0;
  int steps_ = 0;
  bool breakdown_ = false;
  std::vector<Vector> basis_;
  Matrix h_;      // holds the triangularized Hessenberg columns
  Vector g_;      // rotated rhs, g_[steps_] is the residual estimate
  std::vector<double> cs_, sn_;
};

}  // namespace mlpr
