// Copyright 2026 the mlpr authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mlpr/problem.hpp"

namespace mlpr {

enum class Method {
  kFixedPoint,      // fp
  kNewton,          // newton (dense LU)
  kNewtonGmres,     // ng
  kNewtonGmresFd,   // ngfd (finite-difference Jacobian action)
  kNgMpe,           // ng-mpe (windowed minimal-polynomial extrapolation)
  kNgRre,           // ng-rre (windowed reduced-rank extrapolation)
  kNewtonAnderson,  // na (depth-1 Anderson mixing of the Newton steps)
};

/// Canonical CLI identifier: fp, newton, ng, ngfd, ng-mpe, ng-rre, na.
std::string_view method_name(Method m);
Method method_from_name(std::string_view name);
/// All methods, in the canonical reporting order.
const std::vector<Method>& all_methods();

enum class SolveStatus {
  kConverged,
  kMaxIterations,
  kStagnated,
  kDegenerateProjection,
  kSingularJacobian,
};

std::string_view to_string(SolveStatus s);

struct SolverOptions {
  /// Outer tolerance on ||f(x)||_1.
  double tol = 1e-15;
  /// Inner tolerance: absolute 2-norm on the GMRES least-squares residual.
  double inner_tol = 1e-14;
  int max_outer = 1000;
  /// Krylov basis cap per inner solve (GMRES runs a single cycle).
  int krylov_dim = 40;
  /// Extrapolation window parameter; a window holds q+2 iterates.
  int window_q = 4;
  /// Use the finite-difference Jacobian action inside ng-mpe / ng-rre / na.
  /// (Method::kNewtonGmresFd implies it for the plain Newton-GMRES solver.)
  bool fd = false;
  /// Declare stagnation when the best residual seen fails to improve by a
  /// factor (1 - stagnation_drop) over stagnation_window outer iterations.
  int stagnation_window = 20;
  double stagnation_drop = 1e-3;
  bool reorthogonalize = false;
  /// Adaptive inner tolerance min(inner_tol, forcing_eta * ||f(x_k)||_1).
  bool forcing = false;
  double forcing_eta = 1e-2;
  /// Initial iterate; defaults to the teleportation vector v.
  std::optional<Vector> x0;
};

struct SolveReport {
  Vector solution;
  SolveStatus status = SolveStatus::kMaxIterations;
  std::string method;
  int outer_iterations = 0;
  /// ||f(x_k)||_1 for k = 0..outer_iterations (length outer_iterations + 1).
  std::vector<double> residual_history;
  /// GMRES iterations spent per outer step; empty for fp and newton.
  std::vector<int> inner_iteration_counts;
  std::int64_t inner_iterations_total = 0;
  /// Number of Newton-GMRES corrections computed (window steps included).
  int gmres_solves = 0;
  /// Cycles where a singular extrapolation fell back to the last window iterate.
  int extrapolation_fallbacks = 0;
  double wall_time_s = 0.0;
  double final_residual = 0.0;
  /// Simplex monitoring over the accepted (post-projection) iterates.
  double iterate_min_entry = 0.0;
  double iterate_max_sum_err = 0.0;
};

SolveReport solve(const PageRankProblem& problem, Method method,
                  const SolverOptions& options = {});

SolveReport solve_fixed_point(const PageRankProblem&, const SolverOptions& = {});
SolveReport solve_newton(const PageRankProblem&, const SolverOptions& = {});
SolveReport solve_newton_gmres(const PageRankProblem&, const SolverOptions& = {});
SolveReport solve_newton_gmres_fd(const PageRankProblem&, const SolverOptions& = {});
SolveReport solve_ng_mpe(const PageRankProblem&, const SolverOptions& = {});
SolveReport solve_ng_rre(const PageRankProblem&, const SolverOptions& = {});
SolveReport solve_newton_anderson(const PageRankProblem&, const SolverOptions& = {});

}  // namespace mlpr
