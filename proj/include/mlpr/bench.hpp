// Copyright 2026 the mlpr authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mlpr/solvers.hpp"

namespace mlpr {

struct BenchProblem {
  std::string name;
  FlattenedTensor tensor;
  Vector v;
};

struct BenchSuite {
  std::vector<BenchProblem> problems;
  std::vector<double> alphas;
  std::vector<Method> methods;
  SolverOptions options;
};

struct BenchRow {
  std::string problem;
  double alpha = 0.0;
  std::string method;
  std::string status;  // solver status, or "error" for per-cell hard failures
  int iters = 0;
  std::int64_t inner_iters = 0;
  double time_s = 0.0;
  double final_residual = 0.0;
};

/// Default damping sweep used by the benchmark runs.
const std::vector<double>& default_alpha_grid();

/// Runs the full problems x alphas x methods grid. Rows come back in that
/// nesting order regardless of jobs; per-cell failures are recorded in the
/// status column and never abort the sweep.
std::vector<BenchRow> run_suite(const BenchSuite& suite, int jobs = 1);

/// Columns: problem,alpha,method,status,iters,inner_iters,time_s,final_residual.
/// Numbers are written in shortest round-trip form, so re-running a fixed
/// seed reproduces the file byte for byte (timing column aside).
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);
std::vector<BenchRow> read_bench_csv(std::istream& in);

enum class ProfileMetric { kIters, kTime };

/// Performance profile of one method: fraction of (problem, alpha) cells
/// solved within a factor tau of the per-cell best metric.
struct ProfileCurve {
  std::string method;
  std::vector<double> tau;       // breakpoints plus a log-spaced grid
  std::vector<double> fraction;  // nondecreasing, bounded by solve_rate
  double solve_rate = 0.0;
};

/// Ratios follow the usual convention: unsolved cells score infinity, the
/// per-cell best is taken over converged methods only. Throws ParameterError
/// when no row converged at all.
std::vector<ProfileCurve> performance_profiles(const std::vector<BenchRow>& rows,
                                               ProfileMetric metric);

}  // namespace mlpr
