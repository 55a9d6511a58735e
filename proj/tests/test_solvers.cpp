// Copyright 2026 the mlpr authors
// SPDX-License-Identifier: Apache-2.0

#include "mlpr/solvers.hpp"

#include <doctest.h>

#include <random>

#include "oracles.hpp"

using namespace mlpr;

namespace {

PageRankProblem seeded_problem(Index n, double alpha, std::uint64_t seed,
                               int order = 3) {
  std::mt19937_64 rng(seed);
  Matrix R = oracle::random_stochastic_dense(n, order, rng);
  Vector v = oracle::random_simplex(n, rng);
  return PageRankProblem(FlattenedTensor::dense(order, n, R), alpha, v);
}

void check_report_shape(const SolveReport& rep, const PageRankProblem& prob) {
  CHECK(static_cast<int>(rep.residual_history.size()) ==
        rep.outer_iterations + 1);
  CHECK(rep.final_residual == rep.residual_history.back());
  CHECK(rep.final_residual ==
        doctest::Approx(prob.residual(rep.solution).lpNorm<1>())
            .epsilon(1e-12));
  CHECK(rep.iterate_min_entry >= 0.0);
  CHECK(rep.iterate_max_sum_err <= 1e-12);
  CHECK(rep.wall_time_s >= 0.0);
}

}  // namespace

TEST_SUITE_BEGIN("solvers");

TEST_CASE("all seven methods agree on an easy contraction") {
  auto prob = seeded_problem(12, 0.4, 41);
  Vector reference;
  for (Method m : all_methods()) {
    auto rep = solve(prob, m);
    INFO("method ", method_name(m));
    REQUIRE(rep.status == SolveStatus::kConverged);
    CHECK(rep.final_residual <= 1e-15);
    check_report_shape(rep, prob);
    if (reference.size() == 0)
      reference = rep.solution;
    else
      CHECK((rep.solution - reference).lpNorm<1>() <= 1e-9);
  }
}

TEST_CASE("alpha = 0 converges to v in one outer iteration") {
  auto prob = seeded_problem(9, 0.0, 42);
  for (Method m : all_methods()) {
    auto rep = solve(prob, m);
    INFO("method ", method_name(m));
    CHECK(rep.status == SolveStatus::kConverged);
    CHECK((rep.solution - prob.v()).lpNorm<1>() <= 1e-13);
  }
}

TEST_CASE("inner iteration accounting matches the method family") {
  auto prob = seeded_problem(10, 0.4, 43);
  auto fp = solve(prob, Method::kFixedPoint);
  CHECK(fp.inner_iteration_counts.empty());
  CHECK(fp.inner_iterations_total == 0);
  CHECK(fp.gmres_solves == 0);
  auto nt = solve(prob, Method::kNewton);
  CHECK(nt.inner_iteration_counts.empty());
  auto ng = solve(prob, Method::kNewtonGmres);
  CHECK(static_cast<int>(ng.inner_iteration_counts.size()) ==
        ng.outer_iterations);
  std::int64_t sum = 0;
  for (int c : ng.inner_iteration_counts) sum += c;
  CHECK(sum == ng.inner_iterations_total);
  CHECK(ng.gmres_solves == ng.outer_iterations);
  auto mpe = solve(prob, Method::kNgMpe);
  CHECK(mpe.gmres_solves >= mpe.outer_iterations);  // q+2 corrections a cycle
}

TEST_CASE("newton converges quadratically once the residual is small") {
  for (std::uint64_t seed : {101, 102, 103}) {
    auto prob = seeded_problem(20, 0.45, seed);
    auto rep = solve(prob, Method::kNewton);
    REQUIRE(rep.status == SolveStatus::kConverged);
    bool tail = false;
    for (std::size_t k = 0; k + 1 < rep.residual_history.size(); ++k) {
      double cur = rep.residual_history[k];
      double next = rep.residual_history[k + 1];
      if (cur < 1e-4) {
        tail = true;
        CHECK(next <= std::max(std::pow(cur, 1.5), 1e-14));
      }
    }
    CHECK(tail);
  }
}

TEST_CASE("extrapolated variants take fewer outer iterations on a stiff problem") {
  auto prob = seeded_problem(30, 0.99, 44);
  SolverOptions opt;
  opt.tol = 1e-13;
  auto ng = solve(prob, Method::kNewtonGmres, opt);
  auto mpe = solve(prob, Method::kNgMpe, opt);
  auto rre = solve(prob, Method::kNgRre, opt);
  REQUIRE(ng.status == SolveStatus::kConverged);
  REQUIRE(mpe.status == SolveStatus::kConverged);
  REQUIRE(rre.status == SolveStatus::kConverged);
  CHECK(mpe.outer_iterations < ng.outer_iterations);
  CHECK(rre.outer_iterations < ng.outer_iterations);
  CHECK((mpe.solution - ng.solution).lpNorm<1>() <= 1e-9);
  CHECK((rre.solution - ng.solution).lpNorm<1>() <= 1e-9);
}

TEST_CASE("finite-difference variants track their exact counterparts") {
  auto prob = seeded_problem(15, 0.85, 45);
  SolverOptions opt;
  opt.tol = 1e-12;
  auto exact = solve(prob, Method::kNewtonGmres, opt);
  auto fd = solve(prob, Method::kNewtonGmresFd, opt);
  REQUIRE(exact.status == SolveStatus::kConverged);
  REQUIRE(fd.status == SolveStatus::kConverged);
  CHECK((fd.solution - exact.solution).lpNorm<1>() <= 1e-9);

  SolverOptions fopt = opt;
  fopt.fd = true;
  auto mpe_fd = solve(prob, Method::kNgMpe, fopt);
  REQUIRE(mpe_fd.status == SolveStatus::kConverged);
  CHECK((mpe_fd.solution - exact.solution).lpNorm<1>() <= 1e-9);
}

TEST_CASE("anderson mixing beats the plain fixed-point iteration") {
  auto prob = seeded_problem(25, 0.9, 46);
  SolverOptions opt;
  opt.tol = 1e-12;
  auto fp = solve(prob, Method::kFixedPoint, opt);
  auto na = solve(prob, Method::kNewtonAnderson, opt);
  REQUIRE(na.status == SolveStatus::kConverged);
  if (fp.status == SolveStatus::kConverged)
    CHECK(na.outer_iterations <= fp.outer_iterations);
  CHECK((prob.residual(na.solution)).lpNorm<1>() <= opt.tol);
}

TEST_CASE("max_outer caps the iteration count and reports honestly") {
  auto prob = seeded_problem(20, 0.95, 47);
  SolverOptions opt;
  opt.max_outer = 3;
  auto rep = solve(prob, Method::kFixedPoint, opt);
  CHECK(rep.status == SolveStatus::kMaxIterations);
  CHECK(rep.outer_iterations == 3);
  CHECK(rep.residual_history.size() == 4);
}

TEST_CASE("stagnation guard trips on a non-contracting iteration") {
  // Far beyond the contraction regime the plain iteration bottoms out near
  // machine precision and then drifts; the guard must stop it before kmax.
  auto prob = seeded_problem(16, 0.99, 48);
  SolverOptions opt;
  opt.tol = 1e-15;
  opt.max_outer = 1000;
  auto rep = solve(prob, Method::kFixedPoint, opt);
  if (rep.status != SolveStatus::kConverged) {
    CHECK(rep.status == SolveStatus::kStagnated);
    CHECK(rep.outer_iterations < opt.max_outer);
  }
}

TEST_CASE("singular Jacobian surfaces as a status, not an exception") {
  // Every column of R equals e_1, so J_g = alpha * 2 * e_1 * e^T and
  // J_f = J_g - I is singular at alpha = 0.5 (eigenvalue 2*alpha - 1 = 0
  // on the e_1 + span component); the dense LU must refuse to factor it.
  const Index n = 2;
  Matrix R = Matrix::Zero(n, n * n);
  R.row(0).setOnes();
  Vector v = Vector::Constant(n, 0.5);
  PageRankProblem prob(FlattenedTensor::dense(3, n, R), 0.5, v);
  auto rep = solve(prob, Method::kNewton);
  CHECK(rep.status == SolveStatus::kSingularJacobian);
}

TEST_CASE("custom starting point is honoured") {
  auto prob = seeded_problem(8, 0.3, 49);
  SolverOptions opt;
  Vector x0 = Vector::Zero(8);
  x0[0] = 1.0;
  opt.x0 = x0;
  auto rep = solve(prob, Method::kNewtonGmres, opt);
  CHECK(rep.status == SolveStatus::kConverged);
  CHECK(rep.residual_history[0] ==
        doctest::Approx(prob.residual(x0).lpNorm<1>()).epsilon(1e-13));
}

TEST_CASE("already-converged start still runs one outer iteration") {
  auto prob = seeded_problem(10, 0.4, 50);
  auto first = solve(prob, Method::kNewton);
  REQUIRE(first.status == SolveStatus::kConverged);
  SolverOptions opt;
  opt.x0 = first.solution;
  for (Method m : {Method::kFixedPoint, Method::kNewton, Method::kNewtonGmres,
                   Method::kNgMpe, Method::kNewtonAnderson}) {
    auto rep = solve(prob, m, opt);
    INFO("method ", method_name(m));
    CHECK(rep.status == SolveStatus::kConverged);
    CHECK(rep.outer_iterations >= 1);
  }
}

TEST_CASE("forcing option still reaches full accuracy") {
  auto prob = seeded_problem(18, 0.8, 51);
  SolverOptions opt;
  opt.tol = 1e-13;
  opt.forcing = true;
  auto rep = solve(prob, Method::kNewtonGmres, opt);
  REQUIRE(rep.status == SolveStatus::kConverged);
  CHECK(rep.final_residual <= opt.tol);
  auto exact = solve(prob, Method::kNewtonGmres);
  CHECK((rep.solution - exact.solution).lpNorm<1>() <= 1e-9);
}

TEST_CASE("fourth-order problems solve as well") {
  auto prob = seeded_problem(8, 0.3, 52, 4);
  for (Method m : {Method::kNewton, Method::kNewtonGmres, Method::kNgRre}) {
    auto rep = solve(prob, m);
    INFO("method ", method_name(m));
    REQUIRE(rep.status == SolveStatus::kConverged);
    CHECK(rep.final_residual <= 1e-15);
    check_report_shape(rep, prob);
  }
}

TEST_CASE("method names round-trip") {
  for (Method m : all_methods())
    CHECK(method_from_name(method_name(m)) == m);
  CHECK_THROWS_AS(method_from_name("nope"), ParameterError);
  CHECK(all_methods().size() == 7);
}

TEST_CASE("option validation rejects nonsense") {
  auto prob = seeded_problem(5, 0.3, 53);
  SolverOptions opt;
  opt.tol = -1.0;
  CHECK_THROWS_AS(solve(prob, Method::kNewton, opt), ParameterError);
  opt = {};
  opt.max_outer = 0;
  CHECK_THROWS_AS(solve(prob, Method::kNewton, opt), ParameterError);
  opt = {};
  opt.krylov_dim = 0;
  CHECK_THROWS_AS(solve(prob, Method::kNewtonGmres, opt), ParameterError);
  opt = {};
  opt.window_q = 0;
  CHECK_THROWS_AS(solve(prob, Method::kNgMpe, opt), ParameterError);
  opt = {};
  opt.x0 = Vector::Constant(4, 0.25);  // wrong length for n = 5
  CHECK_THROWS_AS(solve(prob, Method::kNewton, opt), ShapeError);
}

TEST_CASE("report names the method that produced it") {
  auto prob = seeded_problem(6, 0.2, 54);
  for (Method m : all_methods())
    CHECK(solve(prob, m).method == method_name(m));
}

TEST_SUITE_END();
