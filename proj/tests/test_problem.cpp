// Copyright 2026 the mlpr authors
// SPDX-License-Identifier: Apache-2.0

#include "mlpr/problem.hpp"

#include <doctest.h>

#include <random>

#include "oracles.hpp"

using namespace mlpr;

namespace {

PageRankProblem seeded_problem(Index n, double alpha, std::mt19937_64& rng) {
  Matrix R = oracle::random_stochastic_dense(n, 3, rng);
  Vector v = oracle::random_simplex(n, rng);
  return PageRankProblem(FlattenedTensor::dense(3, n, R), alpha, v);
}

}  // namespace

TEST_SUITE_BEGIN("problem");

TEST_CASE("residual and fixed-point map match the written-out formula") {
  std::mt19937_64 rng(11);
  const Index n = 5;
  Matrix R = oracle::random_stochastic_dense(n, 3, rng);
  Vector v = oracle::random_simplex(n, rng);
  const double alpha = 0.73;
  PageRankProblem prob(FlattenedTensor::dense(3, n, R), alpha, v);
  Vector x = oracle::random_simplex(n, rng);
  Vector g_want = alpha * oracle::brute_apply3(R, x) + (1.0 - alpha) * v;
  CHECK((prob.fixed_point_map(x) - g_want).lpNorm<1>() <= 1e-14);
  CHECK((prob.residual(x) - (g_want - x)).lpNorm<1>() <= 1e-14);
}

TEST_CASE("alpha = 0 collapses the map to the teleportation vector") {
  std::mt19937_64 rng(12);
  auto prob = seeded_problem(6, 0.0, rng);
  Vector x = oracle::random_simplex(6, rng);
  CHECK((prob.fixed_point_map(x) - prob.v()).lpNorm<1>() <= 1e-15);
}

TEST_CASE("fixed-point map preserves the simplex") {
  std::mt19937_64 rng(13);
  auto prob = seeded_problem(7, 0.9, rng);
  for (int t = 0; t < 5; ++t) {
    Vector g = prob.fixed_point_map(oracle::random_simplex(7, rng));
    CHECK(g.minCoeff() >= 0.0);
    CHECK(std::abs(g.sum() - 1.0) <= 1e-13);
  }
}

TEST_CASE("projection clips and rescales; degenerate input throws") {
  Vector z(3);
  z << 0.5, -0.5, 1.0;
  Vector p = project(z);
  CHECK(p[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(p[1] == 0.0);
  CHECK(p[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-15));

  Vector q(3);
  q << 0.2, 0.3, 0.5;
  CHECK((project(q) - q).lpNorm<1>() <= 1e-15);

  Vector bad = -Vector::Ones(3);
  CHECK_THROWS_AS(project(bad), DegenerateProjectionError);
  CHECK_THROWS_AS(project(Vector::Zero(3)), DegenerateProjectionError);
}

TEST_CASE("regularity threshold is 1/(m-1)") {
  std::mt19937_64 rng(14);
  auto prob = seeded_problem(4, 0.49, rng);
  auto reg = prob.check_regularity();
  CHECK(reg.regular);
  CHECK(reg.threshold == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(reg.margin == doctest::Approx(0.01).epsilon(1e-12));
  auto stiff = seeded_problem(4, 0.95, rng);
  CHECK_FALSE(stiff.check_regularity().regular);
}

TEST_CASE("construction validates alpha and v") {
  std::mt19937_64 rng(15);
  Matrix R = oracle::random_stochastic_dense(3, 3, rng);
  auto t = FlattenedTensor::dense(3, 3, R);
  Vector v = Vector::Constant(3, 1.0 / 3.0);
  CHECK_THROWS_AS(PageRankProblem(t, 1.0, v), ParameterError);
  CHECK_THROWS_AS(PageRankProblem(t, -0.1, v), ParameterError);
  Vector vneg(3);
  vneg << 0.5, -0.1, 0.6;
  CHECK_THROWS_AS(PageRankProblem(t, 0.5, vneg), ValidationError);
  Vector vsum(3);
  vsum << 0.5, 0.4, 0.3;
  CHECK_THROWS_AS(PageRankProblem(t, 0.5, vsum), ValidationError);
  CHECK_THROWS_AS(PageRankProblem(t, 0.5, Vector::Constant(4, 0.25)),
                  ShapeError);
}

TEST_SUITE_END();
