// Copyright 2026 the mlpr authors
// SPDX-License-Identifier: Apache-2.0

#include "mlpr/extrapolation.hpp"

#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "mlpr/errors.hpp"
#include "oracles.hpp"

using namespace mlpr;

namespace {

// Random contraction with spectral radius <= rho (scaled dense matrix).
Matrix contraction(Index n, double rho, std::mt19937_64& rng) {
  Matrix M(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) M(i, j) = 2.0 * oracle::u01(rng) - 1.0;
  Eigen::JacobiSVD<Matrix> svd(M);
  return M * (rho / svd.singularValues()(0));
}

SequenceWindow linear_window(const Matrix& M, const Vector& b, const Vector& s0,
                             int count) {
  SequenceWindow w;
  w.iterates.push_back(s0);
  for (int i = 1; i < count; ++i)
    w.iterates.push_back(M * w.iterates.back() + b);
  return w;
}

}  // namespace

TEST_SUITE_BEGIN("extrapolation");

TEST_CASE("scalar geometric sequence is summed exactly from three terms") {
  // s_k = s* + c lambda^k has minimal polynomial degree 1: q=1 suffices.
  const double sstar = 0.6, c = 0.35, lambda = 0.8;
  SequenceWindow w;
  for (int k = 0; k < 3; ++k) {
    Vector s(1);
    s[0] = sstar + c * std::pow(lambda, k);
    w.iterates.push_back(s);
  }
  for (auto* method : {&mpe, &rre}) {
    ExtrapolationInfo info;
    Vector t = (*method)(w, &info);
    CHECK(t[0] == doctest::Approx(sstar).epsilon(1e-13));
    CHECK(info.gamma.sum() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("both variants recover the fixed point of a low-rank linear iteration") {
  // rank(M) = 3 makes the minimal polynomial of the error degree 3 once the
  // window starts inside range(M); q = 3 must then be exact.
  std::mt19937_64 rng(31);
  const Index n = 8;
  Matrix U(n, 3), W(n, 3);
  for (Index j = 0; j < 3; ++j)
    for (Index i = 0; i < n; ++i) {
      U(i, j) = 2.0 * oracle::u01(rng) - 1.0;
      W(i, j) = 2.0 * oracle::u01(rng) - 1.0;
    }
  Matrix M = 0.2 * U * W.transpose();
  Vector b = Vector::Ones(n);
  Vector sstar =
      Eigen::PartialPivLU<Matrix>(Matrix::Identity(n, n) - M).solve(b);
  // One burn-in application puts the error inside range(M).
  Vector s0 = M * Vector::Zero(n) + b;
  auto w = linear_window(M, b, s0, 5);  // q = 3
  for (auto* method : {&mpe, &rre}) {
    Vector t = (*method)(w, nullptr);
    CHECK((t - sstar).lpNorm<1>() <= 1e-8 * sstar.lpNorm<1>());
  }
}

TEST_CASE("full-degree window on a decaying spectrum beats the last iterate") {
  // Symmetric contraction with well-separated eigenvalues: a degree-4 window
  // nearly annihilates the five dominant error modes, so the extrapolant must
  // beat the last iterate by orders of magnitude through the full-rank path.
  std::mt19937_64 rng(32);
  const Index n = 10;
  Matrix G(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) G(i, j) = 2.0 * oracle::u01(rng) - 1.0;
  Matrix Q = Eigen::HouseholderQR<Matrix>(G).householderQ();
  Vector lam(n);
  lam << 0.85, 0.4, 0.18, 0.08, 0.035, 0.015, 0.006, 0.0025, 0.001, 0.0004;
  Matrix M = Q * lam.asDiagonal() * Q.transpose();
  Vector b(n);
  for (Index i = 0; i < n; ++i) b[i] = oracle::u01(rng);
  Vector sstar =
      Eigen::PartialPivLU<Matrix>(Matrix::Identity(n, n) - M).solve(b);

  Vector s = Vector::Zero(n);
  for (int k = 0; k < 2; ++k) s = M * s + b;  // burn-in
  auto w = linear_window(M, b, s, 6);         // q = 4
  double base = (w.iterates.back() - sstar).lpNorm<1>();
  REQUIRE(base > 1.0);  // plain iteration is still far away
  for (auto* method : {&mpe, &rre}) {
    ExtrapolationInfo info;
    Vector t = (*method)(w, &info);
    CHECK((t - sstar).lpNorm<1>() < 1e-3 * base);
    CHECK_FALSE(info.truncated);
    CHECK(info.effective_degree == 4);
    CHECK(info.gamma.sum() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(info.gamma.size() == info.effective_degree + 1);
  }
}

TEST_CASE("result is an affine combination of the window") {
  std::mt19937_64 rng(33);
  const Index n = 7;
  Matrix M = contraction(n, 0.7, rng);
  Vector b = oracle::random_simplex(n, rng);
  auto w = linear_window(M, b, oracle::random_simplex(n, rng), 6);
  for (auto* method : {&mpe, &rre}) {
    ExtrapolationInfo info;
    Vector t = (*method)(w, &info);
    Vector combo = Vector::Zero(n);
    for (int i = 0; i <= info.effective_degree; ++i)
      combo += info.gamma[i] * w.iterates[static_cast<std::size_t>(i)];
    CHECK((t - combo).lpNorm<1>() <= 1e-11 * t.lpNorm<1>());
  }
}

TEST_CASE("translation equivariance: shifting the window shifts the result") {
  std::mt19937_64 rng(34);
  const Index n = 6;
  Matrix M = contraction(n, 0.8, rng);
  Vector b = oracle::random_simplex(n, rng);
  auto w = linear_window(M, b, oracle::random_simplex(n, rng), 5);
  Vector shift = Vector::Constant(n, 2.5);
  SequenceWindow ws;
  for (const auto& s : w.iterates) ws.iterates.push_back(s + shift);
  for (auto* method : {&mpe, &rre}) {
    Vector t = (*method)(w, nullptr);
    Vector ts = (*method)(ws, nullptr);
    CHECK((ts - (t + shift)).lpNorm<1>() <= 1e-10);
  }
}

TEST_CASE("stationary window returns the iterate unchanged") {
  SequenceWindow w;
  Vector s = Vector::LinSpaced(5, 0.1, 0.5);
  for (int i = 0; i < 4; ++i) w.iterates.push_back(s);
  for (auto* method : {&mpe, &rre}) {
    ExtrapolationInfo info;
    Vector t = (*method)(w, &info);
    CHECK((t - s).lpNorm<1>() == 0.0);
    CHECK(info.effective_degree == 0);
  }
}

TEST_CASE("arithmetic drift has no fixed point and trips the singular guard") {
  // s_k = k d: differences are constant, the annihilating coefficients sum
  // to zero, and no affine combination can converge.
  SequenceWindow w;
  Vector d = Vector::Ones(4);
  for (int k = 0; k < 4; ++k) w.iterates.push_back(static_cast<double>(k) * d);
  CHECK_THROWS_AS(mpe(w), ExtrapolationSingularError);
}

TEST_CASE("windows shorter than three iterates are rejected") {
  SequenceWindow w;
  w.iterates.push_back(Vector::Ones(3));
  w.iterates.push_back(Vector::Zero(3));
  CHECK_THROWS_AS(mpe(w), ParameterError);
  CHECK_THROWS_AS(rre(w), ParameterError);
}

TEST_CASE("near-dependent differences are rank-truncated instead of exploding") {
  // Window built from a degree-2 sequence padded with an extra iterate: the
  // fourth difference column is numerically dependent on the others.
  std::mt19937_64 rng(35);
  const Index n = 9;
  Matrix U(n, 2), W(n, 2);
  for (Index j = 0; j < 2; ++j)
    for (Index i = 0; i < n; ++i) {
      U(i, j) = 2.0 * oracle::u01(rng) - 1.0;
      W(i, j) = 2.0 * oracle::u01(rng) - 1.0;
    }
  Matrix M = 0.3 * U * W.transpose();
  Vector b = Vector::Ones(n);
  Vector sstar =
      Eigen::PartialPivLU<Matrix>(Matrix::Identity(n, n) - M).solve(b);
  Vector s0 = M * Vector::Zero(n) + b;
  auto w = linear_window(M, b, s0, 6);  // q = 4 but true degree is 2
  for (auto* method : {&mpe, &rre}) {
    ExtrapolationInfo info;
    Vector t = (*method)(w, &info);
    CHECK(info.truncated);
    CHECK(info.effective_degree <= 2);
    CHECK((t - sstar).lpNorm<1>() <= 1e-8 * sstar.lpNorm<1>());
  }
}

TEST_SUITE_END();
