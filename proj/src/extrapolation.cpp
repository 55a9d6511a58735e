// Copyright 2026 the mlpr authors
// SPDX-License-Identifier: Apache-2.0

#include "mlpr/extrapolation.hpp"

#include <cmath>

namespace mlpr {

namespace {

constexpr double kRankTol = 1e-13;
constexpr double kSumTol = 1e-13;

enum class Variant { kMpe, kRre };

// Back substitution on the upper-left k x k block of R.
Vector upper_solve(const Matrix& R, Vector b, int k) {
  for (int i = k - 1; i >= 0; --i) {
    for (int j = i + 1; j < k; ++j) b[i] -= R(i, j) * b[j];
    b[i] /= R(i, i);
  }
  return b;
}

// Forward substitution with R^T on the upper-left k x k block.
Vector lower_solve_transposed(const Matrix& R, Vector b, int k) {
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < i; ++j) b[i] -= R(j, i) * b[j];
    b[i] /= R(i, i);
  }
  return b;
}

Vector extrapolate(const SequenceWindow& window, Variant variant,
                   ExtrapolationInfo* info) {
  const auto& s = window.iterates;
  if (s.size() < 3)
    throw ParameterError("extrapolation window needs at least 3 iterates");
  const int q = window.q();
  const int K = q + 1;  // number of difference columns
  const Index n = s[0].size();
  for (const auto& si : s)
    if (si.size() != n) throw ShapeError("window iterates differ in length");

  double fro2 = 0.0;
  for (int i = 0; i < K; ++i)
    fro2 += (s[static_cast<std::size_t>(i + 1)] - s[static_cast<std::size_t>(i)])
                .squaredNorm();
  const double scale = std::sqrt(fro2);

  auto emit = [&](Vector t, Vector gamma, int degree, bool truncated) {
    if (info) {
      info->gamma = std::move(gamma);
      info->effective_degree = degree;
      info->truncated = truncated;
    }
    return t;
  };

  if (scale == 0.0) return emit(s[0], Vector::Ones(1), 0, true);

  // MGS QR of the differences, stopping at the first dependent column.
  std::vector<Vector> Q;
  Matrix R = Matrix::Zero(K, K);
  int rank = K;
  for (int i = 0; i < K; ++i) {
    Vector w = s[static_cast<std::size_t>(i + 1)] - s[static_cast<std::size_t>(i)];
    for (int t = 0; t < i; ++t) {
      const double c = Q[static_cast<std::size_t>(t)].dot(w);
      w -= c * Q[static_cast<std::size_t>(t)];
      R(t, i) = c;
    }
    for (int t = 0; t < i; ++t) {  // second pass; windows are tiny
      const double c = Q[static_cast<std::size_t>(t)].dot(w);
      w -= c * Q[static_cast<std::size_t>(t)];
      R(t, i) += c;
    }
    const double nrm = w.norm();
    R(i, i) = nrm;
    if (nrm < kRankTol * scale) {
      rank = i;
      break;
    }
    Q.push_back(w / nrm);
  }

  if (rank == 0) return emit(s[0], Vector::Ones(1), 0, true);

  const bool truncated = rank < K;
  // Degree of the annihilating combination: column `deg` of R supplies the
  // right-hand side. A dependent column k <= q means the minimal polynomial
  // has degree k and both variants share the exact annihilation solve.
  int deg;
  Vector gamma;
  if (truncated || variant == Variant::kMpe) {
    deg = truncated ? rank : q;
    Vector c = upper_solve(R, Vector(-R.col(deg).head(deg)), deg);
    c.conservativeResize(deg + 1);
    c[deg] = 1.0;
    const double sum = c.sum();
    if (std::abs(sum) < kSumTol * c.cwiseAbs().maxCoeff())
      throw ExtrapolationSingularError(
          "extrapolation weights sum to zero; window cannot be combined");
    gamma = c / sum;
  } else {
    deg = q;
    // d = (R^T R)^{-1} e through two triangular solves.
    Vector y = lower_solve_transposed(R, Vector::Ones(K), K);
    Vector d = upper_solve(R, std::move(y), K);
    const double sum = d.sum();
    if (!(sum > 0.0) || !std::isfinite(sum))
      throw ExtrapolationSingularError(
          "least-squares weights are not summable");
    gamma = d / sum;
  }

  // t = s_0 + Q_{deg-1} (R_{deg-1} xi) with xi the tail sums of gamma.
  Vector xi(deg);
  double run = 1.0;
  for (int j = 0; j < deg; ++j) {
    run -= gamma[j];
    xi[j] = run;
  }
  Vector z = Vector::Zero(deg);
  for (int i = 0; i < deg; ++i)
    for (int j = i; j < deg; ++j) z[i] += R(i, j) * xi[j];
  Vector t = s[0];
  for (int i = 0; i < deg; ++i) t += z[i] * Q[static_cast<std::size_t>(i)];
  return emit(std::move(t), std::move(gamma), deg, truncated);
}

}  // namespace

Vector mpe(const SequenceWindow& window, ExtrapolationInfo* info) {
  return extrapolate(window, Variant::kMpe, info);
}

Vector rre(const SequenceWindow& window, ExtrapolationInfo* info) {
  return extrapolate(window, Variant::kRre, info);
}

}  // namespace mlpr
