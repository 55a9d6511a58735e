// Copyright 2026 the mlpr authors
// SPDX-License-Identifier: Apache-2.0
//
// Brute-force reference implementations the tests compare against. These are
// written with explicit index loops, independent of the library kernels.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mlpr/tensor.hpp"

namespace oracle {

using mlpr::Index;
using mlpr::Matrix;
using mlpr::Vector;

inline double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline Vector random_simplex(Index n, std::mt19937_64& rng) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = u01(rng) + 1e-3;
  return v / v.sum();
}

// Dense random column-stochastic unfolding, n x n^(m-1).
inline Matrix random_stochastic_dense(Index n, int m, std::mt19937_64& rng) {
  std::int64_t cols = 1;
  for (int k = 0; k < m - 1; ++k) cols *= n;
  Matrix R(n, cols);
  for (std::int64_t c = 0; c < cols; ++c) {
    double s = 0.0;
    for (Index i = 0; i < n; ++i) {
      R(i, c) = u01(rng) + 1e-6;
      s += R(i, c);
    }
    R.col(c) /= s;
  }
  return R;
}

// Sparse random column-stochastic unfolding with about k nonzeros per column.
inline std::vector<mlpr::Triplet> random_stochastic_triplets(
    Index n, int m, Index k, std::mt19937_64& rng) {
  std::int64_t cols = 1;
  for (int t = 0; t < m - 1; ++t) cols *= n;
  std::vector<mlpr::Triplet> trips;
  std::vector<double> w(static_cast<std::size_t>(n));
  for (std::int64_t c = 0; c < cols; ++c) {
    double s = 0.0;
    std::vector<Index> rows;
    for (Index pick = 0; pick < k; ++pick) {
      const Index r = static_cast<Index>(rng() % static_cast<std::uint64_t>(n));
      double val = u01(rng) + 0.1;
      bool dup = false;
      for (std::size_t j = 0; j < rows.size(); ++j)
        if (rows[j] == r) {
          w[j] += val;
          dup = true;
          break;
        }
      if (!dup) {
        rows.push_back(r);
        w[rows.size() - 1] = val;
      }
      s += val;
    }
    for (std::size_t j = 0; j < rows.size(); ++j)
      trips.push_back({rows[j], c, w[j] / s});
  }
  return trips;
}

inline Matrix triplets_to_dense(Index n, std::int64_t cols,
                                const std::vector<mlpr::Triplet>& trips) {
  Matrix R = Matrix::Zero(n, cols);
  for (const auto& t : trips) R(t.row, t.col) += t.value;
  return R;
}

// y = R (x (x) x), order 3: explicit double loop, column (i3)*n + (i2).
inline Vector brute_apply3(const Matrix& R, const Vector& x) {
  const Index n = x.size();
  Vector y = Vector::Zero(n);
  for (Index i3 = 0; i3 < n; ++i3)
    for (Index i2 = 0; i2 < n; ++i2)
      y += x[i2] * x[i3] * R.col(i3 * n + i2);
  return y;
}

// order 4: column (i4)*n^2 + (i3)*n + (i2).
inline Vector brute_apply4(const Matrix& R, const Vector& x) {
  const Index n = x.size();
  Vector y = Vector::Zero(n);
  for (Index i4 = 0; i4 < n; ++i4)
    for (Index i3 = 0; i3 < n; ++i3)
      for (Index i2 = 0; i2 < n; ++i2)
        y += x[i2] * x[i3] * x[i4] * R.col((i4 * n + i3) * n + i2);
  return y;
}

inline Vector brute_apply(const Matrix& R, int m, const Vector& x) {
  return m == 3 ? brute_apply3(R, x) : brute_apply4(R, x);
}

// J_f(x) w written out slot by slot (analytic, not finite differences).
inline Vector brute_jacobian_apply3(const Matrix& R, const Vector& x,
                                    const Vector& w, double alpha) {
  const Index n = x.size();
  Vector y = Vector::Zero(n);
  for (Index i3 = 0; i3 < n; ++i3)
    for (Index i2 = 0; i2 < n; ++i2)
      y += (w[i2] * x[i3] + x[i2] * w[i3]) * R.col(i3 * n + i2);
  return alpha * y - w;
}

inline Vector brute_jacobian_apply4(const Matrix& R, const Vector& x,
                                    const Vector& w, double alpha) {
  const Index n = x.size();
  Vector y = Vector::Zero(n);
  for (Index i4 = 0; i4 < n; ++i4)
    for (Index i3 = 0; i3 < n; ++i3)
      for (Index i2 = 0; i2 < n; ++i2)
        y += (w[i2] * x[i3] * x[i4] + x[i2] * w[i3] * x[i4] +
              x[i2] * x[i3] * w[i4]) *
             R.col((i4 * n + i3) * n + i2);
  return alpha * y - w;
}

inline Vector brute_jacobian_apply(const Matrix& R, int m, const Vector& x,
                                   const Vector& w, double alpha) {
  return m == 3 ? brute_jacobian_apply3(R, x, w, alpha)
                : brute_jacobian_apply4(R, x, w, alpha);
}

// Classical PageRank by damped power iteration on a column-stochastic matrix.
inline Vector power_pagerank(const Matrix& Pc, double alpha, const Vector& v) {
  Vector x = v;
  for (int it = 0; it < 200000; ++it) {
    Vector xn = alpha * (Pc * x) + (1.0 - alpha) * v;
    if ((xn - x).lpNorm<1>() <= 1e-15) return xn;
    x = xn;
  }
  return x;
}

}  // namespace oracle
