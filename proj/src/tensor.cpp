// Copyright 2026 the mlpr authors
// SPDX-License-Identifier: Apache-2.0

#include "mlpr/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace mlpr {

namespace {

constexpr std::int64_t kColLimit = std::int64_t{1} << 62;

// Folds the unfolding digits from most significant (i_m) down to i_3, then
// applies the i_2 vector with one gemv. vec_for(digit) supplies the vector
// contracted against each digit position; all-x gives the multilinear map.
template <class VecFor>
Vector fold_contract(const Matrix& R, Index n, int m, VecFor vec_for) {
  if (m == 2) return R * vec_for(2);
  std::int64_t width = R.cols() / n;
  Matrix cur = Matrix::Zero(n, width);
  {
    const Vector& v = vec_for(m);
    for (Index d = 0; d < n; ++d)
      cur.noalias() += v[d] * R.middleCols(d * width, width);
  }
  for (int digit = m - 1; digit >= 3; --digit) {
    width /= n;
    Matrix next = Matrix::Zero(n, width);
    const Vector& v = vec_for(digit);
    for (Index d = 0; d < n; ++d)
      next.noalias() += v[d] * cur.middleCols(d * width, width);
    cur = std::move(next);
  }
  return cur * vec_for(2);
}

void check_vector_dim(const Vector& x, Index n, const char* what) {
  if (x.size() != n)
    throw ShapeError(std::string(what) + ": expected length " +
                     std::to_string(n) + ", got " + std::to_string(x.size()));
}

}  // namespace

std::int64_t unfolding_cols(int order, Index dim) {
  if (order < 2) throw ParameterError("tensor order must be at least 2");
  if (dim < 1) throw ParameterError("tensor dimension must be positive");
  std::int64_t cols = 1;
  for (int k = 0; k < order - 1; ++k) {
    if (cols > kColLimit / dim)
      throw ParameterError("unfolding width n^(m-1) overflows 63-bit index");
    cols *= dim;
  }
  return cols;
}

std::int64_t dense_unfolding_cols(int order, Index dim) {
  constexpr std::int64_t kDenseElemLimit = std::int64_t{1} << 28;
  const std::int64_t cols = unfolding_cols(order, dim);
  if (cols > kDenseElemLimit / dim)
    throw ParameterError("dense unfolding would hold " + std::to_string(dim) +
                         "^" + std::to_string(order) +
                         " doubles; limit is 2^28 entries");
  return cols;
}

FlattenedTensor FlattenedTensor::dense(int order, Index dim, Matrix values,
                                       bool repair) {
  const std::int64_t cols = unfolding_cols(order, dim);
  if (values.rows() != dim || values.cols() != cols)
    throw ShapeError("dense unfolding must be " + std::to_string(dim) + " x " +
                     std::to_string(cols) + ", got " +
                     std::to_string(values.rows()) + " x " +
                     std::to_string(values.cols()));
  for (std::int64_t c = 0; c < cols; ++c) {
    double sum = 0.0;
    for (Index i = 0; i < dim; ++i) {
      const double v = values(i, c);
      if (v < 0.0 || !std::isfinite(v))
        throw ValidationError("negative or non-finite entry at row " +
                              std::to_string(i + 1) + ", column " +
                              std::to_string(c + 1));
      sum += v;
    }
    if (repair && sum > 0.0) {
      values.col(c) /= sum;
    } else if (std::abs(sum - 1.0) > kStochasticTol) {
      throw ValidationError("column " + std::to_string(c + 1) + " sums to " +
                            std::to_string(sum) + ", not 1");
    }
  }
  FlattenedTensor t;
  t.order_ = order;
  t.dim_ = dim;
  t.cols_ = cols;
  t.dense_ = std::make_shared<const Matrix>(std::move(values));
  return t;
}

FlattenedTensor FlattenedTensor::sparse(int order, Index dim,
                                        std::vector<Triplet> entries,
                                        bool repair) {
  const std::int64_t cols = unfolding_cols(order, dim);
  for (const auto& e : entries) {
    if (e.row < 0 || e.row >= dim || e.col < 0 || e.col >= cols)
      throw ShapeError("triplet index (" + std::to_string(e.row + 1) + ", " +
                       std::to_string(e.col + 1) + ") out of range");
    if (e.value < 0.0 || !std::isfinite(e.value))
      throw ValidationError("negative or non-finite entry at row " +
                            std::to_string(e.row + 1) + ", column " +
                            std::to_string(e.col + 1));
  }
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  // merge duplicates in place
  std::size_t out = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (out > 0 && entries[out - 1].col == entries[i].col &&
        entries[out - 1].row == entries[i].row) {
      entries[out - 1].value += entries[i].value;
    } else {
      entries[out++] = entries[i];
    }
  }
  entries.resize(out);

  std::vector<double> colsum(static_cast<std::size_t>(cols), 0.0);
  for (const auto& e : entries) colsum[static_cast<std::size_t>(e.col)] += e.value;
  if (repair) {
    for (std::int64_t c = 0; c < cols; ++c)
      if (colsum[static_cast<std::size_t>(c)] <= 0.0)
        throw ValidationError("column " + std::to_string(c + 1) +
                              " is empty and cannot be renormalized");
    for (auto& e : entries) e.value /= colsum[static_cast<std::size_t>(e.col)];
  } else {
    for (std::int64_t c = 0; c < cols; ++c) {
      const double s = colsum[static_cast<std::size_t>(c)];
      if (std::abs(s - 1.0) > kStochasticTol)
        throw ValidationError("column " + std::to_string(c + 1) + " sums to " +
                              std::to_string(s) + ", not 1");
    }
  }

  FlattenedTensor t;
  t.order_ = order;
  t.dim_ = dim;
  t.cols_ = cols;
  t.sparse_ = std::make_shared<const std::vector<Triplet>>(std::move(entries));
  return t;
}

std::int64_t FlattenedTensor::nonzeros() const noexcept {
  if (dense_) return static_cast<std::int64_t>(dense_->rows()) * dense_->cols();
  return sparse_ ? static_cast<std::int64_t>(sparse_->size()) : 0;
}

const Matrix& FlattenedTensor::dense_values() const {
  if (!dense_) throw ShapeError("tensor is stored sparse, no dense values");
  return *dense_;
}

const std::vector<Triplet>& FlattenedTensor::triplets() const {
  if (!sparse_) throw ShapeError("tensor is stored dense, no triplets");
  return *sparse_;
}

Vector FlattenedTensor::apply(const Vector& x) const {
  check_vector_dim(x, dim_, "apply");
  if (dense_) {
    return fold_contract(*dense_, dim_, order_, [&](int) -> const Vector& { return x; });
  }
  const Index n = dim_;
  Vector y = Vector::Zero(n);
  for (const auto& e : *sparse_) {
    double w = 1.0;
    std::int64_t c = e.col;
    for (int k = 0; k < order_ - 1; ++k) {
      w *= x[static_cast<Index>(c % n)];
      c /= n;
    }
    y[e.row] += e.value * w;
  }
  return y;
}

Vector FlattenedTensor::jacobian_apply(const Vector& x, const Vector& w,
                                       double alpha) const {
  check_vector_dim(x, dim_, "jacobian_apply");
  check_vector_dim(w, dim_, "jacobian_apply");
  const Index n = dim_;
  Vector acc = Vector::Zero(n);
  if (dense_) {
    for (int slot = 2; slot <= order_; ++slot) {
      acc += fold_contract(*dense_, n, order_, [&](int digit) -> const Vector& {
        return digit == slot ? w : x;
      });
    }
  } else {
    const int nd = order_ - 1;
    std::vector<Index> dig(static_cast<std::size_t>(nd));
    std::vector<double> pre(static_cast<std::size_t>(nd) + 1),
        suf(static_cast<std::size_t>(nd) + 1);
    for (const auto& e : *sparse_) {
      std::int64_t c = e.col;
      for (int k = 0; k < nd; ++k) {
        dig[k] = static_cast<Index>(c % n);
        c /= n;
      }
      pre[0] = 1.0;
      for (int k = 0; k < nd; ++k) pre[k + 1] = pre[k] * x[dig[k]];
      suf[nd] = 1.0;
      for (int k = nd - 1; k >= 0; --k) suf[k] = suf[k + 1] * x[dig[k]];
      double s = 0.0;
      for (int k = 0; k < nd; ++k) s += w[dig[k]] * pre[k] * suf[k + 1];
      acc[e.row] += e.value * s;
    }
  }
  return alpha * acc - w;
}

Matrix FlattenedTensor::dense_jacobian(const Vector& x, double alpha) const {
  check_vector_dim(x, dim_, "dense_jacobian");
  const Index n = dim_;
  Matrix J = Matrix::Zero(n, n);
  if (dense_ && order_ == 3) {
    // J = alpha*(A + B) - I with A.col(j) = R_j x and B = sum_d x_d R_d,
    // R_d the d-th n x n block of the unfolding.
    for (Index j = 0; j < n; ++j)
      J.col(j) = dense_->middleCols(j * n, n) * x;
    for (Index j = 0; j < n; ++j)
      J.noalias() += x[j] * dense_->middleCols(j * n, n);
    J *= alpha;
  } else if (dense_ && order_ == 2) {
    J = alpha * (*dense_);
  } else {
    const int nd = order_ - 1;
    std::vector<Index> dig(static_cast<std::size_t>(nd));
    std::vector<double> pre(static_cast<std::size_t>(nd) + 1),
        suf(static_cast<std::size_t>(nd) + 1);
    auto scatter = [&](Index row, std::int64_t col, double value) {
      std::int64_t c = col;
      for (int k = 0; k < nd; ++k) {
        dig[k] = static_cast<Index>(c % n);
        c /= n;
      }
      pre[0] = 1.0;
      for (int k = 0; k < nd; ++k) pre[k + 1] = pre[k] * x[dig[k]];
      suf[nd] = 1.0;
      for (int k = nd - 1; k >= 0; --k) suf[k] = suf[k + 1] * x[dig[k]];
      for (int k = 0; k < nd; ++k)
        J(row, dig[k]) += alpha * value * pre[k] * suf[k + 1];
    };
    if (dense_) {
      for (std::int64_t c = 0; c < cols_; ++c)
        for (Index i = 0; i < n; ++i)
          if (double v = (*dense_)(i, c); v != 0.0) scatter(i, c, v);
    } else {
      for (const auto& e : *sparse_) scatter(e.row, e.col, e.value);
    }
  }
  J.diagonal().array() -= 1.0;
  return J;
}

Vector dense_solve(const Matrix& A, const Vector& b) {
  if (A.rows() != A.cols())
    throw ShapeError("dense_solve needs a square matrix");
  if (b.size() != A.rows())
    throw ShapeError("dense_solve: rhs length does not match matrix");
  Eigen::PartialPivLU<Matrix> lu(A);
  const Vector d = lu.matrixLU().diagonal().cwiseAbs();
  const double dmax = d.maxCoeff();
  const double floor =
      dmax * std::numeric_limits<double>::epsilon() * static_cast<double>(A.rows());
  if (dmax == 0.0 || d.minCoeff() <= floor)
    throw SingularMatrixError("matrix is singular to working precision");
  return lu.solve(b);
}

}  // namespace mlpr
