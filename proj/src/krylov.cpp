// Copyright 2026 the mlpr authors
// SPDX-License-Identifier: Apache-2.0

#include "mlpr/krylov.hpp"

#include <cmath>

namespace mlpr {

namespace {

// Modified Gram-Schmidt sweep of w against basis, accumulating coefficients
// into h; optionally a second pass for reorthogonalization.
void mgs(Vector& w, const std::vector<Vector>& basis, Eigen::Ref<Vector> h,
         bool second_pass) {
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const double c = basis[k].dot(w);
    w -= c * basis[k];
    h[static_cast<Index>(k)] = c;
  }
  if (second_pass) {
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const double c = basis[k].dot(w);
      w -= c * basis[k];
      h[static_cast<Index>(k)] += c;
    }
  }
}

void check_op(const LinearOperator& op, const Vector& r0) {
  if (!op.apply) throw ParameterError("linear operator has no apply callback");
  if (r0.size() != op.dim)
    throw ShapeError("r0 length " + std::to_string(r0.size()) +
                     " does not match operator dimension " +
                     std::to_string(op.dim));
}

}  // namespace

KrylovWorkspace arnoldi(const LinearOperator& op, const Vector& r0, int max_dim,
                        const ArnoldiOptions& opts) {
  check_op(op, r0);
  if (max_dim < 1) throw ParameterError("arnoldi needs max_dim >= 1");
  KrylovWorkspace ws;
  ws.beta = r0.norm();
  ws.hessenberg = Matrix::Zero(max_dim + 1, max_dim);
  if (ws.beta == 0.0) {
    ws.breakdown = true;
    ws.hessenberg.resize(1, 0);
    return ws;
  }
  ws.basis.push_back(r0 / ws.beta);
  int j = 0;
  for (; j < max_dim; ++j) {
    Vector w = op.apply(ws.basis[static_cast<std::size_t>(j)]);
    if (w.size() != op.dim) throw ShapeError("operator changed vector length");
    mgs(w, ws.basis, ws.hessenberg.col(j).head(j + 1), opts.reorthogonalize);
    const double hnext = w.norm();
    ws.hessenberg(j + 1, j) = hnext;
    if (hnext <= opts.breakdown_tol * ws.beta) {
      ws.breakdown = true;
      ++j;
      break;
    }
    ws.basis.push_back(w / hnext);
  }
  ws.steps = j;
  ws.hessenberg.conservativeResize(j + 1, j);
  return ws;
}

GmresEngine::GmresEngine(const LinearOperator& op, const Vector& r0,
                         int max_dim, const GmresOptions& opts)
    : op_(op), max_dim_(max_dim), opts_(opts) {
  check_op(op, r0);
  if (max_dim < 1) throw ParameterError("gmres needs max_dim >= 1");
  beta_ = r0.norm();
  h_ = Matrix::Zero(max_dim + 1, max_dim);
  g_ = Vector::Zero(max_dim + 1);
  g_[0] = beta_;
  cs_.reserve(static_cast<std::size_t>(max_dim));
  sn_.reserve(static_cast<std::size_t>(max_dim));
  if (beta_ > 0.0) basis_.push_back(r0 / beta_);
}

bool GmresEngine::exhausted() const noexcept {
  return breakdown_ || steps_ >= max_dim_ || beta_ == 0.0;
}

bool GmresEngine::step() {
  if (exhausted()) return false;
  const int j = steps_;
  Vector w = op_.apply(basis_[static_cast<std::size_t>(j)]);
  if (w.size() != op_.dim) throw ShapeError("operator changed vector length");
  mgs(w, basis_, h_.col(j).head(j + 1), opts_.reorthogonalize);
  double hnext = w.norm();
  // previously computed rotations, applied to the new column
  for (int k = 0; k < j; ++k) {
    const double t = cs_[static_cast<std::size_t>(k)] * h_(k, j) +
                     sn_[static_cast<std::size_t>(k)] * h_(k + 1, j);
    h_(k + 1, j) = -sn_[static_cast<std::size_t>(k)] * h_(k, j) +
                   cs_[static_cast<std::size_t>(k)] * h_(k + 1, j);
    h_(k, j) = t;
  }
  const double r = std::hypot(h_(j, j), hnext);
  if (r <= opts_.breakdown_tol * beta_) {
    // Both the rotated diagonal and the new subdiagonal vanished: the
    // projected system is singular and this column cannot reduce the
    // residual. Leave the estimate and triangular factor at step j.
    breakdown_ = true;
    return false;
  }
  double c = 1.0, s = 0.0;
  if (r > 0.0) {
    c = h_(j, j) / r;
    s = hnext / r;
  }
  cs_.push_back(c);
  sn_.push_back(s);
  h_(j, j) = r;
  h_(j + 1, j) = 0.0;
  g_[j + 1] = -s * g_[j];
  g_[j] = c * g_[j];
  if (hnext <= opts_.breakdown_tol * beta_) {
    breakdown_ = true;
  } else {
    basis_.push_back(w / hnext);
  }
  ++steps_;
  return true;
}

double GmresEngine::residual_estimate() const {
  return std::abs(g_[steps_]);
}

Vector GmresEngine::current_solution() const {
  const Index n = op_.dim;
  if (steps_ == 0) return Vector::Zero(n);
  const int j = steps_;
  Vector y = g_.head(j);
  for (int i = j - 1; i >= 0; --i) {
    for (int k = i + 1; k < j; ++k) y[i] -= h_(i, k) * y[k];
    y[i] /= h_(i, i);
  }
  Vector z = Vector::Zero(n);
  for (int k = 0; k < j; ++k) z += y[k] * basis_[static_cast<std::size_t>(k)];
  return z;
}

GmresResult gmres(const LinearOperator& op, const Vector& b, const Vector& x0,
                  double tol, int max_dim, const GmresOptions& opts) {
  check_op(op, b);
  if (x0.size() != op.dim)
    throw ShapeError("gmres initial guess has wrong length");
  const bool guess_zero = x0.isZero(0.0);
  const Vector r0 = guess_zero ? b : Vector(b - op.apply(x0));
  GmresEngine eng(op, r0, max_dim, opts);
  GmresResult res;
  res.residual_history.push_back(eng.beta());
  if (eng.beta() == 0.0) {
    res.solution = x0;
    res.converged = true;
    return res;
  }
  while (eng.step()) {
    res.residual_history.push_back(eng.residual_estimate());
    if (eng.residual_estimate() <= tol) break;
  }
  res.iterations = eng.iterations();
  res.residual_norm = eng.residual_estimate();
  res.breakdown = eng.breakdown();
  res.converged = res.residual_norm <= tol;
  res.solution = guess_zero ? eng.current_solution()
                            : Vector(x0 + eng.current_solution());
  return res;
}

}  // namespace mlpr
