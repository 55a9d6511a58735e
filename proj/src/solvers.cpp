// Copyright 2026 the mlpr authors
// SPDX-License-Identifier: Apache-2.0

#include "mlpr/solvers.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <utility>

#include "mlpr/extrapolation.hpp"
#include "mlpr/krylov.hpp"

namespace mlpr {

namespace {

const std::vector<std::pair<Method, std::string_view>>& method_table() {
  static const std::vector<std::pair<Method, std::string_view>> table = {
      {Method::kFixedPoint, "fp"},       {Method::kNewton, "newton"},
      {Method::kNewtonGmres, "ng"},      {Method::kNewtonGmresFd, "ngfd"},
      {Method::kNgMpe, "ng-mpe"},        {Method::kNgRre, "ng-rre"},
      {Method::kNewtonAnderson, "na"},
  };
  return table;
}

void validate_options(const PageRankProblem& prob, const SolverOptions& o) {
  if (!(o.tol > 0.0)) throw ParameterError("tol must be positive");
  if (!(o.inner_tol > 0.0)) throw ParameterError("inner_tol must be positive");
  if (o.max_outer < 1) throw ParameterError("max_outer must be at least 1");
  if (o.krylov_dim < 1) throw ParameterError("krylov_dim must be at least 1");
  if (o.window_q < 1) throw ParameterError("window_q must be at least 1");
  if (o.stagnation_window < 1)
    throw ParameterError("stagnation_window must be at least 1");
  if (o.x0) {
    if (o.x0->size() != prob.dim())
      throw ShapeError("x0 length does not match problem dimension");
    if (!o.x0->allFinite()) throw ValidationError("x0 has non-finite entries");
  }
}

// Shared outer loop: residual bookkeeping, history, stagnation and iteration
// caps, simplex monitoring, timing. Every solver does
//   while (!d.done()) { ...compute xnew...; d.accept(...); }
// which gives the repeat-until semantics (at least one outer step, the
// stopping test applied after each update).
class Driver {
 public:
  Driver(const PageRankProblem& prob, const SolverOptions& opt, Method method)
      : prob_(prob), opt_(opt), t0_(std::chrono::steady_clock::now()) {
    rep_.method = std::string(method_name(method));
    x_ = opt.x0 ? *opt.x0 : prob.v();
    g_ = prob.fixed_point_map(x_);
    f_ = g_ - x_;
    rnorm_ = f_.lpNorm<1>();
    rep_.residual_history.push_back(rnorm_);
    best_.push_back(rnorm_);
    rep_.iterate_min_entry = x_.minCoeff();
    rep_.iterate_max_sum_err = std::abs(x_.sum() - 1.0);
  }

  const Vector& x() const { return x_; }
  const Vector& f() const { return f_; }
  const Vector& g() const { return g_; }
  double rnorm() const { return rnorm_; }

  bool done() {
    if (rep_.outer_iterations == 0) return false;
    if (rnorm_ <= opt_.tol) {
      rep_.status = SolveStatus::kConverged;
      return true;
    }
    if (rep_.outer_iterations >= opt_.max_outer) {
      rep_.status = SolveStatus::kMaxIterations;
      return true;
    }
    const int k = rep_.outer_iterations;
    const int w = opt_.stagnation_window;
    if (k >= w && best_[static_cast<std::size_t>(k)] >
                      best_[static_cast<std::size_t>(k - w)] *
                          (1.0 - opt_.stagnation_drop)) {
      rep_.status = SolveStatus::kStagnated;
      return true;
    }
    return false;
  }

  /// Accepts the next outer iterate. inner < 0 means "no inner solver"
  /// (fixed point, dense Newton). monitored=false skips the simplex monitor
  /// for iterates that did not pass through the projection (the unprojected
  /// early-exit iterate of an extrapolation window).
  void accept(Vector xnew, int inner, bool monitored = true) {
    x_ = std::move(xnew);
    g_ = prob_.fixed_point_map(x_);
    f_ = g_ - x_;
    rnorm_ = f_.lpNorm<1>();
    rep_.residual_history.push_back(rnorm_);
    best_.push_back(std::min(best_.back(), rnorm_));
    if (inner >= 0) {
      rep_.inner_iteration_counts.push_back(inner);
      rep_.inner_iterations_total += inner;
    }
    if (monitored) {
      rep_.iterate_min_entry = std::min(rep_.iterate_min_entry, x_.minCoeff());
      rep_.iterate_max_sum_err =
          std::max(rep_.iterate_max_sum_err, std::abs(x_.sum() - 1.0));
    }
    ++rep_.outer_iterations;
  }

  void fail(SolveStatus status) { rep_.status = status; failed_ = true; }
  bool failed() const { return failed_; }

  SolveReport& report() { return rep_; }

  SolveReport finish() {
    rep_.solution = x_;
    rep_.final_residual = rnorm_;
    rep_.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_)
            .count();
    return std::move(rep_);
  }

 private:
  const PageRankProblem& prob_;
  const SolverOptions& opt_;
  SolveReport rep_;
  Vector x_, g_, f_;
  double rnorm_ = 0.0;
  std::vector<double> best_;
  bool failed_ = false;
  std::chrono::steady_clock::time_point t0_;
};

// One Newton-GMRES correction: approximately solve J_f(x) delta = -f.
struct InnerSolver {
  const PageRankProblem& prob;
  const SolverOptions& opt;
  bool fd = false;

  double tolerance(double rnorm1) const {
    return opt.forcing ? std::min(opt.inner_tol, opt.forcing_eta * rnorm1)
                       : opt.inner_tol;
  }

  std::pair<Vector, int> solve(const Vector& x, const Vector& f) const {
    const double eps_k = tolerance(f.lpNorm<1>());
    GmresOptions gopts;
    gopts.reorthogonalize = opt.reorthogonalize;
    if (!fd) {
      LinearOperator op{x.size(), [&](const Vector& w) {
                          return prob.tensor().jacobian_apply(x, w, prob.alpha());
                        }};
      GmresResult r = gmres(op, -f, Vector::Zero(x.size()), eps_k,
                            opt.krylov_dim, gopts);
      return {std::move(r.solution), r.iterations};
    }
    // Finite-difference Jacobian action with the scaled central step
    //   sigma = sqrt(u) (1 + ||x||) / ||w||,
    // and the convergence test re-measured through a fresh difference around
    // the current candidate correction.
    const double squ = std::sqrt(std::numeric_limits<double>::epsilon());
    const double xn = x.norm();
    LinearOperator op{x.size(), [&](const Vector& w) -> Vector {
                        const double wn = w.norm();
                        if (wn == 0.0) return Vector::Zero(x.size());
                        const double sg = squ * (1.0 + xn) / wn;
                        return ((prob.residual(x + sg * w) - f) / sg).eval();
                      }};
    GmresEngine eng(op, -f, opt.krylov_dim, gopts);
    if (eng.beta() == 0.0) return {Vector::Zero(x.size()), 0};
    Vector delta = Vector::Zero(x.size());
    while (eng.step()) {
      delta = eng.current_solution();
      const double dn = delta.norm();
      double rho;
      if (dn == 0.0) {
        rho = f.norm();
      } else {
        const double sg = squ * (1.0 + xn) / dn;
        rho = (f + (prob.residual(x + sg * delta) - f) / sg).norm();
      }
      if (rho <= eps_k) break;
    }
    return {std::move(delta), eng.iterations()};
  }
};

SolveReport run_fixed_point(const PageRankProblem& prob,
                            const SolverOptions& opt) {
  Driver d(prob, opt, Method::kFixedPoint);
  while (!d.done()) d.accept(d.g(), -1);
  return d.finish();
}

SolveReport run_newton(const PageRankProblem& prob, const SolverOptions& opt) {
  Driver d(prob, opt, Method::kNewton);
  while (!d.done()) {
    try {
      Matrix J = prob.tensor().dense_jacobian(d.x(), prob.alpha());
      Vector delta = dense_solve(J, -d.f());
      d.accept(project(d.x() + delta), -1);
    } catch (const SingularMatrixError&) {
      d.fail(SolveStatus::kSingularJacobian);
      break;
    } catch (const DegenerateProjectionError&) {
      d.fail(SolveStatus::kDegenerateProjection);
      break;
    }
  }
  return d.finish();
}

SolveReport run_newton_gmres(const PageRankProblem& prob,
                             const SolverOptions& opt, bool fd) {
  Driver d(prob, opt, fd ? Method::kNewtonGmresFd : Method::kNewtonGmres);
  InnerSolver inner{prob, opt, fd};
  while (!d.done()) {
    auto [delta, its] = inner.solve(d.x(), d.f());
    ++d.report().gmres_solves;
    try {
      d.accept(project(d.x() + delta), its);
    } catch (const DegenerateProjectionError&) {
      d.fail(SolveStatus::kDegenerateProjection);
      break;
    }
  }
  return d.finish();
}

SolveReport run_ng_extrapolated(const PageRankProblem& prob,
                                const SolverOptions& opt, Method method) {
  Driver d(prob, opt, method);
  InnerSolver inner{prob, opt, opt.fd};
  const int q = opt.window_q;
  while (!d.done()) {
    // One cycle: q+2 unprojected Newton-GMRES steps from the current iterate,
    // checking plain convergence after each, then one extrapolation over the
    // window s_0..s_{q+1} and a projection of the combined point.
    SequenceWindow win;
    win.iterates.reserve(static_cast<std::size_t>(q) + 2);
    win.iterates.push_back(d.x());
    Vector s = d.x();
    Vector fs = d.f();
    int inner_sum = 0;
    bool early = false;
    for (int i = 0; i <= q + 1; ++i) {
      auto [delta, its] = inner.solve(s, fs);
      inner_sum += its;
      ++d.report().gmres_solves;
      s += delta;
      fs = prob.residual(s);
      if (i <= q) win.iterates.push_back(s);
      if (fs.lpNorm<1>() <= opt.tol) {
        early = true;
        break;
      }
    }
    if (early) {
      d.accept(std::move(s), inner_sum, /*monitored=*/false);
      continue;
    }
    Vector t;
    try {
      t = method == Method::kNgMpe ? mpe(win) : rre(win);
    } catch (const ExtrapolationSingularError&) {
      t = win.iterates.back();
      ++d.report().extrapolation_fallbacks;
    }
    try {
      d.accept(project(t), inner_sum);
    } catch (const DegenerateProjectionError&) {
      d.fail(SolveStatus::kDegenerateProjection);
      break;
    }
  }
  return d.finish();
}

SolveReport run_newton_anderson(const PageRankProblem& prob,
                                const SolverOptions& opt) {
  Driver d(prob, opt, Method::kNewtonAnderson);
  InnerSolver inner{prob, opt, opt.fd};
  Vector x_prev, delta_prev;
  bool have_prev = false;
  while (!d.done()) {
    auto [delta, its] = inner.solve(d.x(), d.f());
    ++d.report().gmres_solves;
    Vector z;
    if (have_prev) {
      const Vector dd = delta - delta_prev;
      const double den = dd.squaredNorm();
      if (den <= 1e-30) {
        z = d.x() + delta;  // directions coincide; plain Newton-GMRES step
      } else {
        const double gamma = delta.dot(dd) / den;
        z = d.x() + delta - gamma * ((d.x() - x_prev) + dd);
      }
    } else {
      z = d.x() + delta;
    }
    x_prev = d.x();
    delta_prev = std::move(delta);
    have_prev = true;
    try {
      d.accept(project(z), its);
    } catch (const DegenerateProjectionError&) {
      d.fail(SolveStatus::kDegenerateProjection);
      break;
    }
  }
  return d.finish();
}

}  // namespace

std::string_view method_name(Method m) {
  for (const auto& [method, name] : method_table())
    if (method == m) return name;
  throw ParameterError("unknown method");
}

Method method_from_name(std::string_view name) {
  for (const auto& [method, mname] : method_table())
    if (mname == name) return method;
  throw ParameterError("unknown method '" + std::string(name) +
                       "'; expected one of fp, newton, ng, ngfd, ng-mpe, "
                       "ng-rre, na");
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> all = [] {
    std::vector<Method> v;
    for (const auto& [method, name] : method_table()) v.push_back(method);
    return v;
  }();
  return all;
}

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kConverged: return "converged";
    case SolveStatus::kMaxIterations: return "max_iterations";
    case SolveStatus::kStagnated: return "stagnated";
    case SolveStatus::kDegenerateProjection: return "degenerate_projection";
    case SolveStatus::kSingularJacobian: return "singular_jacobian";
  }
  return "unknown";
}

SolveReport solve(const PageRankProblem& problem, Method method,
                  const SolverOptions& options) {
  validate_options(problem, options);
  switch (method) {
    case Method::kFixedPoint: return run_fixed_point(problem, options);
    case Method::kNewton: return run_newton(problem, options);
    case Method::kNewtonGmres: return run_newton_gmres(problem, options, false);
    case Method::kNewtonGmresFd: return run_newton_gmres(problem, options, true);
    case Method::kNgMpe:
      return run_ng_extrapolated(problem, options, Method::kNgMpe);
    case Method::kNgRre:
      return run_ng_extrapolated(problem, options, Method::kNgRre);
    case Method::kNewtonAnderson: return run_newton_anderson(problem, options);
  }
  throw ParameterError("unknown method");
}

SolveReport solve_fixed_point(const PageRankProblem& p, const SolverOptions& o) {
  return solve(p, Method::kFixedPoint, o);
}
SolveReport solve_newton(const PageRankProblem& p, const SolverOptions& o) {
  return solve(p, Method::kNewton, o);
}
SolveReport solve_newton_gmres(const PageRankProblem& p, const SolverOptions& o) {
  return solve(p, Method::kNewtonGmres, o);
}
SolveReport solve_newton_gmres_fd(const PageRankProblem& p,
                                  const SolverOptions& o) {
  return solve(p, Method::kNewtonGmresFd, o);
}
SolveReport solve_ng_mpe(const PageRankProblem& p, const SolverOptions& o) {
  return solve(p, Method::kNgMpe, o);
}
SolveReport solve_ng_rre(const PageRankProblem& p, const SolverOptions& o) {
  return solve(p, Method::kNgRre, o);
}
SolveReport solve_newton_anderson(const PageRankProblem& p,
                                  const SolverOptions& o) {
  return solve(p, Method::kNewtonAnderson, o);
}

}  // namespace mlpr
