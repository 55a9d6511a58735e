// Copyright 2026 the mlpr authors
// SPDX-License-Identifier: Apache-2.0

#include "mlpr/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <thread>

#include "format.hpp"

namespace mlpr {

namespace {

constexpr const char* kCsvHeader =
    "problem,alpha,method,status,iters,inner_iters,time_s,final_residual";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace

const std::vector<double>& default_alpha_grid() {
  static const std::vector<double> grid = {0.49, 0.6,  0.7,  0.8, 0.85,
                                           0.9,  0.95, 0.99, 0.999};
  return grid;
}

std::vector<BenchRow> run_suite(const BenchSuite& suite, int jobs) {
  if (suite.problems.empty()) throw ParameterError("benchmark suite is empty");
  if (suite.alphas.empty()) throw ParameterError("no alphas given");
  if (suite.methods.empty()) throw ParameterError("no methods given");
  for (double a : suite.alphas)
    if (!(a >= 0.0 && a < 1.0))
      throw ParameterError("alpha " + detail::format_double(a) +
                           " outside [0, 1)");

  const std::size_t na = suite.alphas.size();
  const std::size_t nm = suite.methods.size();
  const std::size_t total = suite.problems.size() * na * nm;
  std::vector<BenchRow> rows(total);

  auto run_cell = [&](std::size_t idx) {
    const std::size_t pi = idx / (na * nm);
    const std::size_t ai = (idx / nm) % na;
    const std::size_t mi = idx % nm;
    const BenchProblem& bp = suite.problems[pi];
    BenchRow row;
    row.problem = bp.name;
    row.alpha = suite.alphas[ai];
    row.method = std::string(method_name(suite.methods[mi]));
    try {
      PageRankProblem prob(bp.tensor, row.alpha, bp.v);
      SolveReport rep = solve(prob, suite.methods[mi], suite.options);
      row.status = std::string(to_string(rep.status));
      row.iters = rep.outer_iterations;
      row.inner_iters = rep.inner_iterations_total;
      row.time_s = rep.wall_time_s;
      row.final_residual = rep.final_residual;
    } catch (const Error&) {
      row.status = "error";
      row.final_residual = std::numeric_limits<double>::infinity();
    }
    rows[idx] = std::move(row);
  };

  if (jobs <= 1) {
    for (std::size_t i = 0; i < total; ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1))
        run_cell(i);
    };
    std::vector<std::thread> pool;
    const int nt = std::min<int>(jobs, static_cast<int>(total));
    pool.reserve(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << kCsvHeader << "\n";
  for (const auto& r : rows) {
    out << r.problem << ',' << detail::format_double(r.alpha) << ',' << r.method
        << ',' << r.status << ',' << r.iters << ',' << r.inner_iters << ','
        << detail::format_double(r.time_s) << ','
        << detail::format_double(r.final_residual) << "\n";
  }
}

std::vector<BenchRow> read_bench_csv(std::istream& in) {
  std::string line;
  long lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty benchmark CSV");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader)
    throw ParseError("unexpected CSV header; want '" + std::string(kCsvHeader) +
                         "'",
                     lineno);
  std::vector<BenchRow> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = split_csv(line);
    if (f.size() != 8)
      throw ParseError("expected 8 comma-separated fields", lineno);
    BenchRow r;
    r.problem = f[0];
    r.method = f[2];
    r.status = f[3];
    long long iters, inner;
    if (!detail::parse_double(f[1], r.alpha) ||
        !detail::parse_long(f[4], iters) || !detail::parse_long(f[5], inner) ||
        !detail::parse_double(f[6], r.time_s) ||
        !detail::parse_double(f[7], r.final_residual))
      throw ParseError("malformed numeric field", lineno);
    r.iters = static_cast<int>(iters);
    r.inner_iters = inner;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ProfileCurve> performance_profiles(const std::vector<BenchRow>& rows,
                                               ProfileMetric metric) {
  if (rows.empty()) throw ParameterError("no benchmark rows");
  // (problem, alpha) cells and methods, both in first-appearance order
  std::vector<std::string> keys, methods;
  std::map<std::string, std::size_t> key_index, method_index;
  for (const auto& r : rows) {
    const std::string key = r.problem + '\x1f' + detail::format_double(r.alpha);
    if (key_index.emplace(key, keys.size()).second) keys.push_back(key);
    if (method_index.emplace(r.method, methods.size()).second)
      methods.push_back(r.method);
  }
  const std::size_t P = keys.size();
  const std::size_t M = methods.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> value(P * M, inf);
  std::size_t converged_rows = 0;
  for (const auto& r : rows) {
    const std::size_t k =
        key_index.at(r.problem + '\x1f' + detail::format_double(r.alpha));
    const std::size_t m = method_index.at(r.method);
    if (r.status != "converged") continue;
    ++converged_rows;
    double val = metric == ProfileMetric::kIters ? static_cast<double>(r.iters)
                                                 : r.time_s;
    // a zero-cost cell (clock resolution) must not poison the ratios
    val = std::max(val, 1e-12);
    value[k * M + m] = val;
  }
  if (converged_rows == 0)
    throw ParameterError("no converged rows; performance profile is undefined");

  std::vector<double> best(P, inf);
  for (std::size_t k = 0; k < P; ++k)
    for (std::size_t m = 0; m < M; ++m)
      best[k] = std::min(best[k], value[k * M + m]);

  std::vector<double> taus;
  std::vector<std::vector<double>> ratios(M);
  double max_ratio = 1.0;
  for (std::size_t m = 0; m < M; ++m) {
    ratios[m].reserve(P);
    for (std::size_t k = 0; k < P; ++k) {
      const double val = value[k * M + m];
      const double r = std::isfinite(val) ? val / best[k] : inf;
      ratios[m].push_back(r);
      if (std::isfinite(r)) {
        taus.push_back(r);
        max_ratio = std::max(max_ratio, r);
      }
    }
    std::sort(ratios[m].begin(), ratios[m].end());
  }
  taus.push_back(1.0);
  for (int i = 0; i < 64; ++i)
    taus.push_back(std::exp(std::log(max_ratio) * i / 63.0));
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());

  std::vector<ProfileCurve> curves(M);
  for (std::size_t m = 0; m < M; ++m) {
    curves[m].method = methods[m];
    curves[m].tau = taus;
    curves[m].fraction.reserve(taus.size());
    for (double t : taus) {
      const auto solved = std::upper_bound(ratios[m].begin(), ratios[m].end(), t) -
                          ratios[m].begin();
      curves[m].fraction.push_back(static_cast<double>(solved) /
                                   static_cast<double>(P));
    }
    const auto finite =
        std::count_if(ratios[m].begin(), ratios[m].end(),
                      [](double r) { return std::isfinite(r); });
    curves[m].solve_rate = static_cast<double>(finite) / static_cast<double>(P);
  }
  return curves;
}

}  // namespace mlpr
