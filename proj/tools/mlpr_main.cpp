// Copyright 2026 the mlpr authors
// SPDX-License-Identifier: Apache-2.0
//
// mlpr: multilinear PageRank solver toolkit.
//   mlpr solve    one problem, one method, optional JSON/CSV reports
//   mlpr bench    problems x alphas x methods sweep to CSV
//   mlpr profile  performance profiles from a bench CSV

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mlpr/bench.hpp"
#include "mlpr/datagen.hpp"
#include "mlpr/problem.hpp"
#include "mlpr/solvers.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// exit codes: 0 converged/success, 1 finished without convergence,
// 2 usage/parse, 3 validation, 4 runtime
constexpr int kExitNotConverged = 1;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitRuntime = 4;

struct StageError {
  int code;
};

[[noreturn]] void die(const char* stage, const std::string& msg, int code) {
  std::cerr << "error [" << stage << "]: " << msg << "\n";
  throw StageError{code};
}

std::vector<double> parse_double_list(const std::string& csv, const char* what) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      die("parse", std::string("bad ") + what + " value '" + tok + "'",
          kExitUsage);
    }
  }
  if (out.empty()) die("parse", std::string("empty ") + what + " list", kExitUsage);
  return out;
}

struct SolveArgs {
  std::string tensor_path, graph_path;
  bool repair = false;
  long long synthetic_n = 0;
  std::uint64_t seed = 0;
  double gamma = 0.5;
  double alpha = 0.0;
  std::string method = "ng";
  double tol = 1e-15, inner_tol = 1e-14;
  int kmax = 1000, p = 40, q = 4;
  bool fd = false, reorth = false;
  double forcing_eta = 0.0;  // > 0 enables the adaptive inner tolerance
  std::string out_json, history_csv;
  bool emit_solution = false;
};

mlpr::SolverOptions make_options(const SolveArgs& a) {
  mlpr::SolverOptions o;
  o.tol = a.tol;
  o.inner_tol = a.inner_tol;
  o.max_outer = a.kmax;
  o.krylov_dim = a.p;
  o.window_q = a.q;
  o.fd = a.fd;
  o.reorthogonalize = a.reorth;
  if (a.forcing_eta > 0.0) {
    o.forcing = true;
    o.forcing_eta = a.forcing_eta;
  }
  return o;
}

struct LoadedProblem {
  std::string name;
  mlpr::FlattenedTensor tensor;
  mlpr::Vector v;
};

LoadedProblem load_problem(const SolveArgs& a) {
  const int sources = (!a.tensor_path.empty() ? 1 : 0) +
                      (a.synthetic_n > 0 ? 1 : 0) +
                      (!a.graph_path.empty() ? 1 : 0);
  if (sources != 1)
    die("parse", "give exactly one of --tensor, --synthetic, --graph",
        kExitUsage);
  try {
    if (!a.tensor_path.empty()) {
      mlpr::FlattenedTensor t = mlpr::load_tensor(a.tensor_path, a.repair);
      mlpr::Vector v =
          mlpr::Vector::Constant(t.dim(), 1.0 / static_cast<double>(t.dim()));
      return {fs::path(a.tensor_path).stem().string(), std::move(t),
              std::move(v)};
    }
    if (a.synthetic_n > 0) {
      auto sp = mlpr::gen_synthetic(static_cast<mlpr::Index>(a.synthetic_n),
                                    a.seed);
      std::string name = "synthetic-n" + std::to_string(a.synthetic_n) + "-s" +
                         std::to_string(a.seed);
      return {std::move(name), std::move(sp.tensor), std::move(sp.v)};
    }
    mlpr::DirectedGraph g = mlpr::load_edgelist(a.graph_path);
    if (g.n == 0) die("load", "graph has no nodes", kExitValidation);
    mlpr::Vector v =
        mlpr::Vector::Constant(g.n, 1.0 / static_cast<double>(g.n));
    auto cycles = mlpr::build_cycle_tensor(g);
    mlpr::Matrix P = mlpr::build_first_order(g);
    mlpr::FlattenedTensor t = mlpr::assemble_real_world(cycles, P, v, a.gamma);
    std::ostringstream name;
    name << fs::path(a.graph_path).stem().string() << "-g" << a.gamma;
    return {name.str(), std::move(t), std::move(v)};
  } catch (const mlpr::ParseError& e) {
    die("load", e.what(), kExitValidation);
  } catch (const mlpr::Error& e) {
    die("validate", e.what(), kExitValidation);
  }
}

int cmd_solve(const SolveArgs& a) {
  LoadedProblem lp = load_problem(a);
  mlpr::Method method{};
  try {
    method = mlpr::method_from_name(a.method);
  } catch (const mlpr::Error& e) {
    die("parse", e.what(), kExitUsage);
  }
  mlpr::SolveReport rep;
  mlpr::RegularityReport reg;
  try {
    mlpr::PageRankProblem prob(lp.tensor, a.alpha, lp.v);
    reg = prob.check_regularity();
    rep = mlpr::solve(prob, method, make_options(a));
  } catch (const mlpr::ParameterError& e) {
    die("validate", e.what(), kExitValidation);
  } catch (const mlpr::ValidationError& e) {
    die("validate", e.what(), kExitValidation);
  } catch (const mlpr::ShapeError& e) {
    die("validate", e.what(), kExitValidation);
  } catch (const mlpr::Error& e) {
    die("solve", e.what(), kExitRuntime);
  }

  std::cout << "problem   " << lp.name << " (n=" << lp.tensor.dim()
            << ", m=" << lp.tensor.order() << ")\n";
  std::cout << "method    " << rep.method << "  alpha " << a.alpha << "\n";
  if (!reg.regular)
    std::cout << "note      alpha >= 1/(m-1): uniqueness is not guaranteed\n";
  std::cout << "status    " << mlpr::to_string(rep.status) << " after "
            << rep.outer_iterations << " outer / " << rep.inner_iterations_total
            << " inner iterations (" << rep.wall_time_s * 1e3 << " ms)\n";
  std::cout << "residual  " << rep.final_residual << " (1-norm)\n";

  try {
    if (!a.out_json.empty()) {
      json j{{"method", rep.method},
             {"status", std::string(mlpr::to_string(rep.status))},
             {"outer_iterations", rep.outer_iterations},
             {"inner_iterations_total", rep.inner_iterations_total},
             {"wall_time_s", rep.wall_time_s},
             {"final_residual_l1", rep.final_residual},
             {"alpha", a.alpha},
             {"problem", lp.name},
             {"n", lp.tensor.dim()},
             {"m", lp.tensor.order()}};
      if (a.emit_solution)
        j["solution"] = std::vector<double>(
            rep.solution.data(), rep.solution.data() + rep.solution.size());
      std::ofstream out(a.out_json);
      if (!out) die("report", "cannot write '" + a.out_json + "'", kExitRuntime);
      out << j.dump(2) << "\n";
    }
    if (!a.history_csv.empty()) {
      std::ofstream out(a.history_csv);
      if (!out)
        die("report", "cannot write '" + a.history_csv + "'", kExitRuntime);
      out << "iter,residual_l1\n";
      for (std::size_t k = 0; k < rep.residual_history.size(); ++k)
        out << k << ',' << rep.residual_history[k] << "\n";
    }
  } catch (const mlpr::Error& e) {
    die("report", e.what(), kExitRuntime);
  }
  return rep.status == mlpr::SolveStatus::kConverged ? 0 : kExitNotConverged;
}

struct BenchArgs {
  std::string suite_dir, synthetic_sizes;
  std::uint64_t seed = 0;
  std::string alphas, methods;
  std::string out;
  int jobs = 1;
  SolveArgs solver;  // shared solver knobs (tol, p, q, ...)
};

int cmd_bench(const BenchArgs& a) {
  mlpr::BenchSuite suite;
  suite.options = make_options(a.solver);
  try {
    if (!a.suite_dir.empty()) {
      std::vector<fs::path> files;
      if (!fs::is_directory(a.suite_dir))
        die("load", "'" + a.suite_dir + "' is not a directory", kExitValidation);
      for (const auto& ent : fs::directory_iterator(a.suite_dir))
        if (ent.path().extension() == ".mlpr") files.push_back(ent.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) {
        mlpr::FlattenedTensor t = mlpr::load_tensor(f);
        mlpr::Vector v =
            mlpr::Vector::Constant(t.dim(), 1.0 / static_cast<double>(t.dim()));
        suite.problems.push_back({f.stem().string(), std::move(t), std::move(v)});
      }
    }
    if (!a.synthetic_sizes.empty()) {
      auto sizes = parse_double_list(a.synthetic_sizes, "size");
      std::uint64_t seed = a.seed;
      for (double szd : sizes) {
        const auto n = static_cast<mlpr::Index>(szd);
        if (n < 1 || static_cast<double>(n) != szd)
          die("parse", "synthetic sizes must be positive integers", kExitUsage);
        auto sp = mlpr::gen_synthetic(n, seed);
        suite.problems.push_back({"synthetic-n" + std::to_string(n) + "-s" +
                                      std::to_string(seed),
                                  std::move(sp.tensor), std::move(sp.v)});
        ++seed;
      }
    }
    if (suite.problems.empty())
      die("load", "no problems: give --suite and/or --synthetic-suite",
          kExitValidation);
    suite.alphas = a.alphas.empty() ? mlpr::default_alpha_grid()
                                    : parse_double_list(a.alphas, "alpha");
    if (a.methods.empty()) {
      suite.methods = mlpr::all_methods();
    } else {
      std::stringstream ss(a.methods);
      std::string tok;
      while (std::getline(ss, tok, ','))
        if (!tok.empty()) suite.methods.push_back(mlpr::method_from_name(tok));
    }
  } catch (const mlpr::ParseError& e) {
    die("load", e.what(), kExitValidation);
  } catch (const mlpr::Error& e) {
    die("validate", e.what(), kExitValidation);
  }

  std::vector<mlpr::BenchRow> rows;
  try {
    rows = mlpr::run_suite(suite, a.jobs);
  } catch (const mlpr::Error& e) {
    die("solve", e.what(), kExitRuntime);
  }
  try {
    if (a.out.empty()) {
      mlpr::write_bench_csv(std::cout, rows);
    } else {
      std::ofstream out(a.out);
      if (!out) die("report", "cannot write '" + a.out + "'", kExitRuntime);
      mlpr::write_bench_csv(out, rows);
      std::size_t solved = 0;
      for (const auto& r : rows)
        if (r.status == "converged") ++solved;
      std::cout << rows.size() << " cells, " << solved << " converged -> "
                << a.out << "\n";
    }
  } catch (const mlpr::Error& e) {
    die("report", e.what(), kExitRuntime);
  }
  return 0;
}

struct ProfileArgs {
  std::string input, metric = "both", out, json_out;
};

int cmd_profile(const ProfileArgs& a) {
  std::vector<mlpr::BenchRow> rows;
  try {
    std::ifstream in(a.input);
    if (!in) die("load", "cannot open '" + a.input + "'", kExitValidation);
    rows = mlpr::read_bench_csv(in);
  } catch (const mlpr::ParseError& e) {
    die("load", e.what(), kExitValidation);
  }

  std::vector<std::pair<std::string, mlpr::ProfileMetric>> metrics;
  if (a.metric == "iters" || a.metric == "both")
    metrics.emplace_back("iters", mlpr::ProfileMetric::kIters);
  if (a.metric == "time" || a.metric == "time_s" || a.metric == "both")
    metrics.emplace_back("time_s", mlpr::ProfileMetric::kTime);
  if (metrics.empty())
    die("parse", "metric must be iters, time or both", kExitUsage);

  json jroot;
  std::ostringstream csv;
  csv << "metric,method,tau,fraction\n";
  try {
    for (const auto& [mname, metric] : metrics) {
      auto curves = mlpr::performance_profiles(rows, metric);
      json jcurves = json::array();
      for (const auto& c : curves) {
        json points = json::array();
        for (std::size_t i = 0; i < c.tau.size(); ++i) {
          csv << mname << ',' << c.method << ',' << c.tau[i] << ','
              << c.fraction[i] << "\n";
          points.push_back({c.tau[i], c.fraction[i]});
        }
        jcurves.push_back({{"method", c.method},
                           {"solve_rate", c.solve_rate},
                           {"points", std::move(points)}});
      }
      jroot[mname] = std::move(jcurves);
    }
  } catch (const mlpr::Error& e) {
    die("profile", e.what(), kExitValidation);
  }

  try {
    if (a.out.empty()) {
      std::cout << csv.str();
    } else {
      std::ofstream out(a.out);
      if (!out) die("report", "cannot write '" + a.out + "'", kExitRuntime);
      out << csv.str();
      std::cout << "profiles -> " << a.out << "\n";
    }
    if (!a.json_out.empty()) {
      std::ofstream out(a.json_out);
      if (!out) die("report", "cannot write '" + a.json_out + "'", kExitRuntime);
      out << jroot.dump(2) << "\n";
    }
  } catch (const mlpr::Error& e) {
    die("report", e.what(), kExitRuntime);
  }
  return 0;
}

void add_solver_flags(CLI::App* cmd, SolveArgs& a) {
  cmd->add_option("--tol", a.tol, "outer tolerance on ||f(x)||_1");
  cmd->add_option("--inner-tol", a.inner_tol,
                  "inner GMRES tolerance (absolute, 2-norm)");
  cmd->add_option("--kmax", a.kmax, "outer iteration cap");
  cmd->add_option("--p", a.p, "Krylov basis cap per inner solve");
  cmd->add_option("--q", a.q, "extrapolation window parameter");
  cmd->add_flag("--fd", a.fd,
                "finite-difference Jacobian action in ng-mpe/ng-rre/na");
  cmd->add_flag("--reorthogonalize", a.reorth, "second Gram-Schmidt pass");
  cmd->add_option("--forcing-eta", a.forcing_eta,
                  "enable adaptive inner tolerance min(inner-tol, eta*||f||_1)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multilinear PageRank solvers"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "solve one problem");
  solve->add_option("--tensor", sa.tensor_path, "tensor file (MLPR-TENSOR 1)");
  solve->add_flag("--repair", sa.repair, "renormalize columns while loading");
  solve->add_option("--synthetic", sa.synthetic_n, "random dense problem size");
  solve->add_option("--seed", sa.seed, "synthetic generator seed");
  solve->add_option("--graph", sa.graph_path, "directed edge-list file");
  solve->add_option("--gamma", sa.gamma,
                    "cycle/first-order blend for --graph (default 0.5)");
  solve->add_option("--alpha", sa.alpha, "damping factor in [0,1)")->required();
  solve->add_option("--method", sa.method,
                    "fp|newton|ng|ngfd|ng-mpe|ng-rre|na (default ng)");
  add_solver_flags(solve, sa);
  solve->add_option("--out", sa.out_json, "write a JSON report");
  solve->add_option("--history", sa.history_csv,
                    "write per-iteration residuals as CSV");
  solve->add_flag("--emit-solution", sa.emit_solution,
                  "include the solution vector in the JSON report");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "sweep problems x alphas x methods");
  bench->add_option("--suite", ba.suite_dir, "directory of .mlpr tensor files");
  bench->add_option("--synthetic-suite", ba.synthetic_sizes,
                    "comma-separated synthetic sizes, e.g. 50,80,100");
  bench->add_option("--seed", ba.seed, "base seed for the synthetic problems");
  bench->add_option("--alphas", ba.alphas,
                    "comma-separated damping grid (default "
                    "0.49,0.6,0.7,0.8,0.85,0.9,0.95,0.99,0.999)");
  bench->add_option("--methods", ba.methods,
                    "comma-separated method list (default: all seven)");
  bench->add_option("--out", ba.out, "output CSV path (default stdout)");
  bench->add_option("--jobs", ba.jobs, "worker threads (default 1)");
  add_solver_flags(bench, ba.solver);

  ProfileArgs pa;
  auto* profile =
      app.add_subcommand("profile", "performance profiles from a bench CSV");
  profile->add_option("--input", pa.input, "bench CSV")->required();
  profile->add_option("--metric", pa.metric, "iters|time|both (default both)");
  profile->add_option("--out", pa.out, "profile CSV path (default stdout)");
  profile->add_option("--json", pa.json_out, "also write profiles as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(sa);
    if (bench->parsed()) return cmd_bench(ba);
    if (profile->parsed()) return cmd_profile(pa);
  } catch (const StageError& e) {
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error [internal]: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
