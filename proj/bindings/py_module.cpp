// Copyright 2026 the mlpr authors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "mlpr/datagen.hpp"
#include "mlpr/extrapolation.hpp"
#include "mlpr/solvers.hpp"

namespace py = pybind11;
using namespace mlpr;

namespace {

std::vector<Triplet> to_triplets(
    const std::vector<std::tuple<Index, std::int64_t, double>>& entries) {
  std::vector<Triplet> out;
  out.reserve(entries.size());
  for (const auto& [row, col, value] : entries) out.push_back({row, col, value});
  return out;
}

SequenceWindow to_window(const std::vector<Vector>& iterates) {
  SequenceWindow w;
  w.iterates = iterates;
  return w;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "multilinear PageRank solvers: tensor kernels, Newton-GMRES "
            "variants, vector extrapolation";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ShapeError>(m, "ShapeError", base);
  py::register_exception<ValidationError>(m, "ValidationError", base);
  py::register_exception<ParameterError>(m, "ParameterError", base);
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<DegenerateProjectionError>(
      m, "DegenerateProjectionError", base);
  py::register_exception<SingularMatrixError>(m, "SingularMatrixError", base);
  py::register_exception<ExtrapolationSingularError>(
      m, "ExtrapolationSingularError", base);

  py::class_<FlattenedTensor>(m, "FlattenedTensor",
                              "Column-stochastic mode-1 unfolding of an "
                              "order-m transition tensor, n x n^(m-1)")
      .def_static("dense", &FlattenedTensor::dense, py::arg("order"),
                  py::arg("dim"), py::arg("values"), py::arg("repair") = false)
      .def_static(
          "sparse",
          [](int order, Index dim,
             const std::vector<std::tuple<Index, std::int64_t, double>>& t,
             bool repair) {
            return FlattenedTensor::sparse(order, dim, to_triplets(t), repair);
          },
          py::arg("order"), py::arg("dim"), py::arg("triplets"),
          py::arg("repair") = false)
      .def_property_readonly("order", &FlattenedTensor::order)
      .def_property_readonly("dim", &FlattenedTensor::dim)
      .def_property_readonly("cols", &FlattenedTensor::cols)
      .def_property_readonly("is_dense", &FlattenedTensor::is_dense)
      .def_property_readonly("nonzeros", &FlattenedTensor::nonzeros)
      .def("dense_values", &FlattenedTensor::dense_values,
           "Materialize the unfolding as a dense array")
      .def("apply", &FlattenedTensor::apply, py::arg("x"),
           "R (x (x) ... (x) x)")
      .def("jacobian_apply", &FlattenedTensor::jacobian_apply, py::arg("x"),
           py::arg("w"), py::arg("alpha"),
           "Action of the residual Jacobian at x on w")
      .def("dense_jacobian", &FlattenedTensor::dense_jacobian, py::arg("x"),
           py::arg("alpha"));

  py::class_<RegularityReport>(m, "RegularityReport")
      .def_readonly("regular", &RegularityReport::regular)
      .def_readonly("threshold", &RegularityReport::threshold)
      .def_readonly("margin", &RegularityReport::margin)
      .def("__repr__", [](const RegularityReport& r) {
        return "RegularityReport(regular=" + std::string(r.regular ? "True" : "False") +
               ", threshold=" + std::to_string(r.threshold) +
               ", margin=" + std::to_string(r.margin) + ")";
      });

  py::class_<PageRankProblem>(m, "PageRankProblem",
                              "x = alpha R(x (x) ... (x) x) + (1-alpha) v")
      .def(py::init<FlattenedTensor, double, Vector>(), py::arg("tensor"),
           py::arg("alpha"), py::arg("v"))
      .def_property_readonly("alpha", &PageRankProblem::alpha)
      .def_property_readonly("v", &PageRankProblem::v)
      .def_property_readonly("dim", &PageRankProblem::dim)
      .def_property_readonly("order", &PageRankProblem::order)
      .def("fixed_point_map", &PageRankProblem::fixed_point_map, py::arg("x"))
      .def("residual", &PageRankProblem::residual, py::arg("x"))
      .def("check_regularity", &PageRankProblem::check_regularity);

  py::class_<SolverOptions>(m, "SolverOptions")
      .def(py::init<>())
      .def_readwrite("tol", &SolverOptions::tol)
      .def_readwrite("inner_tol", &SolverOptions::inner_tol)
      .def_readwrite("max_outer", &SolverOptions::max_outer)
      .def_readwrite("krylov_dim", &SolverOptions::krylov_dim)
      .def_readwrite("window_q", &SolverOptions::window_q)
      .def_readwrite("fd", &SolverOptions::fd)
      .def_readwrite("stagnation_window", &SolverOptions::stagnation_window)
      .def_readwrite("stagnation_drop", &SolverOptions::stagnation_drop)
      .def_readwrite("reorthogonalize", &SolverOptions::reorthogonalize)
      .def_readwrite("forcing", &SolverOptions::forcing)
      .def_readwrite("forcing_eta", &SolverOptions::forcing_eta)
      .def_readwrite("x0", &SolverOptions::x0);

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("solution", &SolveReport::solution)
      .def_property_readonly(
          "status", [](const SolveReport& r) { return to_string(r.status); })
      .def_readonly("method", &SolveReport::method)
      .def_readonly("outer_iterations", &SolveReport::outer_iterations)
      .def_readonly("residual_history", &SolveReport::residual_history)
      .def_readonly("inner_iteration_counts",
                    &SolveReport::inner_iteration_counts)
      .def_readonly("inner_iterations_total",
                    &SolveReport::inner_iterations_total)
      .def_readonly("gmres_solves", &SolveReport::gmres_solves)
      .def_readonly("extrapolation_fallbacks",
                    &SolveReport::extrapolation_fallbacks)
      .def_readonly("wall_time_s", &SolveReport::wall_time_s)
      .def_readonly("final_residual", &SolveReport::final_residual)
      .def_readonly("iterate_min_entry", &SolveReport::iterate_min_entry)
      .def_readonly("iterate_max_sum_err", &SolveReport::iterate_max_sum_err)
      .def("__repr__", [](const SolveReport& r) {
        return "SolveReport(method='" + r.method + "', status='" +
               std::string(to_string(r.status)) +
               "', outer_iterations=" + std::to_string(r.outer_iterations) +
               ", final_residual=" + std::to_string(r.final_residual) + ")";
      });

  m.def(
      "solve",
      [](const PageRankProblem& prob, const std::string& method,
         const SolverOptions& options) {
        return solve(prob, method_from_name(method), options);
      },
      py::arg("problem"), py::arg("method") = "ng",
      py::arg("options") = SolverOptions{},
      py::call_guard<py::gil_scoped_release>(),
      "Run one solver; method is one of fp, newton, ng, ngfd, ng-mpe, "
      "ng-rre, na");

  m.def("method_names", [] {
    std::vector<std::string> names;
    for (Method m : all_methods()) names.emplace_back(method_name(m));
    return names;
  });

  m.def("project", &project, py::arg("z"),
        "Clip to the nonnegative orthant and rescale onto the simplex");

  m.def(
      "gen_synthetic",
      [](Index n, std::uint64_t seed, int order) {
        auto sp = gen_synthetic(n, seed, order);
        return py::make_tuple(sp.tensor, sp.v);
      },
      py::arg("n"), py::arg("seed"), py::arg("order") = 3,
      "Seeded dense column-stochastic tensor plus uniform v; deterministic "
      "across platforms");

  m.def("load_tensor", &load_tensor, py::arg("path"),
        py::arg("repair") = false);
  m.def("save_tensor", &save_tensor, py::arg("path"), py::arg("tensor"),
        py::arg("header_comments") = std::vector<std::string>{});

  m.def(
      "mpe",
      [](const std::vector<Vector>& iterates) {
        return mpe(to_window(iterates));
      },
      py::arg("iterates"),
      "Minimal-polynomial extrapolation of a list of iterates");
  m.def(
      "rre",
      [](const std::vector<Vector>& iterates) {
        return rre(to_window(iterates));
      },
      py::arg("iterates"), "Reduced-rank extrapolation of a list of iterates");
}
