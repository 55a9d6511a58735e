// Copyright 2026 the mlpr authors
// SPDX-License-Identifier: Apache-2.0

#include "mlpr/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "format.hpp"

namespace mlpr {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

// Reads logical lines: comments ('#', optionally '%') and blank lines are
// skipped; the 1-based line number of each returned line is reported.
class LineReader {
 public:
  LineReader(const std::filesystem::path& path, bool percent_comments)
      : in_(path), percent_(percent_comments), path_(path.string()) {
    if (!in_) throw ParseError("cannot open '" + path_ + "'");
  }

  bool next(std::string& out, long& lineno) {
    std::string line;
    while (std::getline(in_, line)) {
      ++lineno_;
      std::size_t start = line.find_first_not_of(" \t\r");
      if (start == std::string::npos) continue;
      if (line[start] == '#' || (percent_ && line[start] == '%')) {
        comments_.push_back(line.substr(start + 1));
        continue;
      }
      out = line;
      lineno = lineno_;
      return true;
    }
    return false;
  }

  const std::vector<std::string>& comments() const { return comments_; }

 private:
  std::ifstream in_;
  bool percent_;
  std::string path_;
  long lineno_ = 0;
  std::vector<std::string> comments_;
};

double parse_double_or_throw(const std::string& tok, long lineno) {
  double v;
  if (!detail::parse_double(tok, v))
    throw ParseError("expected a real number, got '" + tok + "'", lineno);
  return v;
}

long long parse_int_or_throw(const std::string& tok, long lineno) {
  long long v;
  if (!detail::parse_long(tok, v))
    throw ParseError("expected an integer, got '" + tok + "'", lineno);
  return v;
}

}  // namespace

SyntheticProblem gen_synthetic(Index n, std::uint64_t seed, int order) {
  const std::int64_t cols = dense_unfolding_cols(order, n);
  std::mt19937_64 rng(seed);
  auto u01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  Matrix R(n, cols);
  for (std::int64_t c = 0; c < cols; ++c)
    for (Index i = 0; i < n; ++i) R(i, c) = u01();
  const Vector uniform = Vector::Constant(n, 1.0 / static_cast<double>(n));
  for (std::int64_t c = 0; c < cols; ++c) {
    const double s = R.col(c).sum();
    if (s > 0.0)
      R.col(c) /= s;
    else
      R.col(c) = uniform;
  }
  return {FlattenedTensor::dense(order, n, std::move(R)), uniform};
}

FlattenedTensor load_tensor(const std::filesystem::path& path, bool repair) {
  LineReader reader(path, /*percent_comments=*/false);
  std::string line;
  long lineno = 0;
  if (!reader.next(line, lineno)) throw ParseError("empty tensor file");
  {
    auto toks = tokenize(line);
    if (toks.size() != 2 || toks[0] != "MLPR-TENSOR" || toks[1] != "1")
      throw ParseError("missing 'MLPR-TENSOR 1' signature", lineno);
  }
  if (!reader.next(line, lineno))
    throw ParseError("missing 'm n kind' header", lineno);
  auto head = tokenize(line);
  if (head.size() != 3) throw ParseError("header must be 'm n kind'", lineno);
  const long long m = parse_int_or_throw(head[0], lineno);
  const long long n = parse_int_or_throw(head[1], lineno);
  if (m < 2 || m > 64) throw ParseError("tensor order out of range", lineno);
  if (n < 1) throw ParseError("tensor dimension out of range", lineno);
  const std::string& kind = head[2];
  const std::int64_t cols = [&] {
    try {
      return unfolding_cols(static_cast<int>(m), n);
    } catch (const ParameterError& e) {
      throw ParseError(e.what(), lineno);
    }
  }();

  FlattenedTensor result = [&] {
    if (kind == "dense") {
      try {
        dense_unfolding_cols(static_cast<int>(m), n);
      } catch (const ParameterError& e) {
        throw ParseError(e.what(), lineno);
      }
      Matrix R(n, cols);
      for (std::int64_t c = 0; c < cols; ++c) {
        if (!reader.next(line, lineno))
          throw ParseError("expected " + std::to_string(cols) +
                               " dense columns, file ended at column " +
                               std::to_string(c),
                           lineno);
        auto toks = tokenize(line);
        if (std::ssize(toks) != n)
          throw ParseError("column " + std::to_string(c + 1) + " has " +
                               std::to_string(toks.size()) + " entries, expected " +
                               std::to_string(n),
                           lineno);
        for (long long i = 0; i < n; ++i)
          R(i, c) = parse_double_or_throw(toks[static_cast<std::size_t>(i)], lineno);
      }
      return FlattenedTensor::dense(static_cast<int>(m), n, std::move(R), repair);
    }
    if (kind == "sparse") {
      if (!reader.next(line, lineno))
        throw ParseError("missing nonzero count", lineno);
      auto cnt_toks = tokenize(line);
      if (cnt_toks.size() != 1)
        throw ParseError("nonzero count line must hold one integer", lineno);
      const long long nnz = parse_int_or_throw(cnt_toks[0], lineno);
      if (nnz < 0) throw ParseError("negative nonzero count", lineno);
      std::vector<Triplet> trips;
      trips.reserve(static_cast<std::size_t>(nnz));
      for (long long k = 0; k < nnz; ++k) {
        if (!reader.next(line, lineno))
          throw ParseError("expected " + std::to_string(nnz) +
                               " triplets, file ended after " + std::to_string(k),
                           lineno);
        auto toks = tokenize(line);
        if (toks.size() != 3)
          throw ParseError("triplet line must be 'row col value'", lineno);
        const long long r = parse_int_or_throw(toks[0], lineno);
        const long long c = parse_int_or_throw(toks[1], lineno);
        const double v = parse_double_or_throw(toks[2], lineno);
        if (r < 1 || r > n || c < 1 || c > cols)
          throw ParseError("triplet index out of range", lineno);
        trips.push_back(Triplet{static_cast<Index>(r - 1), c - 1, v});
      }
      return FlattenedTensor::sparse(static_cast<int>(m), n, std::move(trips),
                                     repair);
    }
    throw ParseError("unknown storage kind '" + kind + "'", lineno);
  }();

  if (reader.next(line, lineno))
    throw ParseError("trailing content after tensor data", lineno);
  return result;
}

void save_tensor(const std::filesystem::path& path, const FlattenedTensor& t,
                 const std::vector<std::string>& header_comments) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
  for (const auto& c : header_comments) out << "# " << c << "\n";
  out << "MLPR-TENSOR 1\n";
  out << t.order() << ' ' << t.dim() << ' ' << (t.is_dense() ? "dense" : "sparse")
      << "\n";
  if (t.is_dense()) {
    const Matrix& R = t.dense_values();
    for (std::int64_t c = 0; c < t.cols(); ++c) {
      for (Index i = 0; i < t.dim(); ++i) {
        if (i) out << ' ';
        out << detail::format_double(R(i, c));
      }
      out << "\n";
    }
  } else {
    const auto& trips = t.triplets();
    out << trips.size() << "\n";
    for (const auto& e : trips)
      out << (e.row + 1) << ' ' << (e.col + 1) << ' '
          << detail::format_double(e.value) << "\n";
  }
  if (!out) throw ParseError("write to '" + path.string() + "' failed");
}

DirectedGraph load_edgelist(const std::filesystem::path& path) {
  LineReader reader(path, /*percent_comments=*/true);
  std::string line;
  long lineno = 0;
  std::vector<std::pair<Index, Index>> edges;
  Index max_id = 0;
  while (reader.next(line, lineno)) {
    auto toks = tokenize(line);
    if (toks.size() != 2)
      throw ParseError("edge line must be 'src dst'", lineno);
    const long long a = parse_int_or_throw(toks[0], lineno);
    const long long b = parse_int_or_throw(toks[1], lineno);
    if (a < 1 || b < 1) throw ParseError("node ids are 1-based", lineno);
    edges.emplace_back(static_cast<Index>(a - 1), static_cast<Index>(b - 1));
    max_id = std::max({max_id, static_cast<Index>(a), static_cast<Index>(b)});
  }
  // optional "nodes N" directive inside a comment
  Index declared = 0;
  for (const auto& c : reader.comments()) {
    auto toks = tokenize(c);
    if (toks.size() == 2 && toks[0] == "nodes") {
      long long nn;
      if (detail::parse_long(toks[1], nn) && nn >= 1)
        declared = static_cast<Index>(nn);
    }
  }
  DirectedGraph g;
  if (declared > 0) {
    if (max_id > declared)
      throw ParseError("node id " + std::to_string(max_id) +
                       " exceeds declared 'nodes " + std::to_string(declared) +
                       "'");
    g.n = declared;
  } else {
    g.n = max_id;
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.edges = std::move(edges);
  return g;
}

std::vector<Triplet> build_cycle_tensor(const DirectedGraph& g) {
  const Index n = g.n;
  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(n));
  for (const auto& [a, b] : g.edges) adj[static_cast<std::size_t>(a)].push_back(b);
  auto has_edge = [&](Index a, Index b) {
    const auto& row = adj[static_cast<std::size_t>(a)];
    return std::binary_search(row.begin(), row.end(), b);
  };
  std::vector<Triplet> trips;
  for (const auto& [i, j] : g.edges) {
    if (i == j) continue;
    for (Index k : adj[static_cast<std::size_t>(j)]) {
      if (k == i || k == j) continue;
      if (has_edge(k, i))
        trips.push_back(Triplet{i, static_cast<std::int64_t>(k) * n + j, 1.0});
    }
  }
  return trips;
}

Matrix build_first_order(const DirectedGraph& g) {
  Matrix P = Matrix::Zero(g.n, g.n);
  std::vector<Index> outdeg(static_cast<std::size_t>(g.n), 0);
  for (const auto& [a, b] : g.edges) ++outdeg[static_cast<std::size_t>(a)];
  for (const auto& [a, b] : g.edges)
    P(a, b) = 1.0 / static_cast<double>(outdeg[static_cast<std::size_t>(a)]);
  return P;
}

Eigen::RowVectorXd dangling_row(const Matrix& B) {
  return Eigen::RowVectorXd::Ones(B.cols()) - B.colwise().sum();
}

FlattenedTensor assemble_real_world(const std::vector<Triplet>& cycle_counts,
                                    const Matrix& P, const Vector& v,
                                    double gamma) {
  const Index n = v.size();
  if (P.rows() != n || P.cols() != n)
    throw ShapeError("first-order matrix must be n x n");
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw ParameterError("gamma must lie in [0, 1]");
  if (n > 600)
    throw ParameterError(
        "dense real-world assembly holds n^3 doubles; n <= 600 supported, got "
        "n = " +
        std::to_string(n));
  double vsum = 0.0;
  for (Index i = 0; i < n; ++i) {
    if (v[i] < 0.0 || !std::isfinite(v[i]))
      throw ValidationError("teleportation vector has a negative entry");
    vsum += v[i];
  }
  if (std::abs(vsum - 1.0) > FlattenedTensor::kStochasticTol)
    throw ValidationError("teleportation vector must sum to 1");

  const std::int64_t cols = static_cast<std::int64_t>(n) * n;
  std::vector<double> colsum(static_cast<std::size_t>(cols), 0.0);
  for (const auto& e : cycle_counts) {
    if (e.row < 0 || e.row >= n || e.col < 0 || e.col >= cols)
      throw ShapeError("cycle triplet index out of range");
    if (e.value < 0.0) throw ValidationError("cycle counts must be nonnegative");
    colsum[static_cast<std::size_t>(e.col)] += e.value;
  }

  // Pc = P^T with dangling mass redirected to v, so every column sums to one.
  Matrix Pc = P.transpose();
  for (Index j = 0; j < n; ++j) {
    const double s = Pc.col(j).sum();
    Pc.col(j) += (1.0 - s) * v;
  }

  Matrix R(n, cols);
  for (std::int64_t c = 0; c < cols; ++c)
    R.col(c) = (1.0 - gamma) * Pc.col(static_cast<Index>(c % n));
  Vector qcol = Vector::Zero(n);
  std::vector<Triplet> sorted = cycle_counts;
  std::sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  for (std::size_t k = 0; k < sorted.size();) {
    const std::int64_t c = sorted[k].col;
    qcol.setZero();
    for (; k < sorted.size() && sorted[k].col == c; ++k)
      qcol[sorted[k].row] += sorted[k].value / colsum[static_cast<std::size_t>(c)];
    const double qs = qcol.sum();
    R.col(c) += gamma * qcol + gamma * (1.0 - qs) * v;
  }
  // columns with no cycles get the full dangling correction gamma * v
  for (std::int64_t c = 0; c < cols; ++c)
    if (colsum[static_cast<std::size_t>(c)] == 0.0) R.col(c) += gamma * v;

  return FlattenedTensor::dense(3, n, std::move(R));
}

}  // namespace mlpr
