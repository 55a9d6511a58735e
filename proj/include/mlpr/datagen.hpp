// Copyright 2026 the mlpr authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mlpr/tensor.hpp"

namespace mlpr {

struct SyntheticProblem {
  FlattenedTensor tensor;
  Vector v;  // uniform teleportation e/n
};

/// Dense random column-stochastic unfolding: entries drawn uniform on [0,1)
/// (column-major fill order), every column divided by its sum (an exactly
/// zero column would be replaced by e/n). Same seed, same tensor, bitwise,
/// on any platform: the generator is mt19937_64 with the top 53 bits mapped
/// to [0,1), independent of the standard library's distribution code.
SyntheticProblem gen_synthetic(Index n, std::uint64_t seed, int order = 3);

/// Simple directed graph, 0-based ids internally, edges deduplicated and
/// sorted. Files use 1-based ids.
struct DirectedGraph {
  Index n = 0;
  std::vector<std::pair<Index, Index>> edges;
};

/// Text tensor format:
///   MLPR-TENSOR 1
///   m n {dense|sparse}
///   dense:  n^(m-1) lines, one column of n reals per line
///   sparse: one line with the nonzero count, then "row col value" lines,
///           1-based indices
/// Lines starting with '#' are comments and may appear anywhere.
FlattenedTensor load_tensor(const std::filesystem::path& path,
                            bool repair = false);

void save_tensor(const std::filesystem::path& path, const FlattenedTensor& t,
                 const std::vector<std::string>& header_comments = {});

/// Whitespace-separated "src dst" pairs, 1-based; '#' or '%' start comments.
/// A "# nodes N" comment fixes the node count (ids beyond it are an error);
/// otherwise n is the largest id seen.
DirectedGraph load_edgelist(const std::filesystem::path& path);

/// Ordered 3-cycle indicator: entry (i | j,k) = 1 when the edges i->j, j->k
/// and k->i all exist and i, j, k are pairwise distinct. Returned raw
/// (unnormalized), as unfolding triplets.
std::vector<Triplet> build_cycle_tensor(const DirectedGraph& g);

/// Row-normalized adjacency matrix; all-zero rows (dangling nodes) stay zero.
Matrix build_first_order(const DirectedGraph& g);

/// dang(B) = e^T - e^T B: per-column mass missing from column stochasticity.
Eigen::RowVectorXd dangling_row(const Matrix& B);

/// Blend of the normalized 3-cycle tensor and the first-order chain
///   R = gamma * (Q + v dang(Q)) + (1 - gamma) * kron(e^T, Pc),
/// with Pc = P^T + v dang(P^T). Dense assembly: supported for n <= 600
/// (n^3 doubles).
FlattenedTensor assemble_real_world(const std::vector<Triplet>& cycle_counts,
                                    const Matrix& P, const Vector& v,
                                    double gamma);

}  // namespace mlpr
