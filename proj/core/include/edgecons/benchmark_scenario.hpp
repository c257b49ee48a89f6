#pragma once

#include <string>
#include <vector>

#include "edgecons/config.hpp"

namespace edgecons {

/// Five-agent benchmark: 1→2 (0.12), 2→3 (0.24), 3→4 (0.44), 3→5 (0.43),
/// 5→1 (0.09). The first four edges form the BFS spanning tree from node 1.
Digraph benchmark_graph();

/// σ = 1.64, ξ = (0, 4.3871e-3), n = 3, Chua drift, seeded U[-2, 2] init,
/// 300 s horizon at dt = 1e-3, sampled every 0.1 s.
ScenarioConfig benchmark_scenario(const QuantizerSpec& quantizer);

/// Published two-decimal values of L̂_e and L̂_O for the benchmark graph.
const Matrix& published_essential_laplacian();
const Matrix& published_tree_in_product();

/// Published certificate scalars at σ = 1.64.
inline constexpr double kPublishedDeltaLMax = 0.0301;
inline constexpr double kPublishedDecayConstant = 0.5387;  ///< at δ_l = 0.01
inline constexpr double kPublishedDeltaL = 0.01;

struct MatrixComparison {
  std::size_t matched = 0;
  std::size_t total = 0;
  double worst = 0.0;
  std::vector<std::string> lines;  ///< one "(i,j) computed printed PASS|FAIL" per entry

  bool all_match() const noexcept { return matched == total; }
};

/// Entrywise |computed - printed| ≤ tol.
MatrixComparison compare_matrices(const Matrix& computed, const Matrix& printed, double tol = 0.005);

}  // namespace edgecons
