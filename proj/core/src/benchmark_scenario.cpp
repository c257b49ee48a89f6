#include "edgecons/benchmark_scenario.hpp"

#include <cmath>
#include <cstdio>

namespace edgecons {

Digraph benchmark_graph() {
  return Digraph(5, {{0, 1, 0.12}, {1, 2, 0.24}, {2, 3, 0.44}, {2, 4, 0.43}, {4, 0, 0.09}});
}

ScenarioConfig benchmark_scenario(const QuantizerSpec& quantizer) {
  ScenarioConfig cfg("<benchmark>", benchmark_graph());
  cfg.state_dim = 3;
  cfg.sigma = 1.64;
  cfg.lipschitz = LipschitzBounds(0.0, 4.3871e-3);
  cfg.quantizer = quantizer;
  cfg.drift = Drift::chua();
  cfg.init = SeededUniformInit{-2.0, 2.0, 1};
  cfg.controls = SimulationControls{300.0, 1e-3, 100};
  return cfg;
}

const Matrix& published_essential_laplacian() {
  static const Matrix m = [] {
    Matrix out(4, 4);
    out << 0.21, 0.09, 0.00, 0.09,
          -0.12, 0.24, 0.00, 0.00,
           0.00, -0.24, 0.44, 0.00,
           0.00, -0.24, 0.00, 0.43;
    return out;
  }();
  return m;
}

const Matrix& published_tree_in_product() {
  static const Matrix m = [] {
    Matrix out(4, 5);
    out << 0.12, 0.00, 0.00, 0.00, -0.09,
          -0.12, 0.24, 0.00, 0.00, 0.00,
           0.00, -0.24, 0.44, 0.00, -0.00,
           0.00, -0.24, 0.00, 0.43, 0.00;
    return out;
  }();
  return m;
}

MatrixComparison compare_matrices(const Matrix& computed, const Matrix& printed, double tol) {
  MatrixComparison out;
  if (computed.rows() != printed.rows() || computed.cols() != printed.cols()) {
    out.total = static_cast<std::size_t>(printed.size());
    out.worst = INFINITY;
    out.lines.emplace_back("shape mismatch");
    return out;
  }
  for (Eigen::Index i = 0; i < printed.rows(); ++i) {
    for (Eigen::Index j = 0; j < printed.cols(); ++j) {
      const double diff = std::abs(computed(i, j) - printed(i, j));
      const bool ok = diff <= tol;
      out.worst = std::max(out.worst, diff);
      out.matched += ok ? 1 : 0;
      ++out.total;
      char buf[96];
      std::snprintf(buf, sizeof buf, "(%ld,%ld) %+.4f %+.2f %s", static_cast<long>(i + 1),
                    static_cast<long>(j + 1), computed(i, j), printed(i, j), ok ? "PASS" : "FAIL");
      out.lines.emplace_back(buf);
    }
  }
  return out;
}

}  // namespace edgecons
