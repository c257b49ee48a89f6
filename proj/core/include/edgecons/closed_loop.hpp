#pragma once

#include <cstddef>

#include "edgecons/certificate.hpp"
#include "edgecons/drift.hpp"
#include "edgecons/edge_decomposition.hpp"
#include "edgecons/quantizer.hpp"

namespace edgecons {

/// Closed loop ẋ = v, v̇ = F(x, v, t) + u with the quantized second-order
/// protocol u = -σ²(E_⊙^w⊗I)Q((Eᵀ⊗I)x) - σ³(E_⊙^w⊗I)Q((Eᵀ⊗I)v).
///
/// Stacked vectors place agent i at [i n, (i+1) n). Edge vectors follow the
/// decomposition's internal (tree-first) edge order.
class ClosedLoop {
 public:
  /// Scratch buffers reused across right-hand-side evaluations.
  struct Workspace {
    Vector pos, vel, input, edge_x, edge_v, quant_x, quant_v, drift;
  };

  ClosedLoop(EdgeDecomposition d, GainParams gains, QuantizerSpec quantizer, Drift drift,
             std::size_t state_dim);

  const EdgeDecomposition& decomposition() const noexcept { return d_; }
  const GainParams& gains() const noexcept { return gains_; }
  const QuantizerSpec& quantizer() const noexcept { return quantizer_; }
  const Drift& drift() const noexcept { return drift_; }
  std::size_t state_dim() const noexcept { return n_; }
  std::size_t num_agents() const noexcept { return d_.num_nodes; }
  std::size_t num_edges() const noexcept { return d_.num_edges(); }
  /// Length of the stacked [x; v] state.
  Eigen::Index state_size() const noexcept;

  /// (Eᵀ⊗I_n) x: edge k holds x_tail - x_head.
  void edge_states(const Vector& x, Vector& out) const;
  /// Stacked per-agent drift F(x, v, t).
  void stacked_drift(const Vector& x, const Vector& v, double t, Vector& out) const;
  /// Protocol input for stacked positions x and velocities v.
  void control_input(const Vector& x, const Vector& v, Vector& u, Workspace& ws) const;
  /// d/dt [x; v].
  void derivative(double t, const Vector& state, Vector& out, Workspace& ws) const;

 private:
  EdgeDecomposition d_;
  GainParams gains_;
  QuantizerSpec quantizer_;
  Drift drift_;
  std::size_t n_;
};

/// Convenience wrapper; throws Error(DimensionMismatch) on inconsistent sizes.
Vector control_input(const EdgeDecomposition& d, const GainParams& gains,
                     const QuantizerSpec& quantizer, const Vector& x, const Vector& v,
                     std::size_t state_dim);

}  // namespace edgecons
