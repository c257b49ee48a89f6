#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "edgecons/closed_loop.hpp"
#include "edgecons/simulate.hpp"

namespace edgecons {

struct ReducedModelCheck {
  double max_residual = 0.0;       ///< over evaluated (unmasked) samples, max-norm
  std::vector<std::size_t> evaluated;
  std::vector<std::size_t> masked;  ///< samples where a quantized edge output may switch
};

/// Right side of the spanning-tree model
///   ż_T = 𝓕_T + (𝓛_T⊗I) z_T + (𝓛_T1⊗I) ω
/// at sample s, with ω the stacked quantization errors over all edges.
Vector reduced_rhs(const ClosedLoop& loop, const Trajectory& traj, std::size_t sample);

/// Compares reduced_rhs against a centered difference of z_T at each
/// requested interior sample. Samples where a quantized edge output may
/// switch between the neighbouring samples are masked. Throws
/// InsufficientSamples for fewer than 3 samples or a non-interior index.
ReducedModelCheck reduced_rhs_check(const ClosedLoop& loop, const Trajectory& traj,
                                    std::span<const std::size_t> samples);

/// Left-multiplying the closed loop by (E_Tᵀ⊗I) must give the tree rows of
/// the reduced model: (L̂_O⊗I)(x_e + ω_x) = (L̂_e⊗I)x_T + (L̂_O⊗I)ω_x. Returns
/// the worst max-norm mismatch over all samples (positions and velocities).
double tree_projection_residual(const ClosedLoop& loop, const Trajectory& traj);

}  // namespace edgecons
