#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "edgecons/closed_loop.hpp"

namespace edgecons {

struct SimulationControls {
  double horizon = 300.0;        ///< seconds
  double dt = 1e-3;              ///< RK4 step, seconds
  std::size_t sample_every = 100;  ///< record every k-th step (the final step is always kept)
};

struct InitialState {
  Vector positions;   ///< stacked x, length N n
  Vector velocities;  ///< stacked v, length N n
};

/// Every coordinate of x_i and v_i drawn from U[lower, upper] with a
/// seeded mt19937_64; deterministic for a given seed.
InitialState seeded_uniform_init(std::size_t num_agents, std::size_t state_dim, double lower,
                                 double upper, std::uint64_t seed);

/// Sampled closed-loop trajectory. Column s of each matrix is sample s.
/// Edge blocks follow the internal tree-first edge order, so the tree
/// states are the leading (N-1) n rows of the edge states.
struct Trajectory {
  std::size_t num_agents = 0;
  std::size_t state_dim = 0;
  double dt = 0.0;
  std::vector<std::size_t> steps;  ///< integrator step index of each sample
  std::vector<double> times;

  Matrix positions;        ///< x, (N n) x S
  Matrix velocities;       ///< v
  Matrix edge_positions;   ///< x_e = (Eᵀ⊗I) x, (L n) x S
  Matrix edge_velocities;  ///< v_e
  Matrix tree_positions;   ///< x_T = (E_Tᵀ⊗I) x, ((N-1) n) x S
  Matrix tree_velocities;  ///< v_T
  Vector tree_norm;        ///< |z_T| = |[x_T; v_T]|

  std::size_t samples() const noexcept { return times.size(); }
};

/// Fixed-step classical RK4 integration of the closed loop; the quantizer is
/// evaluated inside every stage. Throws Error(NonFiniteState) with the time
/// of blow-up if the state stops being finite.
Trajectory simulate(const ClosedLoop& loop, const InitialState& init,
                    const SimulationControls& controls);

/// |z_T| for a single stacked state.
double tree_state_norm(const ClosedLoop& loop, const Vector& positions, const Vector& velocities);

/// Largest entrywise deviation, over all samples, of x_e from (Eᵀ⊗I)x and
/// from (Rᵀ⊗I)x_T, and likewise for v.
double linear_identity_residual(const EdgeDecomposition& d, const Trajectory& traj);

/// Max of |z_T| over samples with t ≥ (1 - tail_fraction) · t_final.
double steady_state_error(const Trajectory& traj, double tail_fraction = 0.1);

}  // namespace edgecons
