#include "edgecons/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace edgecons {

InitialState seeded_uniform_init(std::size_t num_agents, std::size_t state_dim, double lower,
                                 double upper, std::uint64_t seed) {
  if (!(upper >= lower)) throw Error(ErrorCode::InvalidArgument, "init bounds are inverted");
  const auto size = static_cast<Eigen::Index>(num_agents * state_dim);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(lower, upper);
  InitialState init{Vector(size), Vector(size)};
  for (Eigen::Index i = 0; i < size; ++i) init.positions(i) = coord(rng);
  for (Eigen::Index i = 0; i < size; ++i) init.velocities(i) = coord(rng);
  return init;
}

namespace {

void record(const ClosedLoop& loop, Trajectory& traj, std::size_t step, const Vector& state) {
  const Eigen::Index half = state.size() / 2;
  const Eigen::Index col = static_cast<Eigen::Index>(traj.times.size());
  const Eigen::Index tree_rows = traj.tree_positions.rows();

  traj.steps.push_back(step);
  traj.times.push_back(static_cast<double>(step) * traj.dt);
  traj.positions.col(col) = state.head(half);
  traj.velocities.col(col) = state.tail(half);

  Vector edge;
  loop.edge_states(state.head(half), edge);
  traj.edge_positions.col(col) = edge;
  traj.tree_positions.col(col) = edge.head(tree_rows);
  loop.edge_states(state.tail(half), edge);
  traj.edge_velocities.col(col) = edge;
  traj.tree_velocities.col(col) = edge.head(tree_rows);

  traj.tree_norm(col) = std::sqrt(traj.tree_positions.col(col).squaredNorm() +
                                  traj.tree_velocities.col(col).squaredNorm());
}

}  // namespace

Trajectory simulate(const ClosedLoop& loop, const InitialState& init,
                    const SimulationControls& controls) {
  if (!(controls.dt > 0.0) || !(controls.horizon >= controls.dt) || controls.sample_every == 0) {
    throw Error(ErrorCode::InvalidArgument, "need dt > 0, horizon >= dt and sample_every >= 1");
  }
  const Eigen::Index half = loop.state_size() / 2;
  if (init.positions.size() != half || init.velocities.size() != half) {
    throw Error(ErrorCode::DimensionMismatch, "initial state must have length N*n per block");
  }

  const auto total_steps =
      static_cast<std::size_t>(std::ceil(controls.horizon / controls.dt - 1e-9));
  const std::size_t num_samples =
      total_steps / controls.sample_every + 1 + (total_steps % controls.sample_every != 0 ? 1 : 0);

  const auto n = static_cast<Eigen::Index>(loop.state_dim());
  const auto l = static_cast<Eigen::Index>(loop.num_edges());
  const auto tree = static_cast<Eigen::Index>(loop.num_agents() - 1);
  const auto s = static_cast<Eigen::Index>(num_samples);

  Trajectory traj;
  traj.num_agents = loop.num_agents();
  traj.state_dim = loop.state_dim();
  traj.dt = controls.dt;
  traj.steps.reserve(num_samples);
  traj.times.reserve(num_samples);
  traj.positions.resize(half, s);
  traj.velocities.resize(half, s);
  traj.edge_positions.resize(l * n, s);
  traj.edge_velocities.resize(l * n, s);
  traj.tree_positions.resize(tree * n, s);
  traj.tree_velocities.resize(tree * n, s);
  traj.tree_norm.resize(s);

  Vector state(2 * half);
  state << init.positions, init.velocities;
  if (!state.allFinite()) throw Error(ErrorCode::NonFiniteState, "initial state is not finite");

  ClosedLoop::Workspace ws;
  Vector k1, k2, k3, k4, stage(state.size());
  const double dt = controls.dt;
  record(loop, traj, 0, state);
  for (std::size_t step = 1; step <= total_steps; ++step) {
    const double t = static_cast<double>(step - 1) * dt;
    loop.derivative(t, state, k1, ws);
    stage = state + 0.5 * dt * k1;
    loop.derivative(t + 0.5 * dt, stage, k2, ws);
    stage = state + 0.5 * dt * k2;
    loop.derivative(t + 0.5 * dt, stage, k3, ws);
    stage = state + dt * k3;
    loop.derivative(t + dt, stage, k4, ws);
    state += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    if (!state.allFinite()) {
      std::ostringstream msg;
      msg << "state became non-finite at t = " << static_cast<double>(step) * dt << " s";
      throw Error(ErrorCode::NonFiniteState, msg.str());
    }
    if (step % controls.sample_every == 0 || step == total_steps) record(loop, traj, step, state);
  }
  return traj;
}

double tree_state_norm(const ClosedLoop& loop, const Vector& positions, const Vector& velocities) {
  const auto tree_rows = static_cast<Eigen::Index>((loop.num_agents() - 1) * loop.state_dim());
  Vector edge;
  loop.edge_states(positions, edge);
  double sq = edge.head(tree_rows).squaredNorm();
  loop.edge_states(velocities, edge);
  sq += edge.head(tree_rows).squaredNorm();
  return std::sqrt(sq);
}

double linear_identity_residual(const EdgeDecomposition& d, const Trajectory& traj) {
  const auto n = static_cast<Eigen::Index>(traj.state_dim);
  const Matrix et = kron_identity(d.incidence.transpose(), n);
  const Matrix rt = kron_identity(d.cut_basis.transpose(), n);
  return std::max({max_abs(traj.edge_positions - et * traj.positions),
                   max_abs(traj.edge_velocities - et * traj.velocities),
                   max_abs(traj.edge_positions - rt * traj.tree_positions),
                   max_abs(traj.edge_velocities - rt * traj.tree_velocities)});
}

double steady_state_error(const Trajectory& traj, double tail_fraction) {
  if (traj.samples() == 0) throw Error(ErrorCode::InsufficientSamples, "empty trajectory");
  const double cutoff = (1.0 - tail_fraction) * traj.times.back();
  double worst = 0.0;
  for (std::size_t s = 0; s < traj.samples(); ++s) {
    if (traj.times[s] >= cutoff) worst = std::max(worst, traj.tree_norm(static_cast<Eigen::Index>(s)));
  }
  return worst;
}

}  // namespace edgecons
