#include "edgecons/reduced_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace edgecons {

namespace {

struct ReducedOperators {
  Matrix tree_dynamics;    // 𝓛_T ⊗ I
  Matrix error_injection;  // 𝓛_T1 ⊗ I
  Matrix tree_transpose;   // E_Tᵀ ⊗ I
};

ReducedOperators reduced_operators(const ClosedLoop& loop) {
  const EdgeDecomposition& d = loop.decomposition();
  const auto m = static_cast<Eigen::Index>(d.tree_size());
  const auto l = static_cast<Eigen::Index>(d.num_edges());
  const double s2 = loop.gains().alpha();
  const double s3 = loop.gains().beta();

  Matrix lt = Matrix::Zero(2 * m, 2 * m);
  lt.topRightCorner(m, m).setIdentity();
  lt.bottomLeftCorner(m, m) = -s2 * d.essential_laplacian;
  lt.bottomRightCorner(m, m) = -s3 * d.essential_laplacian;

  Matrix lt1 = Matrix::Zero(2 * m, 2 * l);
  lt1.bottomLeftCorner(m, l) = -s2 * d.tree_in_product;
  lt1.bottomRightCorner(m, l) = -s3 * d.tree_in_product;

  const auto n = static_cast<Eigen::Index>(loop.state_dim());
  return {kron_identity(lt, n), kron_identity(lt1, n),
          kron_identity(d.tree_incidence.transpose(), n)};
}

Vector tree_state(const Trajectory& traj, std::size_t sample) {
  const auto s = static_cast<Eigen::Index>(sample);
  Vector z(traj.tree_positions.rows() * 2);
  z << traj.tree_positions.col(s), traj.tree_velocities.col(s);
  return z;
}

Vector quantized_edges(const Trajectory& traj, std::size_t sample, const QuantizerSpec& q) {
  const auto s = static_cast<Eigen::Index>(sample);
  Vector out(traj.edge_positions.rows() * 2);
  out << quantize(Vector(traj.edge_positions.col(s)), q), quantize(Vector(traj.edge_velocities.col(s)), q);
  return out;
}

Vector edge_column(const Trajectory& traj, std::size_t sample) {
  const auto s = static_cast<Eigen::Index>(sample);
  Vector out(traj.edge_positions.rows() * 2);
  out << traj.edge_positions.col(s), traj.edge_velocities.col(s);
  return out;
}

// Both quantizers are monotone, so an edge output is constant on an interval
// iff it agrees at the endpoints. The RK4 stages between samples stray from
// the sampled states by roughly one step's change, hence the widening.
bool may_switch(const Trajectory& traj, std::size_t s, const QuantizerSpec& q) {
  const Vector a = edge_column(traj, s - 1), b = edge_column(traj, s), c = edge_column(traj, s + 1);
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    const double guard = 2.0 * std::max(std::abs(b(i) - a(i)), std::abs(c(i) - b(i)));
    const double lo = std::min({a(i), b(i), c(i)}) - guard;
    const double hi = std::max({a(i), b(i), c(i)}) + guard;
    if (quantize(lo, q) != quantize(hi, q)) return true;
  }
  return false;
}

Vector rhs_with(const ClosedLoop& loop, const ReducedOperators& ops, const Trajectory& traj,
                std::size_t sample) {
  const auto s = static_cast<Eigen::Index>(sample);
  Vector edges(traj.edge_positions.rows() * 2);
  edges << traj.edge_positions.col(s), traj.edge_velocities.col(s);
  const Vector omega = quantized_edges(traj, sample, loop.quantizer()) - edges;

  Vector drift;
  loop.stacked_drift(traj.positions.col(s), traj.velocities.col(s), traj.times[sample], drift);
  const Eigen::Index half = ops.tree_transpose.rows();
  Vector forcing = Vector::Zero(2 * half);
  forcing.tail(half) = ops.tree_transpose * drift;

  return forcing + ops.tree_dynamics * tree_state(traj, sample) + ops.error_injection * omega;
}

}  // namespace

Vector reduced_rhs(const ClosedLoop& loop, const Trajectory& traj, std::size_t sample) {
  return rhs_with(loop, reduced_operators(loop), traj, sample);
}

ReducedModelCheck reduced_rhs_check(const ClosedLoop& loop, const Trajectory& traj,
                                    std::span<const std::size_t> samples) {
  if (traj.samples() < 3) {
    throw Error(ErrorCode::InsufficientSamples, "need at least 3 samples for a centered difference");
  }
  const ReducedOperators ops = reduced_operators(loop);
  ReducedModelCheck out;
  for (std::size_t s : samples) {
    if (s == 0 || s + 1 >= traj.samples()) {
      throw Error(ErrorCode::InsufficientSamples, "sample " + std::to_string(s) + " is not interior");
    }
    if (loop.quantizer().family() != QuantizerFamily::None && may_switch(traj, s, loop.quantizer())) {
      out.masked.push_back(s);
      continue;
    }
    const Vector fd = (tree_state(traj, s + 1) - tree_state(traj, s - 1)) /
                      (traj.times[s + 1] - traj.times[s - 1]);
    const double residual = (fd - rhs_with(loop, ops, traj, s)).cwiseAbs().maxCoeff();
    out.max_residual = std::max(out.max_residual, residual);
    out.evaluated.push_back(s);
  }
  return out;
}

double tree_projection_residual(const ClosedLoop& loop, const Trajectory& traj) {
  const EdgeDecomposition& d = loop.decomposition();
  const auto n = static_cast<Eigen::Index>(loop.state_dim());
  const Matrix lo = kron_identity(d.tree_in_product, n);
  const Matrix le = kron_identity(d.essential_laplacian, n);
  double worst = 0.0;
  for (std::size_t s = 0; s < traj.samples(); ++s) {
    const auto c = static_cast<Eigen::Index>(s);
    const Vector xe = traj.edge_positions.col(c);
    const Vector ve = traj.edge_velocities.col(c);
    const Vector wx = quantize(xe, loop.quantizer()) - xe;
    const Vector wv = quantize(ve, loop.quantizer()) - ve;
    worst = std::max(worst, max_abs(lo * (xe + wx) - (le * traj.tree_positions.col(c) + lo * wx)));
    worst = std::max(worst, max_abs(lo * (ve + wv) - (le * traj.tree_velocities.col(c) + lo * wv)));
  }
  return worst;
}

}  // namespace edgecons
