#include "edgecons/closed_loop.hpp"

#include <string>
#include <utility>

namespace edgecons {

ClosedLoop::ClosedLoop(EdgeDecomposition d, GainParams gains, QuantizerSpec quantizer, Drift drift,
                       std::size_t state_dim)
    : d_(std::move(d)),
      gains_(gains),
      quantizer_(quantizer),
      drift_(std::move(drift)),
      n_(state_dim) {
  if (n_ == 0) throw Error(ErrorCode::InvalidArgument, "state dimension must be positive");
  if (drift_.kind() == Drift::Kind::Chua && n_ != 3) {
    throw Error(ErrorCode::DimensionMismatch, "Chua drift needs state dimension 3");
  }
}

Eigen::Index ClosedLoop::state_size() const noexcept {
  return static_cast<Eigen::Index>(2 * num_agents() * n_);
}

void ClosedLoop::edge_states(const Vector& x, Vector& out) const {
  const auto n = static_cast<Eigen::Index>(n_);
  out.resize(static_cast<Eigen::Index>(num_edges()) * n);
  for (std::size_t k = 0; k < num_edges(); ++k) {
    const Edge& e = d_.edges[k];
    out.segment(static_cast<Eigen::Index>(k) * n, n) =
        x.segment(static_cast<Eigen::Index>(e.tail) * n, n) -
        x.segment(static_cast<Eigen::Index>(e.head) * n, n);
  }
}

void ClosedLoop::stacked_drift(const Vector& x, const Vector& v, double t, Vector& out) const {
  const auto n = static_cast<Eigen::Index>(n_);
  out.resize(x.size());
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(num_agents()); ++i) {
    drift_.evaluate(x.segment(i * n, n), v.segment(i * n, n), t, out.segment(i * n, n));
  }
}

void ClosedLoop::control_input(const Vector& x, const Vector& v, Vector& u, Workspace& ws) const {
  const auto n = static_cast<Eigen::Index>(n_);
  edge_states(x, ws.edge_x);
  edge_states(v, ws.edge_v);
  ws.quant_x.resize(ws.edge_x.size());
  ws.quant_v.resize(ws.edge_v.size());
  for (Eigen::Index i = 0; i < ws.edge_x.size(); ++i) {
    ws.quant_x(i) = quantize(ws.edge_x(i), quantizer_);
    ws.quant_v(i) = quantize(ws.edge_v(i), quantizer_);
  }

  // Column k of E_⊙^w has a single entry -w_k at the head node.
  u.setZero(x.size());
  const double alpha = gains_.alpha();
  const double beta = gains_.beta();
  for (std::size_t k = 0; k < num_edges(); ++k) {
    const Edge& e = d_.edges[k];
    const auto seg = static_cast<Eigen::Index>(k) * n;
    u.segment(static_cast<Eigen::Index>(e.head) * n, n) +=
        e.weight * (alpha * ws.quant_x.segment(seg, n) + beta * ws.quant_v.segment(seg, n));
  }
}

void ClosedLoop::derivative(double t, const Vector& state, Vector& out, Workspace& ws) const {
  const Eigen::Index half = state.size() / 2;
  ws.pos = state.head(half);
  ws.vel = state.tail(half);
  out.resize(state.size());
  out.head(half) = ws.vel;

  control_input(ws.pos, ws.vel, ws.input, ws);
  stacked_drift(ws.pos, ws.vel, t, ws.drift);
  out.tail(half) = ws.drift + ws.input;
}

Vector control_input(const EdgeDecomposition& d, const GainParams& gains,
                     const QuantizerSpec& quantizer, const Vector& x, const Vector& v,
                     std::size_t state_dim) {
  const auto expected = static_cast<Eigen::Index>(d.num_nodes * state_dim);
  if (x.size() != expected || v.size() != expected) {
    throw Error(ErrorCode::DimensionMismatch,
                "stacked states must have length N*n = " + std::to_string(expected));
  }
  const ClosedLoop loop(d, gains, quantizer, Drift::zero(), state_dim);
  ClosedLoop::Workspace ws;
  Vector u;
  loop.control_input(x, v, u, ws);
  return u;
}

}  // namespace edgecons
