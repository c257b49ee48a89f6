#include "edgecons/drift.hpp"

#include <cmath>
#include <utility>

#include "edgecons/errors.hpp"

namespace edgecons {

Eigen::Vector3d chua_drift(const Eigen::Vector3d& v, const ChuaParams& p) {
  const double v1 = v(0);
  const double nonlinearity = p.b * v1 + 0.5 * (p.a - p.b) * (std::abs(v1 + 1.0) - std::abs(v1 - 1.0));
  return {p.zeta * (-v1 + v(1) - nonlinearity),
          p.tau * (v1 - v(1) + v(2)),
          -p.chi * v(1)};
}

Drift Drift::chua(const ChuaParams& p) {
  Drift d(Kind::Chua);
  d.chua_ = p;
  return d;
}

Drift Drift::custom(DriftFunction fn) {
  if (!fn) throw Error(ErrorCode::InvalidArgument, "custom drift must be callable");
  Drift d(Kind::Custom);
  d.fn_ = std::move(fn);
  return d;
}

void Drift::evaluate(AgentVector x, AgentVector v, double t, AgentOutput out) const {
  switch (kind_) {
    case Kind::Zero:
      out.setZero();
      return;
    case Kind::Chua:
      if (v.size() != 3) {
        throw Error(ErrorCode::DimensionMismatch, "Chua drift needs state dimension 3");
      }
      out = chua_drift(Eigen::Vector3d(v), chua_);
      return;
    case Kind::Custom:
      fn_(x, v, t, out);
      return;
  }
}

std::string_view to_string(Drift::Kind kind) {
  switch (kind) {
    case Drift::Kind::Zero: return "zero";
    case Drift::Kind::Chua: return "chua";
    case Drift::Kind::Custom: return "custom";
  }
  return "unknown";
}

}  // namespace edgecons
