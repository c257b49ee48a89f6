#pragma once

#include <functional>
#include <string_view>

#include <Eigen/Dense>

namespace edgecons {

/// Chua-circuit drift parameters; defaults are the chaotic set.
struct ChuaParams {
  double zeta = 0.01;
  double tau = 0.001;
  double chi = 0.018;
  double a = -4.0 / 3.0;
  double b = -3.0 / 4.0;
};

/// (ζ(-v₁ + v₂ - l(v₁)), τ(v₁ - v₂ + v₃), -χ v₂) with the piecewise-linear
/// l(v₁) = b v₁ + ½(a - b)(|v₁ + 1| - |v₁ - 1|).
Eigen::Vector3d chua_drift(const Eigen::Vector3d& v, const ChuaParams& p = {});

using AgentVector = Eigen::Ref<const Eigen::VectorXd>;
using AgentOutput = Eigen::Ref<Eigen::VectorXd>;
using DriftFunction = std::function<void(AgentVector x, AgentVector v, double t, AgentOutput out)>;

/// Per-agent drift f(x_i, v_i, t), identical for every agent.
class Drift {
 public:
  enum class Kind { Zero, Chua, Custom };

  static Drift zero() { return Drift(Kind::Zero); }
  static Drift chua(const ChuaParams& p = {});
  static Drift custom(DriftFunction fn);

  Kind kind() const noexcept { return kind_; }
  const ChuaParams& chua_params() const noexcept { return chua_; }

  /// Writes f(x, v, t) into out. Chua requires dimension 3.
  void evaluate(AgentVector x, AgentVector v, double t, AgentOutput out) const;

 private:
  explicit Drift(Kind kind) : kind_(kind) {}

  Kind kind_;
  ChuaParams chua_;
  DriftFunction fn_;
};

std::string_view to_string(Drift::Kind kind);

}  // namespace edgecons
