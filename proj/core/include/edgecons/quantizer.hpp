#pragma once

#include <string_view>

#include "edgecons/linalg.hpp"

namespace edgecons {

enum class QuantizerFamily { None, Uniform, Logarithmic };

std::string_view to_string(QuantizerFamily family);

/// Largest log-domain interval accepted for the logarithmic family; above it
/// the concrete quantizer can exceed the 1 - e^{-δ_u} relative error bound.
inline constexpr double kMaxLogInterval = 0.9;

class QuantizerSpec {
 public:
  static QuantizerSpec none() { return QuantizerSpec(); }
  static QuantizerSpec uniform(double delta_u);
  static QuantizerSpec logarithmic(double delta_u);

  QuantizerFamily family() const noexcept { return family_; }
  /// δ_u: lattice spacing (log-domain spacing for the logarithmic family).
  double interval() const noexcept { return interval_; }
  /// δ_l = 1 - e^{-δ_u} for the logarithmic family, 0 otherwise.
  double relative_bound() const noexcept { return relative_; }

 private:
  QuantizerSpec() = default;

  QuantizerFamily family_ = QuantizerFamily::None;
  double interval_ = 0.0;
  double relative_ = 0.0;
};

/// δ_u (⌊x/δ_u⌋ + 1/2).
double quantize_uniform(double x, double delta_u);

/// Odd map: e^{q_u(ln x)} for x > 0, 0 at 0, -e^{q_u(ln(-x))} for x < 0.
double quantize_log(double x, double delta_u);

double quantize(double x, const QuantizerSpec& spec);

/// Componentwise quantization.
Vector quantize(const Vector& v, const QuantizerSpec& spec);

/// Certified ‖Q(v) - v‖₂ bound: √dim·δ_u (uniform), δ_l‖v‖₂ (logarithmic), 0 (none).
double error_bound(const Vector& v, const QuantizerSpec& spec);

}  // namespace edgecons
