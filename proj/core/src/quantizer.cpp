#include "edgecons/quantizer.hpp"

#include <cmath>
#include <string>

#include "edgecons/errors.hpp"

namespace edgecons {

std::string_view to_string(QuantizerFamily family) {
  switch (family) {
    case QuantizerFamily::None: return "none";
    case QuantizerFamily::Uniform: return "uniform";
    case QuantizerFamily::Logarithmic: return "logarithmic";
  }
  return "unknown";
}

QuantizerSpec QuantizerSpec::uniform(double delta_u) {
  if (!(delta_u > 0.0) || !std::isfinite(delta_u)) {
    throw Error(ErrorCode::InvalidArgument, "uniform quantizer requires delta_u > 0");
  }
  QuantizerSpec s;
  s.family_ = QuantizerFamily::Uniform;
  s.interval_ = delta_u;
  return s;
}

QuantizerSpec QuantizerSpec::logarithmic(double delta_u) {
  if (!(delta_u > 0.0) || !(delta_u <= kMaxLogInterval)) {
    throw Error(ErrorCode::InvalidArgument,
                "logarithmic quantizer requires 0 < delta_u <= " + std::to_string(kMaxLogInterval));
  }
  QuantizerSpec s;
  s.family_ = QuantizerFamily::Logarithmic;
  s.interval_ = delta_u;
  s.relative_ = -std::expm1(-delta_u);
  return s;
}

double quantize_uniform(double x, double delta_u) {
  return delta_u * (std::floor(x / delta_u) + 0.5);
}

double quantize_log(double x, double delta_u) {
  if (x > 0.0) return std::exp(quantize_uniform(std::log(x), delta_u));
  if (x < 0.0) return -std::exp(quantize_uniform(std::log(-x), delta_u));
  return 0.0;
}

double quantize(double x, const QuantizerSpec& spec) {
  switch (spec.family()) {
    case QuantizerFamily::Uniform: return quantize_uniform(x, spec.interval());
    case QuantizerFamily::Logarithmic: return quantize_log(x, spec.interval());
    case QuantizerFamily::None: break;
  }
  return x;
}

Vector quantize(const Vector& v, const QuantizerSpec& spec) {
  if (spec.family() == QuantizerFamily::None) return v;
  return v.unaryExpr([&spec](double x) { return quantize(x, spec); });
}

double error_bound(const Vector& v, const QuantizerSpec& spec) {
  switch (spec.family()) {
    case QuantizerFamily::Uniform:
      return std::sqrt(static_cast<double>(v.size())) * spec.interval();
    case QuantizerFamily::Logarithmic:
      return spec.relative_bound() * v.norm();
    case QuantizerFamily::None: break;
  }
  return 0.0;
}

}  // namespace edgecons
