#pragma once

#include <cstddef>
#include <cstdint>

#include "edgecons/certificate.hpp"
#include "edgecons/drift.hpp"

namespace edgecons {

/// Axis-aligned cube [lower, upper]^dim sampled for both x and v.
struct SampleBox {
  std::size_t dim = 3;
  double lower = -5.0;
  double upper = 5.0;
};

/// Sampled lower bound on admissible (ξ1, ξ2): the largest observed
/// |f(x,v) - f(y,v)| / |x - y| and |f(x,v) - f(x,z)| / |v - z| over
/// `samples` random pairs (half of them local perturbations). Deterministic
/// for a given seed.
LipschitzBounds estimate_lipschitz(const Drift& f, const SampleBox& box, std::size_t samples,
                                   std::uint64_t seed, double t = 0.0);

}  // namespace edgecons
