#include "edgecons/lipschitz.hpp"

#include <algorithm>
#include <random>

#include "edgecons/errors.hpp"

namespace edgecons {

LipschitzBounds estimate_lipschitz(const Drift& f, const SampleBox& box, std::size_t samples,
                                   std::uint64_t seed, double t) {
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 samples");
  if (box.dim == 0 || !(box.upper > box.lower)) {
    throw Error(ErrorCode::InvalidArgument, "sample box must be nonempty");
  }
  const auto n = static_cast<Eigen::Index>(box.dim);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(box.lower, box.upper);
  const double local_scale = 1e-3 * (box.upper - box.lower);
  std::uniform_real_distribution<double> nudge(-local_scale, local_scale);

  auto draw = [&] {
    Vector p(n);
    for (Eigen::Index i = 0; i < n; ++i) p(i) = coord(rng);
    return p;
  };
  auto partner = [&](const Vector& p, bool local) {
    if (!local) return draw();
    Vector q = p;
    for (Eigen::Index i = 0; i < n; ++i) q(i) += nudge(rng);
    return q;
  };

  Vector base(n), moved(n);
  double xi1 = 0.0, xi2 = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const bool local = (s % 2) == 1;
    const Vector x = draw();
    const Vector v = draw();
    f.evaluate(x, v, t, base);

    const Vector y = partner(x, local);
    if (const double dx = (x - y).norm(); dx > 0.0) {
      f.evaluate(y, v, t, moved);
      xi1 = std::max(xi1, (base - moved).norm() / dx);
    }
    const Vector z = partner(v, local);
    if (const double dv = (v - z).norm(); dv > 0.0) {
      f.evaluate(x, z, t, moved);
      xi2 = std::max(xi2, (base - moved).norm() / dv);
    }
  }
  return LipschitzBounds(xi1, xi2);
}

}  // namespace edgecons
