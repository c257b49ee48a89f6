#pragma once

#include <cstddef>
#include <optional>

#include "edgecons/edge_decomposition.hpp"
#include "edgecons/errors.hpp"
#include "edgecons/linalg.hpp"

namespace edgecons {

/// Lipschitz constants of the drift: |f(x,v,t) - f(y,z,t)| ≤ ξ1|x-y| + ξ2|v-z|.
struct LipschitzBounds {
  double position = 0.0;  ///< ξ1
  double velocity = 0.0;  ///< ξ2

  LipschitzBounds() = default;
  LipschitzBounds(double xi1, double xi2);

  double max() const noexcept { return position > velocity ? position : velocity; }
};

/// Coupling gains α = σ², β = σ³ derived from a single σ > 0.
/// Certificate feasibility additionally needs σ above a threshold that is
/// always > 1.
class GainParams {
 public:
  explicit GainParams(double sigma);

  double sigma() const noexcept { return sigma_; }
  double alpha() const noexcept { return sigma_ * sigma_; }
  double beta() const noexcept { return sigma_ * sigma_ * sigma_; }

 private:
  double sigma_;
};

struct StabilityCertificate {
  double sigma = 0.0;
  LipschitzBounds lipschitz;
  std::size_t state_dim = 0;
  std::size_t num_edges = 0;

  Matrix lyapunov;          ///< H, solves H L̂_e + L̂_eᵀ H = I
  Matrix block_p;           ///< P = [[σH, H], [H, σH]]
  Matrix block_q;           ///< Q = -(P 𝓛_T + 𝓛_Tᵀ P)
  Matrix tree_dynamics;     ///< 𝓛_T
  Matrix error_injection;   ///< 𝓛_T1

  double lambda_max_h = 0.0;
  double lambda_min_q = 0.0;
  double lambda_min_p = 0.0;
  double lambda_max_p = 0.0;
  double sigma_min = 0.0;
  double norm_p = 0.0;
  double norm_p_injection = 0.0;  ///< ‖P 𝓛_T1‖
  double norm_cut_transpose = 0.0;  ///< ‖Rᵀ‖
  double margin = 0.0;  ///< λ_min(Q) - 2 max(ξ1, ξ2)‖P‖
  double delta_l_max = 0.0;

  // Algebraic self-checks.
  double lyapunov_residual = 0.0;
  double q_block_residual = 0.0;     ///< Q vs closed-form block expression
  double schur_residual = 0.0;       ///< Q₃ - Q₂ᵀQ₁⁻¹Q₂ vs H(2(σ²-1)I - H)
  bool q_positive_by_eigen = false;
  bool q_positive_by_schur = false;

  /// Set when both ξ1 and ξ2 are nonzero: the drift bound max(ξ1,ξ2)|z_T|
  /// is then not implied by the Lipschitz assumption without a √2 factor.
  bool drift_bound_caveat = false;

  bool feasible = false;
  std::optional<ErrorCode> infeasibility;  ///< InfeasibleGain or InfeasibleMargin

  /// Agreement radius under a uniform quantizer of interval δ_u.
  double radius(double delta_u) const;
  /// Decay constant π(δ_l) = margin - 2 δ_l ‖P𝓛_T1‖ ‖Rᵀ‖.
  double decay_constant(double delta_l) const;
  /// Throws the recorded infeasibility, if any.
  void require_feasible() const;
};

/// Builds the certificate. The returned object always carries every
/// computed quantity; `feasible` / `infeasibility` report whether the gain
/// and margin conditions hold.
StabilityCertificate build_certificate(const EdgeDecomposition& d, const GainParams& gains,
                                       const LipschitzBounds& lip, std::size_t state_dim);

/// √(λ_max(P)/λ_min(P)) e^{-π t / (2λ_max(P))} |z_T(0)|.
/// Throws InfeasibleGain/InfeasibleMargin for infeasible certificates and
/// InfeasibleDelta when δ_l ≥ delta_l_max.
double envelope(const StabilityCertificate& cert, double delta_l, double z0_norm, double t);

/// Comparison variant with prefactor λ_max(P)/λ_min(P) and rate π/λ_max(P).
double printed_envelope(const StabilityCertificate& cert, double delta_l, double z0_norm, double t);

/// Smallest T with envelope(T) ≤ r. Throws RadiusTooLarge when r exceeds
/// envelope(0).
double convergence_time(const StabilityCertificate& cert, double delta_l, double z0_norm, double r);

}  // namespace edgecons
