#include "edgecons/certificate.hpp"

#include <cmath>
#include <string>

#include "edgecons/lyapunov.hpp"

namespace edgecons {

LipschitzBounds::LipschitzBounds(double xi1, double xi2) : position(xi1), velocity(xi2) {
  if (!(xi1 >= 0.0) || !(xi2 >= 0.0) || !std::isfinite(xi1) || !std::isfinite(xi2)) {
    throw Error(ErrorCode::InvalidArgument, "Lipschitz constants must be finite and nonnegative");
  }
}

GainParams::GainParams(double sigma) : sigma_(sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::InvalidArgument, "sigma must be positive and finite");
  }
}

StabilityCertificate build_certificate(const EdgeDecomposition& d, const GainParams& gains,
                                       const LipschitzBounds& lip, std::size_t state_dim) {
  if (state_dim == 0) {
    throw Error(ErrorCode::InvalidArgument, "state dimension must be positive");
  }
  const Eigen::Index m = d.essential_laplacian.rows();
  const Eigen::Index l = static_cast<Eigen::Index>(d.num_edges());
  const double s = gains.sigma();
  const double s2 = s * s;
  const double s3 = s2 * s;
  const Matrix id = Matrix::Identity(m, m);

  StabilityCertificate c;
  c.sigma = s;
  c.lipschitz = lip;
  c.state_dim = state_dim;
  c.num_edges = d.num_edges();

  const Matrix& h = c.lyapunov = solve_lyapunov(d.essential_laplacian);
  c.lyapunov_residual = lyapunov_residual(h, d.essential_laplacian);
  c.lambda_max_h = symmetric_eigenvalues(h).maxCoeff();
  c.sigma_min = std::sqrt(c.lambda_max_h / 2.0 + 1.0);

  c.block_p.resize(2 * m, 2 * m);
  c.block_p << s * h, h, h, s * h;

  c.tree_dynamics = Matrix::Zero(2 * m, 2 * m);
  c.tree_dynamics.topRightCorner(m, m) = id;
  c.tree_dynamics.bottomLeftCorner(m, m) = -s2 * d.essential_laplacian;
  c.tree_dynamics.bottomRightCorner(m, m) = -s3 * d.essential_laplacian;

  c.error_injection = Matrix::Zero(2 * m, 2 * l);
  c.error_injection.bottomLeftCorner(m, l) = -s2 * d.tree_in_product;
  c.error_injection.bottomRightCorner(m, l) = -s3 * d.tree_in_product;

  const Matrix q = -(c.block_p * c.tree_dynamics + c.tree_dynamics.transpose() * c.block_p);
  c.block_q = 0.5 * (q + q.transpose());

  Matrix closed_form(2 * m, 2 * m);
  const Matrix q2 = s3 * id - s * h;
  closed_form << s2 * id, q2, q2, s2 * s2 * id - 2.0 * h;
  c.q_block_residual = max_abs(c.block_q - closed_form);

  const Matrix q1 = c.block_q.topLeftCorner(m, m);
  const Matrix q2_actual = c.block_q.topRightCorner(m, m);
  const Matrix q3 = c.block_q.bottomRightCorner(m, m);
  const Matrix schur = q3 - q2_actual.transpose() * q1.llt().solve(q2_actual);
  c.schur_residual = max_abs(schur - h * (2.0 * (s2 - 1.0) * id - h));

  const Vector q_eigs = symmetric_eigenvalues(c.block_q);
  const Vector p_eigs = symmetric_eigenvalues(c.block_p);
  c.lambda_min_q = m > 0 ? q_eigs.minCoeff() : 0.0;
  c.lambda_min_p = m > 0 ? p_eigs.minCoeff() : 0.0;
  c.lambda_max_p = m > 0 ? p_eigs.maxCoeff() : 0.0;
  c.q_positive_by_eigen = c.lambda_min_q > 0.0;
  c.q_positive_by_schur = m > 0 && symmetric_eigenvalues(q1).minCoeff() > 0.0 &&
                          symmetric_eigenvalues(schur).minCoeff() > 0.0;

  c.norm_p = spectral_norm(c.block_p);
  c.norm_p_injection = spectral_norm(c.block_p * c.error_injection);
  c.norm_cut_transpose = spectral_norm(d.cut_basis.transpose());
  c.margin = c.lambda_min_q - 2.0 * lip.max() * c.norm_p;
  c.delta_l_max = c.margin / (2.0 * c.norm_p_injection * c.norm_cut_transpose);
  c.drift_bound_caveat = lip.position > 0.0 && lip.velocity > 0.0;

  if (!(s > c.sigma_min)) {
    c.infeasibility = ErrorCode::InfeasibleGain;
  } else if (!(c.margin > 0.0)) {
    c.infeasibility = ErrorCode::InfeasibleMargin;
  }
  c.feasible = !c.infeasibility.has_value();
  return c;
}

double StabilityCertificate::radius(double delta_u) const {
  const double nl = static_cast<double>(state_dim * num_edges);
  return 2.0 * std::sqrt(2.0 * nl) * delta_u * norm_p_injection / margin;
}

double StabilityCertificate::decay_constant(double delta_l) const {
  return margin - 2.0 * delta_l * norm_p_injection * norm_cut_transpose;
}

void StabilityCertificate::require_feasible() const {
  if (!infeasibility) return;
  if (*infeasibility == ErrorCode::InfeasibleGain) {
    throw Error(ErrorCode::InfeasibleGain, "sigma = " + std::to_string(sigma) +
                                               " does not exceed sigma_min = " +
                                               std::to_string(sigma_min));
  }
  throw Error(*infeasibility, "stability margin " + std::to_string(margin) + " is not positive");
}

namespace {

double checked_decay(const StabilityCertificate& cert, double delta_l) {
  cert.require_feasible();
  if (!(delta_l >= 0.0) || !(delta_l < cert.delta_l_max)) {
    throw Error(ErrorCode::InfeasibleDelta, "delta_l = " + std::to_string(delta_l) +
                                                " must lie in [0, " +
                                                std::to_string(cert.delta_l_max) + ")");
  }
  return cert.decay_constant(delta_l);
}

}  // namespace

double envelope(const StabilityCertificate& cert, double delta_l, double z0_norm, double t) {
  const double pi = checked_decay(cert, delta_l);
  const double ratio = cert.lambda_max_p / cert.lambda_min_p;
  return std::sqrt(ratio) * std::exp(-pi * t / (2.0 * cert.lambda_max_p)) * z0_norm;
}

double printed_envelope(const StabilityCertificate& cert, double delta_l, double z0_norm,
                        double t) {
  const double pi = checked_decay(cert, delta_l);
  const double ratio = cert.lambda_max_p / cert.lambda_min_p;
  return ratio * std::exp(-pi * t / cert.lambda_max_p) * z0_norm;
}

double convergence_time(const StabilityCertificate& cert, double delta_l, double z0_norm,
                        double r) {
  const double pi = checked_decay(cert, delta_l);
  if (!(r > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "target radius must be positive");
  }
  const double initial = envelope(cert, delta_l, z0_norm, 0.0);
  if (r > initial) {
    throw Error(ErrorCode::RadiusTooLarge, "radius " + std::to_string(r) +
                                               " exceeds the initial envelope " +
                                               std::to_string(initial));
  }
  return -(2.0 * cert.lambda_max_p / pi) * std::log(r / initial);
}

}  // namespace edgecons
