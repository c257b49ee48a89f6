#pragma once

#include "edgecons/linalg.hpp"

namespace edgecons {

/// Solves H A + Aᵀ H = I for symmetric positive definite H by a dense solve
/// of the vectorized (m² x m²) system. A must be positive stable (every
/// eigenvalue in the open right half-plane); otherwise throws
/// Error(NotPositiveStable).
Matrix solve_lyapunov(const Matrix& a);

/// ‖H A + Aᵀ H - I‖_max.
double lyapunov_residual(const Matrix& h, const Matrix& a);

}  // namespace edgecons
