#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace edgecons {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Largest absolute entry; 0 for empty matrices.
double max_abs(const Matrix& m);

/// Induced 2-norm (largest singular value).
double spectral_norm(const Matrix& m);

/// M ⊗ I_n.
Matrix kron_identity(const Matrix& m, Eigen::Index n);

/// Eigenvalues of a general real matrix via real Schur form.
/// Throws Error(EigenFailure) when the QR iteration does not converge.
std::vector<std::complex<double>> eigenvalues(const Matrix& m);

/// Ascending eigenvalues of the symmetric part (m + mᵀ)/2.
Vector symmetric_eigenvalues(const Matrix& m);

/// Numerical rank from singular values above tol * max(1, σ_max).
Eigen::Index numerical_rank(const Matrix& m, double tol = 1e-9);

}  // namespace edgecons
