#include "edgecons/lyapunov.hpp"

#include <algorithm>

#include "edgecons/errors.hpp"

namespace edgecons {

Matrix solve_lyapunov(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "Lyapunov operand must be square");
  }
  const Eigen::Index m = a.rows();
  if (m == 0) return Matrix(0, 0);

  const auto ev = eigenvalues(a);
  const bool stable = std::all_of(ev.begin(), ev.end(), [](const auto& z) { return z.real() > 0.0; });
  if (!stable) {
    throw Error(ErrorCode::NotPositiveStable,
                "operand has an eigenvalue with nonpositive real part");
  }

  // Column-major vec: vec(H A) = (Aᵀ ⊗ I) vec(H), vec(Aᵀ H) = (I ⊗ Aᵀ) vec(H).
  const Matrix at = a.transpose();
  Matrix k = Matrix::Zero(m * m, m * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      k.block(i * m, j * m, m, m).diagonal().array() += at(i, j);
    }
    k.block(i * m, i * m, m, m) += at;
  }
  const Vector rhs = Matrix::Identity(m, m).reshaped();
  const Vector vec_h = k.partialPivLu().solve(rhs);

  Matrix h = vec_h.reshaped(m, m);
  return 0.5 * (h + h.transpose());
}

double lyapunov_residual(const Matrix& h, const Matrix& a) {
  return max_abs(h * a + a.transpose() * h - Matrix::Identity(a.rows(), a.cols()));
}

}  // namespace edgecons
