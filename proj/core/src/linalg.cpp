#include "edgecons/linalg.hpp"

#include <algorithm>

#include "edgecons/errors.hpp"

namespace edgecons {

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

Matrix kron_identity(const Matrix& m, Eigen::Index n) {
  Matrix out = Matrix::Zero(m.rows() * n, m.cols() * n);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 0.0) continue;
      out.block(i * n, j * n, n, n).diagonal().setConstant(m(i, j));
    }
  }
  return out;
}

std::vector<std::complex<double>> eigenvalues(const Matrix& m) {
  if (m.size() == 0) return {};
  Eigen::EigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenFailure, "real Schur iteration did not converge");
  }
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

Vector symmetric_eigenvalues(const Matrix& m) {
  if (m.size() == 0) return Vector();
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenFailure, "symmetric eigensolver did not converge");
  }
  return solver.eigenvalues();
}

Eigen::Index numerical_rank(const Matrix& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& s = svd.singularValues();
  const double cutoff = tol * std::max(1.0, s(0));
  return static_cast<Eigen::Index>((s.array() > cutoff).count());
}

}  // namespace edgecons
