#include "holocontact/linalg.hpp"

#include "holocontact/errors.hpp"

#include <algorithm>
#include <string>

namespace holocontact {

Matrix checked_inverse(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) throw DimensionError(std::string(what) + " is not square");
  Eigen::PartialPivLU<Matrix> lu(m);
  if (!(lu.rcond() > 1e-14)) throw SingularityError(std::string(what) + " is singular");
  return lu.inverse();
}

namespace {

Eigen::SelfAdjointEigenSolver<Matrix> positive_eigen(const Matrix& m) {
  const Matrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
  if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  if (!(es.eigenvalues().minCoeff() > 0.0))
    throw SingularityError("matrix is not positive definite");
  return es;
}

}  // namespace

Matrix hermitian_sqrt(const Matrix& m) {
  const auto es = positive_eigen(m);
  const Eigen::VectorXd s = es.eigenvalues().cwiseSqrt();
  return es.eigenvectors() * s.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

Matrix hermitian_inv_sqrt(const Matrix& m) {
  const auto es = positive_eigen(m);
  const Eigen::VectorXd s = es.eigenvalues().cwiseSqrt().cwiseInverse();
  return es.eigenvectors() * s.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

double min_hermitian_eigenvalue(const Matrix& m) {
  const Matrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Matrix nullspace(const Matrix& m, double threshold) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = threshold * std::max(1.0, s.size() ? s(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

double min_singular_value(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  return s.size() ? s(s.size() - 1) : 0.0;
}

Matrix random_unit_square(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = u(rng);
      const double im = u(rng);
      out(i, j) = Complex(re, im);
    }
  return out;
}

double residual_scale(const Matrix& a, const Matrix& b) {
  return std::max({1.0, a.norm(), b.norm()});
}

}  // namespace holocontact
