#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace holocontact {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Point = std::vector<Complex>;

/// Frobenius norm of a - b.
inline double distance(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

/// Identity of size n.
inline Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

}  // namespace holocontact
