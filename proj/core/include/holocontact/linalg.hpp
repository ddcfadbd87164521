#pragma once

#include "holocontact/types.hpp"

#include <random>

namespace holocontact {

/// Inverse that refuses numerically singular input (reciprocal condition < 1e-14).
Matrix checked_inverse(const Matrix& m, const char* what = "matrix");

/// Principal square root of a Hermitian positive definite matrix.
Matrix hermitian_sqrt(const Matrix& m);
/// Inverse principal square root of a Hermitian positive definite matrix.
Matrix hermitian_inv_sqrt(const Matrix& m);

/// Smallest eigenvalue of the Hermitian part of m.
double min_hermitian_eigenvalue(const Matrix& m);

/// Orthonormal basis (columns) of the numerical nullspace of m, using
/// singular values below threshold * max(1, largest singular value).
Matrix nullspace(const Matrix& m, double threshold = 1e-10);

/// Smallest singular value.
double min_singular_value(const Matrix& m);

/// Entries uniform in the unit square [0,1) x [0,1) of the complex plane.
Matrix random_unit_square(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);

/// max(1, ||a||, ||b||), the scale used for relative residuals.
double residual_scale(const Matrix& a, const Matrix& b);

}  // namespace holocontact
