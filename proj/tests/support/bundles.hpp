#pragma once

#include "holocontact/holocontact.hpp"

#include <random>
#include <vector>

namespace hc_test {

using namespace holocontact;

/// Holomorphic polynomial sum_{|I| <= degree} c_I z^I, coefficients uniform in
/// the square [-scale, scale]^2.
Expr random_holo_poly(std::size_t m, int degree, double scale, std::mt19937_64& rng,
                      bool constant_term = true);

/// Expression Gram H = I + sum_k P_k P_k^dagger with polynomial P_k.
/// Positive definite everywhere.
BundleSpec random_gram(std::size_t m, Eigen::Index l, std::mt19937_64& rng, int terms = 2,
                       int degree = 2, double scale = 0.4);

/// A = I + small holomorphic polynomial entries; invertible near the origin.
std::vector<Expr> random_frame_change(std::size_t m, Eigen::Index l, std::mt19937_64& rng,
                                      double scale = 0.25);

/// Ht = A^{-1} H A^{-dagger} entrywise (l <= 2, inverse by adjugate).
BundleSpec transformed(const BundleSpec& H, const std::vector<Expr>& A, std::string label);

/// H + 0.5 z1 zb1 I: agrees with H on {z1 = 0}, differs transversally.
BundleSpec perturbed(const BundleSpec& H, std::string label);

/// Points (0, z2, ...) on Z with z2 spread over a small disc.
std::vector<Point> z_grid(std::size_t m, int count, double radius = 0.2);

Matrix random_matrix(Eigen::Index r, Eigen::Index c, std::mt19937_64& rng);

}  // namespace hc_test
