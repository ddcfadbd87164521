#pragma once

#include "holocontact/jet.hpp"
#include "holocontact/multi_index.hpp"
#include "holocontact/types.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

namespace holocontact {

using Rational = boost::multiprecision::cpp_rational;

/// Exact binomial coefficient; 0 outside 0 <= k <= n. Requires n <= 60.
std::int64_t binomial(int n, int k);
/// Product of componentwise binomials binom(I, J); 0 unless J <= I.
std::int64_t multi_binomial(const MultiIndex& I, const MultiIndex& J);

/// Element of the block Pascal algebra, stored by its first block column.
/// Block (i, j) of the expansion is binom(i, j) A_{i-j} for j <= i, else 0
/// (0-based block indices).
struct PascalBlock {
  int order = 0;
  Eigen::Index block_size = 1;
  std::vector<Matrix> first_column;  // A_0 .. A_order

  static PascalBlock identity(int order, Eigen::Index block_size);
};

/// Generator P: subdiagonal blocks 1 I, 2 I, ..., n I.
Matrix pascal_generator(int n, Eigen::Index l);
/// Dense (n+1) l square expansion.
Matrix pascal_expand(const PascalBlock& b);
/// First column (A(z0), A'(z0), ..., A^(n)(z0)) taken along z_1.
PascalBlock lambda_from_jet(const HoloJet& A);
/// Block whose expansion is expand(a) * expand(b): binomial convolution of columns.
PascalBlock pascal_product(const PascalBlock& a, const PascalBlock& b);

/// Multi-variable transition matrix over the graded-lex jet basis of order n:
/// block (I, J) = binom(I, J) d^{I-J} A(z0) for J <= I.
Matrix multi_lambda(const HoloJet& A, int n);
/// Matrix of the Pascal map in direction k (1-based) on the order-n jet
/// basis of dimension m: block (I, I - e_k) = i_k I.
Matrix pascal_map(std::size_t m, int n, Eigen::Index l, std::size_t k);

/// Dense exact rational matrix (row major).
struct RationalMatrix {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::vector<Rational> data;

  RationalMatrix() = default;
  RationalMatrix(Eigen::Index r, Eigen::Index c) : rows(r), cols(c), data(r * c) {}
  Rational& operator()(Eigen::Index i, Eigen::Index j) { return data[i * cols + j]; }
  const Rational& operator()(Eigen::Index i, Eigen::Index j) const { return data[i * cols + j]; }
  Matrix to_complex() const;
};

/// Basis of { Q : P Q = Q P }, found by exact rational elimination.
struct CommutantBasis {
  int order = 0;
  Eigen::Index block_size = 1;
  std::vector<RationalMatrix> basis;
};

CommutantBasis commutant_basis(int n, Eigen::Index l);
/// Nullity of the floating-point system, singular-value threshold relative to the largest.
std::size_t commutant_dimension_svd(int n, Eigen::Index l, double threshold = 1e-10);
/// Exact test of the block Pascal pattern.
bool matches_pascal_pattern(const RationalMatrix& q, int n, Eigen::Index l);

}  // namespace holocontact
