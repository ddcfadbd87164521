#pragma once

#include "holocontact/multi_index.hpp"
#include "holocontact/types.hpp"

#include <memory>
#include <vector>

namespace holocontact {

/// Truncated Taylor expansion of a matrix valued real-analytic function in
/// (z, zbar) about a center. Coefficient (a, b) holds
/// d^a dbar^b H(center) / (a! b!). Truncation is by total degree separately
/// in each group: |a| <= holo_order, |b| <= anti_order.
class HermJet {
 public:
  HermJet(Point center, int holo_order, int anti_order, Eigen::Index rank);

  static HermJet constant(Point center, int holo_order, int anti_order, const Matrix& value);
  static HermJet identity(Point center, int holo_order, int anti_order, Eigen::Index rank);
  /// Scalar jet of z_k (conjugate = false) or zbar_k (conjugate = true); k is 0-based.
  static HermJet coordinate(Point center, int holo_order, int anti_order, std::size_t k,
                            bool conjugate);

  const Point& center() const noexcept { return center_; }
  std::size_t dimension() const noexcept { return center_.size(); }
  int holo_order() const noexcept { return alpha_->order(); }
  int anti_order() const noexcept { return beta_->order(); }
  Eigen::Index rank() const noexcept { return rank_; }
  const IndexSet& holo_indices() const noexcept { return *alpha_; }
  const IndexSet& anti_indices() const noexcept { return *beta_; }

  Matrix& coeff(std::size_t a, std::size_t b) { return coeffs_[a * beta_->size() + b]; }
  const Matrix& coeff(std::size_t a, std::size_t b) const {
    return coeffs_[a * beta_->size() + b];
  }
  /// Normalized coefficient; throws RangeError outside the stored orders.
  const Matrix& coeff(const MultiIndex& a, const MultiIndex& b) const;
  /// Derivative value a! b! c_{a,b}.
  Matrix extract(const MultiIndex& a, const MultiIndex& b) const;
  const Matrix& value() const { return coeffs_.front(); }

  /// Same function, fewer stored orders.
  HermJet truncated(int holo_order, int anti_order) const;
  /// Jet of d/dz_k (anti = false) or d/dzbar_k (anti = true); loses one order.
  HermJet differentiate(std::size_t k, bool anti) const;
  /// Jet of z -> H(z)^dagger (orders swap).
  HermJet adjoint() const;

  /// Largest coefficient norm, optionally ignoring the constant term.
  double max_norm(bool skip_constant = false) const;

  HermJet& operator+=(const HermJet& other);
  HermJet& operator-=(const HermJet& other);
  HermJet& operator*=(Complex s);

 private:
  Point center_;
  std::shared_ptr<const IndexSet> alpha_;
  std::shared_ptr<const IndexSet> beta_;
  Eigen::Index rank_;
  std::vector<Matrix> coeffs_;
};

HermJet operator+(HermJet a, const HermJet& b);
HermJet operator-(HermJet a, const HermJet& b);
HermJet operator-(HermJet a);
HermJet operator*(Complex s, HermJet a);
HermJet operator*(const HermJet& a, const HermJet& b);

/// Truncated Cauchy product. Orders of the result are the operand minima.
HermJet jet_mul(const HermJet& a, const HermJet& b);
/// Multiplicative inverse by order-by-order recursion.
HermJet jet_inv(const HermJet& a);
/// Integer power of a square jet; negative powers go through jet_inv.
HermJet jet_pow(const HermJet& a, int power);

enum class JetFunction { Exp, Log, Power };
/// Scalar composition f(a). Power uses `exponent`; integral exponents accept
/// any nonzero constant term, other ones take the principal branch.
HermJet jet_func(const HermJet& a, JetFunction f, double exponent = 0.0);

/// a! b! c_{a,b}.
Matrix jet_extract(const HermJet& a, const MultiIndex& alpha, const MultiIndex& beta);

/// Truncated Taylor expansion of a holomorphic matrix function.
class HoloJet {
 public:
  HoloJet(Point center, int order, Eigen::Index rank);
  /// Takes the zbar-free part of `jet`, i.e. the expansion of z -> f(z, conj(center)).
  static HoloJet holomorphic_part(const HermJet& jet);
  static HoloJet constant(Point center, int order, const Matrix& value);

  const Point& center() const noexcept { return jet_.center(); }
  std::size_t dimension() const noexcept { return jet_.dimension(); }
  int order() const noexcept { return jet_.holo_order(); }
  Eigen::Index rank() const noexcept { return jet_.rank(); }
  const IndexSet& indices() const noexcept { return jet_.holo_indices(); }

  Matrix& coeff(std::size_t a) { return jet_.coeff(a, 0); }
  const Matrix& coeff(std::size_t a) const { return jet_.coeff(a, 0); }
  const Matrix& coeff(const MultiIndex& a) const;
  /// Derivative value a! c_a.
  Matrix extract(const MultiIndex& a) const;
  const Matrix& value() const { return jet_.value(); }

  HoloJet truncated(int order) const;
  /// The same function seen as a (z, zbar) jet with the given anti order.
  HermJet as_herm(int anti_order) const;
  /// Jet of z -> A(z)^dagger (antiholomorphic) with the given holo order.
  HermJet adjoint_as_herm(int holo_order) const;

  friend HoloJet operator*(const HoloJet& a, const HoloJet& b);
  friend HoloJet operator+(const HoloJet& a, const HoloJet& b);
  friend HoloJet operator-(const HoloJet& a, const HoloJet& b);
  friend HoloJet inverse(const HoloJet& a);

 private:
  explicit HoloJet(HermJet jet) : jet_(std::move(jet)) {}
  HermJet jet_;
};

HoloJet inverse(const HoloJet& a);

/// True when the centers agree to rounding.
bool same_center(const Point& a, const Point& b);

}  // namespace holocontact
