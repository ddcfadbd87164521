#include "holocontact/jet.hpp"

#include "holocontact/errors.hpp"

#include <algorithm>
#include <cmath>

namespace holocontact {

bool same_center(const Point& a, const Point& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (std::abs(a[k] - b[k]) > 1e-13 * (1.0 + std::abs(a[k]))) return false;
  return true;
}

namespace {

void check_compatible(const HermJet& a, const HermJet& b) {
  if (!same_center(a.center(), b.center())) throw DimensionError("jets have different centers");
  if (a.rank() != b.rank()) throw DimensionError("jets have different ranks");
}

}  // namespace

HermJet::HermJet(Point center, int holo_order, int anti_order, Eigen::Index rank)
    : center_(std::move(center)), rank_(rank) {
  if (center_.empty()) throw DimensionError("jet center must have dimension >= 1");
  if (holo_order < 0 || anti_order < 0) throw OrderError("jet orders must be non-negative");
  if (rank < 1) throw DimensionError("jet rank must be >= 1");
  alpha_ = IndexSet::get(center_.size(), holo_order);
  beta_ = IndexSet::get(center_.size(), anti_order);
  coeffs_.assign(alpha_->size() * beta_->size(), Matrix::Zero(rank, rank));
}

HermJet HermJet::constant(Point center, int holo_order, int anti_order, const Matrix& value) {
  if (value.rows() != value.cols()) throw DimensionError("jet values must be square");
  HermJet out(std::move(center), holo_order, anti_order, value.rows());
  out.coeffs_.front() = value;
  return out;
}

HermJet HermJet::identity(Point center, int holo_order, int anti_order, Eigen::Index rank) {
  return constant(std::move(center), holo_order, anti_order, Matrix::Identity(rank, rank));
}

HermJet HermJet::coordinate(Point center, int holo_order, int anti_order, std::size_t k,
                            bool conjugate) {
  if (k >= center.size()) throw DimensionError("coordinate index exceeds dimension");
  HermJet out(std::move(center), holo_order, anti_order, 1);
  const Complex z = out.center_[k];
  out.coeffs_.front()(0, 0) = conjugate ? std::conj(z) : z;
  const MultiIndex zero(out.dimension());
  const MultiIndex unit = MultiIndex::unit(out.dimension(), k);
  const std::size_t a = out.alpha_->position(conjugate ? zero : unit);
  const std::size_t b = out.beta_->position(conjugate ? unit : zero);
  if (a != IndexSet::npos && b != IndexSet::npos) out.coeff(a, b)(0, 0) = 1.0;
  return out;
}

const Matrix& HermJet::coeff(const MultiIndex& a, const MultiIndex& b) const {
  const std::size_t pa = alpha_->position(a);
  const std::size_t pb = beta_->position(b);
  if (pa == IndexSet::npos || pb == IndexSet::npos)
    throw RangeError("jet coefficient beyond stored order");
  return coeff(pa, pb);
}

Matrix HermJet::extract(const MultiIndex& a, const MultiIndex& b) const {
  return coeff(a, b) * (a.factorial() * b.factorial());
}

HermJet HermJet::truncated(int holo_order, int anti_order) const {
  if (holo_order > this->holo_order() || anti_order > this->anti_order())
    throw OrderError("cannot raise jet order by truncation");
  if (holo_order == this->holo_order() && anti_order == this->anti_order()) return *this;
  HermJet out(center_, holo_order, anti_order, rank_);
  for (std::size_t a = 0; a < out.alpha_->size(); ++a)
    for (std::size_t b = 0; b < out.beta_->size(); ++b) out.coeff(a, b) = coeff(a, b);
  return out;
}

HermJet HermJet::differentiate(std::size_t k, bool anti) const {
  if (k >= dimension()) throw DimensionError("derivative direction exceeds dimension");
  const int p = holo_order() - (anti ? 0 : 1);
  const int q = anti_order() - (anti ? 1 : 0);
  if (p < 0 || q < 0) throw OrderError("jet has no order left to differentiate");
  HermJet out(center_, p, q, rank_);
  const MultiIndex e = MultiIndex::unit(dimension(), k);
  for (std::size_t a = 0; a < out.alpha_->size(); ++a) {
    const MultiIndex& alpha = (*out.alpha_)[a];
    for (std::size_t b = 0; b < out.beta_->size(); ++b) {
      const MultiIndex& beta = (*out.beta_)[b];
      if (anti)
        out.coeff(a, b) = coeff(a, beta_->position(beta + e)) * double(beta[k] + 1);
      else
        out.coeff(a, b) = coeff(alpha_->position(alpha + e), b) * double(alpha[k] + 1);
    }
  }
  return out;
}

HermJet HermJet::adjoint() const {
  HermJet out(center_, anti_order(), holo_order(), rank_);
  for (std::size_t a = 0; a < alpha_->size(); ++a)
    for (std::size_t b = 0; b < beta_->size(); ++b) out.coeff(b, a) = coeff(a, b).adjoint();
  return out;
}

double HermJet::max_norm(bool skip_constant) const {
  double out = 0.0;
  for (std::size_t k = skip_constant ? 1 : 0; k < coeffs_.size(); ++k)
    out = std::max(out, coeffs_[k].norm());
  return out;
}

HermJet& HermJet::operator+=(const HermJet& other) {
  check_compatible(*this, other);
  if (other.holo_order() < holo_order() || other.anti_order() < anti_order())
    *this = truncated(std::min(holo_order(), other.holo_order()),
                      std::min(anti_order(), other.anti_order()));
  for (std::size_t a = 0; a < alpha_->size(); ++a)
    for (std::size_t b = 0; b < beta_->size(); ++b) coeff(a, b) += other.coeff(a, b);
  return *this;
}

HermJet& HermJet::operator-=(const HermJet& other) {
  check_compatible(*this, other);
  if (other.holo_order() < holo_order() || other.anti_order() < anti_order())
    *this = truncated(std::min(holo_order(), other.holo_order()),
                      std::min(anti_order(), other.anti_order()));
  for (std::size_t a = 0; a < alpha_->size(); ++a)
    for (std::size_t b = 0; b < beta_->size(); ++b) coeff(a, b) -= other.coeff(a, b);
  return *this;
}

HermJet& HermJet::operator*=(Complex s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

HermJet operator+(HermJet a, const HermJet& b) { return a += b; }
HermJet operator-(HermJet a, const HermJet& b) { return a -= b; }
HermJet operator-(HermJet a) { return a *= Complex(-1.0); }
HermJet operator*(Complex s, HermJet a) { return a *= s; }
HermJet operator*(const HermJet& a, const HermJet& b) { return jet_mul(a, b); }

HermJet jet_mul(const HermJet& a, const HermJet& b) {
  check_compatible(a, b);
  const int p = std::min(a.holo_order(), b.holo_order());
  const int q = std::min(a.anti_order(), b.anti_order());
  HermJet out(a.center(), p, q, a.rank());
  const IndexSet& alpha = out.holo_indices();
  const IndexSet& beta = out.anti_indices();

  // Index sets are nested prefixes, so positions agree across orders.
  std::vector<char> a_zero(alpha.size() * beta.size());
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (std::size_t j = 0; j < beta.size(); ++j)
      a_zero[i * beta.size() + j] = a.coeff(i, j).isZero(0.0);

  for (std::size_t i = 0; i < alpha.size(); ++i) {
    for (const auto& si : alpha.splits(i)) {
      for (std::size_t j = 0; j < beta.size(); ++j) {
        Matrix& target = out.coeff(i, j);
        for (const auto& sj : beta.splits(j)) {
          if (a_zero[si.left * beta.size() + sj.left]) continue;
          target.noalias() += a.coeff(si.left, sj.left) * b.coeff(si.right, sj.right);
        }
      }
    }
  }
  return out;
}

HermJet jet_inv(const HermJet& a) {
  Eigen::PartialPivLU<Matrix> lu(a.value());
  if (!(lu.rcond() > 1e-14)) throw SingularityError("jet constant term is singular");
  const Matrix inv0 = lu.inverse();
  HermJet out(a.center(), a.holo_order(), a.anti_order(), a.rank());
  const IndexSet& alpha = a.holo_indices();
  const IndexSet& beta = a.anti_indices();
  out.coeff(0, 0) = inv0;
  Matrix acc(a.rank(), a.rank());
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    for (std::size_t j = 0; j < beta.size(); ++j) {
      if (i == 0 && j == 0) continue;
      acc.setZero();
      for (const auto& si : alpha.splits(i))
        for (const auto& sj : beta.splits(j)) {
          if (si.left == 0 && sj.left == 0) continue;
          acc.noalias() += a.coeff(si.left, sj.left) * out.coeff(si.right, sj.right);
        }
      out.coeff(i, j).noalias() = -inv0 * acc;
    }
  }
  return out;
}

HermJet jet_pow(const HermJet& a, int power) {
  if (power < 0) return jet_pow(jet_inv(a), -power);
  HermJet result = HermJet::identity(a.center(), a.holo_order(), a.anti_order(), a.rank());
  HermJet base = a;
  while (power > 0) {
    if (power & 1) result = jet_mul(result, base);
    power >>= 1;
    if (power) base = jet_mul(base, base);
  }
  return result;
}

HermJet jet_func(const HermJet& a, JetFunction f, double exponent) {
  if (a.rank() != 1) throw DimensionError("jet_func needs a scalar jet");
  if (f == JetFunction::Power && std::nearbyint(exponent) == exponent &&
      std::abs(exponent) < 1e6)
    return jet_pow(a, static_cast<int>(exponent));

  const Complex a0 = a.value()(0, 0);
  const int K = a.holo_order() + a.anti_order();
  std::vector<Complex> d(K + 1);
  switch (f) {
    case JetFunction::Exp: {
      const Complex e = std::exp(a0);
      double fact = 1.0;
      for (int k = 0; k <= K; ++k) {
        if (k) fact *= k;
        d[k] = e / fact;
      }
      break;
    }
    case JetFunction::Log: {
      if (!(a0.real() > 0.0)) throw SingularityError("log needs a positive real part at the center");
      d[0] = std::log(a0);
      for (int k = 1; k <= K; ++k)
        d[k] = (k % 2 ? 1.0 : -1.0) / (double(k) * std::pow(a0, k));
      break;
    }
    case JetFunction::Power: {
      if (!(a0.real() > 0.0))
        throw SingularityError("non-integer power needs a positive real part at the center");
      Complex binom = 1.0;
      for (int k = 0; k <= K; ++k) {
        if (k) binom *= (exponent - (k - 1)) / double(k);
        d[k] = binom * std::pow(a0, exponent - k);
      }
      break;
    }
  }
  HermJet u = a;
  u.coeff(0, 0)(0, 0) = 0.0;
  HermJet result = HermJet::constant(a.center(), a.holo_order(), a.anti_order(),
                                     Matrix::Constant(1, 1, d[K]));
  for (int k = K - 1; k >= 0; --k) {
    result = jet_mul(result, u);
    result.coeff(0, 0)(0, 0) += d[k];
  }
  return result;
}

Matrix jet_extract(const HermJet& a, const MultiIndex& alpha, const MultiIndex& beta) {
  return a.extract(alpha, beta);
}

HoloJet::HoloJet(Point center, int order, Eigen::Index rank)
    : jet_(std::move(center), order, 0, rank) {}

HoloJet HoloJet::holomorphic_part(const HermJet& jet) {
  HermJet out(jet.center(), jet.holo_order(), 0, jet.rank());
  for (std::size_t a = 0; a < jet.holo_indices().size(); ++a) out.coeff(a, 0) = jet.coeff(a, 0);
  return HoloJet(std::move(out));
}

HoloJet HoloJet::constant(Point center, int order, const Matrix& value) {
  return HoloJet(HermJet::constant(std::move(center), order, 0, value));
}

const Matrix& HoloJet::coeff(const MultiIndex& a) const {
  return jet_.coeff(a, MultiIndex(dimension()));
}

Matrix HoloJet::extract(const MultiIndex& a) const { return coeff(a) * a.factorial(); }

HoloJet HoloJet::truncated(int order) const { return HoloJet(jet_.truncated(order, 0)); }

HermJet HoloJet::as_herm(int anti_order) const {
  HermJet out(center(), order(), anti_order, rank());
  for (std::size_t a = 0; a < indices().size(); ++a) out.coeff(a, 0) = coeff(a);
  return out;
}

HermJet HoloJet::adjoint_as_herm(int holo_order) const {
  HermJet out(center(), holo_order, order(), rank());
  for (std::size_t a = 0; a < indices().size(); ++a) out.coeff(0, a) = coeff(a).adjoint();
  return out;
}

HoloJet operator*(const HoloJet& a, const HoloJet& b) { return HoloJet(jet_mul(a.jet_, b.jet_)); }
HoloJet operator+(const HoloJet& a, const HoloJet& b) { return HoloJet(a.jet_ + b.jet_); }
HoloJet operator-(const HoloJet& a, const HoloJet& b) { return HoloJet(a.jet_ - b.jet_); }
HoloJet inverse(const HoloJet& a) { return HoloJet(jet_inv(a.jet_)); }

}  // namespace holocontact
